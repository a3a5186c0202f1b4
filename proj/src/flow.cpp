#include "recog/flow.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "recog/errors.hpp"
#include "recog/onionaddr.hpp"
#include "recog/passcode.hpp"

namespace recog {

unsigned fingerprint_bits_for(unsigned q, double eps) { return select_m(kMaxItems, q, eps); }

InitOutcome init_from_domains(const std::vector<std::string>& domains, unsigned q, double eps, RandomSource& rng,
                              bool add_decoy) {
    std::vector<FieldElem> items;
    for (std::size_t i = 0; i < domains.size(); ++i) {
        FieldElem item;
        try {
            item = parse_onion(domains[i]);
        } catch (const Error& e) {
            throw Error(e.code(), "domain " + std::to_string(i) + ": " + e.what(), i);
        }
        if (std::find(items.begin(), items.end(), item) != items.end())
            throw Error(Errc::not_distinct, "domain " + std::to_string(i) + " repeats an earlier domain", i);
        items.push_back(item);
    }
    if (add_decoy && items.size() == 1) {
        std::vector<std::uint8_t> buf(32);
        rng.fill(buf);
        items.push_back(FieldElem::from_bytes(buf, 256));
    }
    if (items.size() < 2) throw Error(Errc::invalid_params, "at least two domains are required (N must exceed 1)");
    if (items.size() > kMaxItems)
        throw Error(Errc::unsupported, "at most " + std::to_string(kMaxItems) + " domains are supported");

    RecognizerParams params;
    params.n = 256;
    params.N = static_cast<unsigned>(items.size());
    params.q = q;
    params.m = fingerprint_bits_for(q, eps);
    params.validate();
    if (params.key_bits() > kMaxKeyBits)
        throw Error(Errc::unsupported, "these parameters need a " + std::to_string(params.key_bits()) +
                                           "-bit key; the passphrase codec supports at most 84");

    InitOutcome out{rec_init(ItemSet(std::move(items)), params, rng), {}, {}, {}};
    out.passphrase = encode_key(out.instance.key);
    out.scene = scene_of(out.instance.fingerprint.value, params.m);
    out.svg = svg_of(out.scene);
    return out;
}

CheckOutcome check_domain(const RecognizerParams& params, const CoeffVector& db, const Key& key,
                          std::string_view domain) {
    const FieldElem item = parse_onion(domain);
    CheckOutcome out{rec_test(db, key, item, params), {}, {}};
    out.scene = scene_of(out.fingerprint.value, params.m);
    out.svg = svg_of(out.scene);
    return out;
}

std::vector<ParamRow> parameter_table(const std::vector<unsigned>& item_counts, unsigned q, double eps) {
    require(!item_counts.empty(), "need at least one item count");
    const unsigned largest = *std::max_element(item_counts.begin(), item_counts.end());
    const unsigned m = select_m(largest, q, eps);
    std::vector<ParamRow> rows;
    for (unsigned N : item_counts) {
        require(N >= 2, "item counts must exceed 1");
        ParamRow r;
        r.N = N;
        r.q = q;
        r.m = m;
        r.epsilon = compute_epsilon(N, q, m);
        r.key_bits = (N - 1) * m;
        r.fingerprint_bits = m;
        r.words = words_for_bits(r.key_bits);
        rows.push_back(r);
    }
    return rows;
}

TwoDigits truncate_two_digits(long double x) {
    if (x <= 0) return {};
    int e = static_cast<int>(std::floor(std::log10(x)));
    long double scaled = x / std::pow(10.0L, static_cast<long double>(e - 1)) + 1e-9L;
    // log10 can land one off near powers of ten.
    if (scaled >= 100) {
        ++e;
        scaled /= 10;
    } else if (scaled < 10) {
        --e;
        scaled *= 10;
    }
    return {static_cast<int>(std::floor(scaled)), e};
}

std::string format_two_digits(long double x) {
    const auto t = truncate_two_digits(x);
    char buf[32];
    std::snprintf(buf, sizeof buf, "%d.%de%d", t.tenths / 10, t.tenths % 10, t.exponent);
    return buf;
}

std::string format_parameter_table(const std::vector<ParamRow>& rows) {
    std::string out = "  N    q   m  epsilon   |k|  fp bits  words\n";
    for (const auto& r : rows) {
        char buf[128];
        std::snprintf(buf, sizeof buf, "%3u %4u %3u  %-8s %4u  %7u  %5zu\n", r.N, r.q, r.m,
                      format_two_digits(r.epsilon).c_str(), r.key_bits, r.fingerprint_bits, r.words);
        out += buf;
    }
    return out;
}

}  // namespace recog
