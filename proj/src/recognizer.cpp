#include "recog/recognizer.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "recog/errors.hpp"

namespace recog {

void RecognizerParams::validate() const {
    auto fail = [](const std::string& why) { throw Error(Errc::invalid_params, "invalid parameters: " + why); };
    if (q < 1) fail("q must be at least 1");
    if (m >= n) fail("m must be less than n");
    if (N <= 1) fail("N must exceed 1");
    if (m < 64 && N >= (std::uint64_t{1} << m)) fail("N must be less than 2^m");
    if (!FieldSpec::has_standard(n)) fail("unsupported item width n=" + std::to_string(n));
    if (!FieldSpec::has_standard(m)) fail("unsupported fingerprint width m=" + std::to_string(m));
}

ItemSet::ItemSet(std::vector<FieldElem> items) : items_(std::move(items)) {
    require(!items_.empty(), "item set is empty");
    const unsigned w = items_.front().width();
    for (std::size_t i = 0; i < items_.size(); ++i) {
        require(items_[i].width() == w, "items differ in width");
        for (std::size_t j = 0; j < i; ++j) require(items_[i] != items_[j], "items are not distinct");
    }
}

bool ItemSet::contains(const FieldElem& x) const { return std::find(items_.begin(), items_.end(), x) != items_.end(); }

Key::Key(unsigned m, std::vector<FieldElem> coeffs) : m_(m), coeffs_(std::move(coeffs)) {
    require(!coeffs_.empty(), "key needs at least one coefficient");
    for (const auto& c : coeffs_) require(c.width() == m_, "key coefficient width differs from m");
}

FieldElem Key::to_bits() const {
    FieldElem bits(bit_length());
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        for (unsigned b = 0; b < m_; ++b) bits.set_bit(static_cast<unsigned>(i) * m_ + b, coeffs_[i].bit(b));
    return bits;
}

Key Key::from_bits(const FieldElem& bits, unsigned m) {
    require(m >= 1 && bits.width() % m == 0 && bits.width() > 0, "key bit length is not a multiple of m");
    const unsigned count = bits.width() / m;
    std::vector<FieldElem> coeffs;
    coeffs.reserve(count);
    for (unsigned i = 0; i < count; ++i) {
        FieldElem c(m);
        for (unsigned b = 0; b < m; ++b) c.set_bit(b, bits.bit(i * m + b));
        coeffs.push_back(c);
    }
    return Key(m, std::move(coeffs));
}

std::pair<Key, Fingerprint> build_key(std::span<const FieldElem> hatted) {
    require(hatted.size() >= 2, "need at least two hashed items");
    const unsigned m = hatted.front().width();
    require(m < 64 ? hatted.size() < (std::uint64_t{1} << m) : true, "N must be less than 2^m");
    for (std::size_t i = 0; i < hatted.size(); ++i) {
        require(hatted[i].width() == m, "hashed items differ in width");
        for (std::size_t j = 0; j < i; ++j)
            if (hatted[i] == hatted[j]) throw Error(Errc::not_distinct, "hashed items are not distinct");
    }
    const FieldSpec& f = FieldSpec::standard(m);

    // poly[i] is the coefficient of x^i of prod (x - h_j), built one factor
    // at a time. Subtraction is addition in characteristic 2.
    std::vector<FieldElem> poly{f.one()};
    for (const auto& h : hatted) {
        std::vector<FieldElem> next(poly.size() + 1, f.zero());
        for (std::size_t i = 0; i < poly.size(); ++i) {
            next[i + 1] = f.add(next[i + 1], poly[i]);
            next[i] = f.add(next[i], f.mul(poly[i], h));
        }
        poly = std::move(next);
    }
    Fingerprint y{f.one()};
    for (const auto& h : hatted) y.value = f.mul(y.value, h);
    // poly[0] == y: adding prod h_j cancels the constant term.
    std::vector<FieldElem> coeffs(poly.begin() + 1, poly.end() - 1);
    return {Key(m, std::move(coeffs)), y};
}

FieldElem eval_fingerprint_poly(const Key& key, const FieldElem& hatted) {
    require(hatted.width() == key.m(), "hashed item width differs from key");
    const FieldSpec& f = FieldSpec::standard(key.m());
    // Horner over [0, a_1, ..., a_{N-1}, 1].
    FieldElem acc = f.one();
    const auto& a = key.coeffs();
    for (std::size_t i = a.size(); i-- > 0;) acc = f.add(f.mul(acc, hatted), a[i]);
    return f.mul(acc, hatted);
}

RecognizerInstance rec_init(const ItemSet& items, const RecognizerParams& params, RandomSource& rng) {
    params.validate();
    require(items.size() == params.N, "item count differs from N");
    require(items.width() == params.n, "item width differs from n");

    for (int attempt = 0; attempt < kMaxInitAttempts; ++attempt) {
        CoeffVector db = sample_coeffs(params.n, params.db_size(), rng);
        std::vector<FieldElem> hatted;
        hatted.reserve(items.size());
        for (const auto& x : items.items()) hatted.push_back(uhash_eval(db, params.m, x));
        try {
            auto [key, y] = build_key(hatted);
            return RecognizerInstance{params, std::move(db), std::move(key), y};
        } catch (const Error& e) {
            if (e.code() != Errc::not_distinct) throw;
        }
    }
    throw Error(Errc::init_failed, "hashed items collided in every database draw");
}

Fingerprint rec_test(const CoeffVector& db, const Key& key, const FieldElem& x, const RecognizerParams& params) {
    require(db.n() == params.n && db.size() == params.db_size(), "database does not match parameters");
    require(key.m() == params.m && key.item_count() == params.N, "key does not match parameters");
    return Fingerprint{eval_fingerprint_poly(key, uhash_eval(db, params.m, x))};
}

long double compute_epsilon(std::uint64_t N, std::uint64_t q, unsigned m) {
    if (m < 64) require(N < (std::uint64_t{1} << m), "N must be less than 2^m");
    if (q == 0) return 0.0L;
    const long double p = static_cast<long double>(N) / std::ldexp(1.0L, static_cast<int>(m));
    return -std::expm1(static_cast<long double>(q) * std::log1p(-p));
}

unsigned select_m(std::uint64_t N, std::uint64_t q, double eps_target) {
    require(eps_target > 0.0 && eps_target < 1.0, "target epsilon must lie in (0, 1)");
    unsigned m = 1;
    while (m < 64 && (std::uint64_t{1} << m) <= N) ++m;
    while (compute_epsilon(N, q, m) > static_cast<long double>(eps_target)) ++m;
    return m;
}

}  // namespace recog
