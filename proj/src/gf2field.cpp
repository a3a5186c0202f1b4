#include "recog/gf2field.hpp"

#include <algorithm>
#include <map>

#include "recog/errors.hpp"

#if defined(__x86_64__) || defined(__i386__)
#include <immintrin.h>
#define RECOG_X86 1
#endif

namespace recog {

namespace {

constexpr unsigned words_for(unsigned bits) { return (bits + 63) / 64; }

std::uint64_t top_mask(unsigned width) {
    const unsigned r = width % 64;
    return r == 0 ? ~std::uint64_t{0} : (std::uint64_t{1} << r) - 1;
}

void check_width(unsigned width) {
    if (width == 0 || width > kMaxWidth) throw Error(Errc::contract_violation, "element width out of range");
}

std::uint64_t clmul64_portable(std::uint64_t a, std::uint64_t b, std::uint64_t& hi) noexcept {
    std::uint64_t lo = 0;
    hi = 0;
    for (unsigned i = 0; i < 64; ++i) {
        if (((b >> i) & 1U) == 0) continue;
        lo ^= a << i;
        if (i != 0) hi ^= a >> (64 - i);
    }
    return lo;
}

#ifdef RECOG_X86
__attribute__((target("pclmul,sse4.1"))) std::uint64_t clmul64_hw(std::uint64_t a, std::uint64_t b,
                                                               std::uint64_t& hi) noexcept {
    const __m128i va = _mm_set_epi64x(0, static_cast<long long>(a));
    const __m128i vb = _mm_set_epi64x(0, static_cast<long long>(b));
    const __m128i r = _mm_clmulepi64_si128(va, vb, 0x00);
    hi = static_cast<std::uint64_t>(_mm_extract_epi64(r, 1));
    return static_cast<std::uint64_t>(_mm_cvtsi128_si64(r));
}

const bool kHasPclmul = __builtin_cpu_supports("pclmul") && __builtin_cpu_supports("sse4.1");
#endif

// Shift `src` left by `s` bits and xor into `dst`; both hold `n` words.
template <std::size_t N>
void xor_shifted_left(std::array<std::uint64_t, N>& dst, const std::array<std::uint64_t, N>& src, unsigned s,
                      unsigned n) {
    const unsigned ws = s / 64;
    const unsigned bs = s % 64;
    for (unsigned i = n; i-- > ws;) {
        std::uint64_t v = src[i - ws] << bs;
        if (bs != 0 && i - ws >= 1) v |= src[i - ws - 1] >> (64 - bs);
        dst[i] ^= v;
    }
}

const std::map<unsigned, std::vector<unsigned>>& standard_polys() {
    // Lowest-weight irreducible polynomials; every entry is machine-checked
    // in the test suite. 256 follows Zivkovic's table.
    static const std::map<unsigned, std::vector<unsigned>> polys = {
        {2, {0, 1, 2}},          {3, {0, 1, 3}},          {4, {0, 1, 4}},          {5, {0, 2, 5}},
        {6, {0, 1, 6}},          {7, {0, 1, 7}},          {8, {0, 1, 3, 4, 8}},    {9, {0, 1, 9}},
        {10, {0, 3, 10}},        {11, {0, 2, 11}},        {12, {0, 3, 12}},        {13, {0, 1, 3, 4, 13}},
        {14, {0, 5, 14}},        {15, {0, 1, 15}},        {16, {0, 1, 3, 5, 16}},  {17, {0, 3, 17}},
        {18, {0, 3, 18}},        {19, {0, 1, 2, 5, 19}},  {20, {0, 3, 20}},        {21, {0, 2, 21}},
        {22, {0, 1, 22}},        {23, {0, 5, 23}},        {24, {0, 1, 3, 4, 24}},  {25, {0, 3, 25}},
        {26, {0, 1, 3, 4, 26}},  {27, {0, 1, 2, 5, 27}},  {28, {0, 1, 28}},        {29, {0, 2, 29}},
        {30, {0, 1, 30}},        {31, {0, 3, 31}},        {32, {0, 2, 3, 7, 32}},  {33, {0, 10, 33}},
        {34, {0, 7, 34}},        {35, {0, 2, 35}},        {36, {0, 9, 36}},        {37, {0, 1, 4, 6, 37}},
        {38, {0, 1, 5, 6, 38}},  {39, {0, 4, 39}},        {40, {0, 3, 4, 5, 40}},  {41, {0, 3, 41}},
        {42, {0, 7, 42}},        {43, {0, 3, 4, 6, 43}},  {44, {0, 5, 44}},        {45, {0, 1, 3, 4, 45}},
        {46, {0, 1, 46}},        {47, {0, 5, 47}},        {48, {0, 2, 3, 5, 48}},  {49, {0, 9, 49}},
        {50, {0, 2, 3, 4, 50}},  {51, {0, 1, 3, 6, 51}},  {52, {0, 3, 52}},        {53, {0, 1, 2, 6, 53}},
        {54, {0, 9, 54}},        {55, {0, 7, 55}},        {56, {0, 2, 4, 7, 56}},  {57, {0, 4, 57}},
        {58, {0, 19, 58}},       {59, {0, 2, 4, 7, 59}},  {60, {0, 1, 60}},        {61, {0, 1, 2, 5, 61}},
        {62, {0, 29, 62}},       {63, {0, 1, 63}},        {64, {0, 1, 3, 4, 64}},  {128, {0, 1, 2, 7, 128}},
        {256, {0, 121, 178, 241, 256}},
    };
    return polys;
}

}  // namespace

std::array<std::uint64_t, 2> clmul64(std::uint64_t a, std::uint64_t b) noexcept {
    std::uint64_t hi = 0;
    std::uint64_t lo = 0;
#ifdef RECOG_X86
    if (kHasPclmul) {
        lo = clmul64_hw(a, b, hi);
        return {lo, hi};
    }
#endif
    lo = clmul64_portable(a, b, hi);
    return {lo, hi};
}

// ---------------------------------------------------------------------------
// FieldElem

FieldElem::FieldElem(unsigned width) : width_(width) { check_width(width); }

FieldElem FieldElem::from_u64(std::uint64_t value, unsigned width) {
    FieldElem e(width);
    if (width < 64 && (value >> width) != 0) throw Error(Errc::contract_violation, "value does not fit in width");
    e.words_[0] = value;
    return e;
}

FieldElem FieldElem::from_bytes(std::span<const std::uint8_t> bytes, unsigned width) {
    FieldElem e(width);
    const std::size_t nbytes = (width + 7) / 8;
    if (bytes.size() != nbytes) throw Error(Errc::contract_violation, "byte length does not match width");
    for (std::size_t i = 0; i < nbytes; ++i) {
        const std::size_t byte_index = nbytes - 1 - i;  // little-endian position
        e.words_[byte_index / 8] |= std::uint64_t{bytes[i]} << (8 * (byte_index % 8));
    }
    const unsigned nw = words_for(width);
    if ((e.words_[nw - 1] & ~top_mask(width)) != 0) throw Error(Errc::contract_violation, "bits set above width");
    return e;
}

FieldElem FieldElem::from_hex(std::string_view hex, unsigned width) {
    if (hex.starts_with("0x") || hex.starts_with("0X")) hex.remove_prefix(2);
    FieldElem e(width);
    if (hex.empty()) throw Error(Errc::contract_violation, "empty hex string");
    unsigned pos = 0;
    for (auto it = hex.rbegin(); it != hex.rend(); ++it, pos += 4) {
        const char c = *it;
        unsigned v = 0;
        if (c >= '0' && c <= '9') v = static_cast<unsigned>(c - '0');
        else if (c >= 'a' && c <= 'f') v = static_cast<unsigned>(c - 'a' + 10);
        else if (c >= 'A' && c <= 'F') v = static_cast<unsigned>(c - 'A' + 10);
        else throw Error(Errc::contract_violation, "invalid hex digit");
        for (unsigned b = 0; b < 4; ++b) {
            if (((v >> b) & 1U) == 0) continue;
            if (pos + b >= width) throw Error(Errc::contract_violation, "hex value does not fit in width");
            e.set_bit(pos + b, true);
        }
    }
    return e;
}

bool FieldElem::is_zero() const noexcept {
    return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
}

void FieldElem::set_bit(unsigned i, bool v) noexcept {
    const std::uint64_t m = std::uint64_t{1} << (i % 64);
    if (v) words_[i / 64] |= m;
    else words_[i / 64] &= ~m;
}

std::uint64_t FieldElem::to_u64() const {
    if (width_ > 64) throw Error(Errc::contract_violation, "element wider than 64 bits");
    return words_[0];
}

std::vector<std::uint8_t> FieldElem::to_bytes() const {
    const std::size_t nbytes = (width_ + 7) / 8;
    std::vector<std::uint8_t> out(nbytes);
    for (std::size_t i = 0; i < nbytes; ++i) {
        const std::size_t byte_index = nbytes - 1 - i;
        out[i] = static_cast<std::uint8_t>(words_[byte_index / 8] >> (8 * (byte_index % 8)));
    }
    return out;
}

std::string FieldElem::to_hex() const {
    static constexpr char digits[] = "0123456789abcdef";
    const unsigned ndigits = (width_ + 3) / 4;
    std::string out(ndigits, '0');
    for (unsigned d = 0; d < ndigits; ++d) {
        const unsigned v = static_cast<unsigned>((words_[(4 * d) / 64] >> ((4 * d) % 64)) & 0xF);
        out[ndigits - 1 - d] = digits[v];
    }
    return out;
}

// ---------------------------------------------------------------------------
// FieldSpec

FieldSpec::FieldSpec(unsigned width, std::vector<unsigned> reduction) : width_(width), reduction_(std::move(reduction)) {
    check_width(width);
    std::sort(reduction_.begin(), reduction_.end());
    reduction_.erase(std::unique(reduction_.begin(), reduction_.end()), reduction_.end());
    if (reduction_.empty() || reduction_.front() != 0 || reduction_.back() != width)
        throw Error(Errc::contract_violation, "reduction polynomial must contain exponents 0 and width");
    tail_.assign(reduction_.rbegin() + 1, reduction_.rend());
}

bool FieldSpec::has_standard(unsigned w) noexcept { return standard_polys().contains(w); }

const FieldSpec& FieldSpec::standard(unsigned w) {
    static const std::map<unsigned, FieldSpec> fields = [] {
        std::map<unsigned, FieldSpec> m;
        for (const auto& [width, poly] : standard_polys()) m.emplace(width, FieldSpec(width, poly));
        return m;
    }();
    const auto it = fields.find(w);
    if (it == fields.end()) throw Error(Errc::unsupported, "no field defined for width " + std::to_string(w));
    return it->second;
}

FieldElem FieldSpec::add(const FieldElem& a, const FieldElem& b) const {
    if (!conforms(a) || !conforms(b)) throw Error(Errc::contract_violation, "field width mismatch in add");
    FieldElem r(width_);
    for (std::size_t i = 0; i < FieldElem::kWords; ++i) r.words_[i] = a.words_[i] ^ b.words_[i];
    return r;
}

FieldElem FieldSpec::mul(const FieldElem& a, const FieldElem& b) const {
    if (!conforms(a) || !conforms(b)) throw Error(Errc::contract_violation, "field width mismatch in mul");
    const unsigned nw = words_for(width_);
    Wide p{};
    for (unsigned i = 0; i < nw; ++i) {
        if (a.words_[i] == 0) continue;
        for (unsigned j = 0; j < nw; ++j) {
            const auto [lo, hi] = clmul64(a.words_[i], b.words_[j]);
            p[i + j] ^= lo;
            p[i + j + 1] ^= hi;
        }
    }
    return reduce(p);
}

FieldElem FieldSpec::reduce(Wide& p) const {
    const unsigned nw = words_for(width_);
    const unsigned pw = 2 * nw;
    const unsigned ws = width_ / 64;
    const unsigned bs = width_ % 64;
    const std::uint64_t mask = top_mask(width_);
    for (;;) {
        // high = p >> width
        Wide high{};
        bool any = false;
        for (unsigned i = 0; i + ws < pw; ++i) {
            std::uint64_t v = p[i + ws] >> bs;
            if (bs != 0 && i + ws + 1 < pw) v |= p[i + ws + 1] << (64 - bs);
            high[i] = v;
            any |= v != 0;
        }
        if (!any) break;
        p[nw - 1] &= mask;
        for (unsigned i = nw; i < pw; ++i) p[i] = 0;
        for (unsigned e : tail_) xor_shifted_left(p, high, e, pw);
    }
    FieldElem r(width_);
    for (unsigned i = 0; i < nw; ++i) r.words_[i] = p[i];
    return r;
}

FieldElem FieldSpec::pow(FieldElem base, std::uint64_t exp) const {
    if (!conforms(base)) throw Error(Errc::contract_violation, "field width mismatch in pow");
    FieldElem r = one();
    while (exp != 0) {
        if (exp & 1U) r = mul(r, base);
        base = mul(base, base);
        exp >>= 1;
    }
    return r;
}

FieldElem FieldSpec::inv(const FieldElem& a) const {
    if (!conforms(a)) throw Error(Errc::contract_violation, "field width mismatch in inv");
    if (a.is_zero()) throw Error(Errc::zero_inverse, "zero has no inverse");
    // a^(2^w - 2) = prod_{i=1}^{w-1} a^(2^i)
    FieldElem t = a;
    FieldElem r = one();
    for (unsigned i = 1; i < width_; ++i) {
        t = mul(t, t);
        r = mul(r, t);
    }
    return r;
}

FieldElem FieldSpec::poly_eval(std::span<const FieldElem> coeffs, const FieldElem& x) const {
    if (coeffs.empty()) throw Error(Errc::contract_violation, "polynomial has no coefficients");
    if (!conforms(x)) throw Error(Errc::contract_violation, "field width mismatch in poly_eval");
    FieldElem acc = coeffs.back();
    if (!conforms(acc)) throw Error(Errc::contract_violation, "field width mismatch in poly_eval");
    for (std::size_t i = coeffs.size() - 1; i-- > 0;) acc = add(mul(acc, x), coeffs[i]);
    return acc;
}

FieldElem trunc_m(const FieldElem& y, unsigned m) {
    if (m == 0 || m > y.width()) throw Error(Errc::contract_violation, "truncation width exceeds element width");
    FieldElem r(m);
    const unsigned nw = words_for(m);
    for (unsigned i = 0; i < nw; ++i) r.words_[i] = y.words()[i];
    r.words_[nw - 1] &= top_mask(m);
    return r;
}

}  // namespace recog
