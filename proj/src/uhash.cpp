#include "recog/uhash.hpp"

#include "recog/errors.hpp"

namespace recog {

CoeffVector::CoeffVector(unsigned n, std::vector<FieldElem> coeffs) : n_(n), coeffs_(std::move(coeffs)) {
    require(!coeffs_.empty(), "coefficient vector is empty");
    for (const auto& c : coeffs_) require(c.width() == n_, "coefficient width differs from n");
}

CoeffVector sample_coeffs(unsigned n, std::size_t k, RandomSource& rng) {
    require(k >= 1, "need at least one coefficient");
    require(FieldSpec::has_standard(n), "no field for this item width");
    const std::size_t nbytes = (n + 7) / 8;
    const unsigned spare = static_cast<unsigned>(8 * nbytes - n);
    std::vector<FieldElem> coeffs;
    coeffs.reserve(k);
    std::vector<std::uint8_t> buf(nbytes);
    for (std::size_t i = 0; i < k; ++i) {
        rng.fill(buf);
        buf[0] &= static_cast<std::uint8_t>(0xFFU >> spare);
        coeffs.push_back(FieldElem::from_bytes(buf, n));
    }
    return CoeffVector(n, std::move(coeffs));
}

FieldElem uhash_eval(const CoeffVector& db, unsigned m, const FieldElem& x) {
    require(m >= 1 && m < db.n(), "hash output width must satisfy 1 <= m < n");
    require(x.width() == db.n(), "item width differs from n");
    const FieldSpec& f = FieldSpec::standard(db.n());
    return trunc_m(f.poly_eval(db.coeffs(), x), m);
}

}  // namespace recog
