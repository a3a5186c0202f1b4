#pragma once

#include <cstddef>
#include <vector>

#include "recog/gf2field.hpp"
#include "recog/random.hpp"

namespace recog {

/// Coefficients a_0..a_{k-1} of a random polynomial over GF(2^n); the public
/// database of a recognizer. db[i] multiplies x^i.
class CoeffVector {
public:
    CoeffVector(unsigned n, std::vector<FieldElem> coeffs);

    unsigned n() const noexcept { return n_; }
    std::size_t size() const noexcept { return coeffs_.size(); }
    const std::vector<FieldElem>& coeffs() const noexcept { return coeffs_; }
    const FieldElem& operator[](std::size_t i) const { return coeffs_[i]; }

    friend bool operator==(const CoeffVector&, const CoeffVector&) = default;

private:
    unsigned n_;
    std::vector<FieldElem> coeffs_;
};

/// k independent uniform n-bit field elements drawn from `rng`.
CoeffVector sample_coeffs(unsigned n, std::size_t k, RandomSource& rng);

/// h_db(x) = trunc_m(db[0] + db[1] x + ... + db[k-1] x^(k-1)) over GF(2^n).
/// Requires m < n and x of width n.
FieldElem uhash_eval(const CoeffVector& db, unsigned m, const FieldElem& x);

}  // namespace recog
