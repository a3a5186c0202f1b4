#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace recog {

/// Largest supported element width in bits.
inline constexpr unsigned kMaxWidth = 256;

/// A bit string of `width` bits, read as a polynomial over GF(2): bit i is
/// the coefficient of x^i. Bits above `width` are always zero.
class FieldElem {
public:
    static constexpr std::size_t kWords = kMaxWidth / 64;

    FieldElem() = default;

    /// Zero element of the given width.
    explicit FieldElem(unsigned width);

    /// Low bits of `value`; throws if `value` does not fit in `width` bits.
    static FieldElem from_u64(std::uint64_t value, unsigned width);

    /// Big-endian bytes (most significant byte first). `bytes.size()` must
    /// equal ceil(width / 8) and the unused top bits must be zero.
    static FieldElem from_bytes(std::span<const std::uint8_t> bytes, unsigned width);

    /// Parses lowercase or uppercase hex, big-endian, optional "0x" prefix.
    static FieldElem from_hex(std::string_view hex, unsigned width);

    unsigned width() const noexcept { return width_; }
    bool is_zero() const noexcept;
    bool bit(unsigned i) const noexcept { return (words_[i / 64] >> (i % 64)) & 1U; }
    void set_bit(unsigned i, bool v) noexcept;

    /// Value as an integer; throws if width > 64.
    std::uint64_t to_u64() const;

    std::vector<std::uint8_t> to_bytes() const;
    std::string to_hex() const;

    const std::array<std::uint64_t, kWords>& words() const noexcept { return words_; }

    friend bool operator==(const FieldElem&, const FieldElem&) = default;

private:
    friend class FieldSpec;
    friend FieldElem trunc_m(const FieldElem& y, unsigned m);
    std::array<std::uint64_t, kWords> words_{};
    unsigned width_ = 0;
};

/// GF(2^w) defined by a sparse irreducible polynomial over GF(2), given as
/// the list of exponents with nonzero coefficient.
class FieldSpec {
public:
    FieldSpec(unsigned width, std::vector<unsigned> reduction);

    /// The field this library uses for width `w`. Supported: 2..64, 128, 256.
    static const FieldSpec& standard(unsigned w);
    static bool has_standard(unsigned w) noexcept;

    unsigned width() const noexcept { return width_; }
    const std::vector<unsigned>& reduction() const noexcept { return reduction_; }

    FieldElem zero() const { return FieldElem(width_); }
    FieldElem one() const { return FieldElem::from_u64(1, width_); }

    bool conforms(const FieldElem& a) const noexcept { return a.width() == width_; }

    FieldElem add(const FieldElem& a, const FieldElem& b) const;
    FieldElem mul(const FieldElem& a, const FieldElem& b) const;
    FieldElem square(const FieldElem& a) const { return mul(a, a); }
    FieldElem pow(FieldElem base, std::uint64_t exp) const;
    FieldElem inv(const FieldElem& a) const;

    /// Horner evaluation of coeffs[0] + coeffs[1] x + ... at x.
    FieldElem poly_eval(std::span<const FieldElem> coeffs, const FieldElem& x) const;

private:
    // Product of two reduced elements before reduction, up to 2*256-1 bits.
    using Wide = std::array<std::uint64_t, 2 * FieldElem::kWords>;
    FieldElem reduce(Wide& p) const;

    unsigned width_;
    std::vector<unsigned> reduction_;
    std::vector<unsigned> tail_;  // reduction exponents below width_, descending
};

// Free-function spellings of the field operations.
inline FieldElem gf_add(const FieldElem& a, const FieldElem& b, const FieldSpec& f) { return f.add(a, b); }
inline FieldElem gf_mul(const FieldElem& a, const FieldElem& b, const FieldSpec& f) { return f.mul(a, b); }
inline FieldElem gf_inv(const FieldElem& a, const FieldSpec& f) { return f.inv(a); }
inline FieldElem gf_poly_eval(std::span<const FieldElem> coeffs, const FieldElem& x, const FieldSpec& f) {
    return f.poly_eval(coeffs, x);
}

/// The m least significant bits of y, as an m-bit element.
FieldElem trunc_m(const FieldElem& y, unsigned m);

/// Carry-less 64x64 -> 128 multiply, {low, high}. Uses PCLMULQDQ when the
/// CPU has it.
std::array<std::uint64_t, 2> clmul64(std::uint64_t a, std::uint64_t b) noexcept;

}  // namespace recog
