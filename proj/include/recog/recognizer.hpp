#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <utility>
#include <vector>

#include "recog/gf2field.hpp"
#include "recog/random.hpp"
#include "recog/uhash.hpp"

namespace recog {

/// (n, N, q, m): item bits, stored-item count, phishing budget, fingerprint bits.
struct RecognizerParams {
    unsigned n = 256;
    unsigned N = 2;
    unsigned q = 100;
    unsigned m = 21;

    /// Throws Errc::invalid_params unless q >= 1, m < n, 1 < N < 2^m and
    /// fields exist for widths n and m.
    void validate() const;

    std::size_t db_size() const noexcept { return std::size_t{q} + N; }
    unsigned key_bits() const noexcept { return (N - 1) * m; }

    friend bool operator==(const RecognizerParams&, const RecognizerParams&) = default;
};

/// (epsilon, t). The construction is secure against unbounded adversaries,
/// so t is always infinite and carried only for display.
struct SecurityLevel {
    double epsilon = 3e-4;
    double time_bound = std::numeric_limits<double>::infinity();
};

/// N distinct n-bit items.
class ItemSet {
public:
    /// Throws Errc::contract_violation on duplicates or mixed widths.
    explicit ItemSet(std::vector<FieldElem> items);

    std::size_t size() const noexcept { return items_.size(); }
    unsigned width() const noexcept { return items_.front().width(); }
    const std::vector<FieldElem>& items() const noexcept { return items_; }
    bool contains(const FieldElem& x) const;

private:
    std::vector<FieldElem> items_;
};

/// The secret coefficients a_1..a_{N-1} of the monic fingerprint polynomial
/// x^N + a_{N-1} x^{N-1} + ... + a_1 x.
class Key {
public:
    Key(unsigned m, std::vector<FieldElem> coeffs);

    unsigned m() const noexcept { return m_; }
    /// Number of stored items this key was built for.
    unsigned item_count() const noexcept { return static_cast<unsigned>(coeffs_.size()) + 1; }
    unsigned bit_length() const noexcept { return m_ * static_cast<unsigned>(coeffs_.size()); }
    /// coeffs()[i] is a_{i+1}.
    const std::vector<FieldElem>& coeffs() const noexcept { return coeffs_; }

    /// The key as one (N-1)*m bit string a_{N-1} || ... || a_1, so a_1 holds
    /// the least significant bits.
    FieldElem to_bits() const;
    static Key from_bits(const FieldElem& bits, unsigned m);

    friend bool operator==(const Key&, const Key&) = default;

private:
    unsigned m_;
    std::vector<FieldElem> coeffs_;
};

struct Fingerprint {
    FieldElem value;
    friend bool operator==(const Fingerprint&, const Fingerprint&) = default;
};

struct RecognizerInstance {
    RecognizerParams params;
    CoeffVector db;
    Key key;
    Fingerprint fingerprint;
};

/// Expands prod (x - h_i) + prod h_i over GF(2^m). Returns the key
/// (coefficients of x^1..x^{N-1}) and the fingerprint prod h_i.
std::pair<Key, Fingerprint> build_key(std::span<const FieldElem> hatted);

/// Evaluates the fingerprint polynomial for `key` at the hashed value.
FieldElem eval_fingerprint_poly(const Key& key, const FieldElem& hatted);

/// Draws the database, hashes the items, and derives key and fingerprint.
/// The database is resampled (up to kMaxInitAttempts draws) when two items
/// hash to the same m-bit value.
RecognizerInstance rec_init(const ItemSet& items, const RecognizerParams& params, RandomSource& rng);

inline constexpr int kMaxInitAttempts = 64;

Fingerprint rec_test(const CoeffVector& db, const Key& key, const FieldElem& x, const RecognizerParams& params);

/// 1 - (1 - N/2^m)^q.
long double compute_epsilon(std::uint64_t N, std::uint64_t q, unsigned m);

/// Smallest m with 2^m > N and compute_epsilon(N, q, m) <= eps_target.
unsigned select_m(std::uint64_t N, std::uint64_t q, double eps_target);

}  // namespace recog
