#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "recog/recognizer.hpp"

namespace recog {

/// Black-box test oracle of the collision game. Answers only whether
/// test(db, k, x) equals the stored fingerprint, and records the set of
/// distinct queries.
class MembershipOracle {
public:
    explicit MembershipOracle(const RecognizerInstance& inst) : inst_(inst) {}

    bool query(const FieldElem& x);
    std::size_t distinct_queries() const noexcept { return queries_.size(); }
    bool was_queried(const FieldElem& x) const;

private:
    const RecognizerInstance& inst_;
    std::vector<FieldElem> queries_;
};

/// A collision-game strategy. Implementations keep no state between trials.
class Adversary {
public:
    virtual ~Adversary() = default;
    virtual std::string name() const = 0;
    /// The N distinct items to store.
    virtual std::vector<FieldElem> choose_items(const RecognizerParams& params, RandomSource& rng) const = 0;
    /// Runs queries against the oracle and names the item it claims is
    /// wrongly recognized. `budget` is q.
    virtual std::optional<FieldElem> attack(MembershipOracle& oracle, const std::vector<FieldElem>& items,
                                            const RecognizerParams& params, std::size_t budget,
                                            RandomSource& rng) const = 0;
};

/// q distinct uniformly random non-members; outputs the first hit.
std::unique_ptr<Adversary> make_random_query_adversary();
/// Non-members at Hamming distance 1 from the stored items.
std::unique_ptr<Adversary> make_near_miss_adversary();
/// Random queries; on a hit, asks again before answering. Repeats do not
/// grow the query set.
std::unique_ptr<Adversary> make_adaptive_repeat_adversary();
/// "random" | "near-miss" | "adaptive-repeat"; nullptr when unknown.
std::unique_ptr<Adversary> make_adversary(std::string_view name);

struct CollisionReport {
    RecognizerParams params;
    std::string adversary;
    std::uint64_t seed = 0;
    std::uint64_t trials = 0;
    std::uint64_t successes = 0;
    double empirical = 0.0;
    double bound = 0.0;
    std::size_t max_queries = 0;  // largest |Q| seen in any trial

    double sigma() const;  // binomial standard error at the bound
};

/// Plays the collision game `trials` times. Trial t draws all randomness
/// from split_seed(seed, t), so results do not depend on scheduling.
/// A budget of q = 0 is allowed here: the database then holds N + 1
/// coefficients and no query is possible.
CollisionReport run_collision_mc(const RecognizerParams& params, const Adversary& adversary, std::uint64_t trials,
                                 std::uint64_t seed, unsigned threads = 1);

/// rec_init(M0) and rec_init(M1) under the same seed give byte-identical
/// databases.
bool disclosure_replay(const ItemSet& m0, const ItemSet& m1, const RecognizerParams& params, std::uint64_t seed);

/// Counts (h(x_1), ..., h(x_k)) over every coefficient vector in
/// GF(2^n)^k for x_i = i - 1; returns the largest deviation of a cell from
/// 2^(nk) * 2^(-mk). Refuses when n*k > 20 or k = 0.
std::uint64_t universality_census(unsigned n, unsigned m, unsigned k);

/// True iff the fingerprint polynomial built from `roots` takes the
/// fingerprint value exactly on `roots`, checked over all of GF(2^m).
bool lemma_scan(unsigned m, const std::vector<FieldElem>& roots);

std::string report_json(const CollisionReport& r);
std::string report_table(const CollisionReport& r);

}  // namespace recog
