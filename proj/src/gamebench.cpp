#include "recog/gamebench.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <thread>
#include <unordered_set>

#include "json.hpp"
#include "recog/errors.hpp"

namespace recog {

namespace {

FieldElem random_item(unsigned n, RandomSource& rng) {
    std::vector<std::uint8_t> buf((n + 7) / 8);
    rng.fill(buf);
    buf[0] &= static_cast<std::uint8_t>(0xFFU >> (8 * buf.size() - n));
    return FieldElem::from_bytes(buf, n);
}

std::vector<FieldElem> random_distinct_items(unsigned n, std::size_t count, RandomSource& rng) {
    std::vector<FieldElem> out;
    while (out.size() < count) {
        auto x = random_item(n, rng);
        if (std::find(out.begin(), out.end(), x) == out.end()) out.push_back(x);
    }
    return out;
}

bool contains(const std::vector<FieldElem>& v, const FieldElem& x) { return std::find(v.begin(), v.end(), x) != v.end(); }

class RandomQueryAdversary : public Adversary {
public:
    std::string name() const override { return "random"; }

    std::vector<FieldElem> choose_items(const RecognizerParams& p, RandomSource& rng) const override {
        return random_distinct_items(p.n, p.N, rng);
    }

    std::optional<FieldElem> attack(MembershipOracle& oracle, const std::vector<FieldElem>& items,
                                    const RecognizerParams& p, std::size_t budget, RandomSource& rng) const override {
        std::optional<FieldElem> last;
        std::vector<FieldElem> asked;
        while (asked.size() < budget) {
            auto x = random_item(p.n, rng);
            if (contains(items, x) || contains(asked, x)) continue;
            asked.push_back(x);
            if (oracle.query(x)) return x;
            last = x;
        }
        return last;
    }
};

class NearMissAdversary : public Adversary {
public:
    std::string name() const override { return "near-miss"; }

    std::vector<FieldElem> choose_items(const RecognizerParams& p, RandomSource& rng) const override {
        return random_distinct_items(p.n, p.N, rng);
    }

    std::optional<FieldElem> attack(MembershipOracle& oracle, const std::vector<FieldElem>& items,
                                    const RecognizerParams& p, std::size_t budget, RandomSource& /*rng*/) const override {
        std::optional<FieldElem> last;
        std::size_t asked = 0;
        // Flip bit b of item j, cycling through items before bits.
        for (unsigned b = 0; b < p.n && asked < budget; ++b) {
            for (std::size_t j = 0; j < items.size() && asked < budget; ++j) {
                FieldElem x = items[j];
                x.set_bit(b, !x.bit(b));
                if (contains(items, x) || oracle.was_queried(x)) continue;
                ++asked;
                if (oracle.query(x)) return x;
                last = x;
            }
        }
        return last;
    }
};

class AdaptiveRepeatAdversary : public Adversary {
public:
    std::string name() const override { return "adaptive-repeat"; }

    std::vector<FieldElem> choose_items(const RecognizerParams& p, RandomSource& rng) const override {
        return random_distinct_items(p.n, p.N, rng);
    }

    std::optional<FieldElem> attack(MembershipOracle& oracle, const std::vector<FieldElem>& items,
                                    const RecognizerParams& p, std::size_t budget, RandomSource& rng) const override {
        std::optional<FieldElem> last;
        while (oracle.distinct_queries() < budget) {
            auto x = random_item(p.n, rng);
            if (contains(items, x) || oracle.was_queried(x)) continue;
            if (oracle.query(x) && oracle.query(x)) return x;
            last = x;
        }
        return last;
    }
};

struct TrialOutcome {
    bool success = false;
    std::size_t queries = 0;
};

TrialOutcome play_trial(const RecognizerParams& params, const RecognizerParams& init_params, const Adversary& adv,
                        std::uint64_t trial_seed) {
    SeededRandom rng(trial_seed);
    auto chosen = adv.choose_items(params, rng);
    const ItemSet items(chosen);
    require(items.size() == params.N, "adversary chose the wrong number of items");
    const auto inst = rec_init(items, init_params, rng);
    MembershipOracle oracle(inst);
    const auto out = adv.attack(oracle, chosen, params, params.q, rng);
    TrialOutcome t;
    t.queries = oracle.distinct_queries();
    // Scored as the game defines it: |Q| <= q, x in Q, x not in M, test(x) = y.
    if (out && t.queries <= params.q && oracle.was_queried(*out) && !items.contains(*out))
        t.success = rec_test(inst.db, inst.key, *out, init_params) == inst.fingerprint;
    return t;
}

}  // namespace

bool MembershipOracle::query(const FieldElem& x) {
    if (!was_queried(x)) queries_.push_back(x);
    return rec_test(inst_.db, inst_.key, x, inst_.params) == inst_.fingerprint;
}

bool MembershipOracle::was_queried(const FieldElem& x) const { return contains(queries_, x); }

std::unique_ptr<Adversary> make_random_query_adversary() { return std::make_unique<RandomQueryAdversary>(); }
std::unique_ptr<Adversary> make_near_miss_adversary() { return std::make_unique<NearMissAdversary>(); }
std::unique_ptr<Adversary> make_adaptive_repeat_adversary() { return std::make_unique<AdaptiveRepeatAdversary>(); }

std::unique_ptr<Adversary> make_adversary(std::string_view name) {
    if (name == "random") return make_random_query_adversary();
    if (name == "near-miss") return make_near_miss_adversary();
    if (name == "adaptive-repeat") return make_adaptive_repeat_adversary();
    return nullptr;
}

double CollisionReport::sigma() const {
    if (trials == 0) return 0.0;
    return std::sqrt(bound * (1.0 - bound) / static_cast<double>(trials));
}

CollisionReport run_collision_mc(const RecognizerParams& params, const Adversary& adversary, std::uint64_t trials,
                                 std::uint64_t seed, unsigned threads) {
    require(trials >= 1, "need at least one trial");
    RecognizerParams init_params = params;
    init_params.q = std::max(params.q, 1U);
    init_params.validate();

    std::vector<TrialOutcome> outcomes(trials);
    const unsigned workers = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(trials)));
    auto run_range = [&](std::uint64_t begin, std::uint64_t end) {
        for (std::uint64_t t = begin; t < end; ++t)
            outcomes[t] = play_trial(params, init_params, adversary, split_seed(seed, t));
    };
    if (workers == 1) {
        run_range(0, trials);
    } else {
        std::vector<std::jthread> pool;
        const std::uint64_t chunk = (trials + workers - 1) / workers;
        for (unsigned w = 0; w < workers; ++w) {
            const std::uint64_t b = w * chunk;
            const std::uint64_t e = std::min<std::uint64_t>(trials, b + chunk);
            if (b < e) pool.emplace_back(run_range, b, e);
        }
    }

    CollisionReport r;
    r.params = params;
    r.adversary = adversary.name();
    r.seed = seed;
    r.trials = trials;
    for (const auto& o : outcomes) {
        r.successes += o.success ? 1 : 0;
        r.max_queries = std::max(r.max_queries, o.queries);
    }
    r.empirical = static_cast<double>(r.successes) / static_cast<double>(trials);
    r.bound = static_cast<double>(compute_epsilon(params.N, params.q, params.m));
    return r;
}

bool disclosure_replay(const ItemSet& m0, const ItemSet& m1, const RecognizerParams& params, std::uint64_t seed) {
    require(m0.size() == params.N && m1.size() == params.N, "candidate sets must both hold N items");
    SeededRandom r0(seed);
    SeededRandom r1(seed);
    const auto i0 = rec_init(m0, params, r0);
    const auto i1 = rec_init(m1, params, r1);
    if (i0.db.size() != i1.db.size()) return false;
    for (std::size_t i = 0; i < i0.db.size(); ++i)
        if (i0.db[i].to_bytes() != i1.db[i].to_bytes()) return false;
    return true;
}

std::uint64_t universality_census(unsigned n, unsigned m, unsigned k) {
    if (k == 0 || n == 0 || n * k > 20) throw Error(Errc::refused, "census needs 1 <= k and n*k <= 20");
    require(m >= 1 && m < n, "census needs 1 <= m < n");
    require(k <= (1U << n), "more inputs than field elements");
    const FieldSpec& f = FieldSpec::standard(n);

    std::vector<FieldElem> xs;
    for (unsigned i = 0; i < k; ++i) xs.push_back(FieldElem::from_u64(i, n));

    std::vector<std::uint64_t> cells(std::size_t{1} << (m * k), 0);
    const std::uint64_t vectors = std::uint64_t{1} << (n * k);
    const std::uint64_t mask = (std::uint64_t{1} << n) - 1;
    std::vector<FieldElem> coeffs(k, f.zero());
    for (std::uint64_t v = 0; v < vectors; ++v) {
        for (unsigned i = 0; i < k; ++i) coeffs[i] = FieldElem::from_u64((v >> (n * i)) & mask, n);
        const CoeffVector db(n, coeffs);
        std::size_t cell = 0;
        for (unsigned i = 0; i < k; ++i) cell |= uhash_eval(db, m, xs[i]).to_u64() << (m * i);
        ++cells[cell];
    }
    const std::uint64_t expected = vectors >> (m * k);
    std::uint64_t worst = 0;
    for (const auto c : cells) worst = std::max(worst, c > expected ? c - expected : expected - c);
    return worst;
}

bool lemma_scan(unsigned m, const std::vector<FieldElem>& roots) {
    require(m >= 2 && m <= 16, "lemma scan needs 2 <= m <= 16");
    require(roots.size() > 1 && roots.size() < (std::size_t{1} << m), "need 1 < |roots| < 2^m");
    for (const auto& r : roots) require(r.width() == m, "root width differs from m");
    const auto [key, y] = build_key(roots);  // rejects duplicates
    std::vector<FieldElem> preimage;
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << m); ++v) {
        const auto x = FieldElem::from_u64(v, m);
        if (eval_fingerprint_poly(key, x) == y.value) preimage.push_back(x);
    }
    if (preimage.size() != roots.size()) return false;
    return std::all_of(roots.begin(), roots.end(), [&](const FieldElem& r) { return contains(preimage, r); });
}

std::string report_json(const CollisionReport& r) {
    const nlohmann::json j = {
        {"adversary", r.adversary},
        {"bound", r.bound},
        {"empirical", r.empirical},
        {"max_queries", r.max_queries},
        {"params", {{"N", r.params.N}, {"m", r.params.m}, {"n", r.params.n}, {"q", r.params.q}}},
        {"seed", r.seed},
        {"sigma", r.sigma()},
        {"successes", r.successes},
        {"trials", r.trials},
    };
    return j.dump();
}

std::string report_table(const CollisionReport& r) {
    char buf[512];
    std::snprintf(buf, sizeof buf,
                  "adversary    %s\n"
                  "params       n=%u N=%u q=%u m=%u\n"
                  "trials       %llu\n"
                  "successes    %llu\n"
                  "empirical    %.6f\n"
                  "bound        %.6f\n"
                  "sigma        %.6f\n"
                  "max |Q|      %zu\n",
                  r.adversary.c_str(), r.params.n, r.params.N, r.params.q, r.params.m,
                  static_cast<unsigned long long>(r.trials), static_cast<unsigned long long>(r.successes), r.empirical,
                  r.bound, r.sigma(), r.max_queries);
    return buf;
}

}  // namespace recog
