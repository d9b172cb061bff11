// Acceptance suite. Prints one line per criterion and exits nonzero if any
// criterion fails or runs over its time limit.

#include "delayed_hits/adversary.hpp"
#include "delayed_hits/counterexample.hpp"
#include "delayed_hits/latency.hpp"
#include "delayed_hits/policies.hpp"
#include "delayed_hits/reduction.hpp"
#include "delayed_hits/search.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

using namespace delayed_hits;

namespace {

struct Verdict {
    bool ok = true;
    std::string detail;
    std::string failure;

    void require(bool condition, const std::string& what)
    {
        if (!condition && ok) {
            ok = false;
            failure = what;
        }
    }
};

struct Criterion {
    int id;
    std::string title;
    double limit_seconds;
    std::function<Verdict()> body;
};

template <typename... Args>
std::string cat(Args&&... args)
{
    std::ostringstream out;
    (out << ... << args);
    return out.str();
}

struct Instance {
    ModelParams params;
    RequestSequence sigma;
};

Instance random_instance(std::mt19937_64& rng, Time Z_lo, Time Z_hi, std::size_t max_T)
{
    const Item k = std::uniform_int_distribution<Item>(1, 4)(rng);
    const Item n = std::uniform_int_distribution<Item>(k + 1, 8)(rng);
    const Time Z = std::uniform_int_distribution<Time>(Z_lo, Z_hi)(rng);
    const std::size_t T = std::uniform_int_distribution<std::size_t>(1, max_T)(rng);
    std::bernoulli_distribution idle(0.25);
    std::uniform_int_distribution<Item> pick(1, n);
    std::vector<Item> items(T);
    for (auto& item : items) {
        item = idle(rng) ? kNoItem : pick(rng);
    }
    return {ModelParams{n, k, Z, Mode::Standard}, RequestSequence(std::move(items))};
}

std::unique_ptr<Policy> random_shipped_policy(std::mt19937_64& rng, const Instance& instance)
{
    switch (rng() % 6) {
    case 0:
        return lru_policy();
    case 1:
        return fifo_policy();
    case 2:
        return never_cache_policy();
    case 3: {
        std::vector<Item> targets;
        for (Item item = 1; item <= instance.params.n && targets.size() < instance.params.k; ++item) {
            if (rng() % 2) {
                targets.push_back(item);
            }
        }
        return static_policy(CacheState(std::move(targets)), instance.params.k);
    }
    case 4:
        return belady_classical(instance.sigma);
    default:
        return random_policy(rng());
    }
}

Verdict latency_function_equivalence()
{
    Verdict v;
    std::mt19937_64 rng(1001);
    const int cases = 1000;
    for (int c = 0; c < cases && v.ok; ++c) {
        const Instance instance = random_instance(rng, 1, 8, 50);
        for (Mode mode : {Mode::Standard, Mode::Antimonotone}) {
            ModelParams params = instance.params;
            params.mode = mode;
            auto policy = random_shipped_policy(rng, instance);
            const auto run = simulate(params, instance.sigma, *policy);
            const Latency closed = mode == Mode::Standard ? delayed_hits_latency(instance.sigma, params.Z, run.hit_sequence).total
                                                          : antimonotone_latency(instance.sigma, params.Z, run.hit_sequence).total;
            v.require(closed == run.total_latency, cat("case ", c, " ", to_string(mode), ": simulated ", run.total_latency,
                                                       ", closed form ", closed));
        }
    }
    v.detail = cat(cases, " instances x 2 modes");
    return v;
}

Verdict burst_identity()
{
    Verdict v;
    int runs = 0;
    for (Time Z = 1; Z <= 10; ++Z) {
        for (Item k = 1; k <= 4; ++k) {
            const RequestSequence burst(std::vector<Item>(static_cast<std::size_t>(Z), k + 1));
            const ModelParams params{k + 1, k, Z, Mode::Standard};
            for (const auto& name : policy_names()) {
                PolicyOptions options;
                options.future = burst;
                auto policy = policy_factory(name, params, options)();
                const Latency total = simulate(params, burst, *policy).total_latency;
                v.require(total == Z * (Z + 1) / 2, cat(name, " Z=", Z, " k=", k, ": ", total));
                ++runs;
            }
        }
    }
    v.detail = cat(runs, " bursts, Z=1..10, k=1..4");
    return v;
}

Verdict competitive_ratio()
{
    Verdict v;
    int runs = 0;
    for (const auto& [name, factory] : {std::pair<std::string, PolicyFactory>{"lru", lru_policy}, {"fifo", fifo_policy}}) {
        for (Item k = 1; k <= 4; ++k) {
            for (Time Z = 2; Z <= 10; ++Z) {
                const auto report = build_adversarial_sequence(factory, ModelParams{k + 1, k, Z, Mode::Standard});
                const std::string where = cat(name, " k=", k, " Z=", Z, ": ");
                const auto K = static_cast<std::int64_t>(k);
                v.require(report.terminated && report.marked.size() == k, where + "marking did not reach k");
                v.require(report.policy_latency >= Z + K * Z * (Z + 1) / 2, where + cat("policy latency ", report.policy_latency));
                v.require(report.opt_latency == Z, where + cat("witness latency ", report.opt_latency));
                v.require(Rational::reduced(2 + K * (Z + 1), 2) <= report.ratio, where + "ratio below 1 + k(Z+1)/2");
                ++runs;
            }
        }
    }
    const auto report = build_adversarial_sequence(lru_policy, ModelParams{3, 2, 3, Mode::Standard});
    const Latency opt = brute_force_opt(report.params, report.sigma).min_latency;
    v.require(opt == 3, cat("exhaustive OPT at k=2, Z=3 is ", opt));
    v.detail = cat(runs, " adversaries; exhaustive OPT(k=2, Z=3) = ", opt);
    return v;
}

Verdict non_antimonotonicity()
{
    Verdict v;
    int runs = 0;
    for (Time Z = 5; Z <= 12; ++Z) {
        for (Item k = 1; k <= 3; ++k) {
            const std::string where = cat("Z=", Z, " k=", k, ": ");
            try {
                const auto report = verify_nonantimonotonicity(counterexample_sequence(Z, k));
                const Time z = Z / 2;
                v.require(report.gap == z * (Z - z) - Z && report.gap > 0, where + cat("gap ", report.gap));
            } catch (const CounterexampleViolation& e) {
                v.require(false, where + e.what());
            }
            ++runs;
        }
    }
    const auto spec = counterexample_sequence(5, 1);
    const auto opt = brute_force_opt(spec.params, spec.sigma_prime);
    const Latency lb = delayed_hits_latency(spec.sigma_prime, 5, spec.b).total;
    const auto optimal = optimal_hit_sequences(spec.params, spec.sigma_prime);
    v.require(opt.min_latency == 18 && lb == 18, cat("Z=5 k=1: OPT ", opt.min_latency, ", latency(b) ", lb));
    v.require(optimal.size() == 1 && optimal.front() == spec.b, cat("Z=5 k=1: ", optimal.size(), " optimal hit sequences"));
    v.require(is_hit_sequence_feasible(spec.params, spec.sigma_prime, spec.b).feasible &&
                  is_hit_sequence_feasible(spec.params, spec.sigma_prime, spec.b_prime).feasible,
              "Z=5 k=1: search cannot realise b or b'");
    v.detail = cat(runs, " instances; OPT(Z=5, k=1) = ", opt.min_latency, ", ", optimal.size(), " optimal hit sequence");
    return v;
}

Verdict fetch_on_hit_antimonotone()
{
    Verdict v;
    std::mt19937_64 rng(5005);
    const int cases = 10000;
    std::size_t flips = 0;
    for (int c = 0; c < cases && v.ok; ++c) {
        const Instance instance = random_instance(rng, 1, 8, 50);
        const Time Z = instance.params.Z;
        std::vector<std::uint8_t> bits(instance.sigma.size());
        for (auto& bit : bits) {
            bit = static_cast<std::uint8_t>(rng() % 2);
        }
        const HitSequence b(bits);
        const Latency base = antimonotone_latency(instance.sigma, Z, b).total;
        for (Time t = 1; t <= static_cast<Time>(bits.size()); ++t) {
            if (!b.at(t)) {
                HitSequence up = b;
                up.set(t, true);
                const Latency after = antimonotone_latency(instance.sigma, Z, up).total;
                v.require(after <= base, cat("flip case ", c, " t=", t, ": ", base, " -> ", after));
                ++flips;
            }
        }
        // Comparable pair: b' sets a random subset of b's zeros.
        HitSequence up = b;
        for (Time t = 1; t <= static_cast<Time>(bits.size()); ++t) {
            if (!b.at(t) && rng() % 2) {
                up.set(t, true);
            }
        }
        const Latency after = antimonotone_latency(instance.sigma, Z, up).total;
        v.require(dominates(b, up) && after <= base, cat("pair case ", c, ": ", base, " -> ", after));
    }
    v.detail = cat(cases, " sequences, ", flips, " single flips, ", cases, " comparable pairs");
    return v;
}

Verdict reduction_domination()
{
    Verdict v;
    std::mt19937_64 rng(6006);
    const int cases = 1000;
    std::size_t compared = 0;
    for (int c = 0; c < cases && v.ok; ++c) {
        const Instance instance = random_instance(rng, 1, 8, 200);
        for (const auto& [name, inner] : {std::pair<std::string, PolicyFactory>{"lru", lru_policy}, {"fifo", fifo_policy}}) {
            const auto report = verify_domination(instance.sigma, inner, instance.params);
            if (!report.holds()) {
                const auto& first = report.violations.front();
                v.require(false, cat("case ", c, " ", name, " t=", first.t, ": A ", first.inner_latency, ", B ",
                                     first.wrapped_latency));
            }
            compared += instance.sigma.size();
        }
    }
    v.detail = cat(cases, " sequences x {lru, fifo}, ", compared, " requests compared");
    return v;
}

Verdict classical_collapse()
{
    Verdict v;
    std::mt19937_64 rng(7007);
    const int cases = 500;
    for (int c = 0; c < cases && v.ok; ++c) {
        const Instance instance = random_instance(rng, 1, 1, 50);
        auto policy = random_shipped_policy(rng, instance);
        const auto run = simulate(instance.params, instance.sigma, *policy);
        Latency misses = 0;
        for (Time t = 1; t <= static_cast<Time>(instance.sigma.size()); ++t) {
            misses += instance.sigma.at(t) != kNoItem && !run.hit_sequence.at(t) ? 1 : 0;
        }
        v.require(run.total_latency == misses, cat("case ", c, ": latency ", run.total_latency, ", misses ", misses));

        auto belady = belady_classical(instance.sigma);
        const Latency b = simulate(instance.params, instance.sigma, *belady).total_latency;
        const Latency opt = brute_force_opt(instance.params, instance.sigma).min_latency;
        v.require(b == opt, cat("case ", c, ": belady ", b, ", OPT ", opt));
    }
    v.detail = cat(cases, " instances");
    return v;
}

}  // namespace

int main()
{
    const std::vector<Criterion> criteria{
        {1, "latency function equals simulated latency", 10, latency_function_equivalence},
        {2, "cold burst costs Z(Z+1)/2", 1, burst_identity},
        {3, "adversary forces ratio 1 + k(Z+1)/2", 30, competitive_ratio},
        {4, "one extra hit raises latency by z(Z-z)-Z", 60, non_antimonotonicity},
        {5, "fetch-on-hit latency is antimonotone", 10, fetch_on_hit_antimonotone},
        {6, "cache k+Z wrapper dominates pointwise", 30, reduction_domination},
        {7, "Z=1 collapses to classical caching", 10, classical_collapse},
    };

    int failed = 0;
    for (const auto& criterion : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Verdict verdict;
        try {
            verdict = criterion.body();
        } catch (const std::exception& e) {
            verdict.ok = false;
            verdict.failure = cat("exception: ", e.what());
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool in_time = seconds < criterion.limit_seconds;
        const bool pass = verdict.ok && in_time;
        failed += pass ? 0 : 1;
        std::printf("[%s] %d %s: %s (%.2f s, limit %.0f s)\n", pass ? "PASS" : "FAIL", criterion.id, criterion.title.c_str(),
                    verdict.ok ? verdict.detail.c_str() : verdict.failure.c_str(), seconds, criterion.limit_seconds);
        if (verdict.ok && !in_time) {
            std::printf("       over the time limit\n");
        }
    }
    std::printf("%zu/%zu criteria passed\n", criteria.size() - static_cast<std::size_t>(failed), criteria.size());
    return failed == 0 ? 0 : 1;
}
