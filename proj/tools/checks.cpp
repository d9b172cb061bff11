#include "checks.hpp"

#include "delayed_hits/latency.hpp"
#include "delayed_hits/policies.hpp"
#include "delayed_hits/reduction.hpp"

#include <algorithm>

namespace dhsim {

using namespace delayed_hits;

RequestSequence random_sequence(std::mt19937_64& rng, Item n, std::size_t length, double idle_probability)
{
    std::bernoulli_distribution idle(idle_probability);
    std::uniform_int_distribution<Item> item(1, n);
    std::vector<Item> items(length);
    for (auto& slot : items) {
        slot = idle(rng) ? kNoItem : item(rng);
    }
    return RequestSequence(std::move(items));
}

RandomInstance random_instance(std::mt19937_64& rng, const InstanceSpace& space)
{
    RandomInstance out;
    out.params.k = std::uniform_int_distribution<Item>(1, space.max_k)(rng);
    out.params.n = std::uniform_int_distribution<Item>(out.params.k + 1, std::max(space.max_n, out.params.k + 1))(rng);
    out.params.Z = std::uniform_int_distribution<Time>(1, space.max_Z)(rng);
    const auto T = std::uniform_int_distribution<std::size_t>(1, space.max_T)(rng);
    out.sequence = random_sequence(rng, out.params.n, T, space.idle_probability);
    return out;
}

namespace {

nlohmann::json describe(const ModelParams& params, const RequestSequence& sequence)
{
    return {{"n", params.n},
            {"k", params.k},
            {"Z", params.Z},
            {"mode", to_string(params.mode)},
            {"sequence", std::vector<Item>(sequence.items().begin(), sequence.items().end())}};
}

std::unique_ptr<Policy> pick_policy(std::mt19937_64& rng, const RequestSequence& sequence, std::string& name)
{
    static const char* const names[] = {"lru", "fifo", "never", "belady", "random"};
    name = names[std::uniform_int_distribution<int>(0, 4)(rng)];
    if (name == "lru") {
        return lru_policy();
    }
    if (name == "fifo") {
        return fifo_policy();
    }
    if (name == "never") {
        return never_cache_policy();
    }
    if (name == "belady") {
        return belady_classical(sequence);
    }
    return random_policy(rng());
}

// Simulated latency equals the closed form evaluated on the simulated hits.
std::optional<nlohmann::json> latency_case(std::mt19937_64& rng, double idle, std::size_t& checks)
{
    InstanceSpace space;
    space.idle_probability = idle;
    RandomInstance instance = random_instance(rng, space);
    instance.params.mode = std::bernoulli_distribution(0.5)(rng) ? Mode::Antimonotone : Mode::Standard;
    std::string name;
    auto policy = pick_policy(rng, instance.sequence, name);
    const SimulationResult run = simulate(instance.params, instance.sequence, *policy);
    const LatencyBreakdown closed = instance.params.mode == Mode::Standard
                                        ? delayed_hits_latency(instance.sequence, instance.params.Z, run.hit_sequence)
                                        : antimonotone_latency(instance.sequence, instance.params.Z, run.hit_sequence);
    ++checks;
    if (closed.total == run.total_latency && closed.per_request == run.per_request_latency) {
        return std::nullopt;
    }
    auto failure = describe(instance.params, instance.sequence);
    failure["policy"] = name;
    failure["hit_sequence"] = run.hit_sequence.to_string();
    failure["simulated"] = run.total_latency;
    failure["closed_form"] = closed.total;
    return failure;
}

// Flipping a miss to a hit never raises the fetch-on-hit latency, and neither
// does any larger set of flips.
std::optional<nlohmann::json> antimono_case(std::mt19937_64& rng, double idle, std::size_t& checks)
{
    const Item n = std::uniform_int_distribution<Item>(1, 8)(rng);
    const Time Z = std::uniform_int_distribution<Time>(1, 8)(rng);
    const auto T = std::uniform_int_distribution<std::size_t>(1, 50)(rng);
    const RequestSequence sequence = random_sequence(rng, n, T, idle);

    std::bernoulli_distribution coin(0.5);
    std::vector<std::uint8_t> bits(T);
    for (auto& bit : bits) {
        bit = coin(rng) ? 1 : 0;
    }
    const HitSequence b(bits);
    const Latency base = antimonotone_latency(sequence, Z, b).total;

    auto fail = [&](const HitSequence& higher, Latency value) {
        auto failure = describe(ModelParams{n, 1, Z, Mode::Antimonotone}, sequence);
        failure["b"] = b.to_string();
        failure["b_prime"] = higher.to_string();
        failure["latency_b"] = base;
        failure["latency_b_prime"] = value;
        return failure;
    };

    for (std::size_t i = 0; i < T; ++i) {
        if (bits[i]) {
            continue;
        }
        HitSequence flipped = b;
        flipped.set(static_cast<Time>(i + 1), true);
        const Latency value = antimonotone_latency(sequence, Z, flipped).total;
        ++checks;
        if (value > base) {
            return fail(flipped, value);
        }
    }

    std::vector<std::uint8_t> upper = bits;
    for (auto& bit : upper) {
        bit = bit || coin(rng) ? 1 : 0;
    }
    const HitSequence b_prime(upper);
    const Latency value = antimonotone_latency(sequence, Z, b_prime).total;
    ++checks;
    if (!dominates(b, b_prime) || value > base) {
        return fail(b_prime, value);
    }
    return std::nullopt;
}

std::optional<nlohmann::json> reduction_case(std::mt19937_64& rng, double idle, std::size_t& checks)
{
    InstanceSpace space;
    space.max_T = 200;
    space.idle_probability = idle;
    RandomInstance instance = random_instance(rng, space);
    const bool use_lru = std::bernoulli_distribution(0.5)(rng);
    const PolicyFactory inner = use_lru ? PolicyFactory(lru_policy) : PolicyFactory(fifo_policy);
    const DominationReport report = verify_domination(instance.sequence, inner, instance.params);
    checks += instance.sequence.size();
    if (report.holds()) {
        return std::nullopt;
    }
    auto failure = describe(instance.params, instance.sequence);
    failure["policy"] = use_lru ? "lru" : "fifo";
    const auto& v = report.violations.front();
    failure["violation"] = {{"t", v.t}, {"inner_latency", v.inner_latency}, {"wrapped_latency", v.wrapped_latency}};
    return failure;
}

}  // namespace

SuiteOutcome run_suite(const std::string& suite, std::size_t cases, std::uint64_t seed, double idle_probability)
{
    using CaseFn = std::optional<nlohmann::json> (*)(std::mt19937_64&, double, std::size_t&);
    CaseFn fn = nullptr;
    if (suite == "latency") {
        fn = latency_case;
    } else if (suite == "antimono") {
        fn = antimono_case;
    } else if (suite == "reduction") {
        fn = reduction_case;
    } else {
        throw std::invalid_argument("unknown suite '" + suite + "' (expected latency|antimono|reduction)");
    }
    if (idle_probability < 0.0 || idle_probability > 1.0) {
        throw std::invalid_argument("idle probability must lie in [0, 1]");
    }

    SuiteOutcome outcome;
    outcome.suite = suite;
    outcome.cases = cases;
    std::mt19937_64 rng(seed);
    for (std::size_t i = 0; i < cases; ++i) {
        auto failure = fn(rng, idle_probability, outcome.checks);
        if (!failure) {
            ++outcome.passed;
        } else if (!outcome.first_failure_case) {
            outcome.first_failure_case = i;
            outcome.first_failure = std::move(*failure);
        }
    }
    return outcome;
}

}  // namespace dhsim
