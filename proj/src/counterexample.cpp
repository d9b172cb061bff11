#include "delayed_hits/counterexample.hpp"

#include "delayed_hits/latency.hpp"

namespace delayed_hits {

Latency predicted_gap(Time Z)
{
    const Time z = Z / 2;
    return z * (Z - z) - Z;
}

BuildingBlock building_block(Time Z, Item k)
{
    if (Z < 1) {
        throw UnsupportedParameter("building block needs Z >= 1");
    }
    BuildingBlock block;
    block.z = Z / 2;
    std::vector<Item> items(static_cast<std::size_t>(Z), kNoItem);
    items[0] = k + 1;
    for (Time t = Z - block.z + 1; t <= Z; ++t) {
        items[static_cast<std::size_t>(t - 1)] = k + 1;
    }
    block.sequence = RequestSequence(std::move(items));
    const Time z = block.z;
    block.all_miss_latency = Z + z * (z + 1) / 2;
    block.first_hit_latency = (Z + 1) * z - z * (z + 1) / 2;
    block.gap = predicted_gap(Z);
    return block;
}

CounterexampleSpec counterexample_sequence(Time Z, Item k)
{
    if (Z < 5) {
        throw UnsupportedParameter("the counterexample needs Z >= 5 (got Z=" + std::to_string(Z) + ")");
    }
    if (k < 1) {
        throw UnsupportedParameter("the counterexample needs k >= 1");
    }
    CounterexampleSpec spec;
    spec.params = ModelParams{k + 2, k, Z, Mode::Standard};
    spec.z = Z / 2;
    spec.flip_time = Z + 1;
    spec.predicted_gap = predicted_gap(Z);

    const Item first = k + 1;
    const Item second = k + 2;
    // Padding blocks for items 2..k occupy [2Z + 2Zm - Z + 1, 2Z + 2Zm],
    // m = 1..k-1, and the final block for k+2 takes m = k.
    const Time T = 2 * Z + 2 * Z * static_cast<Time>(k);
    std::vector<Item> items(static_cast<std::size_t>(T), kNoItem);
    auto put = [&](Time t, Item item) { items[static_cast<std::size_t>(t - 1)] = item; };

    put(1, first);
    put(2, second);
    put(Z + 1, first);
    for (Time t = 2 * Z - spec.z + 1; t <= 2 * Z; ++t) {
        put(t, first);
    }
    auto block_for = [&](Time m, Item item) {
        const Time end = 2 * Z + 2 * Z * m;
        for (Time t = end - Z + 1; t <= end; ++t) {
            put(t, item);
        }
    };
    for (Item i = 2; i <= k; ++i) {
        block_for(static_cast<Time>(i - 1), i);
    }
    block_for(static_cast<Time>(k), second);
    spec.sigma_prime = RequestSequence(std::move(items));

    std::vector<std::uint8_t> bits(static_cast<std::size_t>(T), 1);
    for (Time t = 1; t <= 2 * Z; ++t) {
        if (spec.sigma_prime.at(t) != kNoItem) {
            bits[static_cast<std::size_t>(t - 1)] = 0;
        }
    }
    spec.b = HitSequence(bits);
    spec.b_prime = spec.b;
    spec.b_prime.set(spec.flip_time, true);

    // b: decline k+1, swap item 1 out for k+2 when it comes back at Z+1.
    spec.witness_b = EvictionSequence::none(static_cast<std::size_t>(T));
    spec.witness_b.set(Z + 1, 1);
    // b': cache k+1 at Z, then trade it for k+2 at Z+1.
    spec.witness_b_prime = EvictionSequence::none(static_cast<std::size_t>(T));
    spec.witness_b_prime.set(Z, 1);
    spec.witness_b_prime.set(Z + 1, first);

    std::vector<Item> targets;
    for (Item i = 2; i <= k; ++i) {
        targets.push_back(i);
    }
    targets.push_back(second);
    spec.static_targets_b = CacheState(std::move(targets));
    return spec;
}

namespace {

void require(bool condition, const std::string& what)
{
    if (!condition) {
        throw CounterexampleViolation(what);
    }
}

}  // namespace

CounterexampleReport verify_nonantimonotonicity(const CounterexampleSpec& spec, const VerifyOptions& options)
{
    CounterexampleReport report;
    const Time Z = spec.params.Z;

    report.b_dominated_by_b_prime = dominates(spec.b, spec.b_prime);
    require(report.b_dominated_by_b_prime, "b is not dominated by b'");
    for (Time t = 1; t <= static_cast<Time>(spec.b.size()); ++t) {
        if (spec.b.at(t) != spec.b_prime.at(t)) {
            report.differing_positions.push_back(t);
        }
    }
    require(report.differing_positions == std::vector<Time>{spec.flip_time},
            "b and b' must differ exactly at t=" + std::to_string(spec.flip_time));

    try {
        report.run_b = replay(spec.params, spec.sigma_prime, spec.witness_b);
        report.run_b_prime = replay(spec.params, spec.sigma_prime, spec.witness_b_prime);
    } catch (const InfeasibleEviction& e) {
        throw CounterexampleViolation(std::string("witness schedule is infeasible: ") + e.what());
    }
    require(report.run_b.hit_sequence == spec.b, "witness for b replays to " + report.run_b.hit_sequence.to_string());
    require(report.run_b_prime.hit_sequence == spec.b_prime,
            "witness for b' replays to " + report.run_b_prime.hit_sequence.to_string());

    report.latency_b = delayed_hits_latency(spec.sigma_prime, Z, spec.b).total;
    report.latency_b_prime = delayed_hits_latency(spec.sigma_prime, Z, spec.b_prime).total;
    require(report.latency_b == report.run_b.total_latency, "latency function disagrees with the replay of b");
    require(report.latency_b_prime == report.run_b_prime.total_latency, "latency function disagrees with the replay of b'");

    report.gap = report.latency_b_prime - report.latency_b;
    report.predicted_gap = spec.predicted_gap;
    require(report.gap == report.predicted_gap, "gap " + std::to_string(report.gap) + " differs from z(Z-z)-Z = " +
                                                    std::to_string(report.predicted_gap));
    require(report.gap > 0, "gap is not positive");

    report.antimonotone_b = antimonotone_latency(spec.sigma_prime, Z, spec.b).total;
    report.antimonotone_b_prime = antimonotone_latency(spec.sigma_prime, Z, spec.b_prime).total;
    require(report.antimonotone_b_prime <= report.antimonotone_b, "fetch-on-hit latency increased under b'");

    if (options.oracle_check) {
        report.oracle_checked = true;
        report.b_search_feasible = is_hit_sequence_feasible(spec.params, spec.sigma_prime, spec.b, options.limits).feasible;
        report.b_prime_search_feasible =
            is_hit_sequence_feasible(spec.params, spec.sigma_prime, spec.b_prime, options.limits).feasible;
        require(*report.b_search_feasible && *report.b_prime_search_feasible, "search could not realise b or b'");

        const OptResult opt = brute_force_opt(spec.params, spec.sigma_prime, options.limits);
        report.opt_latency = opt.min_latency;
        require(opt.min_latency == report.latency_b,
                "OPT is " + std::to_string(opt.min_latency) + " but latency(b) is " + std::to_string(report.latency_b));
        const auto optimal = optimal_hit_sequences(spec.params, spec.sigma_prime, options.limits);
        report.b_unique_optimal = optimal.size() == 1 && optimal.front() == spec.b;
        require(*report.b_unique_optimal, "b is not the unique optimal hit sequence");
    }
    return report;
}

}  // namespace delayed_hits
