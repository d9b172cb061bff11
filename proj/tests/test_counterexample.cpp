#include "delayed_hits/counterexample.hpp"
#include "delayed_hits/latency.hpp"
#include "delayed_hits/policies.hpp"

#include <doctest.h>

using namespace delayed_hits;

TEST_CASE("building block closed forms match the latency function")
{
    for (Time Z = 1; Z <= 20; ++Z) {
        const BuildingBlock block = building_block(Z);
        const auto all_miss = HitSequence::all_zeros(block.sequence.size()).normalized(block.sequence);
        HitSequence first_hit = all_miss;
        first_hit.set(1, true);
        CHECK(delayed_hits_latency(block.sequence, Z, all_miss).total == block.all_miss_latency);
        CHECK(delayed_hits_latency(block.sequence, Z, first_hit).total == block.first_hit_latency);
        CHECK(block.first_hit_latency - block.all_miss_latency == block.gap);
    }
    const BuildingBlock five = building_block(5);
    CHECK(five.z == 2);
    CHECK(five.all_miss_latency == 8);
    CHECK(five.first_hit_latency == 9);
}

TEST_CASE("layout for k = 1, Z = 6")
{
    const auto spec = counterexample_sequence(6, 1);
    CHECK(spec.params.n == 3);
    CHECK(spec.params.k == 1);
    CHECK(spec.z == 3);
    CHECK(spec.flip_time == 7);
    CHECK(spec.sigma_prime ==
          RequestSequence{2, 3, 0, 0, 0, 0, 2, 0, 0, 2, 2, 2, 0, 0, 0, 0, 0, 0, 3, 3, 3, 3, 3, 3});
    CHECK(spec.b.to_string() == "001111011000111111111111");
}

TEST_CASE("k = 1, Z = 6 has gap 3")
{
    const auto report = verify_nonantimonotonicity(counterexample_sequence(6, 1));
    CHECK(report.latency_b == 24);
    CHECK(report.latency_b_prime == 27);
    CHECK(report.gap == 3);
    CHECK(report.differing_positions == std::vector<Time>{7});
    CHECK_FALSE(report.oracle_checked);
}

TEST_CASE("gap identity over Z and k")
{
    for (Time Z = 5; Z <= 12; ++Z) {
        for (Item k = 1; k <= 3; ++k) {
            const auto spec = counterexample_sequence(Z, k);
            CHECK(spec.sigma_prime.size() == static_cast<std::size_t>(2 * Z + 2 * Z * k));
            const auto report = verify_nonantimonotonicity(spec);
            const Time z = Z / 2;
            CHECK(report.gap == z * (Z - z) - Z);
            CHECK(report.gap > 0);
            CHECK(report.run_b.hit_sequence == spec.b);
            CHECK(report.run_b_prime.hit_sequence == spec.b_prime);
            CHECK(report.antimonotone_b_prime <= report.antimonotone_b);
        }
    }
}

TEST_CASE("the static target set realises b")
{
    for (Item k = 1; k <= 3; ++k) {
        const auto spec = counterexample_sequence(7, k);
        auto policy = static_policy(spec.static_targets_b, k);
        CHECK(simulate(spec.params, spec.sigma_prime, *policy).hit_sequence == spec.b);
    }
}

TEST_CASE("exhaustive search confirms the smallest instance")
{
    VerifyOptions options;
    options.oracle_check = true;
    const auto report = verify_nonantimonotonicity(counterexample_sequence(5, 1), options);
    CHECK(report.oracle_checked);
    CHECK(report.opt_latency == 18);
    CHECK(report.latency_b == 18);
    CHECK(*report.b_unique_optimal);
    CHECK(*report.b_search_feasible);
    CHECK(*report.b_prime_search_feasible);
}

TEST_CASE("gap grows like Z squared over four")
{
    Latency previous = 0;
    for (Time Z : {16, 32, 64}) {
        const Latency gap = verify_nonantimonotonicity(counterexample_sequence(Z, 1)).gap;
        // Exactly 1/4 - 1/Z for even Z.
        CHECK(4 * gap == Z * Z - 4 * Z);
        CHECK(gap > previous);
        previous = gap;
    }
}

TEST_CASE("small Z is rejected")
{
    CHECK_THROWS_AS(counterexample_sequence(4, 1), UnsupportedParameter);
    CHECK_THROWS_AS(counterexample_sequence(6, 0), UnsupportedParameter);
    CHECK_THROWS_AS(building_block(0), UnsupportedParameter);
}

TEST_CASE("a tampered witness is reported")
{
    auto spec = counterexample_sequence(6, 1);
    spec.witness_b.set(spec.flip_time, 0);
    CHECK_THROWS_AS(verify_nonantimonotonicity(spec), CounterexampleViolation);

    auto extra = counterexample_sequence(6, 1);
    extra.b_prime.set(extra.params.Z * 2, true);
    CHECK_THROWS_AS(verify_nonantimonotonicity(extra), CounterexampleViolation);
}
