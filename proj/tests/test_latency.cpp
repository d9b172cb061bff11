#include "oracles.hpp"

#include "delayed_hits/latency.hpp"
#include "delayed_hits/policies.hpp"

#include <doctest.h>

using namespace delayed_hits;

TEST_CASE("all misses on a burst")
{
    const auto l = delayed_hits_latency({3, 3, 3}, 3, HitSequence{0, 0, 0});
    CHECK(l.per_request == std::vector<Latency>{3, 2, 1});
    CHECK(l.total == 6);
}

TEST_CASE("hit at the head of a burst")
{
    const RequestSequence sigma{3, 3, 3};
    const HitSequence b{1, 0, 0};
    // Standard: t=2 starts its own fetch, t=3 rides it.
    CHECK(delayed_hits_latency(sigma, 3, b).per_request == std::vector<Latency>{0, 3, 2});
    CHECK(delayed_hits_latency(sigma, 3, b).total == 5);
    // Fetch-on-hit: the hit at t=1 already sent a fetch.
    CHECK(antimonotone_latency(sigma, 3, b).per_request == std::vector<Latency>{0, 2, 1});
    CHECK(antimonotone_latency(sigma, 3, b).total == 3);
}

TEST_CASE("idle bits count as hits whatever their value")
{
    const RequestSequence sigma{2, 0, 2};
    CHECK(delayed_hits_latency(sigma, 2, HitSequence{0, 0, 0}).total == delayed_hits_latency(sigma, 2, HitSequence{0, 1, 0}).total);
    CHECK(delayed_hits_latency(sigma, 2, HitSequence{0, 0, 0}).per_request == std::vector<Latency>{2, 0, 2});
}

TEST_CASE("every miss sends its own fetch")
{
    // Z=2: t=1's fetch is back before t=3, which rides the one sent at t=2.
    CHECK(delayed_hits_latency({4, 4, 4}, 2, HitSequence{0, 0, 0}).per_request == std::vector<Latency>{2, 1, 1});
    CHECK(delayed_hits_latency({4, 0, 4}, 2, HitSequence{0, 1, 0}).per_request == std::vector<Latency>{2, 0, 2});
}

TEST_CASE("length mismatch")
{
    CHECK_THROWS_AS(delayed_hits_latency({1, 2}, 3, HitSequence{0}), LengthMismatch);
    CHECK_THROWS_AS(antimonotone_latency({1, 2}, 3, HitSequence{0, 0, 0}), LengthMismatch);
    CHECK_THROWS_AS(dominates(HitSequence{0}, HitSequence{0, 1}), LengthMismatch);
}

TEST_CASE("dominates")
{
    CHECK(dominates(HitSequence{0, 1, 0}, HitSequence{1, 1, 0}));
    CHECK(dominates(HitSequence{0, 1}, HitSequence{0, 1}));
    CHECK_FALSE(dominates(HitSequence{1, 0}, HitSequence{0, 1}));
}

TEST_CASE("closed forms match the engine in both modes")
{
    std::mt19937_64 rng(31337);
    for (int round = 0; round < 500; ++round) {
        const Item k = std::uniform_int_distribution<Item>(1, 4)(rng);
        const Item n = std::uniform_int_distribution<Item>(k + 1, 8)(rng);
        const Time Z = std::uniform_int_distribution<Time>(1, 8)(rng);
        const RequestSequence sigma(oracle::random_items(rng, n, std::uniform_int_distribution<std::size_t>(1, 50)(rng)));
        for (Mode mode : {Mode::Standard, Mode::Antimonotone}) {
            RandomPolicy policy(rng());
            const auto run = simulate(ModelParams{n, k, Z, mode}, sigma, policy);
            const auto closed = mode == Mode::Standard ? delayed_hits_latency(sigma, Z, run.hit_sequence)
                                                       : antimonotone_latency(sigma, Z, run.hit_sequence);
            REQUIRE(closed.per_request == run.per_request_latency);
            REQUIRE(closed.total == run.total_latency);
        }
    }
}

TEST_CASE("fetch-on-hit latency is pointwise at most the standard one")
{
    std::mt19937_64 rng(4);
    for (int round = 0; round < 500; ++round) {
        const Time Z = std::uniform_int_distribution<Time>(1, 8)(rng);
        const auto items = oracle::random_items(rng, 5, 40);
        std::vector<std::uint8_t> bits(items.size());
        for (auto& bit : bits) {
            bit = static_cast<std::uint8_t>(rng() % 2);
        }
        const RequestSequence sigma(items);
        const HitSequence b(bits);
        const auto standard = delayed_hits_latency(sigma, Z, b);
        const auto fetch_on_hit = antimonotone_latency(sigma, Z, b);
        for (std::size_t i = 0; i < items.size(); ++i) {
            CHECK(fetch_on_hit.per_request[i] <= standard.per_request[i]);
        }
    }
}

TEST_CASE("fetch-on-hit latency never rises when a miss becomes a hit")
{
    std::mt19937_64 rng(8);
    for (int round = 0; round < 500; ++round) {
        const Time Z = std::uniform_int_distribution<Time>(1, 8)(rng);
        const RequestSequence sigma(oracle::random_items(rng, 4, 30));
        std::vector<std::uint8_t> bits(sigma.size());
        for (auto& bit : bits) {
            bit = static_cast<std::uint8_t>(rng() % 2);
        }
        const HitSequence b(bits);
        const Latency base = antimonotone_latency(sigma, Z, b).total;
        for (Time t = 1; t <= static_cast<Time>(sigma.size()); ++t) {
            if (!b.at(t)) {
                HitSequence flipped = b;
                flipped.set(t, true);
                CHECK(antimonotone_latency(sigma, Z, flipped).total <= base);
            }
        }
    }
}

TEST_CASE("with Z = 1 both forms count misses")
{
    std::mt19937_64 rng(12);
    for (int round = 0; round < 200; ++round) {
        const RequestSequence sigma(oracle::random_items(rng, 6, 30));
        std::vector<std::uint8_t> bits(sigma.size());
        Latency misses = 0;
        for (std::size_t i = 0; i < bits.size(); ++i) {
            bits[i] = static_cast<std::uint8_t>(rng() % 2);
            misses += (!bits[i] && sigma.items()[i] != kNoItem) ? 1 : 0;
        }
        CHECK(delayed_hits_latency(sigma, 1, HitSequence(bits)).total == misses);
        CHECK(antimonotone_latency(sigma, 1, HitSequence(bits)).total == misses);
    }
}
