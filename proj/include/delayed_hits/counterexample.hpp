#pragma once

// A trace on which turning one miss into a hit raises total latency.
//
// The building block requests k+1 once and then z = floor(Z/2) more times at
// the end of the same Z-window. If the first request misses, its fetch
// serves the later ones early; if it hits, each later request pays almost Z.

#include "delayed_hits/search.hpp"

#include <optional>
#include <stdexcept>

namespace delayed_hits {

struct BuildingBlock {
    RequestSequence sequence;
    Time z = 0;
    Latency all_miss_latency = 0;   // Z + z(z+1)/2
    Latency first_hit_latency = 0;  // (Z+1)z - z(z+1)/2
    Latency gap = 0;                // z(Z-z) - Z
};

BuildingBlock building_block(Time Z, Item k = 1);

/// z(Z - z) - Z with z = floor(Z/2).
Latency predicted_gap(Time Z);

struct CounterexampleSpec {
    ModelParams params;
    Time z = 0;
    RequestSequence sigma_prime;
    HitSequence b;
    HitSequence b_prime;
    Time flip_time = 0;  // Z + 1, the only coordinate where b and b' differ
    Latency predicted_gap = 0;
    EvictionSequence witness_b;
    EvictionSequence witness_b_prime;
    /// The static cache whose run realises b.
    CacheState static_targets_b;
};

/// Requires Z >= 5 and k >= 1; n is set to k + 2. Items 2..k each get a
/// Z-long block, consecutive blocks starting 2Z apart after the burst.
CounterexampleSpec counterexample_sequence(Time Z, Item k = 1);

struct CounterexampleReport {
    bool b_dominated_by_b_prime = false;
    std::vector<Time> differing_positions;
    SimulationResult run_b;
    SimulationResult run_b_prime;
    Latency latency_b = 0;
    Latency latency_b_prime = 0;
    Latency gap = 0;
    Latency predicted_gap = 0;
    Latency antimonotone_b = 0;
    Latency antimonotone_b_prime = 0;

    bool oracle_checked = false;
    std::optional<Latency> opt_latency;
    std::optional<bool> b_unique_optimal;
    std::optional<bool> b_search_feasible;
    std::optional<bool> b_prime_search_feasible;
};

class CounterexampleViolation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct VerifyOptions {
    bool oracle_check = false;
    SearchLimits limits;
};

/// Checks b <= b' with one differing coordinate, certifies both hit sequences
/// by replaying their witnesses, and checks the latency gap identity. With
/// oracle_check, also runs the exhaustive search (throws SearchBudgetExceeded
/// when the instance is too large).
CounterexampleReport verify_nonantimonotonicity(const CounterexampleSpec& spec, const VerifyOptions& options = {});

}  // namespace delayed_hits
