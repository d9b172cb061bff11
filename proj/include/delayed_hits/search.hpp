#pragma once

// Exhaustive offline search over eviction schedules for small instances.
//
// Decision points only arise at retrieval phases where the returned item is
// not resident, with k + 1 choices each (decline, or evict one resident item).
// Reachable configurations are memoised on (time, cache, in-flight fetches),
// which keeps the search exact while collapsing schedules that converge.

#include "delayed_hits/model.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

namespace delayed_hits {

struct SearchLimits {
    std::size_t max_nodes = std::size_t{1} << 22;
};

class SearchBudgetExceeded : public std::runtime_error {
public:
    explicit SearchBudgetExceeded(std::size_t limit)
        : std::runtime_error("instance too large: search exceeded " + std::to_string(limit) + " nodes")
        , limit_(limit)
    {
    }
    std::size_t limit() const { return limit_; }

private:
    std::size_t limit_;
};

struct OptResult {
    Latency min_latency = 0;
    EvictionSequence witness_evictions;
    HitSequence witness_hits;
    std::size_t nodes = 0;
};

/// Exact minimum latency over all feasible eviction schedules. Among equally
/// good choices the smallest one (decline first, then by item) is reported.
OptResult brute_force_opt(const ModelParams& params, const RequestSequence& sequence, const SearchLimits& limits = {});

struct FeasibilityResult {
    bool feasible = false;
    std::optional<EvictionSequence> witness;
};

/// Whether some eviction schedule realises exactly `b`. Idle slots always
/// read as hits, so a 0 there is infeasible.
FeasibilityResult is_hit_sequence_feasible(const ModelParams& params, const RequestSequence& sequence, const HitSequence& b,
                                           const SearchLimits& limits = {});

/// Every distinct hit sequence attaining the optimum, in lexicographic
/// order. Throws SearchBudgetExceeded if more than `max_sequences` exist.
std::vector<HitSequence> optimal_hit_sequences(const ModelParams& params, const RequestSequence& sequence,
                                               const SearchLimits& limits = {}, std::size_t max_sequences = 256);

}  // namespace delayed_hits
