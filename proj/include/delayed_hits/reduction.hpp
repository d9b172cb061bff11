#pragma once

// Turns a policy A for the fetch-on-hit model with cache k into a policy B
// for the standard model with cache k + Z that is never slower, request by
// request.
//
// B runs its own copy of A on the fetch-on-hit model and keeps two groups of
// items: s0, A's current cache, and s1, items requested during the last Z
// timesteps that B holds. s1 covers exactly the requests A can still
// serve from a fetch that B never sent because B hit.

#include "delayed_hits/policies.hpp"

#include <optional>
#include <vector>

namespace delayed_hits {

struct ReductionState {
    CacheState s0;  // A's cache
    CacheState s1;  // recent requests held by B outside s0
};

class ReductionPolicy final : public Policy {
public:
    /// `inner_params` describes A (cache k, mode forced to Antimonotone).
    /// `window` is the recency horizon for s1, normally Z.
    ReductionPolicy(const PolicyFactory& inner, const ModelParams& inner_params, Time window);

    std::string name() const override;
    void observe_request(Time t, Item item, RequestOutcome outcome) override;
    Item choose_eviction(const DecisionContext& ctx) override;
    void observe_update(Time t, Item inserted, Item evicted) override;

    /// Snapshot after the latest decision.
    ReductionState snapshot() const;
    std::size_t max_protected() const { return max_protected_; }

private:
    CacheState protected_set(Time now) const;

    std::unique_ptr<Policy> inner_policy_;
    ModelState inner_;
    Time window_;
    CacheState outer_cache_;
    std::size_t max_protected_ = 0;
};

/// Parameters for B: cache k + window, standard model.
ModelParams reduction_params(const ModelParams& inner_params, Time window);

PolicyFactory wrap_reduction(const PolicyFactory& inner, const ModelParams& inner_params);
PolicyFactory wrap_reduction(const PolicyFactory& inner, const ModelParams& inner_params, Time window);

struct DominationViolation {
    Time t = 0;
    Latency inner_latency = 0;
    Latency wrapped_latency = 0;
};

struct DominationReport {
    ModelParams inner_params;
    ModelParams wrapped_params;
    SimulationResult inner_run;    // A, fetch-on-hit model, cache k
    SimulationResult wrapped_run;  // B, standard model, cache k + Z
    std::vector<DominationViolation> violations;
    std::size_t max_protected = 0;

    bool holds() const { return violations.empty(); }
};

/// Runs A and B on `sequence` and compares latencies timestep by timestep.
DominationReport verify_domination(const RequestSequence& sequence, const PolicyFactory& inner, const ModelParams& params);

}  // namespace delayed_hits
