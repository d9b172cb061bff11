#pragma once

// Discrete-time delayed-hits cache.
//
// Each timestep t has a request phase followed by a retrieval phase. In the
// request phase i_t either hits the cache or is queued as (i_t, t) and a fetch
// is dispatched that comes back in the retrieval phase of t + Z - 1. When a
// fetch comes back, every queued request for that item is served with latency
// t - t' + 1 and, if the item is not already resident, the policy decides
// whether to cache it and which resident item to evict.

#include "delayed_hits/types.hpp"

#include <deque>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace delayed_hits {

enum class RequestOutcome { Idle, Hit, Miss };

/// What a policy is allowed to see when the engine asks it for a decision.
/// `requests` and `evictions` are truncated at the current timestep, so an
/// online policy cannot look ahead even by accident.
struct DecisionContext {
    Time now = 0;
    Item returned = kNoItem;
    const CacheState& cache;
    std::span<const Item> requests;   // i_1 .. i_now
    std::span<const Item> evictions;  // j_1 .. j_{now-1}
};

class Policy {
public:
    virtual ~Policy() = default;

    virtual std::string name() const = 0;

    /// Called once per timestep t <= T after the request phase (idle slots
    /// included, with outcome Idle).
    virtual void observe_request(Time t, Item item, RequestOutcome outcome)
    {
        (void)t;
        (void)item;
        (void)outcome;
    }

    /// Returns 0 to leave the cache alone, or a resident item to evict in
    /// favour of `ctx.returned`.
    virtual Item choose_eviction(const DecisionContext& ctx) = 0;

    /// Called after `inserted` replaced `evicted` in the cache.
    virtual void observe_update(Time t, Item inserted, Item evicted)
    {
        (void)t;
        (void)inserted;
        (void)evicted;
    }
};

struct PendingRequest {
    Item item = kNoItem;
    Time requested_at = 0;
};

struct Fetch {
    Item item = kNoItem;
    Time dispatched_at = 0;
};

/// The queue Q of unserved requests plus the fetches still travelling.
struct InFlightQueue {
    std::vector<PendingRequest> pending;
    std::deque<Fetch> fetches;  // ordered by dispatch time

    bool empty() const { return pending.empty() && fetches.empty(); }
};

struct ServedRequest {
    Time requested_at = 0;
    Latency latency = 0;
};

/// Per-timestep trace entry returned by step().
struct StepRecord {
    Time t = 0;
    Item requested = kNoItem;
    RequestOutcome outcome = RequestOutcome::Idle;
    Item returned = kNoItem;
    std::vector<ServedRequest> served;
    bool decision_offered = false;
    Item evicted = kNoItem;
    bool inserted = false;
};

struct ModelState {
    explicit ModelState(const ModelParams& params);

    ModelParams params;
    Time clock = 0;
    CacheState cache;
    InFlightQueue queue;

    // Indexed by t - 1 for t = 1 .. clock (request-bearing timesteps only).
    std::vector<Item> requests;
    std::vector<Item> evictions;
    std::vector<std::uint8_t> hits;
    std::vector<Latency> latencies;
    std::vector<CacheState> cache_history;  // S_0 .. S_clock

    /// Timesteps run after the last request to empty the queue.
    Time drain_steps = 0;

    bool quiescent() const { return queue.empty(); }
};

struct SimulationResult {
    HitSequence hit_sequence;
    std::vector<Latency> per_request_latency;
    EvictionSequence eviction_sequence;
    std::vector<CacheState> cache_history;
    Latency total_latency = 0;
    Time drain_steps = 0;
};

/// Advances `state` by one timestep with request `requested` (0 for idle).
/// `t` must equal state.clock + 1.
StepRecord step(ModelState& state, Time t, Item requested, Policy& policy);

/// Retrieval-only timesteps until nothing is in flight. No caching decisions
/// are offered, since no request can follow.
void drain(ModelState& state);

SimulationResult finish(ModelState state);

SimulationResult simulate(const ModelParams& params, const RequestSequence& sequence, Policy& policy);

/// Runs `sequence` with the fixed eviction choices. Throws InfeasibleEviction
/// naming t and the item if a choice is not resident, or if a nonzero choice
/// is scheduled where no decision happens.
SimulationResult replay(const ModelParams& params, const RequestSequence& sequence, const EvictionSequence& evictions);

}  // namespace delayed_hits
