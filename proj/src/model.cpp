#include "delayed_hits/model.hpp"

#include <algorithm>

namespace delayed_hits {

ModelState::ModelState(const ModelParams& p) : params(p), cache(CacheState::initial(p.k))
{
    params.validate();
    cache_history.push_back(cache);
}

namespace {

void request_phase(ModelState& state, Time t, Item requested, StepRecord& record)
{
    record.requested = requested;
    if (requested == kNoItem) {
        record.outcome = RequestOutcome::Idle;
        return;
    }
    const bool hit = state.cache.contains(requested);
    record.outcome = hit ? RequestOutcome::Hit : RequestOutcome::Miss;
    if (!hit) {
        state.queue.pending.push_back({requested, t});
    }
    if (!hit || state.params.mode == Mode::Antimonotone) {
        state.queue.fetches.push_back({requested, t});
    }
}

// Returns the item whose fetch comes back at t, or 0.
Item collect_return(ModelState& state, Time t, StepRecord& record)
{
    auto& fetches = state.queue.fetches;
    const Time dispatch = t - state.params.Z + 1;
    if (fetches.empty() || fetches.front().dispatched_at != dispatch) {
        return kNoItem;
    }
    const Item item = fetches.front().item;
    fetches.pop_front();
    record.returned = item;

    auto& pending = state.queue.pending;
    auto keep = pending.begin();
    for (auto it = pending.begin(); it != pending.end(); ++it) {
        if (it->item == item) {
            const Latency latency = t - it->requested_at + 1;
            state.latencies[static_cast<std::size_t>(it->requested_at - 1)] = latency;
            record.served.push_back({it->requested_at, latency});
        } else {
            *keep++ = *it;
        }
    }
    pending.erase(keep, pending.end());
    return item;
}

}  // namespace

StepRecord step(ModelState& state, Time t, Item requested, Policy& policy)
{
    if (t != state.clock + 1) {
        throw ContractViolation("step at t=" + std::to_string(t) + " but the model clock is at " + std::to_string(state.clock));
    }
    if (state.drain_steps != 0) {
        throw ContractViolation("cannot take requests after the model has drained");
    }
    if (requested > state.params.n) {
        throw ContractViolation("request for item " + std::to_string(requested) + " exceeds n=" + std::to_string(state.params.n));
    }

    StepRecord record;
    record.t = t;
    state.clock = t;
    state.requests.push_back(requested);
    state.hits.push_back(1);
    state.latencies.push_back(0);
    state.evictions.push_back(kNoItem);

    request_phase(state, t, requested, record);
    if (record.outcome == RequestOutcome::Miss) {
        state.hits.back() = 0;
    }
    policy.observe_request(t, requested, record.outcome);

    const Item returned = collect_return(state, t, record);
    if (returned != kNoItem && !state.cache.contains(returned)) {
        record.decision_offered = true;
        const DecisionContext ctx{t, returned, state.cache, state.requests,
                                  std::span<const Item>(state.evictions).first(state.evictions.size() - 1)};
        const Item victim = policy.choose_eviction(ctx);
        if (victim != kNoItem) {
            if (!state.cache.contains(victim)) {
                throw InfeasibleEviction(t, victim, "not resident in " + state.cache.to_string());
            }
            state.cache.erase(victim);
            state.cache.insert(returned);
            state.evictions.back() = victim;
            record.evicted = victim;
            record.inserted = true;
            policy.observe_update(t, returned, victim);
        }
    }
    if (state.cache.size() != state.params.k) {
        throw ContractViolation("cache holds " + std::to_string(state.cache.size()) + " items, expected k=" +
                                std::to_string(state.params.k));
    }
    state.cache_history.push_back(state.cache);
    return record;
}

void drain(ModelState& state)
{
    Time t = state.clock + state.drain_steps;
    while (!state.queue.empty()) {
        ++t;
        ++state.drain_steps;
        StepRecord scratch;
        collect_return(state, t, scratch);
        if (state.drain_steps > state.params.Z) {
            throw ContractViolation("in-flight queue failed to drain within Z steps");
        }
    }
}

SimulationResult finish(ModelState state)
{
    drain(state);
    SimulationResult result;
    result.hit_sequence = HitSequence(std::move(state.hits));
    result.per_request_latency = std::move(state.latencies);
    result.eviction_sequence = EvictionSequence(std::move(state.evictions));
    result.cache_history = std::move(state.cache_history);
    result.drain_steps = state.drain_steps;
    for (Latency latency : result.per_request_latency) {
        result.total_latency += latency;
    }
    return result;
}

SimulationResult simulate(const ModelParams& params, const RequestSequence& sequence, Policy& policy)
{
    params.validate();
    sequence.validate(params.n);
    ModelState state(params);
    for (Time t = 1; t <= static_cast<Time>(sequence.size()); ++t) {
        step(state, t, sequence.at(t), policy);
    }
    return finish(std::move(state));
}

namespace {

class FixedEvictions final : public Policy {
public:
    explicit FixedEvictions(const EvictionSequence& evictions) : evictions_(evictions) {}

    std::string name() const override { return "replay"; }

    Item choose_eviction(const DecisionContext& ctx) override { return evictions_.at(ctx.now); }

private:
    const EvictionSequence& evictions_;
};

}  // namespace

SimulationResult replay(const ModelParams& params, const RequestSequence& sequence, const EvictionSequence& evictions)
{
    if (evictions.size() != sequence.size()) {
        throw LengthMismatch("eviction sequence length " + std::to_string(evictions.size()) +
                             " does not match request sequence length " + std::to_string(sequence.size()));
    }
    FixedEvictions policy(evictions);
    SimulationResult result = simulate(params, sequence, policy);
    for (Time t = 1; t <= static_cast<Time>(evictions.size()); ++t) {
        if (result.eviction_sequence.at(t) != evictions.at(t)) {
            throw InfeasibleEviction(t, evictions.at(t), "no caching decision takes place at this timestep");
        }
    }
    return result;
}

}  // namespace delayed_hits
