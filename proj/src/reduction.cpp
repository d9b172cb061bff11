#include "delayed_hits/reduction.hpp"

#include <algorithm>

namespace delayed_hits {

namespace {

ModelParams antimonotone(ModelParams params)
{
    params.mode = Mode::Antimonotone;
    return params;
}

}  // namespace

ModelParams reduction_params(const ModelParams& inner_params, Time window)
{
    ModelParams outer = inner_params;
    outer.k = inner_params.k + static_cast<Item>(window);
    outer.mode = Mode::Standard;
    return outer;
}

ReductionPolicy::ReductionPolicy(const PolicyFactory& inner, const ModelParams& inner_params, Time window)
    : inner_policy_(inner())
    , inner_(antimonotone(inner_params))
    , window_(window)
    , outer_cache_(CacheState::initial(inner_params.k + static_cast<Item>(window)))
{
    if (window < 0) {
        throw ContractViolation("reduction window must be nonnegative");
    }
}

std::string ReductionPolicy::name() const
{
    return "reduce(" + inner_policy_->name() + ")";
}

void ReductionPolicy::observe_request(Time t, Item item, RequestOutcome)
{
    // A's decision at t only depends on history up to t, so its whole
    // timestep can run before B is asked anything at t.
    step(inner_, t, item, *inner_policy_);
}

CacheState ReductionPolicy::protected_set(Time now) const
{
    CacheState keep = inner_.cache;
    const Time from = std::max<Time>(1, now - window_ + 1);
    for (Time s = from; s <= now && window_ > 0; ++s) {
        const Item item = inner_.requests[static_cast<std::size_t>(s - 1)];
        if (item != kNoItem) {
            keep.insert(item);
        }
    }
    return keep;
}

Item ReductionPolicy::choose_eviction(const DecisionContext& ctx)
{
    const CacheState keep = protected_set(ctx.now);
    max_protected_ = std::max(max_protected_, keep.size());
    if (!keep.contains(ctx.returned)) {
        return kNoItem;
    }
    for (Item item : ctx.cache.items()) {
        if (!keep.contains(item)) {
            return item;
        }
    }
    throw ContractViolation("reduction cache of size " + std::to_string(ctx.cache.size()) + " cannot hold protected set " +
                            keep.to_string());
}

void ReductionPolicy::observe_update(Time, Item inserted, Item evicted)
{
    outer_cache_.erase(evicted);
    outer_cache_.insert(inserted);
}

ReductionState ReductionPolicy::snapshot() const
{
    ReductionState state;
    state.s0 = inner_.cache;
    const CacheState keep = protected_set(inner_.clock);
    for (Item item : keep.items()) {
        if (!state.s0.contains(item) && outer_cache_.contains(item)) {
            state.s1.insert(item);
        }
    }
    return state;
}

PolicyFactory wrap_reduction(const PolicyFactory& inner, const ModelParams& inner_params, Time window)
{
    return [inner, inner_params, window] { return std::make_unique<ReductionPolicy>(inner, inner_params, window); };
}

PolicyFactory wrap_reduction(const PolicyFactory& inner, const ModelParams& inner_params)
{
    return wrap_reduction(inner, inner_params, inner_params.Z);
}

DominationReport verify_domination(const RequestSequence& sequence, const PolicyFactory& inner, const ModelParams& params)
{
    DominationReport report;
    report.inner_params = antimonotone(params);
    report.wrapped_params = reduction_params(params, params.Z);

    auto a = inner();
    report.inner_run = simulate(report.inner_params, sequence, *a);

    ReductionPolicy b(inner, params, params.Z);
    report.wrapped_run = simulate(report.wrapped_params, sequence, b);
    report.max_protected = b.max_protected();

    for (Time t = 1; t <= static_cast<Time>(sequence.size()); ++t) {
        const auto i = static_cast<std::size_t>(t - 1);
        const Latency la = report.inner_run.per_request_latency[i];
        const Latency lb = report.wrapped_run.per_request_latency[i];
        if (lb > la) {
            report.violations.push_back({t, la, lb});
        }
    }
    return report;
}

}  // namespace delayed_hits
