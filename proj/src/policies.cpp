#include "delayed_hits/policies.hpp"

#include <algorithm>
#include <limits>

namespace delayed_hits {

void LruPolicy::observe_request(Time t, Item item, RequestOutcome outcome)
{
    if (outcome != RequestOutcome::Idle) {
        last_request_[item] = t;
    }
}

Item LruPolicy::choose_eviction(const DecisionContext& ctx)
{
    Item victim = kNoItem;
    Time oldest = std::numeric_limits<Time>::max();
    for (Item item : ctx.cache.items()) {
        auto it = last_request_.find(item);
        const Time seen = it == last_request_.end() ? 0 : it->second;
        if (seen < oldest) {
            oldest = seen;
            victim = item;
        }
    }
    return victim;
}

Item FifoPolicy::choose_eviction(const DecisionContext& ctx)
{
    Item victim = kNoItem;
    Time oldest = std::numeric_limits<Time>::max();
    for (Item item : ctx.cache.items()) {
        auto it = inserted_at_.find(item);
        const Time since = it == inserted_at_.end() ? 0 : it->second;
        if (since < oldest) {
            oldest = since;
            victim = item;
        }
    }
    return victim;
}

void FifoPolicy::observe_update(Time t, Item inserted, Item evicted)
{
    inserted_at_.erase(evicted);
    inserted_at_[inserted] = t;
}

Item StaticPolicy::choose_eviction(const DecisionContext& ctx)
{
    if (!targets_.contains(ctx.returned)) {
        return kNoItem;
    }
    for (Item item : ctx.cache.items()) {
        if (!targets_.contains(item)) {
            return item;
        }
    }
    return kNoItem;
}

Time BeladyPolicy::next_use(Item item, Time after) const
{
    for (Time t = after + 1; t <= static_cast<Time>(sequence_.size()); ++t) {
        if (sequence_.at(t) == item) {
            return t;
        }
    }
    return std::numeric_limits<Time>::max();
}

Item BeladyPolicy::choose_eviction(const DecisionContext& ctx)
{
    // Candidates in increasing item order so that ties keep the smaller item.
    std::vector<Item> candidates(ctx.cache.items().begin(), ctx.cache.items().end());
    candidates.insert(std::lower_bound(candidates.begin(), candidates.end(), ctx.returned), ctx.returned);

    Item drop = kNoItem;
    Time furthest = -1;
    for (Item item : candidates) {
        const Time next = next_use(item, ctx.now);
        if (next > furthest) {
            furthest = next;
            drop = item;
        }
    }
    return drop == ctx.returned ? kNoItem : drop;
}

Item RandomPolicy::choose_eviction(const DecisionContext& ctx)
{
    std::uniform_int_distribution<std::size_t> pick(0, ctx.cache.size());
    const std::size_t choice = pick(rng_);
    return choice == 0 ? kNoItem : ctx.cache.items()[choice - 1];
}

std::unique_ptr<Policy> lru_policy()
{
    return std::make_unique<LruPolicy>();
}

std::unique_ptr<Policy> fifo_policy()
{
    return std::make_unique<FifoPolicy>();
}

std::unique_ptr<Policy> never_cache_policy()
{
    return std::make_unique<NeverCachePolicy>();
}

std::unique_ptr<Policy> static_policy(CacheState targets, Item k)
{
    if (targets.size() > k) {
        throw ContractViolation("static target set " + targets.to_string() + " does not fit a cache of size " + std::to_string(k));
    }
    return std::make_unique<StaticPolicy>(std::move(targets));
}

std::unique_ptr<Policy> belady_classical(const RequestSequence& sequence)
{
    return std::make_unique<BeladyPolicy>(sequence);
}

std::unique_ptr<Policy> random_policy(std::uint64_t seed)
{
    return std::make_unique<RandomPolicy>(seed);
}

const std::vector<std::string>& policy_names()
{
    static const std::vector<std::string> names{"lru", "fifo", "never", "static", "belady"};
    return names;
}

bool is_online_policy(const std::string& name)
{
    return name == "lru" || name == "fifo" || name == "never" || name == "static";
}

PolicyFactory policy_factory(const std::string& name, const ModelParams& params, const PolicyOptions& options)
{
    if (name == "lru") {
        return lru_policy;
    }
    if (name == "fifo") {
        return fifo_policy;
    }
    if (name == "never") {
        return never_cache_policy;
    }
    if (name == "static") {
        CacheState targets = options.static_targets.empty() ? CacheState::initial(params.k) : options.static_targets;
        if (targets.size() > params.k) {
            throw std::invalid_argument("static target set " + targets.to_string() + " does not fit k=" + std::to_string(params.k));
        }
        return [targets, k = params.k] { return static_policy(targets, k); };
    }
    if (name == "belady") {
        return [future = options.future] { return belady_classical(future); };
    }
    throw std::invalid_argument("unknown policy '" + name + "'");
}

}  // namespace delayed_hits
