#pragma once

#include "delayed_hits/model.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <random>
#include <string>
#include <vector>

namespace delayed_hits {

/// Evicts the resident item whose latest request is oldest. Items never
/// requested count as oldest; ties go to the smaller item.
class LruPolicy final : public Policy {
public:
    std::string name() const override { return "lru"; }
    void observe_request(Time t, Item item, RequestOutcome outcome) override;
    Item choose_eviction(const DecisionContext& ctx) override;

private:
    std::map<Item, Time> last_request_;
};

/// Evicts the item that entered the cache first. The initial items share
/// insertion time 0; ties go to the smaller item.
class FifoPolicy final : public Policy {
public:
    std::string name() const override { return "fifo"; }
    Item choose_eviction(const DecisionContext& ctx) override;
    void observe_update(Time t, Item inserted, Item evicted) override;

private:
    std::map<Item, Time> inserted_at_;
};

class NeverCachePolicy final : public Policy {
public:
    std::string name() const override { return "never"; }
    Item choose_eviction(const DecisionContext&) override { return kNoItem; }
};

/// Caches a fixed target set as soon as its members come back and never
/// evicts a target afterwards.
class StaticPolicy final : public Policy {
public:
    explicit StaticPolicy(CacheState targets) : targets_(std::move(targets)) {}
    std::string name() const override { return "static"; }
    Item choose_eviction(const DecisionContext& ctx) override;

    const CacheState& targets() const { return targets_; }

private:
    CacheState targets_;
};

/// Offline rule: among the resident items and the returned one, drop the item
/// requested again furthest in the future (never counts as furthest; ties go
/// to the smaller item). Dropping the returned item means not caching it.
class BeladyPolicy final : public Policy {
public:
    explicit BeladyPolicy(RequestSequence future) : sequence_(std::move(future)) {}
    std::string name() const override { return "belady"; }
    Item choose_eviction(const DecisionContext& ctx) override;

private:
    Time next_use(Item item, Time after) const;

    RequestSequence sequence_;
};

/// Uniform over {decline} and every resident item, from a seeded generator.
class RandomPolicy final : public Policy {
public:
    explicit RandomPolicy(std::uint64_t seed) : rng_(seed) {}
    std::string name() const override { return "random"; }
    Item choose_eviction(const DecisionContext& ctx) override;

private:
    std::mt19937_64 rng_;
};

std::unique_ptr<Policy> lru_policy();
std::unique_ptr<Policy> fifo_policy();
std::unique_ptr<Policy> never_cache_policy();
/// Throws ContractViolation if `targets` has more than k items.
std::unique_ptr<Policy> static_policy(CacheState targets, Item k);
std::unique_ptr<Policy> belady_classical(const RequestSequence& sequence);
std::unique_ptr<Policy> random_policy(std::uint64_t seed);

using PolicyFactory = std::function<std::unique_ptr<Policy>()>;

/// Options only some policies consume.
struct PolicyOptions {
    CacheState static_targets;        // "static"; empty means {1..k}
    RequestSequence future;           // "belady"
};

/// Names accepted on the command line: lru, fifo, never, static, belady.
const std::vector<std::string>& policy_names();
bool is_online_policy(const std::string& name);

/// Throws std::invalid_argument for unknown names.
PolicyFactory policy_factory(const std::string& name, const ModelParams& params, const PolicyOptions& options = {});

}  // namespace delayed_hits
