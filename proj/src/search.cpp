#include "delayed_hits/search.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace delayed_hits {

namespace {

// Configuration between timesteps. Latencies are charged at request time: the
// fetch that will serve a miss is already in flight when the miss happens.
struct Config {
    Time clock = 0;
    std::vector<Item> cache;       // sorted
    std::vector<Time> in_flight;   // dispatch times, increasing
};

using Key = std::vector<Time>;

struct KeyHash {
    std::size_t operator()(const Key& key) const noexcept
    {
        std::size_t h = 1469598103934665603ull;
        for (Time v : key) {
            h ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        }
        return h;
    }
};

Key key_of(const Config& c)
{
    Key key;
    key.reserve(2 + c.cache.size() + c.in_flight.size());
    key.push_back(c.clock);
    for (Item item : c.cache) {
        key.push_back(item);
    }
    key.push_back(-1);
    key.insert(key.end(), c.in_flight.begin(), c.in_flight.end());
    return key;
}

bool resident(const std::vector<Item>& cache, Item item)
{
    return std::binary_search(cache.begin(), cache.end(), item);
}

struct Decision {
    Time t = 0;
    Item returned = kNoItem;
};

struct Segment {
    Latency cost = 0;
    std::vector<std::uint8_t> hits;  // one per timestep advanced
    std::optional<Decision> decision;
};

class Explorer {
public:
    Explorer(const ModelParams& params, const RequestSequence& sequence, const SearchLimits& limits)
        : params_(params), sequence_(sequence), limits_(limits), T_(static_cast<Time>(sequence.size()))
    {
        params_.validate();
        sequence_.validate(params_.n);
    }

    Config initial() const
    {
        Config c;
        for (Item i = 1; i <= params_.k; ++i) {
            c.cache.push_back(i);
        }
        return c;
    }

    // Runs timesteps from c.clock + 1 until a decision is needed or the trace
    // ends. On a decision, c.clock is the decision time and its request phase
    // and fetch return have already been applied.
    Segment advance(Config& c) const
    {
        Segment seg;
        while (c.clock < T_) {
            const Time t = ++c.clock;
            const Item item = sequence_.at(t);
            if (item == kNoItem) {
                seg.hits.push_back(1);
            } else if (resident(c.cache, item)) {
                seg.hits.push_back(1);
                if (params_.mode == Mode::Antimonotone) {
                    c.in_flight.push_back(t);
                }
            } else {
                seg.hits.push_back(0);
                Time earliest = t;
                for (Time d : c.in_flight) {
                    if (sequence_.at(d) == item) {
                        earliest = d;
                        break;
                    }
                }
                seg.cost += params_.Z - (t - earliest);
                c.in_flight.push_back(t);
            }

            if (!c.in_flight.empty() && c.in_flight.front() == t - params_.Z + 1) {
                const Item back = sequence_.at(c.in_flight.front());
                c.in_flight.erase(c.in_flight.begin());
                if (!resident(c.cache, back)) {
                    seg.decision = Decision{t, back};
                    return seg;
                }
            }
        }
        return seg;
    }

    std::vector<Item> choices(const Config& c) const
    {
        std::vector<Item> out{kNoItem};
        out.insert(out.end(), c.cache.begin(), c.cache.end());
        return out;
    }

    static Config apply(const Config& c, const Decision& d, Item victim)
    {
        Config next = c;
        if (victim != kNoItem) {
            next.cache.erase(std::find(next.cache.begin(), next.cache.end(), victim));
            next.cache.insert(std::lower_bound(next.cache.begin(), next.cache.end(), d.returned), d.returned);
        }
        return next;
    }

    void charge_node()
    {
        if (++nodes_ > limits_.max_nodes) {
            throw SearchBudgetExceeded(limits_.max_nodes);
        }
    }

    std::size_t nodes() const { return nodes_; }
    Time length() const { return T_; }

private:
    ModelParams params_;
    const RequestSequence& sequence_;
    SearchLimits limits_;
    Time T_;
    std::size_t nodes_ = 0;
};

struct OptEntry {
    Latency cost = 0;  // cost of everything after the configuration
    std::optional<Decision> decision;
    Item best = kNoItem;
    std::vector<Item> optimal_choices;
};

class OptSolver {
public:
    explicit OptSolver(Explorer& explorer) : ex_(explorer) {}

    Latency solve(const Config& c)
    {
        const Key key = key_of(c);
        if (auto it = memo_.find(key); it != memo_.end()) {
            return it->second.cost;
        }
        ex_.charge_node();
        Config at = c;
        Segment seg = ex_.advance(at);
        OptEntry entry;
        entry.cost = seg.cost;
        entry.decision = seg.decision;
        if (seg.decision) {
            Latency best = -1;
            std::vector<std::pair<Item, Latency>> scored;
            for (Item victim : ex_.choices(at)) {
                const Latency sub = solve(Explorer::apply(at, *seg.decision, victim));
                scored.emplace_back(victim, sub);
                if (best < 0 || sub < best) {
                    best = sub;
                    entry.best = victim;
                }
            }
            for (const auto& [victim, sub] : scored) {
                if (sub == best) {
                    entry.optimal_choices.push_back(victim);
                }
            }
            entry.cost += best;
        }
        const Latency cost = entry.cost;
        memo_.emplace(key, std::move(entry));
        return cost;
    }

    const OptEntry& entry(const Config& c) const { return memo_.at(key_of(c)); }

private:
    Explorer& ex_;
    std::unordered_map<Key, OptEntry, KeyHash> memo_;
};

}  // namespace

OptResult brute_force_opt(const ModelParams& params, const RequestSequence& sequence, const SearchLimits& limits)
{
    Explorer ex(params, sequence, limits);
    OptSolver solver(ex);
    const Config start = ex.initial();

    OptResult result;
    result.min_latency = solver.solve(start);
    result.nodes = ex.nodes();

    EvictionSequence witness = EvictionSequence::none(sequence.size());
    Config c = start;
    while (true) {
        const OptEntry& entry = solver.entry(c);
        if (!entry.decision) {
            break;
        }
        Config at = c;
        ex.advance(at);
        witness.set(entry.decision->t, entry.best);
        c = Explorer::apply(at, *entry.decision, entry.best);
    }

    const SimulationResult check = replay(params, sequence, witness);
    if (check.total_latency != result.min_latency) {
        throw std::logic_error("search witness replays to latency " + std::to_string(check.total_latency) + ", expected " +
                               std::to_string(result.min_latency));
    }
    result.witness_evictions = std::move(witness);
    result.witness_hits = check.hit_sequence;
    return result;
}

namespace {

class FeasibilitySearch {
public:
    FeasibilitySearch(Explorer& ex, const HitSequence& target, EvictionSequence& witness)
        : ex_(ex), target_(target), witness_(witness)
    {
    }

    bool run(const Config& c)
    {
        Key key = key_of(c);
        if (dead_.contains(key)) {
            return false;
        }
        ex_.charge_node();
        Config at = c;
        const Time from = c.clock;
        Segment seg = ex_.advance(at);
        for (std::size_t i = 0; i < seg.hits.size(); ++i) {
            if ((seg.hits[i] != 0) != target_.at(from + 1 + static_cast<Time>(i))) {
                dead_.insert(std::move(key));
                return false;
            }
        }
        if (!seg.decision) {
            return true;
        }
        for (Item victim : ex_.choices(at)) {
            if (run(Explorer::apply(at, *seg.decision, victim))) {
                witness_.set(seg.decision->t, victim);
                return true;
            }
        }
        dead_.insert(std::move(key));
        return false;
    }

private:
    Explorer& ex_;
    const HitSequence& target_;
    EvictionSequence& witness_;
    std::unordered_set<Key, KeyHash> dead_;
};

}  // namespace

FeasibilityResult is_hit_sequence_feasible(const ModelParams& params, const RequestSequence& sequence, const HitSequence& b,
                                           const SearchLimits& limits)
{
    const HitSequence target = b.normalized(sequence);
    if (!(target == b)) {
        // A zero at an idle slot can never be produced.
        return {};
    }
    Explorer ex(params, sequence, limits);
    EvictionSequence witness = EvictionSequence::none(sequence.size());
    FeasibilitySearch search(ex, target, witness);
    if (!search.run(ex.initial())) {
        return {};
    }
    const SimulationResult check = replay(params, sequence, witness);
    if (!(check.hit_sequence == target)) {
        throw std::logic_error("feasibility witness replays to hit sequence " + check.hit_sequence.to_string());
    }
    return {true, std::move(witness)};
}

namespace {

class OptimalEnumerator {
public:
    OptimalEnumerator(Explorer& ex, OptSolver& solver, std::size_t cap) : ex_(ex), solver_(solver), cap_(cap) {}

    // Distinct hit-bit suffixes, from the configuration onwards, of optimal
    // schedules.
    const std::set<std::vector<std::uint8_t>>& suffixes(const Config& c)
    {
        const Key key = key_of(c);
        if (auto it = memo_.find(key); it != memo_.end()) {
            return it->second;
        }
        const OptEntry& entry = solver_.entry(c);
        Config at = c;
        Segment seg = ex_.advance(at);
        std::set<std::vector<std::uint8_t>> out;
        if (!entry.decision) {
            out.insert(seg.hits);
        } else {
            for (Item victim : entry.optimal_choices) {
                for (const auto& tail : suffixes(Explorer::apply(at, *entry.decision, victim))) {
                    std::vector<std::uint8_t> full = seg.hits;
                    full.insert(full.end(), tail.begin(), tail.end());
                    out.insert(std::move(full));
                    if (out.size() > cap_) {
                        throw SearchBudgetExceeded(cap_);
                    }
                }
            }
        }
        return memo_.emplace(key, std::move(out)).first->second;
    }

private:
    Explorer& ex_;
    OptSolver& solver_;
    std::size_t cap_;
    std::unordered_map<Key, std::set<std::vector<std::uint8_t>>, KeyHash> memo_;
};

}  // namespace

std::vector<HitSequence> optimal_hit_sequences(const ModelParams& params, const RequestSequence& sequence,
                                               const SearchLimits& limits, std::size_t max_sequences)
{
    Explorer ex(params, sequence, limits);
    OptSolver solver(ex);
    const Config start = ex.initial();
    solver.solve(start);
    OptimalEnumerator enumerator(ex, solver, max_sequences);
    std::vector<HitSequence> out;
    for (const auto& bits : enumerator.suffixes(start)) {
        out.emplace_back(bits);
    }
    return out;
}

}  // namespace delayed_hits
