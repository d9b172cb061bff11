#pragma once

// Adaptive request sequence against a deterministic online policy.
//
// The sequence opens with a pure request for k + 1 and then keeps appending a
// bursty request for whichever item of {1, ..., k + 1} the policy does not
// hold, marking it. Each segment is surrounded by Z idle slots, so the policy
// misses every request while a static cache that skips one unmarked item
// misses only the opening request.

#include "delayed_hits/policies.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace delayed_hits {

enum class SegmentKind { Pure, Bursty };

struct Segment {
    SegmentKind kind = SegmentKind::Pure;
    Item item = kNoItem;
    RequestSequence rendered;

    /// Latency charged when the segment misses: Z, or Z(Z+1)/2 for a burst.
    Latency miss_cost(Time Z) const;
};

/// (0^Z, item, 0^Z)
Segment pure_segment(Item item, Time Z);
/// (0^Z, item^Z, 0^Z)
Segment bursty_segment(Item item, Time Z);

/// Marked items; membership only grows.
class MarkSet {
public:
    void mark(Item item) { marked_.insert(item); }
    bool contains(Item item) const { return marked_.contains(item); }
    std::size_t size() const { return marked_.size(); }
    const CacheState& items() const { return marked_; }

private:
    CacheState marked_;
};

struct Rational {
    std::int64_t numerator = 0;
    std::int64_t denominator = 1;

    static Rational reduced(std::int64_t numerator, std::int64_t denominator);
    double value() const { return static_cast<double>(numerator) / static_cast<double>(denominator); }

    friend bool operator==(const Rational&, const Rational&) = default;
    friend bool operator<=(const Rational& a, const Rational& b)
    {
        return a.numerator * b.denominator <= b.numerator * a.denominator;
    }
};

struct AdversaryReport {
    ModelParams params;
    std::string policy_name;
    RequestSequence sigma;
    std::vector<Segment> segments;
    std::vector<Item> marked;              // in marking order (repeats kept)
    std::size_t bursty_count = 0;
    bool terminated = false;               // |M| reached k
    bool cap_reached = false;
    SimulationResult policy_run;
    Latency policy_latency = 0;
    Latency opt_latency = 0;               // latency of the static witness
    Item opt_witness_item = kNoItem;       // the unmarked item j
    SimulationResult witness_run;
    Rational ratio;                        // policy_latency / opt_latency
    Rational ratio_lower_bound;            // 1 + bursty_count (Z+1)/2
};

class AdversaryViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Default cap on bursty segments: 10 k.
std::size_t default_bursty_cap(Item k);

/// `factory` must produce fresh instances of one deterministic online policy.
/// Requires n >= k + 1. Throws AdversaryViolation if the policy ever hits a
/// request of the constructed sequence or replays differently.
AdversaryReport build_adversarial_sequence(const PolicyFactory& factory, const ModelParams& params,
                                           std::optional<std::size_t> cap = std::nullopt);

}  // namespace delayed_hits
