#include "delayed_hits/adversary.hpp"

#include <numeric>

namespace delayed_hits {

Latency Segment::miss_cost(Time Z) const
{
    return kind == SegmentKind::Pure ? Z : Z * (Z + 1) / 2;
}

namespace {

Segment render(SegmentKind kind, Item item, Time Z, Time copies)
{
    if (Z < 1) {
        throw std::invalid_argument("Z must be positive");
    }
    if (item == kNoItem) {
        throw std::invalid_argument("segments need a real item");
    }
    Segment segment{kind, item, {}};
    for (Time i = 0; i < Z; ++i) {
        segment.rendered.append(kNoItem);
    }
    for (Time i = 0; i < copies; ++i) {
        segment.rendered.append(item);
    }
    for (Time i = 0; i < Z; ++i) {
        segment.rendered.append(kNoItem);
    }
    return segment;
}

}  // namespace

Segment pure_segment(Item item, Time Z)
{
    return render(SegmentKind::Pure, item, Z, 1);
}

Segment bursty_segment(Item item, Time Z)
{
    return render(SegmentKind::Bursty, item, Z, Z);
}

Rational Rational::reduced(std::int64_t numerator, std::int64_t denominator)
{
    if (denominator == 0) {
        throw std::invalid_argument("zero denominator");
    }
    if (denominator < 0) {
        numerator = -numerator;
        denominator = -denominator;
    }
    const std::int64_t g = std::gcd(numerator, denominator);
    return {numerator / g, denominator / g};
}

std::size_t default_bursty_cap(Item k)
{
    return 10 * static_cast<std::size_t>(k);
}

namespace {

class SegmentFeeder {
public:
    SegmentFeeder(const ModelParams& params, Policy& policy) : state_(params), policy_(policy) {}

    // Feeds the segment and reports whether every real request missed.
    bool feed(const Segment& segment)
    {
        bool all_missed = true;
        for (Item item : segment.rendered.items()) {
            const StepRecord record = step(state_, state_.clock + 1, item, policy_);
            if (record.outcome == RequestOutcome::Hit) {
                all_missed = false;
            }
        }
        return all_missed;
    }

    const ModelState& state() const { return state_; }

private:
    ModelState state_;
    Policy& policy_;
};

}  // namespace

AdversaryReport build_adversarial_sequence(const PolicyFactory& factory, const ModelParams& params,
                                           std::optional<std::size_t> cap)
{
    params.validate();
    if (params.n < params.k + 1) {
        throw ContractViolation("the adversary needs n >= k + 1");
    }
    const std::size_t bursty_cap = cap.value_or(default_bursty_cap(params.k));
    const Item pool = params.k + 1;

    AdversaryReport report;
    report.params = params;

    auto policy = factory();
    report.policy_name = policy->name();
    SegmentFeeder feeder(params, *policy);

    auto append = [&](Segment segment) {
        if (!feeder.feed(segment)) {
            throw AdversaryViolation("policy " + report.policy_name + " hit the " +
                                     std::string(segment.kind == SegmentKind::Pure ? "pure" : "bursty") +
                                     " segment for item " + std::to_string(segment.item) + "; it is not deterministic");
        }
        if (!feeder.state().quiescent()) {
            throw AdversaryViolation("requests still in flight after the trailing idle run");
        }
        report.sigma.append(segment.rendered);
        report.segments.push_back(std::move(segment));
    };

    append(pure_segment(pool, params.Z));

    MarkSet marks;
    while (marks.size() < params.k && report.bursty_count < bursty_cap) {
        // Smallest absent item; with a full cache there is exactly one.
        Item target = kNoItem;
        for (Item item = 1; item <= pool; ++item) {
            if (!feeder.state().cache.contains(item)) {
                target = item;
                break;
            }
        }
        if (target == kNoItem) {
            throw AdversaryViolation("policy cache holds all of {1..k+1}");
        }
        append(bursty_segment(target, params.Z));
        marks.mark(target);
        report.marked.push_back(target);
        ++report.bursty_count;
    }
    report.terminated = marks.size() == params.k;
    report.cap_reached = !report.terminated;

    // Independent replay from scratch with a fresh instance.
    auto fresh = factory();
    report.policy_run = simulate(params, report.sigma, *fresh);
    report.policy_latency = report.policy_run.total_latency;
    for (Time t = 1; t <= static_cast<Time>(report.sigma.size()); ++t) {
        if (report.sigma.at(t) != kNoItem && report.policy_run.hit_sequence.at(t)) {
            throw AdversaryViolation("replay of the adversarial sequence hit at t=" + std::to_string(t));
        }
    }
    Latency expected = 0;
    for (const auto& segment : report.segments) {
        expected += segment.miss_cost(params.Z);
    }
    if (report.policy_latency != expected) {
        throw AdversaryViolation("policy latency " + std::to_string(report.policy_latency) + " differs from segment miss costs " +
                                 std::to_string(expected));
    }

    for (Item item = 1; item <= pool; ++item) {
        if (!marks.contains(item)) {
            report.opt_witness_item = item;
            break;
        }
    }
    if (report.opt_witness_item == kNoItem) {
        throw std::logic_error("marking stopped at k items, yet none of {1..k+1} is unmarked");
    }
    std::vector<Item> keep;
    for (Item item = 1; item <= pool; ++item) {
        if (item != report.opt_witness_item) {
            keep.push_back(item);
        }
    }
    auto witness = static_policy(CacheState(std::move(keep)), params.k);
    report.witness_run = simulate(params, report.sigma, *witness);
    report.opt_latency = report.witness_run.total_latency;

    report.ratio = Rational::reduced(report.policy_latency, report.opt_latency);
    const auto bursts = static_cast<std::int64_t>(report.bursty_count);
    report.ratio_lower_bound = Rational::reduced(2 + bursts * (params.Z + 1), 2);
    return report;
}

}  // namespace delayed_hits
