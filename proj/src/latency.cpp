#include "delayed_hits/latency.hpp"

#include <algorithm>
#include <string>

namespace delayed_hits {

namespace {

void check_lengths(const RequestSequence& sequence, const HitSequence& b)
{
    if (sequence.size() != b.size()) {
        throw LengthMismatch("hit sequence length " + std::to_string(b.size()) + " does not match request sequence length " +
                             std::to_string(sequence.size()));
    }
}

template <typename ServesFrom>
LatencyBreakdown evaluate(const RequestSequence& sequence, Time Z, const HitSequence& b, ServesFrom serves_from)
{
    if (Z < 1) {
        throw std::invalid_argument("Z must be positive");
    }
    check_lengths(sequence, b);
    const Time T = static_cast<Time>(sequence.size());
    LatencyBreakdown out;
    out.per_request.assign(sequence.size(), 0);
    for (Time t = 1; t <= T; ++t) {
        const Item item = sequence.at(t);
        if (item == kNoItem || b.at(t)) {
            continue;
        }
        // t itself always qualifies, so the earliest server exists.
        Time earliest = t;
        for (Time s = std::max<Time>(1, t - Z + 1); s < t; ++s) {
            if (sequence.at(s) == item && serves_from(s)) {
                earliest = s;
                break;
            }
        }
        const Latency latency = Z - (t - earliest);
        out.per_request[static_cast<std::size_t>(t - 1)] = latency;
        out.total += latency;
    }
    return out;
}

}  // namespace

LatencyBreakdown delayed_hits_latency(const RequestSequence& sequence, Time Z, const HitSequence& b)
{
    return evaluate(sequence, Z, b, [&](Time s) { return !b.at(s); });
}

LatencyBreakdown antimonotone_latency(const RequestSequence& sequence, Time Z, const HitSequence& b)
{
    return evaluate(sequence, Z, b, [](Time) { return true; });
}

bool dominates(const HitSequence& b, const HitSequence& b_prime)
{
    if (b.size() != b_prime.size()) {
        throw LengthMismatch("cannot compare hit sequences of lengths " + std::to_string(b.size()) + " and " +
                             std::to_string(b_prime.size()));
    }
    const auto lhs = b.bits();
    const auto rhs = b_prime.bits();
    for (std::size_t i = 0; i < lhs.size(); ++i) {
        if (lhs[i] > rhs[i]) {
            return false;
        }
    }
    return true;
}

}  // namespace delayed_hits
