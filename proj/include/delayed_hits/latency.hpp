#pragma once

// Closed-form latency of a trace given only its hit sequence.

#include "delayed_hits/types.hpp"

#include <vector>

namespace delayed_hits {

struct LatencyBreakdown {
    std::vector<Latency> per_request;
    Latency total = 0;
};

/// Standard model: a miss at t is served by the earliest miss of the same
/// item within [t - Z + 1, t], giving latency Z - (t - p_t). Hits and idle
/// slots cost nothing; idle bits are treated as 1 whatever their value.
LatencyBreakdown delayed_hits_latency(const RequestSequence& sequence, Time Z, const HitSequence& b);

/// Fetch-on-hit model: the earliest request of the same item within the
/// window serves the miss, hit or not.
LatencyBreakdown antimonotone_latency(const RequestSequence& sequence, Time Z, const HitSequence& b);

/// True iff b_t <= b'_t for every t.
bool dominates(const HitSequence& b, const HitSequence& b_prime);

}  // namespace delayed_hits
