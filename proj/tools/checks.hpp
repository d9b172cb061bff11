#pragma once

// Seeded randomized property suites behind `dhsim check`.

#include "delayed_hits/model.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <string>

#include <json.hpp>

namespace dhsim {

struct InstanceSpace {
    delayed_hits::Item max_n = 8;
    delayed_hits::Item max_k = 4;
    delayed_hits::Time max_Z = 8;
    std::size_t max_T = 50;
    double idle_probability = 0.25;
};

struct RandomInstance {
    delayed_hits::ModelParams params;
    delayed_hits::RequestSequence sequence;
};

/// k in [1, max_k], n in [k + 1, max(max_n, k + 1)], Z in [1, max_Z],
/// T in [1, max_T]; each slot idle with `idle_probability`, otherwise a
/// uniform item of [1, n].
RandomInstance random_instance(std::mt19937_64& rng, const InstanceSpace& space);

delayed_hits::RequestSequence random_sequence(std::mt19937_64& rng, delayed_hits::Item n, std::size_t length,
                                              double idle_probability);

struct SuiteOutcome {
    std::string suite;
    std::size_t cases = 0;
    std::size_t passed = 0;
    std::size_t checks = 0;  // individual comparisons made
    std::optional<std::size_t> first_failure_case;
    nlohmann::json first_failure;

    bool ok() const { return passed == cases; }
};

/// Suites: "latency", "antimono", "reduction". Throws std::invalid_argument
/// for anything else.
SuiteOutcome run_suite(const std::string& suite, std::size_t cases, std::uint64_t seed, double idle_probability = 0.25);

}  // namespace dhsim
