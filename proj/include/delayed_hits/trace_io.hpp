#pragma once

// Plain-text traces: one nonnegative integer per line, 0 for an idle slot.
// Blank lines and anything after '#' are ignored.

#include "delayed_hits/types.hpp"

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>

namespace delayed_hits {

class TraceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Parses a trace; with `n` set, rejects items above it.
RequestSequence parse_trace(std::istream& in, std::optional<Item> n = std::nullopt, const std::string& origin = "<stream>");
RequestSequence read_trace(const std::string& path, std::optional<Item> n = std::nullopt);

void write_trace(std::ostream& out, const RequestSequence& sequence, const std::string& header = {});
void write_trace(const std::string& path, const RequestSequence& sequence, const std::string& header = {});

}  // namespace delayed_hits
