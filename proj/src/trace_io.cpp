#include "delayed_hits/trace_io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace delayed_hits {

namespace {

std::string_view trim(std::string_view text)
{
    const auto first = text.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = text.find_last_not_of(" \t\r");
    return text.substr(first, last - first + 1);
}

}  // namespace

RequestSequence parse_trace(std::istream& in, std::optional<Item> n, const std::string& origin)
{
    RequestSequence sequence;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view text = line;
        if (const auto hash = text.find('#'); hash != std::string_view::npos) {
            text = text.substr(0, hash);
        }
        text = trim(text);
        if (text.empty()) {
            continue;
        }
        std::uint64_t value = 0;
        const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
        if (ec != std::errc() || end != text.data() + text.size() || value > std::numeric_limits<Item>::max()) {
            throw TraceError(origin + ":" + std::to_string(line_no) + ": expected a nonnegative integer, got '" +
                             std::string(text) + "'");
        }
        const auto item = static_cast<Item>(value);
        if (n && item > *n) {
            throw TraceError(origin + ":" + std::to_string(line_no) + ": item " + std::to_string(item) + " exceeds n=" +
                             std::to_string(*n));
        }
        sequence.append(item);
    }
    if (in.bad()) {
        throw TraceError(origin + ": read error");
    }
    return sequence;
}

RequestSequence read_trace(const std::string& path, std::optional<Item> n)
{
    std::ifstream in(path);
    if (!in) {
        throw TraceError("cannot open trace '" + path + "'");
    }
    return parse_trace(in, n, path);
}

void write_trace(std::ostream& out, const RequestSequence& sequence, const std::string& header)
{
    if (!header.empty()) {
        std::istringstream lines(header);
        std::string line;
        while (std::getline(lines, line)) {
            out << "# " << line << '\n';
        }
    }
    for (Item item : sequence.items()) {
        out << item << '\n';
    }
}

void write_trace(const std::string& path, const RequestSequence& sequence, const std::string& header)
{
    std::ofstream out(path);
    if (!out) {
        throw TraceError("cannot write trace '" + path + "'");
    }
    write_trace(out, sequence, header);
    if (!out) {
        throw TraceError("failed writing trace '" + path + "'");
    }
}

}  // namespace delayed_hits
