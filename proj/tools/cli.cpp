#include "cli.hpp"

#include "checks.hpp"
#include "delayed_hits/adversary.hpp"
#include "delayed_hits/counterexample.hpp"
#include "delayed_hits/latency.hpp"
#include "delayed_hits/policies.hpp"
#include "delayed_hits/reduction.hpp"
#include "delayed_hits/search.hpp"
#include "delayed_hits/trace_io.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

namespace dhsim {

using namespace delayed_hits;
using nlohmann::json;

namespace {

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Ends a command with a given exit code after the report has been emitted.
struct CommandResult {
    json results;
    int code = kOk;
};

json items_json(const RequestSequence& sequence)
{
    return std::vector<Item>(sequence.items().begin(), sequence.items().end());
}

json rational_json(const Rational& r)
{
    return {{"numerator", r.numerator}, {"denominator", r.denominator}, {"decimal", r.value()}};
}

json run_json(const SimulationResult& run, const RequestSequence& sequence, Time Z)
{
    std::size_t hits = 0;
    std::size_t delayed = 0;
    std::size_t misses = 0;
    for (Time t = 1; t <= static_cast<Time>(sequence.size()); ++t) {
        if (sequence.at(t) == kNoItem) {
            continue;
        }
        const Latency latency = run.per_request_latency[static_cast<std::size_t>(t - 1)];
        if (latency == 0) {
            ++hits;
        } else if (latency == Z) {
            ++misses;
        } else {
            ++delayed;
        }
    }
    const auto& final_cache = run.cache_history.back();
    return {{"T", sequence.size()},
            {"total_latency", run.total_latency},
            {"per_request_latency", run.per_request_latency},
            {"hit_sequence", run.hit_sequence.to_string()},
            {"eviction_sequence", std::vector<Item>(run.eviction_sequence.choices().begin(), run.eviction_sequence.choices().end())},
            {"counts", {{"hits", hits}, {"delayed_hits", delayed}, {"misses", misses}}},
            {"final_cache", std::vector<Item>(final_cache.items().begin(), final_cache.items().end())},
            {"drain_steps", run.drain_steps}};
}

CacheState parse_item_list(const std::string& text)
{
    std::vector<Item> items;
    std::stringstream in(text);
    std::string token;
    while (std::getline(in, token, ',')) {
        if (token.empty()) {
            continue;
        }
        try {
            std::size_t used = 0;
            const unsigned long value = std::stoul(token, &used);
            if (used != token.size() || value == 0) {
                throw std::invalid_argument(token);
            }
            items.push_back(static_cast<Item>(value));
        } catch (const std::exception&) {
            throw InputError("bad item '" + token + "' in list '" + text + "'");
        }
    }
    return CacheState(std::move(items));
}

struct Common {
    Item k = 2;
    Time Z = 4;
    std::optional<Item> n;
    std::string policy = "lru";
    std::string model = "standard";
    std::string out;
    std::string static_set;
    std::optional<std::uint64_t> seed;
};

json params_json(const ModelParams& p, const std::string& policy, const std::optional<std::uint64_t>& seed)
{
    return {{"n", p.n}, {"k", p.k}, {"Z", p.Z}, {"mode", to_string(p.mode)}, {"policy", policy},
            {"seed", seed ? json(*seed) : json(nullptr)}};
}

void check_positive(const Common& c)
{
    if (c.k < 1 || c.Z < 1) {
        throw InputError("k and Z must be positive");
    }
}

PolicyFactory make_factory(const std::string& name, const ModelParams& params, const Common& c, const RequestSequence& trace)
{
    PolicyOptions options;
    options.future = trace;
    if (!c.static_set.empty()) {
        options.static_targets = parse_item_list(c.static_set);
    }
    try {
        return policy_factory(name, params, options);
    } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
    }
}

CommandResult cmd_simulate(const Common& c, const std::string& trace_path, const std::string& evictions_path, json& params)
{
    check_positive(c);
    RequestSequence trace = read_trace(trace_path, c.n);
    ModelParams p{c.n.value_or(std::max<Item>(trace.max_item(), 1)), c.k, c.Z, parse_mode(c.model)};
    params = params_json(p, evictions_path.empty() ? c.policy : "replay", c.seed);

    SimulationResult run;
    if (!evictions_path.empty()) {
        const RequestSequence choices = read_trace(evictions_path);
        run = replay(p, trace, EvictionSequence(std::vector<Item>(choices.items().begin(), choices.items().end())));
    } else {
        auto policy = make_factory(c.policy, p, c, trace)();
        run = simulate(p, trace, *policy);
    }
    return {run_json(run, trace, p.Z)};
}

CommandResult cmd_adversary(const Common& c, std::optional<std::size_t> cap, bool oracle_check, std::size_t max_nodes,
                            const std::string& trace_out, json& params)
{
    check_positive(c);
    if (!is_online_policy(c.policy)) {
        throw InputError("the adversary needs a deterministic online policy (lru|fifo|never|static), got '" + c.policy + "'");
    }
    ModelParams p{c.n.value_or(c.k + 1), c.k, c.Z, parse_mode(c.model)};
    params = params_json(p, c.policy, c.seed);
    const PolicyFactory factory = make_factory(c.policy, p, c, {});
    const AdversaryReport report = build_adversarial_sequence(factory, p, cap);

    json segments = json::array();
    for (const auto& segment : report.segments) {
        segments.push_back({{"kind", segment.kind == SegmentKind::Pure ? "pure" : "bursty"}, {"item", segment.item}});
    }
    const Latency burst_cost = p.Z * (p.Z + 1) / 2;
    CommandResult result;
    result.results = {
        {"T", report.sigma.size()},
        {"sigma", items_json(report.sigma)},
        {"segments", segments},
        {"marked", report.marked},
        {"bursty_count", report.bursty_count},
        {"terminated", report.terminated},
        {"cap_reached", report.cap_reached},
        {"policy_latency", report.policy_latency},
        {"guaranteed_policy_latency", p.Z + static_cast<Latency>(report.bursty_count) * burst_cost},
        {"opt_latency", report.opt_latency},
        {"opt_witness_item", report.opt_witness_item},
        {"ratio", rational_json(report.ratio)},
        {"ratio_lower_bound", rational_json(report.ratio_lower_bound)},
    };
    if (!trace_out.empty()) {
        std::ostringstream header;
        header << "adversarial sequence against " << report.policy_name << ", k=" << p.k << " Z=" << p.Z << " mode=" << to_string(p.mode)
               << "\npolicy latency " << report.policy_latency << ", static witness latency " << report.opt_latency;
        write_trace(trace_out, report.sigma, header.str());
        result.results["trace_file"] = trace_out;
    }
    if (oracle_check) {
        json oracle = {{"checked", true}};
        try {
            const OptResult opt = brute_force_opt(p, report.sigma, SearchLimits{max_nodes});
            oracle["opt_latency"] = opt.min_latency;
            oracle["nodes"] = opt.nodes;
            oracle["matches_witness"] = opt.min_latency == report.opt_latency;
            if (opt.min_latency != report.opt_latency) {
                result.code = kPropertyViolation;
            }
        } catch (const SearchBudgetExceeded& e) {
            oracle["budget_exceeded"] = true;
            oracle["error"] = e.what();
            result.code = kOracleBudget;
        }
        result.results["oracle"] = oracle;
    }
    return result;
}

json counterexample_json(const CounterexampleSpec& spec)
{
    auto evictions = [](const EvictionSequence& e) { return std::vector<Item>(e.choices().begin(), e.choices().end()); };
    return {{"z", spec.z},
            {"T", spec.sigma_prime.size()},
            {"sigma_prime", items_json(spec.sigma_prime)},
            {"b", spec.b.to_string()},
            {"b_prime", spec.b_prime.to_string()},
            {"flip_time", spec.flip_time},
            {"predicted_gap", spec.predicted_gap},
            {"witnesses",
             {{"b", evictions(spec.witness_b)},
              {"b_prime", evictions(spec.witness_b_prime)},
              {"static_targets_b",
               std::vector<Item>(spec.static_targets_b.items().begin(), spec.static_targets_b.items().end())}}}};
}

CommandResult cmd_counterexample(const Common& c, bool oracle_check, std::size_t max_nodes, const std::string& trace_out,
                                 json& params)
{
    check_positive(c);
    CounterexampleSpec spec;
    try {
        spec = counterexample_sequence(c.Z, c.k);
    } catch (const UnsupportedParameter& e) {
        throw InputError(e.what());
    }
    params = params_json(spec.params, "witness", c.seed);
    CommandResult result;
    result.results = counterexample_json(spec);
    if (!trace_out.empty()) {
        std::ostringstream header;
        header << "non-antimonotone trace, k=" << spec.params.k << " Z=" << spec.params.Z << "\nb  = " << spec.b.to_string()
               << "\nb' = " << spec.b_prime.to_string();
        write_trace(trace_out, spec.sigma_prime, header.str());
        result.results["trace_file"] = trace_out;
    }

    // The constructive checks go first so a budget overflow in the search
    // still leaves them in the report.
    try {
        const CounterexampleReport report = verify_nonantimonotonicity(spec);
        result.results["verification"] = {
            {"dominates", report.b_dominated_by_b_prime},
            {"differing_positions", report.differing_positions},
            {"feasible_b", true},
            {"feasible_b_prime", true},
            {"latency_b", report.latency_b},
            {"latency_b_prime", report.latency_b_prime},
            {"gap", report.gap},
            {"antimonotone_latency_b", report.antimonotone_b},
            {"antimonotone_latency_b_prime", report.antimonotone_b_prime},
        };
        if (oracle_check) {
            VerifyOptions options;
            options.oracle_check = true;
            options.limits.max_nodes = max_nodes;
            const CounterexampleReport checked = verify_nonantimonotonicity(spec, options);
            result.results["oracle"] = {{"checked", true},
                                        {"opt_latency", *checked.opt_latency},
                                        {"b_unique_optimal", *checked.b_unique_optimal},
                                        {"b_search_feasible", *checked.b_search_feasible},
                                        {"b_prime_search_feasible", *checked.b_prime_search_feasible}};
        }
    } catch (const CounterexampleViolation& e) {
        result.results["violation"] = e.what();
        result.code = kPropertyViolation;
    } catch (const SearchBudgetExceeded& e) {
        result.results["oracle"] = {{"checked", true}, {"budget_exceeded", true}, {"error", e.what()}};
        result.code = kOracleBudget;
    }
    return result;
}

CommandResult cmd_reduce(const Common& c, const std::string& trace_path, json& params)
{
    check_positive(c);
    RequestSequence trace = read_trace(trace_path, c.n);
    ModelParams p{c.n.value_or(std::max<Item>(trace.max_item(), 1)), c.k, c.Z, Mode::Antimonotone};
    params = params_json(p, c.policy, c.seed);
    const PolicyFactory inner = make_factory(c.policy, p, c, trace);
    const DominationReport report = verify_domination(trace, inner, p);

    json violations = json::array();
    for (const auto& v : report.violations) {
        violations.push_back({{"t", v.t}, {"inner_latency", v.inner_latency}, {"wrapped_latency", v.wrapped_latency}});
    }
    CommandResult result;
    result.results = {
        {"inner", {{"k", report.inner_params.k}, {"mode", to_string(report.inner_params.mode)}, {"run", run_json(report.inner_run, trace, p.Z)}}},
        {"wrapped",
         {{"k", report.wrapped_params.k}, {"mode", to_string(report.wrapped_params.mode)}, {"run", run_json(report.wrapped_run, trace, p.Z)}}},
        {"max_protected", report.max_protected},
        {"holds", report.holds()},
        {"violations", violations},
    };
    if (!report.holds()) {
        result.code = kPropertyViolation;
    }
    return result;
}

CommandResult cmd_check(const std::string& suite, std::size_t cases, std::uint64_t seed, double idle, json& params)
{
    params = {{"n", nullptr}, {"k", nullptr}, {"Z", nullptr}, {"mode", nullptr}, {"policy", nullptr}, {"seed", seed}};
    SuiteOutcome outcome;
    try {
        outcome = run_suite(suite, cases, seed, idle);
    } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
    }
    CommandResult result;
    result.results = {{"suite", outcome.suite},
                      {"cases", outcome.cases},
                      {"passed", outcome.passed},
                      {"failed", outcome.cases - outcome.passed},
                      {"checks", outcome.checks},
                      {"idle_probability", idle}};
    if (!outcome.ok()) {
        result.results["first_failure"] = {{"case", *outcome.first_failure_case}, {"witness", outcome.first_failure}};
        result.code = kPropertyViolation;
    }
    return result;
}

void emit(const json& report, const std::string& out_path, std::ostream& out)
{
    const std::string text = report.dump(2) + "\n";
    if (out_path.empty()) {
        out << text;
        return;
    }
    std::ofstream file(out_path);
    if (!file) {
        throw InputError("cannot write report '" + out_path + "'");
    }
    file << text;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Delayed-hits caching simulator and analysis toolkit", "dhsim"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    Common c;
    auto add_common = [&](CLI::App* sub, bool with_policy, bool with_model) {
        sub->add_option("-k", c.k, "cache size")->capture_default_str();
        sub->add_option("-Z", c.Z, "fetch delay in timesteps")->capture_default_str();
        sub->add_option("-n", c.n, "item universe size (default: largest item in the trace)");
        if (with_policy) {
            sub->add_option("--policy", c.policy, "lru|fifo|never|static|belady")->capture_default_str();
            sub->add_option("--static-set", c.static_set, "comma-separated targets for --policy static (default 1..k)");
        }
        if (with_model) {
            sub->add_option("--model", c.model, "standard|antimonotone")->capture_default_str();
        }
        sub->add_option("--out", c.out, "write the JSON report here instead of stdout");
    };

    std::string trace_path;
    std::string evictions_path;
    auto* simulate_cmd = app.add_subcommand("simulate", "run a policy over a trace");
    simulate_cmd->add_option("trace", trace_path, "trace file")->required();
    simulate_cmd->add_option("--evictions", evictions_path, "replay a fixed eviction schedule (trace format) instead of a policy");
    simulate_cmd->add_option("--seed", c.seed, "recorded in the report");
    add_common(simulate_cmd, true, true);

    std::optional<std::size_t> cap;
    bool oracle_check = false;
    std::size_t max_nodes = SearchLimits{}.max_nodes;
    std::string trace_out;
    auto* adversary_cmd = app.add_subcommand("adversary", "build the adaptive sequence that defeats a policy");
    adversary_cmd->add_option("--cap", cap, "maximum number of bursty segments (default 10k)");
    adversary_cmd->add_flag("--oracle-check", oracle_check, "confirm OPT by exhaustive search");
    adversary_cmd->add_option("--max-nodes", max_nodes, "search budget for --oracle-check")->capture_default_str();
    adversary_cmd->add_option("--trace-out", trace_out, "write the sequence as a trace file");
    add_common(adversary_cmd, true, true);

    auto* counter_cmd = app.add_subcommand("counterexample", "trace where one extra hit raises total latency");
    counter_cmd->add_flag("--oracle-check", oracle_check, "confirm optimality and uniqueness by exhaustive search");
    counter_cmd->add_option("--max-nodes", max_nodes, "search budget for --oracle-check")->capture_default_str();
    counter_cmd->add_option("--trace-out", trace_out, "write the sequence as a trace file");
    add_common(counter_cmd, false, false);

    auto* reduce_cmd = app.add_subcommand("reduce", "compare a fetch-on-hit policy with its cache k+Z wrapper");
    reduce_cmd->add_option("trace", trace_path, "trace file")->required();
    add_common(reduce_cmd, true, false);

    std::string suite;
    std::size_t cases = 1000;
    std::uint64_t check_seed = 1;
    double idle = 0.25;
    auto* check_cmd = app.add_subcommand("check", "randomized property suites");
    check_cmd->add_option("--suite", suite, "latency|antimono|reduction")->required();
    check_cmd->add_option("--cases", cases, "number of random cases")->capture_default_str();
    check_cmd->add_option("--seed", check_seed, "generator seed")->capture_default_str();
    check_cmd->add_option("--idle-probability", idle, "probability of an idle slot")->capture_default_str();
    check_cmd->add_option("--out", c.out, "write the JSON report here instead of stdout");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kInputError;
    }

    json report = {{"command", ""}, {"version", kVersion}, {"params", json::object()}, {"results", json::object()}};
    json params;
    CommandResult result;
    try {
        if (simulate_cmd->parsed()) {
            report["command"] = "simulate";
            result = cmd_simulate(c, trace_path, evictions_path, params);
        } else if (adversary_cmd->parsed()) {
            report["command"] = "adversary";
            result = cmd_adversary(c, cap, oracle_check, max_nodes, trace_out, params);
        } else if (counter_cmd->parsed()) {
            report["command"] = "counterexample";
            result = cmd_counterexample(c, oracle_check, max_nodes, trace_out, params);
        } else if (reduce_cmd->parsed()) {
            report["command"] = "reduce";
            result = cmd_reduce(c, trace_path, params);
        } else {
            report["command"] = "check";
            result = cmd_check(suite, cases, check_seed, idle, params);
        }
        report["params"] = params;
        report["results"] = result.results;
        emit(report, c.out, out);
    } catch (const InfeasibleEviction& e) {
        err << "error: " << e.what() << '\n';
        return kInfeasible;
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const TraceError& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const AdversaryViolation& e) {
        err << "error: " << e.what() << '\n';
        return kPropertyViolation;
    } catch (const ContractViolation& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    }
    return result.code;
}

}  // namespace dhsim
