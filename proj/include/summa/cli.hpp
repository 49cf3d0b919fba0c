#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "summa/expr.hpp"
#include "summa/ideals.hpp"
#include "summa/metric_sets.hpp"

namespace summa {

enum class Command { Transform, Density, Verdict, Scenario, Identities, Conditions };

enum class OutputFormat { Csv, Json };

/// Everything a CLI invocation needs; flags and config-file keys map onto
/// these fields one-to-one.
struct RunConfig {
    Command command = Command::Scenario;

    // Data source: a builtin/custom scenario or a re-ingested trace CSV.
    std::string scenario_name;
    std::string scenario_file;  // key = value scenario definition
    std::string trace_csv;

    std::string lambda_expr;
    std::string mu_expr;
    std::string p_expr;  // deferred means
    std::string q_expr;

    Index horizon = 0;  // 0: keep the source horizon
    double epsilon = 0.5;
    double delta = 0.05;
    double power = 2.0;
    double tolerance = 1e-12;
    std::uint64_t seed = 1;
    Index trials = 100;

    std::string series;        // transform: c1|c_lambda|d_lambda|deferred|strong_*
    std::string mode = "all";  // verdict: one mode name or "all"
    IdealKind ideal = IdealKind::DensityZero;
    double ideal_threshold = 0.05;
    std::optional<std::vector<MetricPoint>> probes;

    OutputFormat format = OutputFormat::Json;
    std::string output;      // empty: stdout
    std::string series_csv;  // scenario: also dump every series as CSV here
    std::vector<std::string> identity_lambdas;
};

/// Run one configured command; returns the process exit code:
///   0 success (and zero expected-vs-actual diffs),
///   1 diffs, violated verdicts, identity residuals over tolerance, or
///     implication counterexample candidates,
///   2 input or I/O errors (the caller maps exceptions to 2 as well).
int execute(const RunConfig& cfg);

/// Parse a key = value config file (UTF-8, '#' comments).
std::map<std::string, std::string> read_kv_config(const std::string& path);

/// Full command-line entry point used by the `summa` binary.
int run_cli(int argc, const char* const* argv);

}  // namespace summa
