#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "summa/ideals.hpp"
#include "summa/index_methods.hpp"
#include "summa/metric_sets.hpp"
#include "summa/statistical.hpp"
#include "summa/transforms.hpp"

namespace summa {

/// What a scenario claims up front about one verdict mode (applies to every
/// probe). `basis` records how the expectation was obtained.
struct ExpectedVerdict {
    Mode mode;
    VerdictStatus status;
    std::string basis;
};

struct ExpectedCondition {
    ConditionQuantity quantity;
    bool on_companion = false;  // quantity evaluated on mu instead of lambda
    ConditionVerdict verdict;
    std::string basis;
};

/// A named, fully deterministic set-sequence experiment: sequence, target,
/// probes, index method, parameters, and the statuses it is expected to
/// reproduce at its horizon.
struct Scenario {
    std::string name;
    SetSequence seq;
    std::optional<ClosedSet> target;
    std::vector<MetricPoint> probes;
    std::string lambda_expr;
    std::string mu_expr;  // empty unless the scenario carries a companion
    Index horizon = 2000;
    Index condition_horizon = 0;  // 0: use the n-domain of lambda
    double epsilon = 0.5;
    double delta = 0.05;
    double power = 2.0;
    Ideal ideal = Ideal::density_zero();
    std::vector<ExpectedVerdict> expected;
    std::vector<ExpectedCondition> expected_conditions;
};

std::vector<std::string> builtin_names();

/// Catalog lookup; throws on an unknown name.
Scenario builtin(const std::string& name);

/// Everything a scenario run produces, in a fixed deterministic order.
struct ScenarioReport {
    std::string name;
    Index horizon = 0;
    std::string lambda_label;

    DistanceTrace trace_data;
    MeanSeries c1;
    MeanSeries clambda;
    MeanSeries dlambda;
    MeanSeries strong_clambda;   // p = 1
    MeanSeries strong_dlambda;   // p = 1
    MeanSeries pstrong_clambda;  // scenario power
    DensitySeries density;

    BoundReport bounds;
    std::vector<double> deviation_sup;

    std::vector<ConditionReport> conditions;
    std::vector<IdealVerdict> verdicts;  // one per mode, catalog order
    InequalityReport counting_bound;
    InequalityReport split_bound;
    ContainmentReport stat_in_pstrong;
    ContainmentReport pstrong_in_stat;
    ImplicationSuite implications;

    std::vector<std::string> diffs;  // expected-vs-actual mismatches

    bool passed() const { return diffs.empty() && !implications.any_candidate(); }
};

/// Run the full pipeline on a scenario and diff the outcome against its
/// expected entries.
ScenarioReport run(const Scenario& sc);

/// Build a scenario from key = value text (see the config format in the CLI
/// docs): `base` picks a builtin to start from; sequence-defining keys like
/// `set`, `set_a`/`set_b`, `target`, `probes`, plus `lambda`, `horizon`,
/// `epsilon`, `delta`, `power`, `ideal`, `ideal_threshold` override it.
Scenario scenario_from_config(const std::map<std::string, std::string>& kv);

}  // namespace summa
