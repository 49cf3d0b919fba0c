#pragma once

#include <string>
#include <vector>

#include "summa/index_methods.hpp"
#include "summa/metric_sets.hpp"
#include "summa/transforms.hpp"

namespace summa {

/// Per-probe exceedance densities n -> (1/lambda(n)) #{k <= lambda(n) :
/// |values[k] - target| >= epsilon}. Counts are exact integers before
/// normalization; ties at exactly epsilon count as exceedances.
struct DensitySeries {
    double epsilon = 0.0;
    std::string method_label;
    std::vector<Index> upper;                   // lambda(n) per entry
    Index horizon = 0;                          // entries in n
    std::vector<std::vector<Index>> counts;     // [probe][n-1]
    std::vector<std::vector<double>> entries;   // [probe][n-1], in [0, 1]

    double at(std::size_t probe, Index n) const {
        return entries[probe][static_cast<std::size_t>(n - 1)];
    }
    std::size_t probe_count() const { return entries.size(); }
};

/// Exact count of k <= upto with |values[k] - target| >= epsilon, per probe.
std::vector<Index> exceed_count(const DistanceTrace& tr, double epsilon, Index upto);

/// C_lambda statistical density series; lambda(n) = n recovers the plain
/// statistical density.
DensitySeries c_lambda_stat_density(const DistanceTrace& tr, const IndexMethod& lambda,
                                    double epsilon);

/// Outcome of a pointwise inequality check across all probes and entries.
/// A violation here signals an implementation bug, not a math failure.
struct InequalityReport {
    std::string name;
    bool holds = true;
    std::size_t violation_probe = 0;
    Index violation_n = 0;
    double max_violation = 0.0;   // most negative slack seen, as a magnitude
    double min_slack = 0.0;       // smallest (rhs - lhs) observed
    Index checked = 0;
};

/// Per-n check of epsilon^p * density(n) <= strong(n), the counting bound
/// extracted from the p-strong summability proof. Slack tolerance 1e-12.
InequalityReport chebyshev_check(const MeanSeries& strong, const DensitySeries& density,
                                 double epsilon, double p);

/// Per-n check of strong(n) <= alpha^p * density(n) + epsilon^p, the split
/// bound from the bounded-sequence converse; alpha must dominate every
/// deviation (take it from bounded_estimate on the deviations).
InequalityReport bounded_split_check(const MeanSeries& strong, const DensitySeries& density,
                                     double epsilon, double p, const std::vector<double>& alpha);

}  // namespace summa
