#pragma once

#include <string>
#include <vector>

#include "summa/index_methods.hpp"
#include "summa/metric_sets.hpp"

namespace summa {

enum class MeanKind {
    C1,             // (1/n) sum_{k<=n} d_k
    CLambda,        // (1/lambda(n)) sum_{k<=lambda(n)} d_k
    DLambda,        // block mean over (lambda(n-1), lambda(n)]
    Deferred,       // block mean over (p(n), q(n)]
    StrongCLambda,  // (1/lambda(n)) sum_{k<=lambda(n)} |d_k - target|^p
    StrongDLambda,  // block version of the above
    StrongC1,       // lambda(n) = n case of StrongCLambda
};

const char* to_string(MeanKind k);

/// A mean-type transform of a distance trace: per-probe rows indexed by
/// n = 1..horizon, where entry n only uses trace values with k <= lambda(n)
/// (or q(n)). Strong kinds carry the power p and are deviation means.
struct MeanSeries {
    MeanKind kind = MeanKind::C1;
    double power = 1.0;            // exponent p for strong kinds
    std::string method_label;
    std::vector<Index> upper;      // lambda(n) (or q(n)) per entry
    Index horizon = 0;             // number of n entries
    std::vector<std::vector<double>> entries;  // [probe][n-1]

    double at(std::size_t probe, Index n) const {
        return entries[probe][static_cast<std::size_t>(n - 1)];
    }
    std::size_t probe_count() const { return entries.size(); }
};

/// Wijsman C_lambda mean: entry(n) = (1/lambda(n)) sum_{k=1}^{lambda(n)} values[k].
/// All lambda entries must fit within the trace horizon.
MeanSeries c_lambda(const DistanceTrace& tr, const IndexMethod& lambda);

/// Wijsman D_lambda mean: block mean over k in (lambda(n-1), lambda(n)].
MeanSeries d_lambda(const DistanceTrace& tr, const IndexMethod& lambda);

/// Agnew deferred mean: block mean over k in (p(n), q(n)].
MeanSeries deferred(const DistanceTrace& tr, const DeferredPair& pq);

/// Strong p-mean of deviations |values[k] - target|^p, prefix (CLambda/C1)
/// or block (DLambda) style. Requires the trace target row.
MeanSeries strong_mean(const DistanceTrace& tr, MeanKind method, const IndexMethod& lambda,
                       double p);

/// Apply a summability matrix row-by-row: entry(n) = sum_k row_n(k) * series(k).
/// Row supports must stay within the series horizon.
MeanSeries apply_row_matrix(const RowGenerator& rows, const MeanSeries& series, Index horizon);

}  // namespace summa
