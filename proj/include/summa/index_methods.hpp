#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "summa/metric_sets.hpp"

namespace summa {

/// A strictly increasing sequence of positive integers lambda(1), lambda(2), ...
/// with the sentinel lambda(0) = 0. Instances hold a materialized prefix and,
/// when built from a closed form, the generator used to extend it. Immutable:
/// extending returns a new method.
class IndexMethod {
public:
    using Generator = std::function<Index(Index)>;

    IndexMethod() = default;  // empty method; populate via the factories

    static IndexMethod from_values(std::string label, std::vector<Index> values);
    static IndexMethod from_generator(std::string label, Generator gen, Index count);
    /// Identity method lambda(n) = n, materialized to `count`.
    static IndexMethod identity(Index count);

    const std::string& label() const { return label_; }

    /// lambda(n); n = 0 returns the sentinel 0. Throws past the materialized prefix.
    Index value(Index n) const;
    /// Number of materialized entries.
    Index size() const { return static_cast<Index>(values_.size()); }
    bool empty() const { return values_.empty(); }
    const std::vector<Index>& values() const { return values_; }

    /// Copy with at least `count` entries materialized (requires a generator
    /// if `count` exceeds the current prefix).
    IndexMethod extended(Index count) const;

    /// Largest n with lambda(n) <= bound (0 if none).
    Index last_leq(Index bound) const;

    bool has_generator() const { return static_cast<bool>(gen_); }

private:
    std::string label_;
    std::vector<Index> values_;
    Generator gen_;
};

/// Deferred-mean index pair: block (p(n), q(n)] with 0 <= p(n) < q(n) and
/// q strictly increasing over the materialized prefix.
class DeferredPair {
public:
    static DeferredPair from_values(std::string label, std::vector<Index> p, std::vector<Index> q);
    static DeferredPair from_generators(std::string label, std::function<Index(Index)> p,
                                        std::function<Index(Index)> q, Index count);

    const std::string& label() const { return label_; }
    Index size() const { return static_cast<Index>(p_.size()); }
    Index p(Index n) const;
    Index q(Index n) const;
    /// Largest n with q(n) <= bound (0 if none).
    Index last_leq(Index bound) const;

private:
    DeferredPair() = default;

    std::string label_;
    std::vector<Index> p_;
    std::vector<Index> q_;
};

// -- Ratio-condition estimation ----------------------------------------------

/// The limit quantities appearing in theorem hypotheses.
enum class ConditionQuantity {
    LimsupNextRatio,   // limsup lambda(n+1)/lambda(n), threshold: = 1
    LiminfStepRatio,   // liminf lambda(n)/lambda(n-1), threshold: > 1
    LimCompanionRatio, // lim mu(n)/lambda(n),          threshold: = 1
    LimIndexRatio,     // lim n/lambda(n),              threshold: > 0
    LimsupStepRatio,   // limsup lambda(n)/lambda(n-1), threshold: < infinity
};

enum class ConditionVerdict { SatisfiesCondition, FailsCondition, Inconclusive };

/// Finite-horizon estimate of a limit quantity over the tail window
/// [ceil(N/2), N]. The verdict is a hint: finite data cannot certify a limit.
struct ConditionReport {
    ConditionQuantity quantity;
    std::string lambda_label;
    std::string companion_label;  // empty unless LimCompanionRatio
    double estimate = 0.0;
    Index window_lo = 0;
    Index window_hi = 0;
    double tolerance = 1e-2;
    ConditionVerdict verdict = ConditionVerdict::Inconclusive;
};

const char* to_string(ConditionQuantity q);
const char* to_string(ConditionVerdict v);

/// Estimate `which` for lambda over n in [ceil(N/2), N]. limsup kinds take
/// the window max, liminf the window min, lim kinds the window mean.
/// LimsupNextRatio needs lambda materialized to N+1; LimCompanionRatio needs
/// a companion method mu materialized to N. LimsupStepRatio has no finite
/// threshold; its verdict compares the window max against the pre-window max
/// and fails when the step ratios are still growing.
ConditionReport ratio_condition(const IndexMethod& lambda, ConditionQuantity which, Index horizon,
                                const std::optional<IndexMethod>& companion = std::nullopt,
                                double tolerance = 1e-2);

// -- The proof matrices T and R ----------------------------------------------

/// One row of a summability matrix, as (column, weight) pairs with k >= 1.
using SparseRow = std::vector<std::pair<Index, double>>;
using RowGenerator = std::function<SparseRow(Index)>;

/// Row n of T: t_{nk} = (lambda(k) - lambda(k-1)) / lambda(n) for k = 1..n.
/// Rows are convex weights: positive, summing to 1 by telescoping.
SparseRow t_matrix_row(const IndexMethod& lambda, Index n);

/// Row n of R: k = n carries lambda(n)/(lambda(n)-lambda(n-1)), k = n-1
/// carries -lambda(n-1)/(lambda(n)-lambda(n-1)). The n = 1 row is {1: 1}.
/// The absolute row sum equals 1 + 2/(lambda(n)/lambda(n-1) - 1).
SparseRow r_matrix_row(const IndexMethod& lambda, Index n);

RowGenerator t_rows(const IndexMethod& lambda);
RowGenerator r_rows(const IndexMethod& lambda);

/// Finite-horizon Silverman-Toeplitz diagnostics over rows 1..N:
///   - row sums within 1e-9 of 1,
///   - absolute row sums bounded (no growth between the front half and the
///     tail half; the printed bound is the observed max),
///   - fixed-column decay: entries of row N in columns k <= min(16, N/4)
///     below 1e-3, or strictly smaller than in row ceil(N/2).
/// All three are finite-horizon proxies, never certificates.
struct RegularityReport {
    Index horizon = 0;
    double max_abs_row_sum = 0.0;
    double max_row_sum_deviation = 0.0;
    double max_column_tail = 0.0;
    bool row_sums_ok = false;
    bool abs_row_sums_bounded = false;
    bool columns_decay = false;

    bool regular_consistent() const { return row_sums_ok && abs_row_sums_bounded && columns_decay; }
};

RegularityReport regularity_report(const RowGenerator& rows, Index horizon);

// -- Complement method ---------------------------------------------------------

/// mu enumerating {1..N} \ {lambda(n)}; empty (and flagged) when lambda
/// covers all of 1..N.
struct ComplementResult {
    IndexMethod method;
    bool is_empty = false;
};

ComplementResult complement_method(const IndexMethod& lambda, Index horizon);

}  // namespace summa
