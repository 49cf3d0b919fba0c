#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace summa {

using Index = std::int64_t;

/// A point of Euclidean d-space. Coordinates must be finite; the dimension
/// is fixed per workspace and checked wherever points and sets meet.
struct MetricPoint {
    std::vector<double> coords;

    MetricPoint() = default;
    explicit MetricPoint(std::vector<double> c);
    MetricPoint(std::initializer_list<double> c);

    std::size_t dim() const { return coords.size(); }
};

double euclidean(const MetricPoint& a, const MetricPoint& b);

// -- Closed-set shapes -------------------------------------------------------
//
// Each shape has an exact closed-form distance; DistanceOracle is the escape
// hatch for sets with no analytic form (the callable must be 1-Lipschitz and
// nonnegative, vanishing exactly on the set).

struct Singleton {
    MetricPoint point;
};

struct FinitePointSet {
    std::vector<MetricPoint> points;  // nonempty, same dimension
};

struct Ball {
    MetricPoint center;
    double radius;  // >= 0
};

struct Sphere {
    MetricPoint center;
    double radius;  // > 0
};

struct AxisBox {
    MetricPoint lo;
    MetricPoint hi;  // lo <= hi componentwise
};

struct Hyperplane {
    MetricPoint normal;  // normalized on construction
    double offset;       // the set {y : <normal, y> = offset}
};

struct DistanceOracle {
    std::size_t dim;
    std::function<double(const MetricPoint&)> fn;
    std::string label;
};

class ClosedSet {
public:
    using Shape =
        std::variant<Singleton, FinitePointSet, Ball, Sphere, AxisBox, Hyperplane, DistanceOracle>;

    explicit ClosedSet(Shape shape);

    static ClosedSet singleton(MetricPoint p);
    static ClosedSet finite_points(std::vector<MetricPoint> pts);
    static ClosedSet ball(MetricPoint center, double radius);
    static ClosedSet sphere(MetricPoint center, double radius);
    static ClosedSet axis_box(MetricPoint lo, MetricPoint hi);
    static ClosedSet hyperplane(MetricPoint normal, double offset);
    static ClosedSet oracle(std::size_t dim, std::function<double(const MetricPoint&)> fn,
                            std::string label = "oracle");

    const Shape& shape() const { return shape_; }
    std::size_t dim() const { return dim_; }

private:
    Shape shape_;
    std::size_t dim_;
};

/// Wijsman distance d(x, A) = inf over a in A of |x - a|, exact per shape.
double distance(const MetricPoint& x, const ClosedSet& a);

// -- Set sequences and traces ------------------------------------------------

/// Indexed family k -> A_k for k >= 1. The generator must be total and
/// deterministic: the same k always yields the same set.
struct SetSequence {
    std::string label;
    std::function<ClosedSet(Index)> generator;
    std::optional<bool> bounded_hint;

    ClosedSet at(Index k) const;
};

/// Materialized probe-by-index matrix of d(x, A_k) values, k = 1..horizon,
/// with an optional per-probe target row d(x, A). Immutable once built.
struct DistanceTrace {
    std::vector<MetricPoint> probes;
    Index horizon = 0;
    std::vector<std::vector<double>> values;           // [probe][k-1]
    std::optional<std::vector<double>> target_row;     // [probe]

    std::size_t probe_count() const { return values.size(); }
    double at(std::size_t probe, Index k) const { return values[probe][static_cast<std::size_t>(k - 1)]; }
    double target(std::size_t probe) const;
    bool has_target() const { return target_row.has_value(); }

    /// Trace over raw scalar rows (one synthetic 1-d probe per row).
    static DistanceTrace from_rows(std::vector<std::vector<double>> rows,
                                   std::optional<std::vector<double>> targets = std::nullopt);
};

DistanceTrace trace(const SetSequence& seq, const std::vector<MetricPoint>& probes, Index horizon,
                    const std::optional<ClosedSet>& target = std::nullopt);

/// Finite-horizon boundedness estimate: per-probe sup of the trace values,
/// plus a growth heuristic. `unbounded_suspect` is set when the running sup
/// still grew over the last decade of indices (a new maximum appeared in
/// (N/10, N]). A sup at horizon is never a proof of boundedness.
struct BoundReport {
    std::vector<double> sup;                // per probe
    std::vector<Index> arg_sup;             // first index achieving sup
    std::vector<bool> unbounded_suspect;    // per probe

    bool any_suspect() const;
};

BoundReport bounded_estimate(const DistanceTrace& tr);

/// Per-probe sup over k of |values[k] - target|; requires a target row.
std::vector<double> sup_deviation(const DistanceTrace& tr);

}  // namespace summa
