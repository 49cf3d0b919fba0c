#include "summa/metric_sets.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace summa {

namespace {

void require_finite(const std::vector<double>& coords, const char* what) {
    for (double c : coords) {
        if (!std::isfinite(c)) {
            throw std::invalid_argument(std::string(what) + ": non-finite coordinate");
        }
    }
}

void require_dim(std::size_t a, std::size_t b, const char* what) {
    if (a != b) {
        throw std::invalid_argument(std::string(what) + ": dimension mismatch (" +
                                    std::to_string(a) + " vs " + std::to_string(b) + ")");
    }
}

}  // namespace

MetricPoint::MetricPoint(std::vector<double> c) : coords(std::move(c)) {
    if (coords.empty()) throw std::invalid_argument("MetricPoint: dimension must be >= 1");
    require_finite(coords, "MetricPoint");
}

MetricPoint::MetricPoint(std::initializer_list<double> c) : MetricPoint(std::vector<double>(c)) {}

double euclidean(const MetricPoint& a, const MetricPoint& b) {
    require_dim(a.dim(), b.dim(), "euclidean");
    double s = 0.0;
    for (std::size_t i = 0; i < a.coords.size(); ++i) {
        const double d = a.coords[i] - b.coords[i];
        s += d * d;
    }
    return std::sqrt(s);
}

namespace {

std::size_t shape_dim(const ClosedSet::Shape& shape) {
    struct Visitor {
        std::size_t operator()(const Singleton& s) const { return s.point.dim(); }
        std::size_t operator()(const FinitePointSet& s) const {
            if (s.points.empty()) throw std::invalid_argument("FinitePointSet: must be nonempty");
            const std::size_t d = s.points.front().dim();
            for (const auto& p : s.points) require_dim(p.dim(), d, "FinitePointSet");
            return d;
        }
        std::size_t operator()(const Ball& s) const {
            if (!(s.radius >= 0.0) || !std::isfinite(s.radius)) {
                throw std::invalid_argument("Ball: radius must be finite and >= 0");
            }
            return s.center.dim();
        }
        std::size_t operator()(const Sphere& s) const {
            if (!(s.radius > 0.0) || !std::isfinite(s.radius)) {
                throw std::invalid_argument("Sphere: radius must be finite and > 0");
            }
            return s.center.dim();
        }
        std::size_t operator()(const AxisBox& s) const {
            require_dim(s.lo.dim(), s.hi.dim(), "AxisBox");
            for (std::size_t i = 0; i < s.lo.dim(); ++i) {
                if (!(s.lo.coords[i] <= s.hi.coords[i])) {
                    throw std::invalid_argument("AxisBox: lo must be <= hi componentwise");
                }
            }
            return s.lo.dim();
        }
        std::size_t operator()(const Hyperplane& s) const {
            if (!std::isfinite(s.offset)) throw std::invalid_argument("Hyperplane: non-finite offset");
            double norm = 0.0;
            for (double c : s.normal.coords) norm += c * c;
            if (!(norm > 0.0)) throw std::invalid_argument("Hyperplane: normal must be nonzero");
            return s.normal.dim();
        }
        std::size_t operator()(const DistanceOracle& s) const {
            if (s.dim == 0) throw std::invalid_argument("DistanceOracle: dimension must be >= 1");
            if (!s.fn) throw std::invalid_argument("DistanceOracle: missing callable");
            return s.dim;
        }
    };
    return std::visit(Visitor{}, shape);
}

}  // namespace

ClosedSet::ClosedSet(Shape shape) : shape_(std::move(shape)), dim_(shape_dim(shape_)) {
    // Normalize the hyperplane normal once so distance() is a plain dot product.
    if (auto* h = std::get_if<Hyperplane>(&shape_)) {
        double norm = 0.0;
        for (double c : h->normal.coords) norm += c * c;
        norm = std::sqrt(norm);
        for (double& c : h->normal.coords) c /= norm;
        h->offset /= norm;
    }
}

ClosedSet ClosedSet::singleton(MetricPoint p) { return ClosedSet(Singleton{std::move(p)}); }
ClosedSet ClosedSet::finite_points(std::vector<MetricPoint> pts) {
    return ClosedSet(FinitePointSet{std::move(pts)});
}
ClosedSet ClosedSet::ball(MetricPoint center, double radius) {
    return ClosedSet(Ball{std::move(center), radius});
}
ClosedSet ClosedSet::sphere(MetricPoint center, double radius) {
    return ClosedSet(Sphere{std::move(center), radius});
}
ClosedSet ClosedSet::axis_box(MetricPoint lo, MetricPoint hi) {
    return ClosedSet(AxisBox{std::move(lo), std::move(hi)});
}
ClosedSet ClosedSet::hyperplane(MetricPoint normal, double offset) {
    return ClosedSet(Hyperplane{std::move(normal), offset});
}
ClosedSet ClosedSet::oracle(std::size_t dim, std::function<double(const MetricPoint&)> fn,
                            std::string label) {
    return ClosedSet(DistanceOracle{dim, std::move(fn), std::move(label)});
}

double distance(const MetricPoint& x, const ClosedSet& a) {
    require_dim(x.dim(), a.dim(), "distance");
    require_finite(x.coords, "distance");

    struct Visitor {
        const MetricPoint& x;

        double operator()(const Singleton& s) const { return euclidean(x, s.point); }

        double operator()(const FinitePointSet& s) const {
            double best = std::numeric_limits<double>::infinity();
            for (const auto& p : s.points) best = std::min(best, euclidean(x, p));
            return best;
        }

        double operator()(const Ball& s) const {
            return std::max(0.0, euclidean(x, s.center) - s.radius);
        }

        double operator()(const Sphere& s) const {
            return std::abs(euclidean(x, s.center) - s.radius);
        }

        double operator()(const AxisBox& s) const {
            double acc = 0.0;
            for (std::size_t i = 0; i < x.dim(); ++i) {
                const double below = s.lo.coords[i] - x.coords[i];
                const double above = x.coords[i] - s.hi.coords[i];
                const double gap = std::max({below, above, 0.0});
                acc += gap * gap;
            }
            return std::sqrt(acc);
        }

        double operator()(const Hyperplane& s) const {
            double dot = 0.0;
            for (std::size_t i = 0; i < x.dim(); ++i) dot += s.normal.coords[i] * x.coords[i];
            return std::abs(dot - s.offset);
        }

        double operator()(const DistanceOracle& s) const {
            const double v = s.fn(x);
            if (!std::isfinite(v) || v < 0.0) {
                throw std::runtime_error("DistanceOracle '" + s.label +
                                         "' returned an invalid distance");
            }
            return v;
        }
    };
    return std::visit(Visitor{x}, a.shape());
}

ClosedSet SetSequence::at(Index k) const {
    if (k < 1) throw std::invalid_argument("SetSequence: index must be >= 1");
    if (!generator) throw std::invalid_argument("SetSequence '" + label + "': missing generator");
    return generator(k);
}

double DistanceTrace::target(std::size_t probe) const {
    if (!target_row) throw std::invalid_argument("DistanceTrace: no target row");
    return (*target_row)[probe];
}

DistanceTrace DistanceTrace::from_rows(std::vector<std::vector<double>> rows,
                                       std::optional<std::vector<double>> targets) {
    if (rows.empty()) throw std::invalid_argument("DistanceTrace: need at least one row");
    DistanceTrace tr;
    tr.horizon = static_cast<Index>(rows.front().size());
    if (tr.horizon < 1) throw std::invalid_argument("DistanceTrace: horizon must be >= 1");
    for (std::size_t p = 0; p < rows.size(); ++p) {
        if (static_cast<Index>(rows[p].size()) != tr.horizon) {
            throw std::invalid_argument("DistanceTrace: ragged rows");
        }
        for (double v : rows[p]) {
            if (!std::isfinite(v) || v < 0.0) {
                throw std::invalid_argument("DistanceTrace: values must be finite and >= 0");
            }
        }
        tr.probes.push_back(MetricPoint{static_cast<double>(p + 1)});
    }
    tr.values = std::move(rows);
    if (targets) {
        if (targets->size() != tr.values.size()) {
            throw std::invalid_argument("DistanceTrace: target row size mismatch");
        }
        tr.target_row = std::move(targets);
    }
    return tr;
}

DistanceTrace trace(const SetSequence& seq, const std::vector<MetricPoint>& probes, Index horizon,
                    const std::optional<ClosedSet>& target) {
    if (horizon < 1) throw std::invalid_argument("trace: horizon must be >= 1");
    if (probes.empty()) throw std::invalid_argument("trace: need at least one probe");

    DistanceTrace tr;
    tr.probes = probes;
    tr.horizon = horizon;
    tr.values.assign(probes.size(), {});
    for (auto& row : tr.values) row.reserve(static_cast<std::size_t>(horizon));

    for (Index k = 1; k <= horizon; ++k) {
        const ClosedSet a = seq.at(k);
        for (std::size_t p = 0; p < probes.size(); ++p) {
            tr.values[p].push_back(distance(probes[p], a));
        }
    }
    if (target) {
        std::vector<double> row;
        row.reserve(probes.size());
        for (const auto& x : probes) row.push_back(distance(x, *target));
        tr.target_row = std::move(row);
    }
    return tr;
}

bool BoundReport::any_suspect() const {
    return std::any_of(unbounded_suspect.begin(), unbounded_suspect.end(),
                       [](bool b) { return b; });
}

BoundReport bounded_estimate(const DistanceTrace& tr) {
    BoundReport rep;
    const Index head_end = std::max<Index>(1, tr.horizon / 10);
    for (std::size_t p = 0; p < tr.probe_count(); ++p) {
        double sup = -1.0;
        Index arg = 1;
        double head_sup = -1.0;
        for (Index k = 1; k <= tr.horizon; ++k) {
            const double v = tr.at(p, k);
            if (v > sup) {
                sup = v;
                arg = k;
            }
            if (k == head_end) head_sup = sup;
        }
        rep.sup.push_back(sup);
        rep.arg_sup.push_back(arg);
        rep.unbounded_suspect.push_back(tr.horizon > head_end && sup > head_sup);
    }
    return rep;
}

std::vector<double> sup_deviation(const DistanceTrace& tr) {
    if (!tr.has_target()) throw std::invalid_argument("sup_deviation: trace has no target row");
    std::vector<double> out;
    out.reserve(tr.probe_count());
    for (std::size_t p = 0; p < tr.probe_count(); ++p) {
        double sup = 0.0;
        const double t = tr.target(p);
        for (Index k = 1; k <= tr.horizon; ++k) {
            sup = std::max(sup, std::abs(tr.at(p, k) - t));
        }
        out.push_back(sup);
    }
    return out;
}

}  // namespace summa
