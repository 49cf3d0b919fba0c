#include "summa/statistical.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace summa {

namespace {

void require_same_shape(const MeanSeries& strong, const DensitySeries& density) {
    if (strong.method_label != density.method_label || strong.horizon != density.horizon ||
        strong.probe_count() != density.probe_count() || strong.upper != density.upper) {
        throw std::invalid_argument("inequality check: series metadata mismatch");
    }
}

double power_of(double base, double p) {
    if (p == 1.0) return base;
    if (p == 2.0) return base * base;
    return std::pow(base, p);
}

}  // namespace

std::vector<Index> exceed_count(const DistanceTrace& tr, double epsilon, Index upto) {
    if (!tr.has_target()) throw std::invalid_argument("exceed_count: trace has no target row");
    if (!(epsilon > 0.0)) throw std::invalid_argument("exceed_count: epsilon must be > 0");
    if (upto < 1 || upto > tr.horizon) {
        throw std::invalid_argument("exceed_count: upto outside the trace horizon");
    }
    std::vector<Index> out;
    out.reserve(tr.probe_count());
    for (std::size_t pr = 0; pr < tr.probe_count(); ++pr) {
        const double target = tr.target(pr);
        Index count = 0;
        for (Index k = 1; k <= upto; ++k) {
            if (std::abs(tr.at(pr, k) - target) >= epsilon) ++count;
        }
        out.push_back(count);
    }
    return out;
}

DensitySeries c_lambda_stat_density(const DistanceTrace& tr, const IndexMethod& lambda,
                                    double epsilon) {
    if (!tr.has_target()) throw std::invalid_argument("stat_density: trace has no target row");
    if (!(epsilon > 0.0)) throw std::invalid_argument("stat_density: epsilon must be > 0");
    const Index m = lambda.last_leq(tr.horizon);
    if (m < 1) throw std::invalid_argument("stat_density: lambda(1) exceeds the trace horizon");

    DensitySeries out;
    out.epsilon = epsilon;
    out.method_label = lambda.label();
    out.horizon = m;
    for (Index n = 1; n <= m; ++n) out.upper.push_back(lambda.value(n));
    out.counts.assign(tr.probe_count(), {});
    out.entries.assign(tr.probe_count(), {});

    // Single pass: running exceedance count sampled at each lambda(n), so the
    // submethod densities are exact re-indexings of the lambda(n)=n series.
    for (std::size_t pr = 0; pr < tr.probe_count(); ++pr) {
        const double target = tr.target(pr);
        Index count = 0;
        Index n = 1;
        for (Index k = 1; k <= lambda.value(m) && n <= m; ++k) {
            if (std::abs(tr.at(pr, k) - target) >= epsilon) ++count;
            if (k == lambda.value(n)) {
                out.counts[pr].push_back(count);
                out.entries[pr].push_back(static_cast<double>(count) /
                                          static_cast<double>(lambda.value(n)));
                ++n;
            }
        }
    }
    return out;
}

InequalityReport chebyshev_check(const MeanSeries& strong, const DensitySeries& density,
                                 double epsilon, double p) {
    require_same_shape(strong, density);
    if (density.epsilon != epsilon) {
        throw std::invalid_argument("chebyshev_check: density built with a different epsilon");
    }
    if (strong.power != p) {
        throw std::invalid_argument("chebyshev_check: strong series built with a different power");
    }

    InequalityReport rep;
    rep.name = "counting-bound";
    rep.min_slack = std::numeric_limits<double>::infinity();
    const double eps_p = power_of(epsilon, p);
    constexpr double kTol = 1e-12;

    for (std::size_t pr = 0; pr < strong.probe_count(); ++pr) {
        for (Index n = 1; n <= strong.horizon; ++n) {
            const double lhs = eps_p * density.at(pr, n);
            const double rhs = strong.at(pr, n);
            const double slack = rhs - lhs;
            ++rep.checked;
            if (slack < rep.min_slack) rep.min_slack = slack;
            if (slack < -kTol) {
                if (rep.holds) {
                    rep.violation_probe = pr;
                    rep.violation_n = n;
                }
                rep.holds = false;
                rep.max_violation = std::max(rep.max_violation, -slack);
            }
        }
    }
    return rep;
}

InequalityReport bounded_split_check(const MeanSeries& strong, const DensitySeries& density,
                                     double epsilon, double p, const std::vector<double>& alpha) {
    require_same_shape(strong, density);
    if (density.epsilon != epsilon) {
        throw std::invalid_argument("bounded_split_check: density built with a different epsilon");
    }
    if (strong.power != p) {
        throw std::invalid_argument("bounded_split_check: strong series built with a different power");
    }
    if (alpha.size() != strong.probe_count()) {
        throw std::invalid_argument("bounded_split_check: alpha size mismatch");
    }

    InequalityReport rep;
    rep.name = "bounded-split";
    rep.min_slack = std::numeric_limits<double>::infinity();
    const double eps_p = power_of(epsilon, p);
    constexpr double kTol = 1e-12;

    for (std::size_t pr = 0; pr < strong.probe_count(); ++pr) {
        const double alpha_p = power_of(alpha[pr], p);
        for (Index n = 1; n <= strong.horizon; ++n) {
            const double lhs = strong.at(pr, n);
            // A strong mean above alpha^p witnesses a deviation above alpha.
            if (lhs > alpha_p * (1.0 + 1e-9) + kTol) {
                throw std::invalid_argument(
                    "bounded_split_check: alpha smaller than an observed deviation");
            }
            const double rhs = alpha_p * density.at(pr, n) + eps_p;
            const double slack = rhs - lhs;
            ++rep.checked;
            if (slack < rep.min_slack) rep.min_slack = slack;
            if (slack < -kTol) {
                if (rep.holds) {
                    rep.violation_probe = pr;
                    rep.violation_n = n;
                }
                rep.holds = false;
                rep.max_violation = std::max(rep.max_violation, -slack);
            }
        }
    }
    return rep;
}

}  // namespace summa
