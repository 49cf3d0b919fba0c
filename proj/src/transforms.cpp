#include "summa/transforms.hpp"

#include <cmath>
#include <stdexcept>

#include "summa/compensated.hpp"

namespace summa {

namespace {

double deviation_power(double value, double target, double p) {
    const double dev = std::abs(value - target);
    if (p == 1.0) return dev;
    if (p == 2.0) return dev * dev;
    return std::pow(dev, p);
}

Index series_horizon_or_throw(const IndexMethod& lambda, Index trace_horizon, const char* op) {
    const Index m = lambda.last_leq(trace_horizon);
    if (m < 1) {
        throw std::invalid_argument(std::string(op) + ": lambda(1) exceeds the trace horizon");
    }
    return m;
}

}  // namespace

const char* to_string(MeanKind k) {
    switch (k) {
        case MeanKind::C1: return "c1";
        case MeanKind::CLambda: return "c_lambda";
        case MeanKind::DLambda: return "d_lambda";
        case MeanKind::Deferred: return "deferred";
        case MeanKind::StrongCLambda: return "strong_c_lambda";
        case MeanKind::StrongDLambda: return "strong_d_lambda";
        case MeanKind::StrongC1: return "strong_c1";
    }
    return "?";
}

MeanSeries c_lambda(const DistanceTrace& tr, const IndexMethod& lambda) {
    const Index m = series_horizon_or_throw(lambda, tr.horizon, "c_lambda");

    MeanSeries out;
    out.kind = MeanKind::CLambda;
    out.method_label = lambda.label();
    out.horizon = m;
    for (Index n = 1; n <= m; ++n) out.upper.push_back(lambda.value(n));
    out.entries.assign(tr.probe_count(), {});

    // One sequential pass per probe; C_1 with the identity method runs the
    // identical accumulation, so submethod entries are bitwise subsequence
    // values of the C_1 entries.
    for (std::size_t pr = 0; pr < tr.probe_count(); ++pr) {
        CompensatedSum acc;
        Index n = 1;
        auto& row = out.entries[pr];
        row.reserve(static_cast<std::size_t>(m));
        for (Index k = 1; k <= lambda.value(m) && n <= m; ++k) {
            acc.add(tr.at(pr, k));
            if (k == lambda.value(n)) {
                row.push_back(acc.value() / static_cast<double>(lambda.value(n)));
                ++n;
            }
        }
    }
    return out;
}

MeanSeries d_lambda(const DistanceTrace& tr, const IndexMethod& lambda) {
    const Index m = series_horizon_or_throw(lambda, tr.horizon, "d_lambda");

    MeanSeries out;
    out.kind = MeanKind::DLambda;
    out.method_label = lambda.label();
    out.horizon = m;
    for (Index n = 1; n <= m; ++n) out.upper.push_back(lambda.value(n));
    out.entries.assign(tr.probe_count(), {});

    for (std::size_t pr = 0; pr < tr.probe_count(); ++pr) {
        auto& row = out.entries[pr];
        row.reserve(static_cast<std::size_t>(m));
        for (Index n = 1; n <= m; ++n) {
            const Index lo = lambda.value(n - 1);
            const Index hi = lambda.value(n);
            CompensatedSum acc;
            for (Index k = lo + 1; k <= hi; ++k) acc.add(tr.at(pr, k));
            row.push_back(acc.value() / static_cast<double>(hi - lo));
        }
    }
    return out;
}

MeanSeries deferred(const DistanceTrace& tr, const DeferredPair& pq) {
    const Index m = pq.last_leq(tr.horizon);
    if (m < 1) throw std::invalid_argument("deferred: q(1) exceeds the trace horizon");

    MeanSeries out;
    out.kind = MeanKind::Deferred;
    out.method_label = pq.label();
    out.horizon = m;
    for (Index n = 1; n <= m; ++n) out.upper.push_back(pq.q(n));
    out.entries.assign(tr.probe_count(), {});

    for (std::size_t pr = 0; pr < tr.probe_count(); ++pr) {
        auto& row = out.entries[pr];
        row.reserve(static_cast<std::size_t>(m));
        for (Index n = 1; n <= m; ++n) {
            const Index lo = pq.p(n);
            const Index hi = pq.q(n);
            CompensatedSum acc;
            for (Index k = lo + 1; k <= hi; ++k) acc.add(tr.at(pr, k));
            row.push_back(acc.value() / static_cast<double>(hi - lo));
        }
    }
    return out;
}

MeanSeries strong_mean(const DistanceTrace& tr, MeanKind method, const IndexMethod& lambda,
                       double p) {
    if (!tr.has_target()) throw std::invalid_argument("strong_mean: trace has no target row");
    if (!(p > 0.0)) throw std::invalid_argument("strong_mean: power must be > 0");

    const bool block = method == MeanKind::StrongDLambda;
    const bool c1 = method == MeanKind::StrongC1;
    if (method != MeanKind::StrongCLambda && !block && !c1) {
        throw std::invalid_argument("strong_mean: kind must be a strong mean");
    }

    const IndexMethod local = c1 ? IndexMethod::identity(tr.horizon) : lambda;
    const Index m = series_horizon_or_throw(local, tr.horizon, "strong_mean");

    MeanSeries out;
    out.kind = method;
    out.power = p;
    out.method_label = c1 ? "n" : lambda.label();
    out.horizon = m;
    for (Index n = 1; n <= m; ++n) out.upper.push_back(local.value(n));
    out.entries.assign(tr.probe_count(), {});

    for (std::size_t pr = 0; pr < tr.probe_count(); ++pr) {
        const double target = tr.target(pr);
        auto& row = out.entries[pr];
        row.reserve(static_cast<std::size_t>(m));
        if (block) {
            for (Index n = 1; n <= m; ++n) {
                const Index lo = local.value(n - 1);
                const Index hi = local.value(n);
                CompensatedSum acc;
                for (Index k = lo + 1; k <= hi; ++k) {
                    acc.add(deviation_power(tr.at(pr, k), target, p));
                }
                row.push_back(acc.value() / static_cast<double>(hi - lo));
            }
        } else {
            CompensatedSum acc;
            Index n = 1;
            for (Index k = 1; k <= local.value(m) && n <= m; ++k) {
                acc.add(deviation_power(tr.at(pr, k), target, p));
                if (k == local.value(n)) {
                    row.push_back(acc.value() / static_cast<double>(local.value(n)));
                    ++n;
                }
            }
        }
    }
    return out;
}

MeanSeries apply_row_matrix(const RowGenerator& rows, const MeanSeries& series, Index horizon) {
    if (horizon < 1 || horizon > series.horizon) {
        throw std::invalid_argument("apply_row_matrix: horizon outside the series range");
    }

    MeanSeries out;
    out.kind = series.kind;
    out.power = series.power;
    out.method_label = "rows(" + series.method_label + ")";
    out.horizon = horizon;
    out.upper.assign(series.upper.begin(), series.upper.begin() + static_cast<std::size_t>(horizon));
    out.entries.assign(series.probe_count(), {});

    for (Index n = 1; n <= horizon; ++n) {
        const SparseRow row = rows(n);
        for (const auto& [k, w] : row) {
            if (k < 1 || k > series.horizon) {
                throw std::invalid_argument("apply_row_matrix: row support exceeds series horizon");
            }
            (void)w;
        }
        for (std::size_t pr = 0; pr < series.probe_count(); ++pr) {
            CompensatedSum acc;
            for (const auto& [k, w] : row) acc.add(w * series.at(pr, k));
            out.entries[pr].push_back(acc.value());
        }
    }
    return out;
}

}  // namespace summa
