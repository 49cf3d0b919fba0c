#include "summa/index_methods.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "summa/compensated.hpp"

namespace summa {

namespace {

void validate_increasing(const std::vector<Index>& values, const std::string& label) {
    Index prev = 0;  // sentinel lambda(0) = 0
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (values[i] <= prev) {
            throw std::invalid_argument("IndexMethod '" + label + "': not strictly increasing at n=" +
                                        std::to_string(i + 1) + " (" + std::to_string(values[i]) +
                                        " after " + std::to_string(prev) + ")");
        }
        prev = values[i];
    }
}

}  // namespace

IndexMethod IndexMethod::from_values(std::string label, std::vector<Index> values) {
    validate_increasing(values, label);
    IndexMethod m;
    m.label_ = std::move(label);
    m.values_ = std::move(values);
    return m;
}

IndexMethod IndexMethod::from_generator(std::string label, Generator gen, Index count) {
    if (!gen) throw std::invalid_argument("IndexMethod: missing generator");
    if (count < 0) throw std::invalid_argument("IndexMethod: negative count");
    std::vector<Index> values;
    values.reserve(static_cast<std::size_t>(count));
    for (Index n = 1; n <= count; ++n) values.push_back(gen(n));
    validate_increasing(values, label);
    IndexMethod m;
    m.label_ = std::move(label);
    m.values_ = std::move(values);
    m.gen_ = std::move(gen);
    return m;
}

IndexMethod IndexMethod::identity(Index count) {
    return from_generator("n", [](Index n) { return n; }, count);
}

Index IndexMethod::value(Index n) const {
    if (n == 0) return 0;
    if (n < 0 || n > size()) {
        throw std::out_of_range("IndexMethod '" + label_ + "': n=" + std::to_string(n) +
                                " outside materialized prefix of length " + std::to_string(size()));
    }
    return values_[static_cast<std::size_t>(n - 1)];
}

IndexMethod IndexMethod::extended(Index count) const {
    if (count <= size()) return *this;
    if (!gen_) {
        throw std::out_of_range("IndexMethod '" + label_ + "': explicit list of length " +
                                std::to_string(size()) + " cannot extend to " + std::to_string(count));
    }
    return from_generator(label_, gen_, count);
}

Index IndexMethod::last_leq(Index bound) const {
    auto it = std::upper_bound(values_.begin(), values_.end(), bound);
    return static_cast<Index>(it - values_.begin());
}

DeferredPair DeferredPair::from_values(std::string label, std::vector<Index> p,
                                       std::vector<Index> q) {
    if (p.size() != q.size()) throw std::invalid_argument("DeferredPair: p and q length mismatch");
    if (p.empty()) throw std::invalid_argument("DeferredPair: empty");
    Index prev_q = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] < 0) throw std::invalid_argument("DeferredPair: p must be nonnegative");
        if (p[i] >= q[i]) {
            throw std::invalid_argument("DeferredPair '" + label + "': requires p(n) < q(n) at n=" +
                                        std::to_string(i + 1));
        }
        if (i > 0 && q[i] <= prev_q) {
            throw std::invalid_argument("DeferredPair '" + label + "': q must be strictly increasing");
        }
        prev_q = q[i];
    }
    DeferredPair d;
    d.label_ = std::move(label);
    d.p_ = std::move(p);
    d.q_ = std::move(q);
    return d;
}

DeferredPair DeferredPair::from_generators(std::string label, std::function<Index(Index)> pg,
                                           std::function<Index(Index)> qg, Index count) {
    std::vector<Index> p, q;
    p.reserve(static_cast<std::size_t>(count));
    q.reserve(static_cast<std::size_t>(count));
    for (Index n = 1; n <= count; ++n) {
        p.push_back(pg(n));
        q.push_back(qg(n));
    }
    return from_values(std::move(label), std::move(p), std::move(q));
}

Index DeferredPair::p(Index n) const {
    if (n < 1 || n > size()) throw std::out_of_range("DeferredPair: n outside prefix");
    return p_[static_cast<std::size_t>(n - 1)];
}

Index DeferredPair::q(Index n) const {
    if (n < 1 || n > size()) throw std::out_of_range("DeferredPair: n outside prefix");
    return q_[static_cast<std::size_t>(n - 1)];
}

Index DeferredPair::last_leq(Index bound) const {
    auto it = std::upper_bound(q_.begin(), q_.end(), bound);
    return static_cast<Index>(it - q_.begin());
}

const char* to_string(ConditionQuantity q) {
    switch (q) {
        case ConditionQuantity::LimsupNextRatio: return "limsup lambda(n+1)/lambda(n)";
        case ConditionQuantity::LiminfStepRatio: return "liminf lambda(n)/lambda(n-1)";
        case ConditionQuantity::LimCompanionRatio: return "lim mu(n)/lambda(n)";
        case ConditionQuantity::LimIndexRatio: return "lim n/lambda(n)";
        case ConditionQuantity::LimsupStepRatio: return "limsup lambda(n)/lambda(n-1)";
    }
    return "?";
}

const char* to_string(ConditionVerdict v) {
    switch (v) {
        case ConditionVerdict::SatisfiesCondition: return "SatisfiesCondition";
        case ConditionVerdict::FailsCondition: return "FailsCondition";
        case ConditionVerdict::Inconclusive: return "Inconclusive";
    }
    return "?";
}

ConditionReport ratio_condition(const IndexMethod& lambda, ConditionQuantity which, Index horizon,
                                const std::optional<IndexMethod>& companion, double tolerance) {
    if (horizon < 4) throw std::invalid_argument("ratio_condition: horizon must be >= 4");
    const bool needs_next = which == ConditionQuantity::LimsupNextRatio;
    const Index need = needs_next ? horizon + 1 : horizon;
    if (lambda.size() < need) {
        throw std::invalid_argument("ratio_condition: lambda materialized to " +
                                    std::to_string(lambda.size()) + ", need " + std::to_string(need));
    }
    if (which == ConditionQuantity::LimCompanionRatio) {
        if (!companion) throw std::invalid_argument("ratio_condition: companion method required");
        if (companion->size() < horizon) {
            throw std::invalid_argument("ratio_condition: companion materialized too short");
        }
    }

    ConditionReport rep;
    rep.quantity = which;
    rep.lambda_label = lambda.label();
    if (companion) rep.companion_label = companion->label();
    rep.tolerance = tolerance;
    rep.window_lo = (horizon + 1) / 2;
    rep.window_hi = horizon;

    auto ratio_at = [&](Index n) -> double {
        switch (which) {
            case ConditionQuantity::LimsupNextRatio:
                return static_cast<double>(lambda.value(n + 1)) / static_cast<double>(lambda.value(n));
            case ConditionQuantity::LiminfStepRatio:
            case ConditionQuantity::LimsupStepRatio:
                return static_cast<double>(lambda.value(n)) / static_cast<double>(lambda.value(n - 1));
            case ConditionQuantity::LimCompanionRatio:
                return static_cast<double>(companion->value(n)) / static_cast<double>(lambda.value(n));
            case ConditionQuantity::LimIndexRatio:
                return static_cast<double>(n) / static_cast<double>(lambda.value(n));
        }
        return 0.0;
    };

    // Step ratios divide by lambda(n-1); start the scan at n = 2.
    const bool step_kind = which == ConditionQuantity::LiminfStepRatio ||
                           which == ConditionQuantity::LimsupStepRatio;
    const Index lo = std::max<Index>(rep.window_lo, step_kind ? 2 : 1);

    double window_max = -1.0;
    double window_min = std::numeric_limits<double>::infinity();
    CompensatedSum mean_acc;
    Index count = 0;
    for (Index n = lo; n <= horizon; ++n) {
        const double r = ratio_at(n);
        window_max = std::max(window_max, r);
        window_min = std::min(window_min, r);
        mean_acc.add(r);
        ++count;
    }
    if (count == 0) {
        rep.verdict = ConditionVerdict::Inconclusive;
        return rep;
    }

    switch (which) {
        case ConditionQuantity::LimsupNextRatio:
            rep.estimate = window_max;
            rep.verdict = (rep.estimate <= 1.0 + tolerance) ? ConditionVerdict::SatisfiesCondition
                                                            : ConditionVerdict::FailsCondition;
            break;
        case ConditionQuantity::LiminfStepRatio:
            rep.estimate = window_min;
            rep.verdict = (rep.estimate > 1.0 + tolerance) ? ConditionVerdict::SatisfiesCondition
                                                           : ConditionVerdict::FailsCondition;
            break;
        case ConditionQuantity::LimCompanionRatio:
            rep.estimate = mean_acc.value() / static_cast<double>(count);
            rep.verdict = (std::abs(rep.estimate - 1.0) <= tolerance)
                              ? ConditionVerdict::SatisfiesCondition
                              : ConditionVerdict::FailsCondition;
            break;
        case ConditionQuantity::LimIndexRatio:
            rep.estimate = mean_acc.value() / static_cast<double>(count);
            rep.verdict = (rep.estimate > tolerance) ? ConditionVerdict::SatisfiesCondition
                                                     : ConditionVerdict::FailsCondition;
            break;
        case ConditionQuantity::LimsupStepRatio: {
            rep.estimate = window_max;
            // Finite horizon cannot witness "= infinity"; fail only when the
            // step ratios are still growing between the halves.
            double head_max = -1.0;
            for (Index n = 2; n < lo; ++n) head_max = std::max(head_max, ratio_at(n));
            if (head_max < 0.0) {
                rep.verdict = ConditionVerdict::Inconclusive;
            } else {
                rep.verdict = (rep.estimate <= head_max * (1.0 + tolerance))
                                  ? ConditionVerdict::SatisfiesCondition
                                  : ConditionVerdict::FailsCondition;
            }
            break;
        }
    }
    return rep;
}

SparseRow t_matrix_row(const IndexMethod& lambda, Index n) {
    if (n < 1) throw std::invalid_argument("t_matrix_row: n must be >= 1");
    const double denom = static_cast<double>(lambda.value(n));
    SparseRow row;
    row.reserve(static_cast<std::size_t>(n));
    for (Index k = 1; k <= n; ++k) {
        const double inc = static_cast<double>(lambda.value(k) - lambda.value(k - 1));
        row.emplace_back(k, inc / denom);
    }
    return row;
}

SparseRow r_matrix_row(const IndexMethod& lambda, Index n) {
    if (n < 1) throw std::invalid_argument("r_matrix_row: n must be >= 1");
    const double gap = static_cast<double>(lambda.value(n) - lambda.value(n - 1));
    SparseRow row;
    if (n == 1) {
        row.emplace_back(1, 1.0);
        return row;
    }
    row.emplace_back(n - 1, -static_cast<double>(lambda.value(n - 1)) / gap);
    row.emplace_back(n, static_cast<double>(lambda.value(n)) / gap);
    return row;
}

RowGenerator t_rows(const IndexMethod& lambda) {
    return [lambda](Index n) { return t_matrix_row(lambda, n); };
}

RowGenerator r_rows(const IndexMethod& lambda) {
    return [lambda](Index n) { return r_matrix_row(lambda, n); };
}

RegularityReport regularity_report(const RowGenerator& rows, Index horizon) {
    if (horizon < 2) throw std::invalid_argument("regularity_report: horizon must be >= 2");

    RegularityReport rep;
    rep.horizon = horizon;

    const Index mid = (horizon + 1) / 2;
    double head_abs_max = 0.0;
    double tail_abs_max = 0.0;
    SparseRow mid_row, last_row;

    for (Index n = 1; n <= horizon; ++n) {
        const SparseRow row = rows(n);
        CompensatedSum sum;
        CompensatedSum abs_sum;
        for (const auto& [k, w] : row) {
            sum.add(w);
            abs_sum.add(std::abs(w));
        }
        rep.max_abs_row_sum = std::max(rep.max_abs_row_sum, abs_sum.value());
        rep.max_row_sum_deviation = std::max(rep.max_row_sum_deviation, std::abs(sum.value() - 1.0));
        if (n <= mid) {
            head_abs_max = std::max(head_abs_max, abs_sum.value());
        } else {
            tail_abs_max = std::max(tail_abs_max, abs_sum.value());
        }
        if (n == mid) mid_row = row;
        if (n == horizon) last_row = row;
    }

    rep.row_sums_ok = rep.max_row_sum_deviation <= 1e-9;
    rep.abs_row_sums_bounded = tail_abs_max <= head_abs_max * (1.0 + 1e-9);

    auto entry_at = [](const SparseRow& row, Index k) {
        for (const auto& [col, w] : row) {
            if (col == k) return w;
        }
        return 0.0;
    };

    const Index col_limit = std::min<Index>(16, std::max<Index>(1, horizon / 4));
    bool decay = true;
    for (Index k = 1; k <= col_limit; ++k) {
        const double tail = std::abs(entry_at(last_row, k));
        const double earlier = std::abs(entry_at(mid_row, k));
        rep.max_column_tail = std::max(rep.max_column_tail, tail);
        if (tail > 1e-3 && !(tail < earlier)) decay = false;
    }
    rep.columns_decay = decay;
    return rep;
}

ComplementResult complement_method(const IndexMethod& lambda, Index horizon) {
    if (horizon < 1 || (lambda.size() > 0 && horizon < lambda.value(1))) {
        throw std::invalid_argument("complement_method: horizon must reach lambda(1)");
    }
    std::vector<bool> covered(static_cast<std::size_t>(horizon) + 1, false);
    for (Index n = 1; n <= lambda.size(); ++n) {
        const Index v = lambda.value(n);
        if (v > horizon) break;
        covered[static_cast<std::size_t>(v)] = true;
    }
    std::vector<Index> mu;
    for (Index k = 1; k <= horizon; ++k) {
        if (!covered[static_cast<std::size_t>(k)]) mu.push_back(k);
    }
    ComplementResult res;
    res.is_empty = mu.empty();
    res.method = IndexMethod::from_values("complement(" + lambda.label() + ")", std::move(mu));
    return res;
}

}  // namespace summa
