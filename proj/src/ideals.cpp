#include "summa/ideals.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace summa {

namespace {

std::vector<Index> prefix_counts(const std::vector<bool>& indicator) {
    std::vector<Index> counts(indicator.size() + 1, 0);
    for (std::size_t i = 0; i < indicator.size(); ++i) {
        counts[i + 1] = counts[i] + (indicator[i] ? 1 : 0);
    }
    return counts;
}

MembershipReport density_rule(const Ideal& ideal, Index count_half, Index count_full, Index half,
                              Index full) {
    MembershipReport rep;
    rep.horizon = full;
    rep.density_half = static_cast<double>(count_half) / static_cast<double>(half);
    rep.density_full = static_cast<double>(count_full) / static_cast<double>(full);
    const double th = ideal.density_threshold;
    const bool half_small = rep.density_half < th;
    const bool full_small = rep.density_full < th;
    if (half_small && full_small && rep.density_full <= rep.density_half) {
        rep.status = Membership::InIdealConsistent;
    } else if (!half_small && !full_small) {
        rep.status = Membership::NotInIdealConsistent;
    } else {
        rep.status = Membership::Inconclusive;
    }
    return rep;
}

}  // namespace

const char* to_string(IdealKind k) {
    switch (k) {
        case IdealKind::Fin: return "fin";
        case IdealKind::DensityZero: return "density-zero";
    }
    return "?";
}

const char* to_string(Membership m) {
    switch (m) {
        case Membership::InIdealConsistent: return "InIdealConsistent";
        case Membership::NotInIdealConsistent: return "NotInIdealConsistent";
        case Membership::Inconclusive: return "Inconclusive";
    }
    return "?";
}

MembershipReport member_estimate(const Ideal& ideal, const std::vector<bool>& indicator) {
    const Index n = static_cast<Index>(indicator.size());
    if (n < 2) throw std::invalid_argument("member_estimate: need an indicator over at least 1..2");
    if (!(ideal.density_threshold > 0.0 && ideal.density_threshold < 1.0)) {
        throw std::invalid_argument("member_estimate: density threshold must sit in (0,1)");
    }

    const auto counts = prefix_counts(indicator);
    if (ideal.kind == IdealKind::Fin) {
        const Index tail_start =
            std::min<Index>(n, static_cast<Index>(std::floor((1.0 - ideal.tail_window) *
                                                             static_cast<double>(n))) + 1);
        MembershipReport rep;
        rep.horizon = n;
        rep.density_half = static_cast<double>(counts[static_cast<std::size_t>(n / 2)]) /
                           static_cast<double>(std::max<Index>(1, n / 2));
        rep.density_full = static_cast<double>(counts[static_cast<std::size_t>(n)]) /
                           static_cast<double>(n);
        const Index tail_members =
            counts[static_cast<std::size_t>(n)] - counts[static_cast<std::size_t>(tail_start - 1)];
        rep.status = (tail_members == 0) ? Membership::InIdealConsistent
                                         : Membership::NotInIdealConsistent;
        return rep;
    }

    const Index half = std::max<Index>(1, n / 2);
    return density_rule(ideal, counts[static_cast<std::size_t>(half)],
                        counts[static_cast<std::size_t>(n)], half, n);
}

MembershipReport filter_estimate(const Ideal& ideal, const std::vector<bool>& indicator) {
    // Filter membership of M is ideal membership of its complement; counts of
    // the complement are exact, so the duality is exact by construction.
    const Index n = static_cast<Index>(indicator.size());
    if (n < 2) throw std::invalid_argument("filter_estimate: need an indicator over at least 1..2");

    const auto counts = prefix_counts(indicator);
    const Index half = std::max<Index>(1, n / 2);
    const Index comp_half = half - counts[static_cast<std::size_t>(half)];
    const Index comp_full = n - counts[static_cast<std::size_t>(n)];

    MembershipReport rep;
    if (ideal.kind == IdealKind::Fin) {
        const Index tail_start =
            std::min<Index>(n, static_cast<Index>(std::floor((1.0 - ideal.tail_window) *
                                                             static_cast<double>(n))) + 1);
        const Index tail_len = n - tail_start + 1;
        const Index tail_present =
            counts[static_cast<std::size_t>(n)] - counts[static_cast<std::size_t>(tail_start - 1)];
        rep.horizon = n;
        rep.density_full = static_cast<double>(counts[static_cast<std::size_t>(n)]) /
                           static_cast<double>(n);
        rep.density_half = static_cast<double>(counts[static_cast<std::size_t>(half)]) /
                           static_cast<double>(half);
        rep.status = (tail_present == tail_len) ? Membership::InIdealConsistent
                                                : Membership::NotInIdealConsistent;
        return rep;
    }

    rep = density_rule(ideal, comp_half, comp_full, half, n);
    // Report the filter-side densities (of M itself).
    rep.density_half = static_cast<double>(counts[static_cast<std::size_t>(half)]) /
                       static_cast<double>(half);
    rep.density_full = static_cast<double>(counts[static_cast<std::size_t>(n)]) /
                       static_cast<double>(n);
    return rep;
}

const char* to_string(Mode m) {
    switch (m) {
        case Mode::IConvergence: return "i_convergence";
        case Mode::ICLambdaSummable: return "i_c_lambda_summable";
        case Mode::StrongICLambda: return "strong_i_c_lambda";
        case Mode::StrongIDLambda: return "strong_i_d_lambda";
        case Mode::StrongIC1: return "strong_i_c1";
        case Mode::ICLambdaStatistical: return "i_c_lambda_statistical";
        case Mode::PStrongICLambda: return "p_strong_i_c_lambda";
    }
    return "?";
}

std::vector<Mode> all_modes() {
    return {Mode::IConvergence,        Mode::ICLambdaSummable, Mode::StrongICLambda,
            Mode::StrongIDLambda,      Mode::StrongIC1,        Mode::ICLambdaStatistical,
            Mode::PStrongICLambda};
}

const char* to_string(VerdictStatus s) {
    switch (s) {
        case VerdictStatus::Consistent: return "Consistent";
        case VerdictStatus::Violated: return "Violated";
        case VerdictStatus::Inconclusive: return "Inconclusive";
    }
    return "?";
}

VerdictStatus IdealVerdict::worst() const {
    VerdictStatus w = VerdictStatus::Consistent;
    for (VerdictStatus s : status) {
        if (s == VerdictStatus::Violated) return VerdictStatus::Violated;
        if (s == VerdictStatus::Inconclusive) w = VerdictStatus::Inconclusive;
    }
    return w;
}

namespace {

VerdictStatus to_status(Membership m) {
    switch (m) {
        case Membership::InIdealConsistent: return VerdictStatus::Consistent;
        case Membership::NotInIdealConsistent: return VerdictStatus::Violated;
        case Membership::Inconclusive: return VerdictStatus::Inconclusive;
    }
    return VerdictStatus::Inconclusive;
}

/// Exceptional indicators per probe for a mode, over its natural domain.
std::vector<std::vector<bool>> exceptional_sets(Mode mode, const DistanceTrace& tr,
                                                const IndexMethod& lambda,
                                                const VerdictParams& params) {
    std::vector<std::vector<bool>> sets(tr.probe_count());
    const double eps = params.epsilon;

    auto from_series_threshold = [&](const MeanSeries& s, double level, bool absolute_gap,
                                     const std::vector<double>& targets) {
        for (std::size_t pr = 0; pr < s.probe_count(); ++pr) {
            auto& ind = sets[pr];
            ind.assign(static_cast<std::size_t>(s.horizon), false);
            for (Index n = 1; n <= s.horizon; ++n) {
                const double v = absolute_gap ? std::abs(s.at(pr, n) - targets[pr]) : s.at(pr, n);
                ind[static_cast<std::size_t>(n - 1)] = v >= level;
            }
        }
    };

    switch (mode) {
        case Mode::IConvergence: {
            for (std::size_t pr = 0; pr < tr.probe_count(); ++pr) {
                const double target = tr.target(pr);
                auto& ind = sets[pr];
                ind.assign(static_cast<std::size_t>(tr.horizon), false);
                for (Index k = 1; k <= tr.horizon; ++k) {
                    ind[static_cast<std::size_t>(k - 1)] = std::abs(tr.at(pr, k) - target) >= eps;
                }
            }
            break;
        }
        case Mode::ICLambdaSummable: {
            const MeanSeries s = c_lambda(tr, lambda);
            from_series_threshold(s, eps, true, *tr.target_row);
            break;
        }
        case Mode::StrongICLambda: {
            const MeanSeries s = strong_mean(tr, MeanKind::StrongCLambda, lambda, 1.0);
            from_series_threshold(s, eps, false, {});
            break;
        }
        case Mode::StrongIDLambda: {
            const MeanSeries s = strong_mean(tr, MeanKind::StrongDLambda, lambda, 1.0);
            from_series_threshold(s, eps, false, {});
            break;
        }
        case Mode::StrongIC1: {
            const MeanSeries s = strong_mean(tr, MeanKind::StrongC1, lambda, 1.0);
            from_series_threshold(s, eps, false, {});
            break;
        }
        case Mode::ICLambdaStatistical: {
            if (!params.delta) throw std::invalid_argument("ideal_verdict: delta required");
            const DensitySeries d = c_lambda_stat_density(tr, lambda, eps);
            for (std::size_t pr = 0; pr < d.probe_count(); ++pr) {
                auto& ind = sets[pr];
                ind.assign(static_cast<std::size_t>(d.horizon), false);
                for (Index n = 1; n <= d.horizon; ++n) {
                    ind[static_cast<std::size_t>(n - 1)] = d.at(pr, n) >= *params.delta;
                }
            }
            break;
        }
        case Mode::PStrongICLambda: {
            if (!params.power) throw std::invalid_argument("ideal_verdict: power required");
            const MeanSeries s = strong_mean(tr, MeanKind::StrongCLambda, lambda, *params.power);
            from_series_threshold(s, eps, false, {});
            break;
        }
    }
    return sets;
}

}  // namespace

IdealVerdict ideal_verdict(Mode mode, const DistanceTrace& tr, const IndexMethod& lambda,
                           const Ideal& ideal, const VerdictParams& params) {
    if (!tr.has_target()) throw std::invalid_argument("ideal_verdict: trace has no target row");
    if (!(params.epsilon > 0.0)) throw std::invalid_argument("ideal_verdict: epsilon must be > 0");
    if (tr.horizon < 100) {
        throw std::invalid_argument("ideal_verdict: trace horizon must be >= 100");
    }

    IdealVerdict v;
    v.mode = mode;
    v.ideal = ideal.kind;
    v.epsilon = params.epsilon;
    v.delta = params.delta;
    v.power = params.power;
    v.lambda_label = (mode == Mode::StrongIC1 || mode == Mode::IConvergence) ? "n" : lambda.label();
    v.exceptional = exceptional_sets(mode, tr, lambda, params);
    v.domain = v.exceptional.empty() ? 0 : static_cast<Index>(v.exceptional.front().size());

    for (const auto& ind : v.exceptional) {
        const MembershipReport rep = member_estimate(ideal, ind);
        v.status.push_back(to_status(rep.status));
        v.witness_density.push_back(rep.density_full);
    }
    return v;
}

ContainmentReport statistical_in_pstrong(const DistanceTrace& tr, const IndexMethod& lambda,
                                         double epsilon, double delta, double p) {
    const DensitySeries d = c_lambda_stat_density(tr, lambda, epsilon);
    const MeanSeries s = strong_mean(tr, MeanKind::StrongCLambda, lambda, p);
    const double level = std::pow(epsilon, p) * delta;

    ContainmentReport rep;
    rep.name = "statistical-exceptional-in-p-strong-exceptional";
    rep.subset_threshold = delta;
    rep.superset_threshold = level;
    for (std::size_t pr = 0; pr < d.probe_count(); ++pr) {
        for (Index n = 1; n <= d.horizon; ++n) {
            const bool in_sub = d.at(pr, n) >= delta;
            const bool in_super = s.at(pr, n) >= level;
            if (in_sub && !in_super) {
                if (rep.holds) {
                    rep.violation_probe = pr;
                    rep.violation_n = n;
                }
                rep.holds = false;
            }
        }
    }
    return rep;
}

ContainmentReport pstrong_in_statistical(const DistanceTrace& tr, const IndexMethod& lambda,
                                         double epsilon, double delta, double p) {
    const DensitySeries d = c_lambda_stat_density(tr, lambda, epsilon);
    const MeanSeries s = strong_mean(tr, MeanKind::StrongCLambda, lambda, p);
    const std::vector<double> alpha = sup_deviation(tr);

    ContainmentReport rep;
    rep.name = "p-strong-exceptional-in-statistical-exceptional";
    rep.subset_threshold = delta;
    rep.superset_threshold =
        alpha.empty() ? 0.0 : std::pow(delta, p) / std::pow(alpha.front(), p);
    rep.note = "superset threshold kept as printed, delta^p/alpha^p; the split bound itself "
               "derives (delta - epsilon^p)/alpha^p";
    for (std::size_t pr = 0; pr < d.probe_count(); ++pr) {
        const double level = std::pow(delta, p) / std::pow(alpha[pr], p);
        for (Index n = 1; n <= d.horizon; ++n) {
            const bool in_sub = s.at(pr, n) >= delta;
            const bool in_super = d.at(pr, n) >= level;
            if (in_sub && !in_super) {
                if (rep.holds) {
                    rep.violation_probe = pr;
                    rep.violation_n = n;
                }
                rep.holds = false;
            }
        }
    }
    return rep;
}

bool ImplicationSuite::any_candidate() const {
    return std::any_of(checks.begin(), checks.end(),
                       [](const ImplicationCheck& c) { return c.counterexample_candidate; });
}

namespace {

void fill_statuses(ImplicationCheck& check, const IdealVerdict& ante, const IdealVerdict& cons) {
    check.antecedent_status = ante.status;
    check.consequent_status = cons.status;
    check.antecedent_density = ante.witness_density;
    check.consequent_density = cons.witness_density;
    for (std::size_t pr = 0; pr < ante.status.size(); ++pr) {
        if (ante.status[pr] == VerdictStatus::Consistent &&
            cons.status[pr] != VerdictStatus::Consistent) {
            check.counterexample_candidate = true;
            check.candidate_probes.push_back(pr);
        }
    }
}

}  // namespace

ImplicationSuite implication_suite(const DistanceTrace& tr, const IndexMethod& lambda,
                                   const Ideal& ideal, const ImplicationParams& params) {
    ImplicationSuite suite;
    const double eps = params.epsilon;
    const double eps1 = params.epsilon1.value_or(eps);
    const double eps2 = params.epsilon2.value_or(eps);

    const Index n_dom = lambda.last_leq(tr.horizon);
    std::optional<ConditionReport> liminf_rep, limsup_rep;
    if (n_dom >= 4) {
        liminf_rep = ratio_condition(lambda, ConditionQuantity::LiminfStepRatio, n_dom);
        limsup_rep = ratio_condition(lambda, ConditionQuantity::LimsupStepRatio, n_dom);
    }

    // The strong-mean implications are only probed on deviation traces that
    // look bounded at this horizon; a still-growing sup suspends them.
    std::vector<std::vector<double>> dev_rows(tr.probe_count());
    for (std::size_t pr = 0; pr < tr.probe_count(); ++pr) {
        const double target = tr.target(pr);
        dev_rows[pr].reserve(static_cast<std::size_t>(tr.horizon));
        for (Index k = 1; k <= tr.horizon; ++k) {
            dev_rows[pr].push_back(std::abs(tr.at(pr, k) - target));
        }
    }
    const DistanceTrace dev_trace = DistanceTrace::from_rows(std::move(dev_rows));
    const BoundReport dev_bounds = bounded_estimate(dev_trace);
    const bool bounded = !dev_bounds.any_suspect();

    // 1. liminf step ratio > 1: strong C_lambda implies strong D_lambda.
    {
        ImplicationCheck check;
        check.name = "strong-c-lambda-implies-strong-d-lambda";
        check.hypothesis = "liminf lambda(n)/lambda(n-1) > 1, deviations bounded";
        check.antecedent = Mode::StrongICLambda;
        check.consequent = Mode::StrongIDLambda;
        check.condition = liminf_rep;
        if (bounded && liminf_rep && liminf_rep->verdict == ConditionVerdict::SatisfiesCondition) {
            const double beta = liminf_rep->estimate - 1.0;
            const double cons_eps = ((1.0 + beta) * eps1 - eps2) / beta;
            check.consequent_epsilon = cons_eps;
            if (cons_eps > 0.0) {
                check.applicable = true;
                const auto ante = ideal_verdict(Mode::StrongICLambda, tr, lambda, ideal,
                                                VerdictParams{eps1, {}, {}});
                const auto cons = ideal_verdict(Mode::StrongIDLambda, tr, lambda, ideal,
                                                VerdictParams{cons_eps, {}, {}});
                fill_statuses(check, ante, cons);
            }
        }
        suite.checks.push_back(std::move(check));
    }

    // 2. Strong D_lambda implies strong C_lambda. The source derivation has
    //    no ratio hypothesis; at a finite horizon it still leans on bounded
    //    deviations outside the good block set, so the same gate applies.
    {
        ImplicationCheck check;
        check.name = "strong-d-lambda-implies-strong-c-lambda";
        check.hypothesis = "deviations bounded";
        check.antecedent = Mode::StrongIDLambda;
        check.consequent = Mode::StrongICLambda;
        if (bounded) {
            check.applicable = true;
            check.consequent_epsilon = eps;
            const auto ante =
                ideal_verdict(Mode::StrongIDLambda, tr, lambda, ideal, VerdictParams{eps, {}, {}});
            const auto cons =
                ideal_verdict(Mode::StrongICLambda, tr, lambda, ideal, VerdictParams{eps, {}, {}});
            fill_statuses(check, ante, cons);
        }
        suite.checks.push_back(std::move(check));
    }

    // 3. limsup step ratio < infinity: strong D_lambda implies strong C_1.
    //    The proof chain bounds the C_1 means by (sup block mean) * step ratio,
    //    so the consequent is probed at eps scaled by the limsup estimate.
    {
        ImplicationCheck check;
        check.name = "strong-d-lambda-implies-strong-c1";
        check.hypothesis = "limsup lambda(n)/lambda(n-1) < infinity, deviations bounded";
        check.antecedent = Mode::StrongIDLambda;
        check.consequent = Mode::StrongIC1;
        check.condition = limsup_rep;
        if (bounded && limsup_rep && limsup_rep->verdict == ConditionVerdict::SatisfiesCondition) {
            check.applicable = true;
            const double cons_eps = eps * std::max(1.0, limsup_rep->estimate);
            check.consequent_epsilon = cons_eps;
            const auto ante =
                ideal_verdict(Mode::StrongIDLambda, tr, lambda, ideal, VerdictParams{eps, {}, {}});
            const auto cons =
                ideal_verdict(Mode::StrongIC1, tr, lambda, ideal, VerdictParams{cons_eps, {}, {}});
            fill_statuses(check, ante, cons);
        }
        suite.checks.push_back(std::move(check));
    }

    // 4a. Unconditional: p-strong C_lambda implies C_lambda-statistical.
    {
        ImplicationCheck check;
        check.name = "p-strong-implies-c-lambda-statistical";
        check.hypothesis = "none";
        check.antecedent = Mode::PStrongICLambda;
        check.consequent = Mode::ICLambdaStatistical;
        check.applicable = true;
        const double ante_eps = std::pow(eps, params.power) * params.delta;
        check.consequent_epsilon = eps;
        const auto ante = ideal_verdict(Mode::PStrongICLambda, tr, lambda, ideal,
                                        VerdictParams{ante_eps, {}, params.power});
        const auto cons = ideal_verdict(Mode::ICLambdaStatistical, tr, lambda, ideal,
                                        VerdictParams{eps, params.delta, {}});
        fill_statuses(check, ante, cons);
        suite.checks.push_back(std::move(check));
    }

    // 4b. Bounded traces: C_lambda-statistical implies p-strong C_lambda.
    //     The split bound strong(n) <= alpha^p density(n) + eps^p turns
    //     level-delta statistical smallness into level alpha^p delta + eps^p
    //     strong smallness, pointwise in n.
    {
        ImplicationCheck check;
        check.name = "c-lambda-statistical-implies-p-strong";
        check.hypothesis = "deviations bounded";
        check.antecedent = Mode::ICLambdaStatistical;
        check.consequent = Mode::PStrongICLambda;
        if (bounded) {
            check.applicable = true;
            const double alpha = *std::max_element(dev_bounds.sup.begin(), dev_bounds.sup.end());
            const double cons_eps =
                std::pow(alpha, params.power) * params.delta + std::pow(eps, params.power);
            check.consequent_epsilon = cons_eps;
            const auto ante = ideal_verdict(Mode::ICLambdaStatistical, tr, lambda, ideal,
                                            VerdictParams{eps, params.delta, {}});
            const auto cons = ideal_verdict(Mode::PStrongICLambda, tr, lambda, ideal,
                                            VerdictParams{cons_eps, {}, params.power});
            fill_statuses(check, ante, cons);
        }
        suite.checks.push_back(std::move(check));
    }

    return suite;
}

}  // namespace summa
