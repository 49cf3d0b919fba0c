#include "summa/scenarios.hpp"

#include <cmath>
#include <stdexcept>

#include "summa/expr.hpp"

namespace summa {

namespace {

bool is_perfect_square(Index k) {
    const Index r = static_cast<Index>(std::llround(std::sqrt(static_cast<double>(k))));
    for (Index c = std::max<Index>(0, r - 1); c <= r + 1; ++c) {
        if (c * c == k) return true;
    }
    return false;
}

Scenario make_constant() {
    Scenario sc;
    sc.name = "constant";
    const ClosedSet a = ClosedSet::ball(MetricPoint{3.0, 0.0}, 1.0);
    sc.seq = SetSequence{"A_k = ball((3,0),1)", [a](Index) { return a; }, true};
    sc.target = a;
    sc.probes = {MetricPoint{0.0, 0.0}, MetricPoint{3.0, 4.0}, MetricPoint{2.0, 0.5}};
    sc.lambda_expr = "2*n";
    sc.horizon = 2000;
    sc.epsilon = 0.5;
    sc.delta = 0.05;
    sc.power = 2.0;
    for (Mode m : all_modes()) {
        sc.expected.push_back({m, VerdictStatus::Consistent, "constant sequence, all deviations 0"});
    }
    sc.expected_conditions = {
        {ConditionQuantity::LimsupNextRatio, false, ConditionVerdict::SatisfiesCondition,
         "2(n+1)/2n tends to 1"},
        {ConditionQuantity::LiminfStepRatio, false, ConditionVerdict::FailsCondition,
         "n/(n-1) tends to 1"},
    };
    return sc;
}

Scenario make_alternating_pair() {
    Scenario sc;
    sc.name = "alternating-pair";
    const ClosedSet even_set = ClosedSet::singleton(MetricPoint{1.0, 0.0});
    const ClosedSet odd_set = ClosedSet::singleton(MetricPoint{-1.0, 0.0});
    sc.seq = SetSequence{"A_k alternating singletons (+-1, 0)",
                         [even_set, odd_set](Index k) { return k % 2 == 0 ? even_set : odd_set; },
                         true};
    sc.target =
        ClosedSet::finite_points({MetricPoint{1.0, 0.0}, MetricPoint{-1.0, 0.0}});
    sc.probes = {MetricPoint{1.0, 0.0}, MetricPoint{-1.0, 0.0}};
    sc.lambda_expr = "2*n";
    sc.horizon = 2000;
    sc.epsilon = 0.5;
    sc.delta = 0.05;
    sc.power = 2.0;
    for (Mode m : all_modes()) {
        sc.expected.push_back({m, VerdictStatus::Violated, "half the deviations equal 2"});
    }
    return sc;
}

Scenario make_sparse_spike() {
    Scenario sc;
    sc.name = "sparse-spike";
    const ClosedSet origin = ClosedSet::singleton(MetricPoint{0.0, 0.0});
    sc.seq = SetSequence{"A_k = singleton((k,0)) on squares, else origin",
                         [origin](Index k) {
                             if (is_perfect_square(k)) {
                                 return ClosedSet::singleton(
                                     MetricPoint{static_cast<double>(k), 0.0});
                             }
                             return origin;
                         },
                         false};
    sc.target = origin;
    sc.probes = {MetricPoint{0.0, 0.0}};
    sc.lambda_expr = "n";
    sc.horizon = 10000;
    sc.epsilon = 0.5;
    sc.delta = 0.1;
    sc.power = 2.0;
    sc.expected = {
        {Mode::IConvergence, VerdictStatus::Consistent, "square count 100 of 10^4"},
        {Mode::ICLambdaSummable, VerdictStatus::Violated, "prefix means grow like sqrt(n)"},
        {Mode::StrongICLambda, VerdictStatus::Violated, "prefix means grow like sqrt(n)"},
        {Mode::StrongIDLambda, VerdictStatus::Consistent, "identity blocks; exceedances on squares"},
        {Mode::StrongIC1, VerdictStatus::Violated, "prefix means grow like sqrt(n)"},
        {Mode::ICLambdaStatistical, VerdictStatus::Consistent,
         "densities floor(sqrt(n))/n fall below delta past n=100"},
        {Mode::PStrongICLambda, VerdictStatus::Violated, "power means grow like n^1.5"},
    };
    return sc;
}

Scenario make_circle_to_axis() {
    Scenario sc;
    sc.name = "circle-to-axis";
    sc.seq = SetSequence{"A_k = sphere((k,0), k)",
                         [](Index k) {
                             return ClosedSet::sphere(MetricPoint{static_cast<double>(k), 0.0},
                                                      static_cast<double>(k));
                         },
                         true};
    sc.target = ClosedSet::hyperplane(MetricPoint{1.0, 0.0}, 0.0);
    sc.probes = {MetricPoint{2.0, 1.0}, MetricPoint{0.0, 3.0}, MetricPoint{-1.0, 2.0}};
    sc.lambda_expr = "n^2";
    sc.horizon = 10000;
    sc.condition_horizon = 1000;
    sc.epsilon = 1.5;
    sc.delta = 0.5;
    sc.power = 2.0;
    for (Mode m : all_modes()) {
        sc.expected.push_back(
            {m, VerdictStatus::Consistent, "distances approach the axis distances like 1/k"});
    }
    sc.expected_conditions = {
        {ConditionQuantity::LimsupNextRatio, false, ConditionVerdict::SatisfiesCondition,
         "(n+1)^2/n^2 tends to 1"},
    };
    return sc;
}

Scenario make_paper_lambda_pair() {
    Scenario sc;
    sc.name = "paper-lambda-pair";
    const ClosedSet a = ClosedSet::singleton(MetricPoint{0.0, 0.0});
    sc.seq = SetSequence{"A_k = singleton((0,0))", [a](Index) { return a; }, true};
    sc.target = a;
    sc.probes = {MetricPoint{1.0, 0.0}, MetricPoint{0.0, 2.0}};
    sc.lambda_expr = "n^2";
    sc.mu_expr = "n^3";
    sc.horizon = 2000;
    sc.condition_horizon = 1000;
    sc.epsilon = 0.5;
    sc.delta = 0.05;
    sc.power = 2.0;
    for (Mode m : all_modes()) {
        sc.expected.push_back({m, VerdictStatus::Consistent, "constant sequence"});
    }
    sc.expected_conditions = {
        {ConditionQuantity::LimsupNextRatio, false, ConditionVerdict::SatisfiesCondition,
         "(n+1)^2/n^2 within 0.01 of 1 over the tail window"},
        {ConditionQuantity::LimsupNextRatio, true, ConditionVerdict::SatisfiesCondition,
         "(n+1)^3/n^3 within 0.01 of 1 over the tail window"},
        {ConditionQuantity::LimCompanionRatio, false, ConditionVerdict::FailsCondition,
         "n^3/n^2 = n far from 1"},
    };
    return sc;
}

}  // namespace

std::vector<std::string> builtin_names() {
    return {"constant", "alternating-pair", "sparse-spike", "circle-to-axis", "paper-lambda-pair"};
}

Scenario builtin(const std::string& name) {
    if (name == "constant") return make_constant();
    if (name == "alternating-pair") return make_alternating_pair();
    if (name == "sparse-spike") return make_sparse_spike();
    if (name == "circle-to-axis") return make_circle_to_axis();
    if (name == "paper-lambda-pair") return make_paper_lambda_pair();
    throw std::invalid_argument("unknown scenario '" + name + "'");
}

ScenarioReport run(const Scenario& sc) {
    if (!sc.target) throw std::invalid_argument("scenario '" + sc.name + "': target required");

    ScenarioReport rep;
    rep.name = sc.name;
    rep.horizon = sc.horizon;

    const IndexMethod lambda = parse_lambda_for_horizon(sc.lambda_expr, sc.horizon);
    rep.lambda_label = lambda.label();

    rep.trace_data = trace(sc.seq, sc.probes, sc.horizon, sc.target);
    const DistanceTrace& tr = rep.trace_data;

    rep.c1 = c_lambda(tr, IndexMethod::identity(sc.horizon));
    rep.c1.kind = MeanKind::C1;
    rep.clambda = c_lambda(tr, lambda);
    rep.dlambda = d_lambda(tr, lambda);
    rep.strong_clambda = strong_mean(tr, MeanKind::StrongCLambda, lambda, 1.0);
    rep.strong_dlambda = strong_mean(tr, MeanKind::StrongDLambda, lambda, 1.0);
    rep.pstrong_clambda = strong_mean(tr, MeanKind::StrongCLambda, lambda, sc.power);
    rep.density = c_lambda_stat_density(tr, lambda, sc.epsilon);

    rep.bounds = bounded_estimate(tr);
    rep.deviation_sup = sup_deviation(tr);

    // Condition reports: the four lambda quantities, then the companion pair.
    Index cond_horizon = sc.condition_horizon > 0 ? sc.condition_horizon : lambda.last_leq(sc.horizon);
    if (cond_horizon >= 4) {
        const IndexMethod lam_cond = parse_lambda(sc.lambda_expr, cond_horizon + 1);
        rep.conditions.push_back(
            ratio_condition(lam_cond, ConditionQuantity::LimsupNextRatio, cond_horizon));
        rep.conditions.push_back(
            ratio_condition(lam_cond, ConditionQuantity::LiminfStepRatio, cond_horizon));
        rep.conditions.push_back(
            ratio_condition(lam_cond, ConditionQuantity::LimsupStepRatio, cond_horizon));
        rep.conditions.push_back(
            ratio_condition(lam_cond, ConditionQuantity::LimIndexRatio, cond_horizon));
        if (!sc.mu_expr.empty()) {
            const IndexMethod mu_cond = parse_lambda(sc.mu_expr, cond_horizon + 1);
            ConditionReport mu_next =
                ratio_condition(mu_cond, ConditionQuantity::LimsupNextRatio, cond_horizon);
            rep.conditions.push_back(mu_next);
            rep.conditions.push_back(ratio_condition(
                lam_cond, ConditionQuantity::LimCompanionRatio, cond_horizon, mu_cond));
        }
    }

    const VerdictParams params{sc.epsilon, sc.delta, sc.power};
    for (Mode m : all_modes()) {
        rep.verdicts.push_back(ideal_verdict(m, tr, lambda, sc.ideal, params));
    }

    rep.counting_bound = chebyshev_check(rep.pstrong_clambda, rep.density, sc.epsilon, sc.power);
    rep.split_bound =
        bounded_split_check(rep.pstrong_clambda, rep.density, sc.epsilon, sc.power, rep.deviation_sup);
    rep.stat_in_pstrong = statistical_in_pstrong(tr, lambda, sc.epsilon, sc.delta, sc.power);
    rep.pstrong_in_stat = pstrong_in_statistical(tr, lambda, sc.epsilon, sc.delta, sc.power);

    ImplicationParams ip;
    ip.epsilon = sc.epsilon;
    ip.delta = sc.delta;
    ip.power = sc.power;
    rep.implications = implication_suite(tr, lambda, sc.ideal, ip);

    // Expected-vs-actual diff.
    for (const ExpectedVerdict& exp : sc.expected) {
        for (const IdealVerdict& v : rep.verdicts) {
            if (v.mode != exp.mode) continue;
            for (std::size_t pr = 0; pr < v.status.size(); ++pr) {
                if (v.status[pr] != exp.status) {
                    rep.diffs.push_back(std::string("mode ") + to_string(exp.mode) + " probe " +
                                        std::to_string(pr) + ": expected " + to_string(exp.status) +
                                        ", got " + to_string(v.status[pr]));
                }
            }
        }
    }
    for (const ExpectedCondition& exp : sc.expected_conditions) {
        for (const ConditionReport& c : rep.conditions) {
            if (c.quantity != exp.quantity) continue;
            const bool companion_report =
                c.quantity == ConditionQuantity::LimsupNextRatio && c.lambda_label == sc.mu_expr;
            if (exp.on_companion != companion_report) continue;
            if (c.verdict != exp.verdict) {
                rep.diffs.push_back(std::string("condition ") + to_string(exp.quantity) +
                                    (exp.on_companion ? " (companion)" : "") + ": expected " +
                                    to_string(exp.verdict) + ", got " + to_string(c.verdict));
            }
        }
    }
    return rep;
}

Scenario scenario_from_config(const std::map<std::string, std::string>& kv) {
    auto get = [&kv](const std::string& key) -> std::optional<std::string> {
        auto it = kv.find(key);
        if (it == kv.end()) return std::nullopt;
        return it->second;
    };

    Scenario sc;
    if (auto base = get("base")) {
        sc = builtin(*base);
        sc.expected.clear();
        sc.expected_conditions.clear();
    } else {
        sc.name = "custom";
    }
    if (auto v = get("name")) sc.name = *v;

    if (auto v = get("set")) {
        const ClosedSet a = parse_shape(*v);
        sc.seq = SetSequence{"A_k = " + *v, [a](Index) { return a; }, true};
        if (!get("target")) sc.target = a;
    }
    if (auto va = get("set_a")) {
        auto vb = get("set_b");
        if (!vb) throw std::invalid_argument("scenario config: set_a requires set_b");
        const ClosedSet a = parse_shape(*va);
        const ClosedSet b = parse_shape(*vb);
        sc.seq = SetSequence{"A_k alternating " + *va + " / " + *vb,
                             [a, b](Index k) { return k % 2 == 0 ? a : b; }, true};
    }
    if (auto v = get("target")) sc.target = parse_shape(*v);
    if (auto v = get("probes")) sc.probes = parse_probe_list(*v);
    if (auto v = get("lambda")) sc.lambda_expr = *v;
    if (auto v = get("mu")) sc.mu_expr = *v;
    if (auto v = get("horizon")) sc.horizon = std::stoll(*v);
    if (auto v = get("condition_horizon")) sc.condition_horizon = std::stoll(*v);
    if (auto v = get("epsilon")) sc.epsilon = std::stod(*v);
    if (auto v = get("delta")) sc.delta = std::stod(*v);
    if (auto v = get("power")) sc.power = std::stod(*v);
    if (auto v = get("ideal")) {
        if (*v == "fin") {
            sc.ideal = Ideal::fin();
        } else if (*v == "density-zero") {
            sc.ideal = Ideal::density_zero(sc.ideal.density_threshold);
        } else {
            throw std::invalid_argument("scenario config: ideal must be fin or density-zero");
        }
    }
    if (auto v = get("ideal_threshold")) sc.ideal.density_threshold = std::stod(*v);

    if (!sc.seq.generator) throw std::invalid_argument("scenario config: no sequence defined");
    if (sc.probes.empty()) throw std::invalid_argument("scenario config: no probes defined");
    if (sc.lambda_expr.empty()) throw std::invalid_argument("scenario config: no lambda defined");
    return sc;
}

}  // namespace summa
