#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "summa/expr.hpp"
#include "summa/ideals.hpp"
#include "summa/identities.hpp"
#include "summa/index_methods.hpp"
#include "summa/io.hpp"
#include "summa/metric_sets.hpp"
#include "summa/scenarios.hpp"
#include "summa/statistical.hpp"
#include "summa/transforms.hpp"

namespace py = pybind11;
using namespace summa;

namespace {

void bind_metric_sets(py::module_& m) {
    py::class_<MetricPoint>(m, "MetricPoint")
        .def(py::init<std::vector<double>>(), py::arg("coords"))
        .def_readonly("coords", &MetricPoint::coords)
        .def("dim", &MetricPoint::dim)
        .def("__repr__", [](const MetricPoint& p) {
            std::string s = "MetricPoint([";
            for (std::size_t i = 0; i < p.coords.size(); ++i) {
                if (i) s += ", ";
                s += fmt_double(p.coords[i]);
            }
            return s + "])";
        });
    py::implicitly_convertible<std::vector<double>, MetricPoint>();

    py::class_<ClosedSet>(m, "ClosedSet")
        .def_static("singleton", &ClosedSet::singleton, py::arg("point"))
        .def_static("finite_points", &ClosedSet::finite_points, py::arg("points"))
        .def_static("ball", &ClosedSet::ball, py::arg("center"), py::arg("radius"))
        .def_static("sphere", &ClosedSet::sphere, py::arg("center"), py::arg("radius"))
        .def_static("axis_box", &ClosedSet::axis_box, py::arg("lo"), py::arg("hi"))
        .def_static("hyperplane", &ClosedSet::hyperplane, py::arg("normal"), py::arg("offset"))
        .def_static("oracle", &ClosedSet::oracle, py::arg("dim"), py::arg("fn"),
                    py::arg("label") = "oracle")
        .def("dim", &ClosedSet::dim);

    m.def("distance", &distance, py::arg("x"), py::arg("a"),
          "Wijsman distance d(x, A), exact per shape");
    m.def("euclidean", &euclidean);
    m.def("parse_shape", &parse_shape, py::arg("text"));

    py::class_<SetSequence>(m, "SetSequence")
        .def(py::init([](std::string label, std::function<ClosedSet(Index)> gen) {
                 return SetSequence{std::move(label), std::move(gen), std::nullopt};
             }),
             py::arg("label"), py::arg("generator"))
        .def_readonly("label", &SetSequence::label)
        .def("at", &SetSequence::at, py::arg("k"));

    py::class_<DistanceTrace>(m, "DistanceTrace")
        .def_static("from_rows", &DistanceTrace::from_rows, py::arg("rows"),
                    py::arg("targets") = std::nullopt)
        .def_readonly("horizon", &DistanceTrace::horizon)
        .def_readonly("values", &DistanceTrace::values)
        .def_readonly("probes", &DistanceTrace::probes)
        .def_property_readonly(
            "target_row",
            [](const DistanceTrace& tr) { return tr.target_row; })
        .def("at", &DistanceTrace::at, py::arg("probe"), py::arg("k"));

    m.def("trace", &trace, py::arg("seq"), py::arg("probes"), py::arg("horizon"),
          py::arg("target") = std::nullopt);

    py::class_<BoundReport>(m, "BoundReport")
        .def_readonly("sup", &BoundReport::sup)
        .def_readonly("arg_sup", &BoundReport::arg_sup)
        .def_readonly("unbounded_suspect", &BoundReport::unbounded_suspect)
        .def("any_suspect", &BoundReport::any_suspect);

    m.def("bounded_estimate", &bounded_estimate, py::arg("trace"));
    m.def("sup_deviation", &sup_deviation, py::arg("trace"));
}

void bind_index_methods(py::module_& m) {
    py::class_<IndexMethod>(m, "IndexMethod")
        .def_static("from_values", &IndexMethod::from_values, py::arg("label"), py::arg("values"))
        .def_static("identity", &IndexMethod::identity, py::arg("count"))
        .def("value", &IndexMethod::value, py::arg("n"))
        .def("size", &IndexMethod::size)
        .def("values", &IndexMethod::values)
        .def("last_leq", &IndexMethod::last_leq, py::arg("bound"))
        .def_property_readonly("label", &IndexMethod::label);

    m.def("parse_lambda", &parse_lambda, py::arg("expr"), py::arg("n_max"));
    m.def("parse_lambda_for_horizon", &parse_lambda_for_horizon, py::arg("expr"),
          py::arg("horizon"));

    py::class_<DeferredPair>(m, "DeferredPair")
        .def_static("from_values", &DeferredPair::from_values, py::arg("label"), py::arg("p"),
                    py::arg("q"))
        .def("p", &DeferredPair::p)
        .def("q", &DeferredPair::q)
        .def("size", &DeferredPair::size);

    py::enum_<ConditionQuantity>(m, "ConditionQuantity")
        .value("LimsupNextRatio", ConditionQuantity::LimsupNextRatio)
        .value("LiminfStepRatio", ConditionQuantity::LiminfStepRatio)
        .value("LimCompanionRatio", ConditionQuantity::LimCompanionRatio)
        .value("LimIndexRatio", ConditionQuantity::LimIndexRatio)
        .value("LimsupStepRatio", ConditionQuantity::LimsupStepRatio);

    py::enum_<ConditionVerdict>(m, "ConditionVerdict")
        .value("SatisfiesCondition", ConditionVerdict::SatisfiesCondition)
        .value("FailsCondition", ConditionVerdict::FailsCondition)
        .value("Inconclusive", ConditionVerdict::Inconclusive);

    py::class_<ConditionReport>(m, "ConditionReport")
        .def_readonly("quantity", &ConditionReport::quantity)
        .def_readonly("estimate", &ConditionReport::estimate)
        .def_readonly("window_lo", &ConditionReport::window_lo)
        .def_readonly("window_hi", &ConditionReport::window_hi)
        .def_readonly("tolerance", &ConditionReport::tolerance)
        .def_readonly("verdict", &ConditionReport::verdict);

    m.def("ratio_condition", &ratio_condition, py::arg("lam"), py::arg("which"),
          py::arg("horizon"), py::arg("companion") = std::nullopt, py::arg("tolerance") = 1e-2);

    m.def("t_matrix_row", &t_matrix_row, py::arg("lam"), py::arg("n"));
    m.def("r_matrix_row", &r_matrix_row, py::arg("lam"), py::arg("n"));

    py::class_<RegularityReport>(m, "RegularityReport")
        .def_readonly("horizon", &RegularityReport::horizon)
        .def_readonly("max_abs_row_sum", &RegularityReport::max_abs_row_sum)
        .def_readonly("max_row_sum_deviation", &RegularityReport::max_row_sum_deviation)
        .def_readonly("max_column_tail", &RegularityReport::max_column_tail)
        .def("regular_consistent", &RegularityReport::regular_consistent);

    m.def(
        "regularity_report",
        [](const std::function<SparseRow(Index)>& rows, Index horizon) {
            return regularity_report(rows, horizon);
        },
        py::arg("rows"), py::arg("horizon"));
    m.def(
        "t_regularity", [](const IndexMethod& lam, Index n) { return regularity_report(t_rows(lam), n); },
        py::arg("lam"), py::arg("horizon"));
    m.def(
        "r_regularity", [](const IndexMethod& lam, Index n) { return regularity_report(r_rows(lam), n); },
        py::arg("lam"), py::arg("horizon"));

    py::class_<ComplementResult>(m, "ComplementResult")
        .def_readonly("method", &ComplementResult::method)
        .def_readonly("is_empty", &ComplementResult::is_empty);
    m.def("complement_method", &complement_method, py::arg("lam"), py::arg("horizon"));
}

void bind_transforms(py::module_& m) {
    py::enum_<MeanKind>(m, "MeanKind")
        .value("C1", MeanKind::C1)
        .value("CLambda", MeanKind::CLambda)
        .value("DLambda", MeanKind::DLambda)
        .value("Deferred", MeanKind::Deferred)
        .value("StrongCLambda", MeanKind::StrongCLambda)
        .value("StrongDLambda", MeanKind::StrongDLambda)
        .value("StrongC1", MeanKind::StrongC1);

    py::class_<MeanSeries>(m, "MeanSeries")
        .def_readonly("kind", &MeanSeries::kind)
        .def_readonly("power", &MeanSeries::power)
        .def_readonly("method_label", &MeanSeries::method_label)
        .def_readonly("upper", &MeanSeries::upper)
        .def_readonly("horizon", &MeanSeries::horizon)
        .def_readonly("entries", &MeanSeries::entries)
        .def("at", &MeanSeries::at, py::arg("probe"), py::arg("n"));

    m.def("c_lambda", &c_lambda, py::arg("trace"), py::arg("lam"));
    m.def("d_lambda", &d_lambda, py::arg("trace"), py::arg("lam"));
    m.def("deferred", &deferred, py::arg("trace"), py::arg("pq"));
    m.def("strong_mean", &strong_mean, py::arg("trace"), py::arg("kind"), py::arg("lam"),
          py::arg("p"));
    m.def(
        "apply_row_matrix",
        [](const std::function<SparseRow(Index)>& rows, const MeanSeries& s, Index horizon) {
            return apply_row_matrix(rows, s, horizon);
        },
        py::arg("rows"), py::arg("series"), py::arg("horizon"));
}

void bind_statistical(py::module_& m) {
    py::class_<DensitySeries>(m, "DensitySeries")
        .def_readonly("epsilon", &DensitySeries::epsilon)
        .def_readonly("method_label", &DensitySeries::method_label)
        .def_readonly("upper", &DensitySeries::upper)
        .def_readonly("horizon", &DensitySeries::horizon)
        .def_readonly("counts", &DensitySeries::counts)
        .def_readonly("entries", &DensitySeries::entries)
        .def("at", &DensitySeries::at, py::arg("probe"), py::arg("n"));

    m.def("exceed_count", &exceed_count, py::arg("trace"), py::arg("epsilon"), py::arg("upto"));
    m.def("c_lambda_stat_density", &c_lambda_stat_density, py::arg("trace"), py::arg("lam"),
          py::arg("epsilon"));

    py::class_<InequalityReport>(m, "InequalityReport")
        .def_readonly("name", &InequalityReport::name)
        .def_readonly("holds", &InequalityReport::holds)
        .def_readonly("min_slack", &InequalityReport::min_slack)
        .def_readonly("checked", &InequalityReport::checked)
        .def_readonly("violation_probe", &InequalityReport::violation_probe)
        .def_readonly("violation_n", &InequalityReport::violation_n);

    m.def("chebyshev_check", &chebyshev_check, py::arg("strong"), py::arg("density"),
          py::arg("epsilon"), py::arg("p"));
    m.def("bounded_split_check", &bounded_split_check, py::arg("strong"), py::arg("density"),
          py::arg("epsilon"), py::arg("p"), py::arg("alpha"));
}

void bind_ideals(py::module_& m) {
    py::enum_<IdealKind>(m, "IdealKind")
        .value("Fin", IdealKind::Fin)
        .value("DensityZero", IdealKind::DensityZero);

    py::class_<Ideal>(m, "Ideal")
        .def_static("fin", &Ideal::fin)
        .def_static("density_zero", &Ideal::density_zero, py::arg("threshold") = 0.05)
        .def_readwrite("kind", &Ideal::kind)
        .def_readwrite("density_threshold", &Ideal::density_threshold)
        .def_readwrite("tail_window", &Ideal::tail_window);

    py::enum_<Membership>(m, "Membership")
        .value("InIdealConsistent", Membership::InIdealConsistent)
        .value("NotInIdealConsistent", Membership::NotInIdealConsistent)
        .value("Inconclusive", Membership::Inconclusive);

    py::class_<MembershipReport>(m, "MembershipReport")
        .def_readonly("status", &MembershipReport::status)
        .def_readonly("density_full", &MembershipReport::density_full)
        .def_readonly("density_half", &MembershipReport::density_half)
        .def_readonly("horizon", &MembershipReport::horizon);

    m.def("member_estimate", &member_estimate, py::arg("ideal"), py::arg("indicator"));
    m.def("filter_estimate", &filter_estimate, py::arg("ideal"), py::arg("indicator"));

    py::enum_<Mode>(m, "Mode")
        .value("IConvergence", Mode::IConvergence)
        .value("ICLambdaSummable", Mode::ICLambdaSummable)
        .value("StrongICLambda", Mode::StrongICLambda)
        .value("StrongIDLambda", Mode::StrongIDLambda)
        .value("StrongIC1", Mode::StrongIC1)
        .value("ICLambdaStatistical", Mode::ICLambdaStatistical)
        .value("PStrongICLambda", Mode::PStrongICLambda);

    py::enum_<VerdictStatus>(m, "VerdictStatus")
        .value("Consistent", VerdictStatus::Consistent)
        .value("Violated", VerdictStatus::Violated)
        .value("Inconclusive", VerdictStatus::Inconclusive);

    py::class_<IdealVerdict>(m, "IdealVerdict")
        .def_readonly("mode", &IdealVerdict::mode)
        .def_readonly("epsilon", &IdealVerdict::epsilon)
        .def_readonly("delta", &IdealVerdict::delta)
        .def_readonly("power", &IdealVerdict::power)
        .def_readonly("lambda_label", &IdealVerdict::lambda_label)
        .def_readonly("domain", &IdealVerdict::domain)
        .def_readonly("status", &IdealVerdict::status)
        .def_readonly("witness_density", &IdealVerdict::witness_density)
        .def("worst", &IdealVerdict::worst);

    m.def(
        "ideal_verdict",
        [](Mode mode, const DistanceTrace& tr, const IndexMethod& lam, const Ideal& ideal,
           double epsilon, std::optional<double> delta, std::optional<double> power) {
            return ideal_verdict(mode, tr, lam, ideal, VerdictParams{epsilon, delta, power});
        },
        py::arg("mode"), py::arg("trace"), py::arg("lam"), py::arg("ideal"), py::arg("epsilon"),
        py::arg("delta") = std::nullopt, py::arg("power") = std::nullopt);

    py::class_<ContainmentReport>(m, "ContainmentReport")
        .def_readonly("name", &ContainmentReport::name)
        .def_readonly("holds", &ContainmentReport::holds)
        .def_readonly("subset_threshold", &ContainmentReport::subset_threshold)
        .def_readonly("superset_threshold", &ContainmentReport::superset_threshold)
        .def_readonly("note", &ContainmentReport::note);

    m.def("statistical_in_pstrong", &statistical_in_pstrong, py::arg("trace"), py::arg("lam"),
          py::arg("epsilon"), py::arg("delta"), py::arg("p"));
    m.def("pstrong_in_statistical", &pstrong_in_statistical, py::arg("trace"), py::arg("lam"),
          py::arg("epsilon"), py::arg("delta"), py::arg("p"));

    py::class_<ImplicationCheck>(m, "ImplicationCheck")
        .def_readonly("name", &ImplicationCheck::name)
        .def_readonly("hypothesis", &ImplicationCheck::hypothesis)
        .def_readonly("applicable", &ImplicationCheck::applicable)
        .def_readonly("antecedent_status", &ImplicationCheck::antecedent_status)
        .def_readonly("consequent_status", &ImplicationCheck::consequent_status)
        .def_readonly("counterexample_candidate", &ImplicationCheck::counterexample_candidate);

    py::class_<ImplicationSuite>(m, "ImplicationSuite")
        .def_readonly("checks", &ImplicationSuite::checks)
        .def("any_candidate", &ImplicationSuite::any_candidate);

    m.def(
        "implication_suite",
        [](const DistanceTrace& tr, const IndexMethod& lam, const Ideal& ideal, double epsilon,
           double delta, double power) {
            ImplicationParams p;
            p.epsilon = epsilon;
            p.delta = delta;
            p.power = power;
            return implication_suite(tr, lam, ideal, p);
        },
        py::arg("trace"), py::arg("lam"), py::arg("ideal"), py::arg("epsilon") = 0.5,
        py::arg("delta") = 0.05, py::arg("power") = 2.0);
}

void bind_scenarios(py::module_& m) {
    py::class_<Scenario>(m, "Scenario")
        .def_readonly("name", &Scenario::name)
        .def_readonly("lambda_expr", &Scenario::lambda_expr)
        .def_readonly("horizon", &Scenario::horizon)
        .def_readonly("epsilon", &Scenario::epsilon)
        .def_readonly("delta", &Scenario::delta)
        .def_readonly("power", &Scenario::power)
        .def_readonly("probes", &Scenario::probes)
        .def_readwrite("seq", &Scenario::seq);

    py::class_<ScenarioReport>(m, "ScenarioReport")
        .def_readonly("name", &ScenarioReport::name)
        .def_readonly("horizon", &ScenarioReport::horizon)
        .def_readonly("verdicts", &ScenarioReport::verdicts)
        .def_readonly("diffs", &ScenarioReport::diffs)
        .def_readonly("deviation_sup", &ScenarioReport::deviation_sup)
        .def_readonly("conditions", &ScenarioReport::conditions)
        .def_readonly("implications", &ScenarioReport::implications)
        .def("passed", &ScenarioReport::passed);

    m.def("builtin_names", &builtin_names);
    m.def("builtin", &builtin, py::arg("name"));
    m.def("run_scenario", [](const Scenario& sc) { return run(sc); }, py::arg("scenario"));
    m.def(
        "run_builtin", [](const std::string& name) { return run(builtin(name)); },
        py::arg("name"));
}

void bind_identities(py::module_& m) {
    py::class_<IdentityResult>(m, "IdentityResult")
        .def_readonly("name", &IdentityResult::name)
        .def_readonly("max_residual", &IdentityResult::max_residual)
        .def_readonly("checked", &IdentityResult::checked);

    py::class_<IdentitySuiteResult>(m, "IdentitySuiteResult")
        .def_readonly("identities", &IdentitySuiteResult::identities)
        .def_readonly("max_residual", &IdentitySuiteResult::max_residual)
        .def_readonly("tolerance", &IdentitySuiteResult::tolerance)
        .def("passed", &IdentitySuiteResult::passed);

    m.def("run_identity_suite", &run_identity_suite, py::arg("seed"), py::arg("horizon"),
          py::arg("trials"), py::arg("lambdas"), py::arg("tolerance") = 1e-12);
    m.def("default_identity_lambdas", &default_identity_lambdas);
}

}  // namespace

PYBIND11_MODULE(_summa, m) {
    m.doc() = "Wijsman distance traces, Cesaro-submethod means, and finite-horizon "
              "summability diagnostics for sequences of closed sets";
    bind_metric_sets(m);
    bind_index_methods(m);
    bind_transforms(m);
    bind_statistical(m);
    bind_ideals(m);
    bind_scenarios(m);
    bind_identities(m);
}
