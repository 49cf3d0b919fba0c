// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Criterion 7 invokes the CLI binary passed as argv[1].

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "summa/compensated.hpp"
#include "summa/expr.hpp"
#include "summa/ideals.hpp"
#include "summa/identities.hpp"
#include "summa/index_methods.hpp"
#include "summa/scenarios.hpp"
#include "summa/statistical.hpp"
#include "summa/transforms.hpp"

using namespace summa;

namespace {

int g_failures = 0;

void report(int criterion, const std::string& what, bool ok, const std::string& detail = "") {
    std::cout << (ok ? "PASS" : "FAIL") << " criterion " << criterion << ": " << what;
    if (!detail.empty()) std::cout << " [" << detail << "]";
    std::cout << "\n";
    if (!ok) ++g_failures;
}

std::string fmt(double v) {
    std::ostringstream ss;
    ss.precision(3);
    ss << v;
    return ss.str();
}

// 1. Exact-identity suite: >= 100 random bounded traces, four lambdas,
//    max relative residual < 1e-12, under 60 s.
void criterion1() {
    const auto start = std::chrono::steady_clock::now();
    const IdentitySuiteResult res =
        run_identity_suite(20250809, 2000, 100, default_identity_lambdas(), 1e-12);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    bool ok = res.passed() && secs < 60.0;
    for (const IdentityResult& r : res.identities) ok = ok && r.checked > 0;
    report(1, "exact identities on 100 random traces, lambda in {n, 2n, n^2, 2^n}", ok,
           "max residual " + fmt(res.max_residual) + ", " + fmt(secs) + " s");
}

// 2. Regularity diagnostics for T and R.
void criterion2() {
    bool t_rows_ok = true;
    for (const char* expr : {"n", "2*n", "n^2", "2^n"}) {
        const IndexMethod lam = parse_lambda_for_horizon(expr, 40000);
        const Index limit = std::min<Index>(lam.size(), 200);
        for (Index n = 1; n <= limit; ++n) {
            const SparseRow row = t_matrix_row(lam, n);
            CompensatedSum sum;
            for (const auto& [k, w] : row) sum.add(w);
            if (std::abs(sum.value() - 1.0) > 1e-12) t_rows_ok = false;
        }
    }

    bool r_sum_ok = true;
    for (const char* expr : {"2*n", "n^2", "2^n"}) {
        const IndexMethod lam = parse_lambda_for_horizon(expr, 40000);
        const Index limit = std::min<Index>(lam.size(), 200);
        for (Index n = 2; n <= limit; ++n) {
            const SparseRow row = r_matrix_row(lam, n);
            double abs_sum = 0.0;
            for (const auto& [k, w] : row) abs_sum += std::abs(w);
            // Evaluate the reference in long double: (ratio - 1) cancels.
            const long double ratio = static_cast<long double>(lam.value(n)) /
                                      static_cast<long double>(lam.value(n - 1));
            const double expect = static_cast<double>(1.0L + 2.0L / (ratio - 1.0L));
            if (relative_residual(abs_sum, expect) > 1e-12) r_sum_ok = false;
        }
    }

    const RegularityReport r_id = regularity_report(r_rows(IndexMethod::identity(200)), 200);
    const RegularityReport r_pow = regularity_report(r_rows(parse_lambda("2^n", 40)), 40);
    const bool verdicts_ok = !r_id.regular_consistent() && r_pow.regular_consistent();

    report(2, "T row sums, R abs-row-sum identity, R regularity verdicts",
           t_rows_ok && r_sum_ok && verdicts_ok,
           std::string("R(n) bounded=") + (r_id.regular_consistent() ? "yes" : "no") +
               ", R(2^n) bounded=" + (r_pow.regular_consistent() ? "yes" : "no"));
}

// 3. The lambda(n) = n^2, mu(n) = n^3 pair at horizon 1000.
void criterion3() {
    const IndexMethod lam = parse_lambda("n^2", 1001);
    const IndexMethod mu = parse_lambda("n^3", 1001);

    const ConditionReport lam_next = ratio_condition(lam, ConditionQuantity::LimsupNextRatio, 1000);
    const ConditionReport mu_next = ratio_condition(mu, ConditionQuantity::LimsupNextRatio, 1000);
    const ConditionReport pair =
        ratio_condition(lam, ConditionQuantity::LimCompanionRatio, 1000, mu);

    const bool ok = std::abs(lam_next.estimate - 1.0) <= 0.01 &&
                    lam_next.verdict == ConditionVerdict::SatisfiesCondition &&
                    std::abs(mu_next.estimate - 1.0) <= 0.01 &&
                    mu_next.verdict == ConditionVerdict::SatisfiesCondition &&
                    pair.estimate > 100.0 && pair.verdict == ConditionVerdict::FailsCondition;
    report(3, "paper lambda-pair condition estimates", ok,
           "limsup " + fmt(lam_next.estimate) + " / " + fmt(mu_next.estimate) + ", mu/lambda " +
               fmt(pair.estimate));
}

// 4. Pointwise inequalities and exact set containments on 100 seeds.
void criterion4() {
    const double eps = 0.3, delta = 0.5, p = 2.0;
    bool ok = true;
    std::string detail;
    for (std::uint64_t seed = 1; seed <= 100 && ok; ++seed) {
        std::mt19937_64 rng(seed);
        std::vector<double> row;
        for (Index k = 0; k < 500; ++k) row.push_back(10.0 * uniform_unit(rng()));
        const DistanceTrace tr =
            DistanceTrace::from_rows({std::move(row)}, {{10.0 * uniform_unit(rng())}});

        for (const char* expr : {"n", "n^2"}) {
            const IndexMethod lam = parse_lambda_for_horizon(expr, 500);
            const MeanSeries strong = strong_mean(tr, MeanKind::StrongCLambda, lam, p);
            const DensitySeries density = c_lambda_stat_density(tr, lam, eps);

            const InequalityReport cheb = chebyshev_check(strong, density, eps, p);
            const InequalityReport split =
                bounded_split_check(strong, density, eps, p, sup_deviation(tr));
            const ContainmentReport c1 = statistical_in_pstrong(tr, lam, eps, delta, p);
            const ContainmentReport c2 = pstrong_in_statistical(tr, lam, eps, delta, p);

            if (!cheb.holds || cheb.min_slack < -1e-12 || !split.holds ||
                split.min_slack < -1e-12 || !c1.holds || !c2.holds) {
                ok = false;
                detail = "seed " + std::to_string(seed) + " lambda " + expr;
            }
        }
    }
    report(4, "counting/split inequalities and exceptional-set containments (100 seeds)", ok,
           detail);
}

// 5. Scenario verdicts pinned by the catalog.
void criterion5() {
    bool ok = true;
    std::string detail;

    const ScenarioReport spike = run(builtin("sparse-spike"));
    if (spike.density.at(0, spike.density.horizon) != 0.01) {
        ok = false;
        detail = "spike density " + fmt(spike.density.at(0, spike.density.horizon));
    }
    for (const IdealVerdict& v : spike.verdicts) {
        if (v.mode == Mode::IConvergence && v.status[0] != VerdictStatus::Consistent) {
            ok = false;
            detail = "spike IConvergence " + std::string(to_string(v.status[0]));
        }
    }

    const ScenarioReport circle = run(builtin("circle-to-axis"));
    for (std::size_t pr = 0; pr < circle.trace_data.probe_count(); ++pr) {
        const double target = circle.trace_data.target(pr);
        for (Index k = 5000; k <= circle.trace_data.horizon; ++k) {
            if (std::abs(circle.trace_data.at(pr, k) - target) > 1e-3) {
                ok = false;
                detail = "circle residual at k=" + std::to_string(k);
                break;
            }
        }
    }

    const ScenarioReport constant = run(builtin("constant"));
    if (constant.verdicts.size() != 7) {
        ok = false;
        detail = "constant: expected seven modes";
    }
    for (const IdealVerdict& v : constant.verdicts) {
        for (VerdictStatus s : v.status) {
            if (s != VerdictStatus::Consistent) {
                ok = false;
                detail = "constant mode " + std::string(to_string(v.mode));
            }
        }
    }

    report(5, "sparse-spike density 0.01, circle-to-axis tails, constant consistency", ok, detail);
}

// 6. Implication suite across the catalog for lambda = 2^n and n^2.
void criterion6() {
    bool ok = true;
    std::string detail;
    for (const std::string& name : builtin_names()) {
        const Scenario sc = builtin(name);
        const DistanceTrace tr = trace(sc.seq, sc.probes, sc.horizon, sc.target);
        for (const char* expr : {"2^n", "n^2"}) {
            const IndexMethod lam = parse_lambda_for_horizon(expr, tr.horizon);
            ImplicationParams params;
            params.epsilon = sc.epsilon;
            params.delta = sc.delta;
            params.power = sc.power;
            const ImplicationSuite suite = implication_suite(tr, lam, sc.ideal, params);
            if (suite.any_candidate()) {
                ok = false;
                detail = name + " with lambda " + expr;
            }
        }
    }
    report(6, "no implication counterexample candidates across the catalog", ok, detail);
}

// 7. Byte-identical CLI outputs across repeated invocations.
void criterion7(const std::string& cli) {
    if (cli.empty()) {
        report(7, "determinism (needs the CLI path as argv[1])", false);
        return;
    }
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "summa_acceptance";
    fs::create_directories(dir);

    const std::vector<std::pair<std::string, std::string>> commands = {
        {"identities", "identities --seed 7 --trials 20 --horizon 500 --identity-lambda n^2"},
        {"conditions", "conditions --lambda n^2 --mu n^3 --horizon 1000"},
        {"scenario_constant", "scenario --name constant"},
        {"scenario_spike", "scenario --name sparse-spike"},
        {"transform", "transform --scenario alternating-pair --series all --format csv"},
        {"density", "density --scenario sparse-spike --epsilon 0.5 --format csv"},
        {"verdict", "verdict --scenario circle-to-axis --epsilon 1.5 --delta 0.5"},
    };

    bool ok = true;
    std::string detail;
    for (const auto& [tag, args] : commands) {
        std::vector<std::string> outputs;
        std::vector<int> codes;
        for (int round = 0; round < 2; ++round) {
            const fs::path out = dir / (tag + "_" + std::to_string(round) + ".out");
            const std::string cmd =
                cli + " " + args + " --output " + out.string() + " 2>/dev/null";
            codes.push_back(std::system(cmd.c_str()));
            std::ifstream in(out, std::ios::binary);
            std::ostringstream ss;
            ss << in.rdbuf();
            outputs.push_back(ss.str());
        }
        if (outputs[0].empty() || outputs[0] != outputs[1] || codes[0] != codes[1]) {
            ok = false;
            detail = tag;
        }
    }
    report(7, "byte-identical CSV/JSON across repeated invocations", ok, detail);
}

}  // namespace

int main(int argc, char** argv) {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7(argc > 1 ? argv[1] : "");

    if (g_failures == 0) {
        std::cout << "acceptance: all criteria passed\n";
        return 0;
    }
    std::cout << "acceptance: " << g_failures << " criterion(s) failed\n";
    return 1;
}
