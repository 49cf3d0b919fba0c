#include "summa/identities.hpp"

#include <cmath>
#include <random>

#include "summa/compensated.hpp"
#include "summa/expr.hpp"
#include "summa/transforms.hpp"

namespace summa {

double uniform_unit(std::uint64_t word) {
    return static_cast<double>(word >> 11) * 0x1.0p-53;
}

std::vector<std::string> default_identity_lambdas() { return {"n", "2*n", "n^2", "2^n"}; }

namespace {

struct Tracker {
    IdentityResult* result;
    const std::string* lambda;
    std::uint64_t seed;

    void observe(double residual, Index n) const {
        result->checked += 1;
        if (residual > result->max_residual) {
            result->max_residual = residual;
            result->worst_n = n;
            result->worst_lambda = *lambda;
            result->worst_seed = seed;
        }
    }
};

DistanceTrace random_trace(std::mt19937_64& rng, Index horizon) {
    std::vector<double> row;
    row.reserve(static_cast<std::size_t>(horizon));
    for (Index k = 0; k < horizon; ++k) row.push_back(10.0 * uniform_unit(rng()));
    std::vector<double> target{10.0 * uniform_unit(rng())};
    return DistanceTrace::from_rows({std::move(row)}, std::move(target));
}

}  // namespace

IdentitySuiteResult run_identity_suite(std::uint64_t seed, Index horizon, Index trials,
                                       const std::vector<std::string>& lambda_exprs,
                                       double tolerance) {
    IdentitySuiteResult out;
    out.tolerance = tolerance;
    out.trials = trials;
    out.lambda_exprs = lambda_exprs;
    out.identities = {
        IdentityResult{"c-lambda-subsequence-of-c1", 0.0, 0, "", 0, 0},
        IdentityResult{"t-rows-convex-combination", 0.0, 0, "", 0, 0},
        IdentityResult{"r-rows-inversion", 0.0, 0, "", 0, 0},
        IdentityResult{"deferred-specializations", 0.0, 0, "", 0, 0},
    };

    std::mt19937_64 rng(seed);

    for (Index trial = 0; trial < trials; ++trial) {
        const std::uint64_t trace_seed = rng();
        std::mt19937_64 trace_rng(trace_seed);
        const DistanceTrace tr = random_trace(trace_rng, horizon);

        const IndexMethod identity_method = IndexMethod::identity(horizon);
        const MeanSeries c1 = c_lambda(tr, identity_method);

        for (const std::string& expr : lambda_exprs) {
            const IndexMethod lambda = parse_lambda_for_horizon(expr, horizon);
            const MeanSeries cl = c_lambda(tr, lambda);
            const MeanSeries dl = d_lambda(tr, lambda);

            // 1. Submethod entries are a re-indexing of the C_1 entries.
            {
                Tracker t{&out.identities[0], &expr, trace_seed};
                for (Index n = 1; n <= cl.horizon; ++n) {
                    const double lhs = cl.at(0, n);
                    const double rhs = c1.at(0, lambda.value(n));
                    t.observe(relative_residual(lhs, rhs), n);
                }
            }

            // 2. Prefix mean as the T-row convex combination of block means.
            {
                Tracker t{&out.identities[1], &expr, trace_seed};
                for (Index n = 1; n <= cl.horizon; ++n) {
                    const SparseRow row = t_matrix_row(lambda, n);
                    CompensatedSum acc;
                    CompensatedSum scale;
                    for (const auto& [k, w] : row) {
                        acc.add(w * dl.at(0, k));
                        scale.add(std::abs(w * dl.at(0, k)));
                    }
                    t.observe(relative_residual(cl.at(0, n), acc.value(), scale.value()), n);
                }
            }

            // 3. Block means from prefix means through the R rows.
            {
                Tracker t{&out.identities[2], &expr, trace_seed};
                for (Index n = 1; n <= dl.horizon; ++n) {
                    const SparseRow row = r_matrix_row(lambda, n);
                    CompensatedSum acc;
                    CompensatedSum scale;
                    for (const auto& [k, w] : row) {
                        acc.add(w * cl.at(0, k));
                        scale.add(std::abs(w * cl.at(0, k)));
                    }
                    t.observe(relative_residual(dl.at(0, n), acc.value(), scale.value()), n);
                }
            }

            // 4. Deferred specializations: (0, n] recovers C_1 and
            //    (lambda(n-1), lambda(n)] recovers the block means.
            {
                Tracker t{&out.identities[3], &expr, trace_seed};
                const DeferredPair as_c1 = DeferredPair::from_generators(
                    "p=0,q=n", [](Index) { return 0; }, [](Index n) { return n; }, horizon);
                const MeanSeries def_c1 = deferred(tr, as_c1);
                for (Index n = 1; n <= def_c1.horizon; ++n) {
                    t.observe(relative_residual(def_c1.at(0, n), c1.at(0, n)), n);
                }

                std::vector<Index> p_vals, q_vals;
                for (Index n = 1; n <= lambda.last_leq(horizon); ++n) {
                    p_vals.push_back(lambda.value(n - 1));
                    q_vals.push_back(lambda.value(n));
                }
                const DeferredPair as_blocks = DeferredPair::from_values(
                    "p=lambda(n-1),q=lambda(n)", std::move(p_vals), std::move(q_vals));
                const MeanSeries def_blocks = deferred(tr, as_blocks);
                for (Index n = 1; n <= def_blocks.horizon; ++n) {
                    t.observe(relative_residual(def_blocks.at(0, n), dl.at(0, n)), n);
                }
            }
        }
    }

    for (const IdentityResult& r : out.identities) {
        out.max_residual = std::max(out.max_residual, r.max_residual);
    }
    return out;
}

}  // namespace summa
