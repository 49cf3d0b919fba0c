#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "summa/compensated.hpp"
#include "summa/expr.hpp"
#include "summa/identities.hpp"
#include "summa/metric_sets.hpp"
#include "summa/transforms.hpp"

using namespace summa;

namespace {

DistanceTrace ramp_trace(Index n) {
    std::vector<double> row;
    for (Index k = 1; k <= n; ++k) row.push_back(static_cast<double>(k));
    return DistanceTrace::from_rows({std::move(row)});
}

DistanceTrace random_trace(std::uint64_t seed, Index n, double target = 4.0) {
    std::mt19937_64 rng(seed);
    std::vector<double> row;
    for (Index k = 0; k < n; ++k) row.push_back(10.0 * uniform_unit(rng()));
    return DistanceTrace::from_rows({std::move(row)}, {{target}});
}

}  // namespace

TEST_CASE("c_lambda: worked examples") {
    SUBCASE("constant trace stays constant under any lambda") {
        const DistanceTrace tr = DistanceTrace::from_rows({std::vector<double>(64, 3.25)});
        for (const char* expr : {"n", "2*n", "n^2", "2^n"}) {
            const MeanSeries s = c_lambda(tr, parse_lambda_for_horizon(expr, tr.horizon));
            for (Index n = 1; n <= s.horizon; ++n) CHECK(s.at(0, n) == 3.25);
        }
    }
    SUBCASE("alternating (2,0,...) with lambda = 2n is exactly 1") {
        std::vector<double> row;
        for (Index k = 1; k <= 100; ++k) row.push_back(k % 2 == 1 ? 2.0 : 0.0);
        const DistanceTrace tr = DistanceTrace::from_rows({row});
        const MeanSeries s = c_lambda(tr, parse_lambda("2*n", 50));
        for (Index n = 1; n <= s.horizon; ++n) CHECK(s.at(0, n) == 1.0);
    }
    SUBCASE("ramp with lambda = n^2 at n = 2 is 2.5") {
        const MeanSeries s = c_lambda(ramp_trace(16), parse_lambda("n^2", 4));
        CHECK(s.at(0, 2) == 2.5);
    }
    SUBCASE("lambda beyond the trace horizon is an error") {
        CHECK_THROWS_AS(c_lambda(ramp_trace(3), IndexMethod::from_values("big", {5})),
                        std::invalid_argument);
    }
}

TEST_CASE("d_lambda: worked examples") {
    SUBCASE("block mean over (4, 8] of the ramp is 6.5") {
        const MeanSeries s = d_lambda(ramp_trace(8), parse_lambda("2^n", 3));
        CHECK(s.at(0, 3) == 6.5);
    }
    SUBCASE("identity lambda reproduces the raw trace") {
        const DistanceTrace tr = random_trace(5, 50);
        const MeanSeries s = d_lambda(tr, IndexMethod::identity(50));
        for (Index n = 1; n <= 50; ++n) CHECK(s.at(0, n) == tr.at(0, n));
    }
}

TEST_CASE("deferred: worked examples and specializations") {
    const DistanceTrace tr = ramp_trace(64);
    SUBCASE("window (n, 2n] at n = 3 is (4+5+6)/3 = 5") {
        const DeferredPair pq = DeferredPair::from_generators(
            "n..2n", [](Index n) { return n; }, [](Index n) { return 2 * n; }, 32);
        const MeanSeries s = deferred(tr, pq);
        CHECK(s.at(0, 3) == 5.0);
    }
    SUBCASE("p = 0, q = n matches C_1 entrywise") {
        const DeferredPair pq = DeferredPair::from_generators(
            "0..n", [](Index) { return 0; }, [](Index n) { return n; }, 64);
        const MeanSeries s = deferred(tr, pq);
        const MeanSeries c1 = c_lambda(tr, IndexMethod::identity(64));
        for (Index n = 1; n <= 64; ++n) {
            CHECK(relative_residual(s.at(0, n), c1.at(0, n)) <= 1e-15);
        }
    }
    SUBCASE("p = lambda(n-1), q = lambda(n) matches the block means") {
        const IndexMethod lam = parse_lambda("2^n", 6);
        std::vector<Index> p, q;
        for (Index n = 1; n <= 6; ++n) {
            p.push_back(lam.value(n - 1));
            q.push_back(lam.value(n));
        }
        const MeanSeries s = deferred(tr, DeferredPair::from_values("blocks", p, q));
        const MeanSeries d = d_lambda(tr, lam);
        for (Index n = 1; n <= 6; ++n) CHECK(s.at(0, n) == d.at(0, n));
    }
}

TEST_CASE("strong_mean: worked examples") {
    SUBCASE("trace equal to target gives all zeros") {
        const DistanceTrace tr = DistanceTrace::from_rows(
            {std::vector<double>(40, 2.5)}, {{2.5}});
        for (MeanKind kind : {MeanKind::StrongCLambda, MeanKind::StrongDLambda, MeanKind::StrongC1}) {
            const MeanSeries s = strong_mean(tr, kind, parse_lambda("2*n", 20), 1.0);
            for (Index n = 1; n <= s.horizon; ++n) CHECK(s.at(0, n) == 0.0);
        }
    }
    SUBCASE("alternating deviations, p = 1 and p = 2, lambda = 2n") {
        std::vector<double> row;
        for (Index k = 1; k <= 80; ++k) row.push_back(k % 2 == 1 ? 2.0 : 0.0);
        const DistanceTrace tr = DistanceTrace::from_rows({row}, {{0.0}});
        const IndexMethod lam = parse_lambda("2*n", 40);
        const MeanSeries p1 = strong_mean(tr, MeanKind::StrongCLambda, lam, 1.0);
        const MeanSeries p2 = strong_mean(tr, MeanKind::StrongCLambda, lam, 2.0);
        for (Index n = 1; n <= 40; ++n) {
            CHECK(p1.at(0, n) == 1.0);
            CHECK(p2.at(0, n) == 2.0);
        }
    }
    SUBCASE("missing target is an error") {
        CHECK_THROWS_AS(
            strong_mean(ramp_trace(8), MeanKind::StrongCLambda, IndexMethod::identity(8), 1.0),
            std::invalid_argument);
    }
}

TEST_CASE("apply_row_matrix: identity rows keep the series") {
    const DistanceTrace tr = random_trace(17, 64);
    const MeanSeries c1 = c_lambda(tr, IndexMethod::identity(64));
    const RowGenerator ident = [](Index n) { return SparseRow{{n, 1.0}}; };
    const MeanSeries out = apply_row_matrix(ident, c1, 64);
    for (Index n = 1; n <= 64; ++n) CHECK(out.at(0, n) == c1.at(0, n));

    const RowGenerator overflow = [](Index) { return SparseRow{{65, 1.0}}; };
    CHECK_THROWS_AS(apply_row_matrix(overflow, c1, 64), std::invalid_argument);
}

TEST_CASE("identity properties on random traces across the four lambdas") {
    // The full randomized suite; residuals must clear the acceptance bar.
    const IdentitySuiteResult res =
        run_identity_suite(20240601, 2000, 10, default_identity_lambdas());
    for (const IdentityResult& r : res.identities) {
        INFO(r.name, " worst residual ", r.max_residual, " at n=", r.worst_n);
        CHECK(r.max_residual < 1e-12);
        CHECK(r.checked > 0);
    }
}

TEST_CASE("T rows applied to block means reproduce the prefix means") {
    const DistanceTrace tr = random_trace(99, 1024);
    for (const char* expr : {"2*n", "n^2", "2^n"}) {
        const IndexMethod lam = parse_lambda_for_horizon(expr, 1024);
        const MeanSeries cl = c_lambda(tr, lam);
        const MeanSeries dl = d_lambda(tr, lam);
        const MeanSeries combined = apply_row_matrix(t_rows(lam), dl, dl.horizon);
        for (Index n = 1; n <= cl.horizon; ++n) {
            CHECK(relative_residual(cl.at(0, n), combined.at(0, n), 10.0) <= 1e-12);
        }
        const MeanSeries inverted = apply_row_matrix(r_rows(lam), cl, cl.horizon);
        for (Index n = 1; n <= dl.horizon; ++n) {
            const SparseRow row = r_matrix_row(lam, n);
            double scale = 0.0;
            for (const auto& [k, w] : row) scale += std::abs(w * cl.at(0, k));
            CHECK(relative_residual(dl.at(0, n), inverted.at(0, n), scale) <= 1e-12);
        }
    }
}

TEST_CASE("monotone bound: mean entries sit inside the value range they average") {
    const DistanceTrace tr = random_trace(123, 500);
    for (const char* expr : {"n", "2*n", "n^2", "2^n"}) {
        const IndexMethod lam = parse_lambda_for_horizon(expr, 500);
        const MeanSeries cl = c_lambda(tr, lam);
        const MeanSeries dl = d_lambda(tr, lam);
        for (Index n = 1; n <= cl.horizon; ++n) {
            double lo = tr.at(0, 1), hi = tr.at(0, 1);
            for (Index k = 1; k <= lam.value(n); ++k) {
                lo = std::min(lo, tr.at(0, k));
                hi = std::max(hi, tr.at(0, k));
            }
            CHECK(cl.at(0, n) >= lo - 1e-12);
            CHECK(cl.at(0, n) <= hi + 1e-12);

            lo = hi = tr.at(0, lam.value(n - 1) + 1);
            for (Index k = lam.value(n - 1) + 1; k <= lam.value(n); ++k) {
                lo = std::min(lo, tr.at(0, k));
                hi = std::max(hi, tr.at(0, k));
            }
            CHECK(dl.at(0, n) >= lo - 1e-12);
            CHECK(dl.at(0, n) <= hi + 1e-12);
        }
    }
}

TEST_CASE("strong means obey the same T-row convex combination") {
    const DistanceTrace tr = random_trace(7, 512);
    const IndexMethod lam = parse_lambda_for_horizon("n^2", 512);
    for (double p : {1.0, 2.0, 0.5}) {
        const MeanSeries sc = strong_mean(tr, MeanKind::StrongCLambda, lam, p);
        const MeanSeries sd = strong_mean(tr, MeanKind::StrongDLambda, lam, p);
        const MeanSeries combined = apply_row_matrix(t_rows(lam), sd, sd.horizon);
        for (Index n = 1; n <= sc.horizon; ++n) {
            CHECK(relative_residual(sc.at(0, n), combined.at(0, n), 10.0) <= 1e-12);
        }
    }
}
