#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "summa/identities.hpp"
#include "summa/metric_sets.hpp"

using namespace summa;
using summa::testing::ball_oracle;
using summa::testing::box_oracle;
using summa::testing::hyperplane_oracle;
using summa::testing::sphere_oracle;

namespace {

double unit(std::mt19937_64& rng) { return uniform_unit(rng()); }

MetricPoint random_point(std::mt19937_64& rng, std::size_t d, double span = 8.0) {
    std::vector<double> c;
    for (std::size_t i = 0; i < d; ++i) c.push_back(span * (unit(rng) - 0.5));
    return MetricPoint(std::move(c));
}

}  // namespace

TEST_CASE("distance: singleton examples") {
    const ClosedSet a = ClosedSet::singleton(MetricPoint{1.0, 0.0});
    CHECK(distance(MetricPoint{1.0, 0.0}, a) == 0.0);
    CHECK(distance(MetricPoint{0.0, 0.0}, a) == 1.0);
}

TEST_CASE("distance: ball matches the sampling oracle at the worked example") {
    const MetricPoint x{0.0, 0.0};
    const MetricPoint center{3.0, 0.0};
    const double exact = distance(x, ClosedSet::ball(center, 1.0));
    CHECK(exact == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(std::abs(exact - ball_oracle(x, center, 1.0)) < 1e-6);
}

TEST_CASE("distance: oracle agreement on random shapes in d <= 3") {
    std::mt19937_64 rng(2024);
    for (std::size_t d = 2; d <= 3; ++d) {
        for (int rep = 0; rep < 6; ++rep) {
            const MetricPoint x = random_point(rng, d);
            const MetricPoint c = random_point(rng, d, 4.0);
            const double r = 0.5 + 2.0 * unit(rng);

            CHECK(std::abs(distance(x, ClosedSet::ball(c, r)) - ball_oracle(x, c, r)) < 1e-6);
            CHECK(std::abs(distance(x, ClosedSet::sphere(c, r)) - sphere_oracle(x, c, r)) < 1e-6);

            MetricPoint lo = random_point(rng, d, 4.0);
            std::vector<double> hi_coords = lo.coords;
            for (double& v : hi_coords) v += 0.3 + 3.0 * unit(rng);
            const MetricPoint hi(hi_coords);
            CHECK(std::abs(distance(x, ClosedSet::axis_box(lo, hi)) - box_oracle(x, lo, hi)) <
                  1e-6);

            MetricPoint normal = random_point(rng, d, 2.0);
            normal.coords[0] += 2.5;  // keep the normal well away from zero
            const double offset = 3.0 * (unit(rng) - 0.5);
            const ClosedSet plane = ClosedSet::hyperplane(normal, offset);
            const auto& h = std::get<Hyperplane>(plane.shape());
            CHECK(std::abs(distance(x, plane) - hyperplane_oracle(x, h.normal, h.offset)) < 1e-6);
        }
    }
}

TEST_CASE("distance: finite point set takes the pointwise minimum") {
    const ClosedSet a =
        ClosedSet::finite_points({MetricPoint{1.0, 0.0}, MetricPoint{-1.0, 0.0}});
    CHECK(distance(MetricPoint{0.9, 0.0}, a) == doctest::Approx(0.1));
    CHECK(distance(MetricPoint{-4.0, 0.0}, a) == doctest::Approx(3.0));
}

TEST_CASE("distance: oracle shape passes values through and validates them") {
    const ClosedSet good = ClosedSet::oracle(2, [](const MetricPoint& x) {
        return std::abs(x.coords[0]);
    });
    CHECK(distance(MetricPoint{-2.0, 5.0}, good) == 2.0);

    const ClosedSet bad = ClosedSet::oracle(2, [](const MetricPoint&) { return -1.0; });
    CHECK_THROWS_AS(distance(MetricPoint{0.0, 0.0}, bad), std::runtime_error);
}

TEST_CASE("distance: construction and call validation") {
    CHECK_THROWS_AS(ClosedSet::sphere(MetricPoint{0.0}, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(ClosedSet::ball(MetricPoint{0.0}, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(ClosedSet::axis_box(MetricPoint{1.0}, MetricPoint{0.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(ClosedSet::hyperplane(MetricPoint{0.0, 0.0}, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(ClosedSet::finite_points({}), std::invalid_argument);
    CHECK_THROWS_AS(distance(MetricPoint{0.0}, ClosedSet::singleton(MetricPoint{0.0, 0.0})),
                    std::invalid_argument);
    CHECK_THROWS_AS((MetricPoint(std::vector<double>{1.0, std::nan("")})), std::invalid_argument);
}

TEST_CASE("distance: Lipschitz in x for every shape") {
    std::mt19937_64 rng(7);
    std::vector<ClosedSet> shapes;
    shapes.push_back(ClosedSet::singleton(MetricPoint{1.0, 2.0}));
    shapes.push_back(ClosedSet::finite_points({MetricPoint{0.0, 0.0}, MetricPoint{3.0, -1.0}}));
    shapes.push_back(ClosedSet::ball(MetricPoint{1.0, 1.0}, 2.0));
    shapes.push_back(ClosedSet::sphere(MetricPoint{-2.0, 0.5}, 1.5));
    shapes.push_back(ClosedSet::axis_box(MetricPoint{-1.0, -1.0}, MetricPoint{1.0, 2.0}));
    shapes.push_back(ClosedSet::hyperplane(MetricPoint{1.0, 1.0}, 0.5));

    for (const ClosedSet& a : shapes) {
        for (int rep = 0; rep < 200; ++rep) {
            const MetricPoint x = random_point(rng, 2);
            const MetricPoint y = random_point(rng, 2);
            const double lhs = std::abs(distance(x, a) - distance(y, a));
            CHECK(lhs <= euclidean(x, y) + 1e-12);
        }
    }
}

TEST_CASE("distance: membership points sit at distance ~0") {
    std::mt19937_64 rng(11);
    const MetricPoint c{0.5, -1.0};
    const double r = 1.75;
    for (int rep = 0; rep < 50; ++rep) {
        const double theta = 2.0 * 3.14159265358979323846 * unit(rng);
        const double rho = r * std::sqrt(unit(rng));
        const MetricPoint inside{c.coords[0] + rho * std::cos(theta),
                                 c.coords[1] + rho * std::sin(theta)};
        CHECK(distance(inside, ClosedSet::ball(c, r)) <= 1e-12);

        const MetricPoint on{c.coords[0] + r * std::cos(theta), c.coords[1] + r * std::sin(theta)};
        CHECK(distance(on, ClosedSet::sphere(c, r)) <= 1e-12);
    }
}

TEST_CASE("trace: constant sequence gives a constant row") {
    const ClosedSet a = ClosedSet::singleton(MetricPoint{0.0, 0.0});
    const SetSequence seq{"const", [a](Index) { return a; }, true};
    const DistanceTrace tr = trace(seq, {MetricPoint{3.0, 4.0}}, 5);
    REQUIRE(tr.horizon == 5);
    for (Index k = 1; k <= 5; ++k) CHECK(tr.at(0, k) == 5.0);
}

TEST_CASE("trace: alternating singletons") {
    const ClosedSet even = ClosedSet::singleton(MetricPoint{1.0, 0.0});
    const ClosedSet odd = ClosedSet::singleton(MetricPoint{-1.0, 0.0});
    const SetSequence seq{"alt", [even, odd](Index k) { return k % 2 == 0 ? even : odd; }, true};
    const DistanceTrace tr = trace(seq, {MetricPoint{1.0, 0.0}}, 4);
    CHECK(tr.values[0] == std::vector<double>{2.0, 0.0, 2.0, 0.0});
}

TEST_CASE("trace: circle family approaches the axis distance") {
    const SetSequence seq{"circles",
                          [](Index k) {
                              return ClosedSet::sphere(
                                  MetricPoint{static_cast<double>(k), 0.0},
                                  static_cast<double>(k));
                          },
                          true};
    const Index n = 10000;
    const DistanceTrace tr = trace(seq, {MetricPoint{2.0, 1.0}}, n,
                                   ClosedSet::hyperplane(MetricPoint{1.0, 0.0}, 0.0));
    CHECK(tr.target(0) == 2.0);
    for (Index k = 1; k <= n; ++k) {
        const double kd = static_cast<double>(k);
        const double direct = std::abs(std::sqrt((2.0 - kd) * (2.0 - kd) + 1.0) - kd);
        CHECK(tr.at(0, k) == doctest::Approx(direct).epsilon(1e-14));
    }
    for (Index k = 5000; k <= n; k += 500) {
        CHECK(std::abs(tr.at(0, k) - 2.0) <= 1e-3);
    }
}

TEST_CASE("trace: determinism is bitwise") {
    const SetSequence seq{"circles",
                          [](Index k) {
                              return ClosedSet::sphere(
                                  MetricPoint{static_cast<double>(k), 0.0},
                                  static_cast<double>(k));
                          },
                          true};
    const std::vector<MetricPoint> probes{MetricPoint{2.0, 1.0}, MetricPoint{0.0, 3.0}};
    const DistanceTrace a = trace(seq, probes, 2000);
    const DistanceTrace b = trace(seq, probes, 2000);
    CHECK(a.values == b.values);
}

TEST_CASE("bounded_estimate: constant, spike, and alternating traces") {
    const DistanceTrace constant = DistanceTrace::from_rows({std::vector<double>(100, 5.0)});
    const BoundReport c = bounded_estimate(constant);
    CHECK(c.sup[0] == 5.0);
    CHECK_FALSE(c.unbounded_suspect[0]);

    std::vector<double> spike(10000, 0.0);
    for (Index m = 1; m * m <= 10000; ++m) spike[static_cast<std::size_t>(m * m - 1)] = m * m;
    const BoundReport s = bounded_estimate(DistanceTrace::from_rows({spike}));
    CHECK(s.sup[0] == 10000.0);
    CHECK(s.arg_sup[0] == 10000);
    CHECK(s.unbounded_suspect[0]);

    std::vector<double> alt;
    for (int k = 0; k < 100; ++k) alt.push_back(k % 2 == 0 ? 2.0 : 0.0);
    const BoundReport a = bounded_estimate(DistanceTrace::from_rows({alt}));
    CHECK(a.sup[0] == 2.0);
    CHECK_FALSE(a.unbounded_suspect[0]);
}

TEST_CASE("sup_deviation needs a target and reports per-probe sups") {
    const DistanceTrace no_target = DistanceTrace::from_rows({{1.0, 2.0}});
    CHECK_THROWS_AS(sup_deviation(no_target), std::invalid_argument);

    const DistanceTrace tr =
        DistanceTrace::from_rows({{1.0, 4.0, 2.0}, {0.0, 0.5, 1.0}}, {{2.0, 0.5}});
    const auto sup = sup_deviation(tr);
    CHECK(sup[0] == 2.0);
    CHECK(sup[1] == 0.5);
}
