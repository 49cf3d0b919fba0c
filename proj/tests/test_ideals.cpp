#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "summa/expr.hpp"
#include "summa/ideals.hpp"
#include "summa/identities.hpp"

using namespace summa;

namespace {

std::vector<bool> indicator_from(const std::vector<Index>& members, Index horizon) {
    std::vector<bool> ind(static_cast<std::size_t>(horizon), false);
    for (Index m : members) {
        if (m >= 1 && m <= horizon) ind[static_cast<std::size_t>(m - 1)] = true;
    }
    return ind;
}

std::vector<Index> squares_upto(Index n) {
    std::vector<Index> out;
    for (Index m = 1; m * m <= n; ++m) out.push_back(m * m);
    return out;
}

DistanceTrace spike_trace(Index n) {
    std::vector<double> row(static_cast<std::size_t>(n), 0.0);
    for (Index m = 1; m * m <= n; ++m) {
        row[static_cast<std::size_t>(m * m - 1)] = static_cast<double>(m * m);
    }
    return DistanceTrace::from_rows({std::move(row)}, {{0.0}});
}

DistanceTrace bounded_spike_trace(Index n) {
    // Deviations 1 on perfect squares, 0 elsewhere.
    std::vector<double> row(static_cast<std::size_t>(n), 0.0);
    for (Index m = 1; m * m <= n; ++m) row[static_cast<std::size_t>(m * m - 1)] = 1.0;
    return DistanceTrace::from_rows({std::move(row)}, {{0.0}});
}

DistanceTrace alternating_dev_trace(Index n) {
    std::vector<double> row;
    for (Index k = 1; k <= n; ++k) row.push_back(k % 2 == 1 ? 2.0 : 0.0);
    return DistanceTrace::from_rows({std::move(row)}, {{0.0}});
}

}  // namespace

TEST_CASE("member_estimate: axioms and worked examples") {
    const Ideal dz = Ideal::density_zero();
    const Ideal fin = Ideal::fin();

    SUBCASE("the empty set is in both ideals") {
        const std::vector<bool> empty(10000, false);
        CHECK(member_estimate(dz, empty).status == Membership::InIdealConsistent);
        CHECK(member_estimate(fin, empty).status == Membership::InIdealConsistent);
    }
    SUBCASE("perfect squares up to 10^4 are density-zero consistent") {
        const auto ind = indicator_from(squares_upto(10000), 10000);
        const MembershipReport rep = member_estimate(dz, ind);
        CHECK(rep.status == Membership::InIdealConsistent);
        CHECK(rep.density_full == 0.01);
    }
    SUBCASE("the evens are not density-zero consistent") {
        std::vector<Index> evens;
        for (Index k = 2; k <= 10000; k += 2) evens.push_back(k);
        const MembershipReport rep = member_estimate(dz, indicator_from(evens, 10000));
        CHECK(rep.status == Membership::NotInIdealConsistent);
        CHECK(rep.density_full == 0.5);
    }
    SUBCASE("fin: a set with tail members is not fin-consistent") {
        CHECK(member_estimate(fin, indicator_from({1, 2, 3}, 1000)).status ==
              Membership::InIdealConsistent);
        CHECK(member_estimate(fin, indicator_from({1, 900}, 1000)).status ==
              Membership::NotInIdealConsistent);
    }
    SUBCASE("a slowly thickening set is flagged, not blessed") {
        // Density 0.02 in the front half, 0.04 overall: growing but small.
        std::vector<Index> members;
        for (Index k = 1; k <= 5000; k += 50) members.push_back(k);
        for (Index k = 5001; k <= 10000; k += 17) members.push_back(k);
        const MembershipReport rep = member_estimate(dz, indicator_from(members, 10000));
        CHECK(rep.status == Membership::Inconclusive);
    }
}

TEST_CASE("member_estimate: subset and union behavior on structured families") {
    const Ideal dz = Ideal::density_zero();
    const Index horizon = 10000;

    // Sets that thin out (multiples of c for growing c) and their prefixes.
    const auto squares = squares_upto(horizon);
    const auto cubes = [&] {
        std::vector<Index> out;
        for (Index m = 1; m * m * m <= horizon; ++m) out.push_back(m * m * m);
        return out;
    }();

    SUBCASE("prefix-truncated subsets of an in-ideal set stay in-ideal") {
        const auto full = indicator_from(squares, horizon);
        REQUIRE(member_estimate(dz, full).status == Membership::InIdealConsistent);
        for (std::size_t keep : {std::size_t{10}, std::size_t{50}, std::size_t{80}}) {
            std::vector<Index> sub(squares.begin(),
                                   squares.begin() + std::min(keep, squares.size()));
            CHECK(member_estimate(dz, indicator_from(sub, horizon)).status ==
                  Membership::InIdealConsistent);
        }
    }
    SUBCASE("union of squares and cubes stays in-ideal") {
        std::vector<Index> both = squares;
        both.insert(both.end(), cubes.begin(), cubes.end());
        CHECK(member_estimate(dz, indicator_from(both, horizon)).status ==
              Membership::InIdealConsistent);
    }
}

TEST_CASE("duality: in-ideal sets have filter-consistent complements") {
    const Index horizon = 10000;
    for (const Ideal& ideal : {Ideal::density_zero(), Ideal::fin()}) {
        const std::vector<std::vector<Index>> families = {
            {}, squares_upto(horizon), {1, 2, 3}, [&] {
                std::vector<Index> evens;
                for (Index k = 2; k <= horizon; k += 2) evens.push_back(k);
                return evens;
            }()};
        for (const auto& members : families) {
            const auto ind = indicator_from(members, horizon);
            std::vector<bool> comp(ind.size());
            for (std::size_t i = 0; i < ind.size(); ++i) comp[i] = !ind[i];
            const Membership direct = member_estimate(ideal, ind).status;
            const Membership dual = filter_estimate(ideal, comp).status;
            CHECK(direct == dual);
        }
    }
}

TEST_CASE("ideal_verdict: worked examples") {
    const Ideal dz = Ideal::density_zero();

    SUBCASE("constant sequence is consistent in all seven modes") {
        const DistanceTrace tr = DistanceTrace::from_rows(
            {std::vector<double>(2000, 5.0)}, {{5.0}});
        const IndexMethod lam = parse_lambda("2*n", 1000);
        for (Mode m : all_modes()) {
            const IdealVerdict v = ideal_verdict(m, tr, lam, dz, VerdictParams{0.5, 0.05, 2.0});
            CHECK(v.worst() == VerdictStatus::Consistent);
            CHECK(v.witness_density[0] == 0.0);
        }
    }
    SUBCASE("spike scenario: raw exceedances are density-zero consistent") {
        const DistanceTrace tr = spike_trace(10000);
        const IdealVerdict v = ideal_verdict(Mode::IConvergence, tr, IndexMethod::identity(10000),
                                             dz, VerdictParams{0.5, {}, {}});
        CHECK(v.status[0] == VerdictStatus::Consistent);
        CHECK(v.witness_density[0] == 0.01);
    }
    SUBCASE("alternating deviations violate I-convergence") {
        const DistanceTrace tr = alternating_dev_trace(10000);
        const IdealVerdict v = ideal_verdict(Mode::IConvergence, tr, IndexMethod::identity(10000),
                                             dz, VerdictParams{1.0, {}, {}});
        CHECK(v.status[0] == VerdictStatus::Violated);
        CHECK(v.witness_density[0] == 0.5);
    }
    SUBCASE("parameter validation") {
        const DistanceTrace tr = alternating_dev_trace(200);
        const IndexMethod lam = IndexMethod::identity(200);
        CHECK_THROWS_AS(
            ideal_verdict(Mode::ICLambdaStatistical, tr, lam, dz, VerdictParams{0.5, {}, {}}),
            std::invalid_argument);
        CHECK_THROWS_AS(
            ideal_verdict(Mode::PStrongICLambda, tr, lam, dz, VerdictParams{0.5, {}, {}}),
            std::invalid_argument);
        const DistanceTrace small = alternating_dev_trace(50);
        CHECK_THROWS_AS(ideal_verdict(Mode::IConvergence, small, IndexMethod::identity(50), dz,
                                      VerdictParams{0.5, {}, {}}),
                        std::invalid_argument);
    }
}

TEST_CASE("exceptional-set containments hold as exact set inclusions") {
    // Parameters satisfy delta^p + eps^p <= delta, so the printed superset
    // threshold is implied by the split bound.
    const double eps = 0.3, delta = 0.5, p = 2.0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        std::mt19937_64 rng(seed);
        std::vector<double> row;
        for (Index k = 0; k < 400; ++k) row.push_back(10.0 * uniform_unit(rng()));
        const DistanceTrace tr =
            DistanceTrace::from_rows({std::move(row)}, {{10.0 * uniform_unit(rng())}});
        const IndexMethod lam = parse_lambda_for_horizon("n^2", 400);

        const ContainmentReport stat = statistical_in_pstrong(tr, lam, eps, delta, p);
        CHECK(stat.holds);
        const ContainmentReport strong = pstrong_in_statistical(tr, lam, eps, delta, p);
        CHECK(strong.holds);
        CHECK(!strong.note.empty());
    }
}

TEST_CASE("implication suite: bounded spikes with lambda = 2^n pass non-vacuously") {
    const DistanceTrace tr = bounded_spike_trace(10000);
    const IndexMethod lam = parse_lambda_for_horizon("2^n", 10000);
    ImplicationParams params;
    params.epsilon = 0.5;
    params.delta = 0.05;
    params.power = 2.0;
    const ImplicationSuite suite = implication_suite(tr, lam, Ideal::fin(), params);
    CHECK_FALSE(suite.any_candidate());

    // Strong means decay like 2^(-n/2); the liminf hypothesis holds with
    // beta = 1, so the first check must fire with both sides consistent.
    const ImplicationCheck& first = suite.checks.front();
    CHECK(first.applicable);
    REQUIRE(!first.antecedent_status.empty());
    CHECK(first.antecedent_status[0] == VerdictStatus::Consistent);
    CHECK(first.consequent_status[0] == VerdictStatus::Consistent);
}

TEST_CASE("implication suite: constant trace passes everything it can check") {
    const DistanceTrace tr =
        DistanceTrace::from_rows({std::vector<double>(4096, 2.0)}, {{2.0}});
    for (const char* expr : {"2^n", "n^2"}) {
        const IndexMethod lam = parse_lambda_for_horizon(expr, 4096);
        ImplicationParams params;
        const ImplicationSuite suite = implication_suite(tr, lam, Ideal::density_zero(), params);
        CHECK_FALSE(suite.any_candidate());
        for (const ImplicationCheck& check : suite.checks) {
            if (!check.applicable) continue;
            for (std::size_t pr = 0; pr < check.antecedent_status.size(); ++pr) {
                CHECK(check.antecedent_status[pr] == VerdictStatus::Consistent);
                CHECK(check.consequent_status[pr] == VerdictStatus::Consistent);
            }
        }
    }
}

TEST_CASE("implication suite: unbounded traces suspend the summability checks") {
    const DistanceTrace tr = spike_trace(10000);
    const IndexMethod lam = IndexMethod::identity(10000);
    ImplicationParams params;
    const ImplicationSuite suite = implication_suite(tr, lam, Ideal::density_zero(), params);
    CHECK_FALSE(suite.any_candidate());
    // The strong-mean implications carry a boundedness hypothesis at desk
    // scale; an unbounded-suspect trace makes them not applicable.
    CHECK_FALSE(suite.checks[0].applicable);
    CHECK_FALSE(suite.checks[1].applicable);
    CHECK_FALSE(suite.checks[2].applicable);
    CHECK_FALSE(suite.checks[4].applicable);
}
