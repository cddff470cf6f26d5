#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "ifslab/transition.hpp"

using namespace ifslab;
using ifslab::testing::load;

TEST_CASE("special function of a bounded family") {
    auto sf = special_function(load("ex1_1"));
    CHECK(sf.index == 0);
    CHECK(sf.q_star[0] == 0);
    CHECK(sf.q_star[1] == 0);
    CHECK_THROWS_AS(special_function(load("eq4_real")), NotBounded);
    CHECK_THROWS_AS(special_function(load("ex6_3")), NotBounded);
}

TEST_CASE("lower transition attractor of the quarter family is the 4^-n orbit") {
    // {(t/4) x, t(x-1)+1} at t0 = 1: orbit of q* = 1 is {0} u {4^-n}.
    auto fam = load("bounded_quarter");
    PointSample s = lower_transition_attractor(fam, 1e-9, 100000);
    REQUIRE(s.size() >= 10);
    for (double x : s.xs) {
        double best = std::abs(x - 0.0);
        for (int n = 0; n <= 60; ++n) best = std::min(best, std::abs(x - std::pow(4.0, -n)));
        CHECK(best <= 1e-9);
    }
    // the named points must all be present
    auto contains = [&](double v) {
        for (double x : s.xs)
            if (std::abs(x - v) <= 1e-9) return true;
        return false;
    };
    CHECK(contains(0.0));
    for (int n = 0; n <= 15; ++n) CHECK(contains(std::pow(4.0, -n)));

    CHECK(invariance_residual(s, fam) <= 1e-8);
}

TEST_CASE("lower transition attractor of ex8_10: alpha^n R^n orbit") {
    // members: identity-part rotation by pi/2 scaled by alpha; orbit of
    // q* = (1,0) under the non-maximal map is alpha^n R(pi/2)^n (-1,0)+(1,0)
    // closed under the maximal map (identity at t0 = 1)... the closure is
    // checked in acceptance; here just verify invariance and boundedness.
    auto fam = load("ex8_10_alpha04");
    PointSample s = lower_transition_attractor(fam, 1e-9, 200000);
    CHECK(s.size() >= 4);
    CHECK(invariance_residual(s, fam) <= 1e-8);
    // orbit starts at q* = (0,0), so radius around (1,0) is at most 1
    for (std::size_t i = 0; i < s.size(); ++i)
        CHECK(std::hypot(s.xs[i] - 1.0, s.ys[i]) <= 1.0 + 1e-9);
}

TEST_CASE("transition hulls nest and K* collects the limit") {
    auto fam = load("ex8_9_alpha04");
    std::vector<double> grid = {0.5, 0.7, 0.9};
    double cell = 1.0 / 128;
    TransitionHulls th = transition_hull(fam, grid, cell);
    REQUIRE(th.hulls.size() == 3);
    REQUIRE(th.k_star.d == 2);
    // hulls grow with t: every vertex of hull[i] is inside hull[i+1]
    // (within the 2*cell slack the builder enforces)
    for (std::size_t i = 0; i + 1 < th.hulls.size(); ++i)
        for (const auto& v : th.hulls[i].polygon)
            CHECK(point_polygon_distance(v, th.hulls[i + 1].polygon) <= 2 * cell + 1e-12);

    UpperTransitionEvidence ev = upper_transition_evidence(fam, grid, cell);
    REQUIRE(ev.table.size() == 2);
    CHECK((ev.verdict == "cauchy-evidence" || ev.verdict == "inconclusive"));
}

TEST_CASE("truncation flag") {
    auto fam = load("bounded_quarter");
    CHECK_THROWS_AS(lower_transition_attractor(fam, 1e-9, 3), BudgetExceeded);
    PointSample s = lower_transition_attractor(fam, 1e-9, 3, true);
    CHECK(s.size() <= 3);
    CHECK(s.size() >= 1);
}
