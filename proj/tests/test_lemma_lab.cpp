#include <doctest.h>

#include <cmath>
#include <random>

#include "isohyp/lemma_lab.hpp"

using namespace isohyp;

namespace {

// H1 by a central difference of the library distance along the Euclidean
// normal, rescaled to a hyperbolic unit normal.
double h1_oracle(const H1CircleConfig& c, double phi) {
    const DiskPoint p{c.tau_e * std::cos(phi), c.y + c.tau_e * std::sin(phi)};
    const DiskPoint o{-c.o_tilde, 0.0};
    const double e = 1e-6;
    const DiskPoint a{p.x1 + e * std::cos(phi), p.x2 + e * std::sin(phi)};
    const DiskPoint b{p.x1 - e * std::cos(phi), p.x2 - e * std::sin(phi)};
    const double dd = (dist(a, o) - dist(b, o)) / (2 * e);
    return c.density.dh(dist(p, o)) * dd / conformal_factor(p);
}

}  // namespace

TEST_CASE("H1 along circles matches a distance oracle") {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> U(0, 1);
    for (int i = 0; i < 100; ++i) {
        H1CircleConfig c;
        c.y = 0.8 * U(rng);
        c.tau_e = 0.05 + (0.9 - c.y) * U(rng);
        c.o_tilde = 0.9 * U(rng);
        c.density = RadialDensity::cosh_power(1 + i % 4);
        const double phi = 0.5 * kPi * U(rng);
        CHECK(std::abs(h1_circle_value(c, phi) - h1_oracle(c, phi)) < 1e-7);
    }
}

TEST_CASE("H1 sign lemma examples") {
    H1CircleConfig eq;
    eq.y = 0.0;
    eq.o_tilde = 0.0;
    eq.tau_e = 0.5;
    for (int p : {1, 4}) {
        eq.density = RadialDensity::cosh_power(p);
        const auto r = verify_h1_circle(eq);
        CHECK(r.equality_case);
        CHECK(r.max_abs_h1p < 1e-9);
        CHECK(r.pass);
    }

    H1CircleConfig off = eq;
    off.density = RadialDensity::cosh_power(1);
    off.o_tilde = 0.3;
    auto r = verify_h1_circle(off);
    CHECK(r.pass);
    CHECK(r.min_margin > 0.0);  // strict on (0, L]
    CHECK(r.h1pp0 < 0.0);

    H1CircleConfig lifted;
    lifted.y = 0.4;
    lifted.tau_e = 0.3;
    lifted.o_tilde = 0.2;
    lifted.density = RadialDensity::cosh_power(2);
    r = verify_h1_circle(lifted);
    CHECK(r.pass);
    CHECK(r.h1p_L < 0.0);

    H1CircleConfig bad = lifted;
    bad.tau_e = 0.7;  // leaves the disk
    CHECK_THROWS(verify_h1_circle(bad));
}

TEST_CASE("frame curvature formula on analytic curves") {
    CHECK(verify_formula_k_leaf(0.7).max_residual < 1e-9);
    CHECK(verify_formula_k_geodesic(0.4).max_residual < 1e-9);
    CHECK(verify_formula_k_geodesic(-1.2).max_residual < 1e-9);
    const auto c = verify_formula_k_circle({0.1, 0.5}, 0.3);
    CHECK(c.samples > 0);
    CHECK(c.max_residual < 1e-6);
    CHECK(verify_formula_k_circle({0.0, 0.35}, 0.3).max_residual < 1e-6);
    // Circles reaching below e1 are outside the frame's domain.
    CHECK_THROWS(verify_formula_k_circle({0.0, 0.0}, 0.6));
}

TEST_CASE("frame curvature formula along shooting trajectories") {
    for (double rel : {0.95, 1.0, 1.1}) {
        ShootingConfig cfg;
        cfg.n = 3;
        cfg.start_t = 1.0;
        cfg.lambda = rel * lambda_for_ball(3, cfg.density, 1.0);
        cfg.sample_du = 1e-4;
        cfg.step_tol = 1e-12;
        cfg.max_arclength = 4.0;
        const auto tr = shoot(cfg);
        const auto r = verify_formula_k_trajectory(tr);
        CHECK(r.samples > 100);
        CHECK(r.max_residual < 1e-5);
    }
}

TEST_CASE("comparison circle centers") {
    // Tangent X^perp: the center is the foot point.
    CenterDraw d;
    REQUIRE(center_draw({0.6, 0.8}, 0.0, d));
    CHECK(d.center_x1 == doctest::Approx(std::tanh(0.4)).epsilon(1e-10));
    CHECK(d.trig_residual < 1e-12);
    // Radially increasing tangent is excluded: at t < 0 moving along
    // X^perp increases the distance from o.
    CHECK_FALSE(center_draw({0.6, -0.8}, 0.0, d));

    const auto r = verify_center_C(300, 9);
    CHECK(r.draws == 300);
    CHECK(r.pass_fraction() == 1.0);
    CHECK(r.worst_x1 >= -1e-10);
    CHECK(r.worst_trig < 1e-9);
    CHECK(law_of_cosines_check(500, 9) < 1e-9);
}

TEST_CASE("identical arcs give equality in every mode") {
    for (auto mode : {ComparisonMode::KappaComparison, ComparisonMode::CircleComparison,
                      ComparisonMode::NormalComparison}) {
        ComparisonConfig c;
        c.mode = mode;
        c.s_P = 0.5;
        c.t_P = 0.0;
        c.alpha_P = 0.0;
        c.l0 = 0.1;
        c.kappa1 = c.kappa2 = 1.6;
        const auto r = verify_comparison(c);
        INFO(to_string(mode), " ", r.rejection);
        REQUIRE(r.accepted);
        CHECK(r.pass);
        CHECK(r.equality);
        CHECK(std::abs(r.worst_margin) < 1e-9);
    }
}

TEST_CASE("curvature ordering gives strict angle ordering") {
    ComparisonConfig c;
    c.mode = ComparisonMode::KappaComparison;
    c.s_P = 0.5;
    c.alpha_P = 0.0;
    c.l0 = 0.1;
    c.kappa2 = 1.6;
    c.kappa1 = 2.1;
    const auto r = verify_comparison(c);
    REQUIRE(r.accepted);
    CHECK(r.pass);
    CHECK(r.strict);
    CHECK(r.alpha1_l0 > r.alpha2_l0);
    // Exact first integral of constant-curvature arcs.
    const double lhs = std::cosh(c.l0) * (std::cos(r.alpha2_l0) - std::cos(r.alpha1_l0));
    const double rhs = (c.kappa1 - c.kappa2) * (std::sinh(c.s_P) - std::sinh(c.l0));
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-8));
    CHECK(r.identity_residual < 1e-8);
}

TEST_CASE("normal comparison needs the upper-curve hypothesis") {
    // Equal curvatures continued past the top point: the bare hypotheses
    // hold but the normal inequality does not.
    ComparisonConfig c;
    c.mode = ComparisonMode::NormalComparison;
    c.s_P = 0.287;
    c.t_P = 0.215;
    c.alpha_P = 0.0;
    c.l0 = 0.0;
    c.kappa1 = c.kappa2 = 1.643;
    auto r = verify_comparison(c);
    REQUIRE(r.accepted);
    CHECK_FALSE(r.pass);
    CHECK(r.worst_margin < -0.1);
    // With kappa2 >= kappa(C) along the upper curve required, this arc pair
    // is outside the hypotheses.
    c.require_kappa_above_circle = true;
    r = verify_comparison(c);
    CHECK_FALSE(r.accepted);
}

TEST_CASE("leaf angles") {
    // Fermi trigonometry: N = (sinh s cosh t X - sinh t X^perp) / sinh rho.
    for (double l : {0.1, 0.8, 2.0}) {
        for (double sigma = -3.0; sigma <= 3.0; sigma += 0.25) {
            const double t = -sigma / std::cosh(l);
            const double oracle = std::atan2(std::sinh(l) * std::cosh(t), -std::sinh(t));
            CHECK(std::abs(wrap_angle(leaf_theta(l, sigma) - oracle)) < 1e-10);
        }
    }
    const auto r = verify_leaf_angles(200, 3);
    CHECK(r.samples == 200);
    CHECK(r.reflection_residual < 1e-10);
    CHECK(r.max_theta_dot < 0.0);
    CHECK(radial_distance_check(200, 3) < 1e-10);
}

TEST_CASE("suite runner") {
    SuiteOptions o;
    o.suite = "kappa";
    o.count = 20;
    o.jobs = 2;
    const auto j = run_suites(o);
    CHECK(j.at("suites").at("kappa_comparison").at("passed") == 20);
    CHECK(j.at("all_passed") == true);
    o.jobs = 1;
    CHECK(run_suites(o).dump() == j.dump());

    o.suite = "normal";
    const auto n = run_suites(o);
    CHECK(n.at("suites").contains("normal_comparison"));
    CHECK(n.at("suites").at("normal_comparison_upper_curve").at("passed") == 20);
    CHECK(n.at("suites").at("normal_comparison_upper_curve").at("informational") == true);

    o.suite = "bogus";
    CHECK_THROWS_AS(run_suites(o), std::invalid_argument);
}
