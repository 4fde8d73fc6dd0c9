#include <doctest.h>

#include <cmath>

#include "isohyp/functionals.hpp"
#include "isohyp/generating_curve.hpp"

using namespace isohyp;

namespace {

ShootingConfig ball_config(int n, double tau, double lambda_rel = 1.0, int p = 1) {
    ShootingConfig cfg;
    cfg.n = n;
    cfg.density = RadialDensity::cosh_power(p);
    cfg.start_t = tau;
    cfg.lambda = lambda_rel * lambda_for_ball(n, cfg.density, tau);
    return cfg;
}

// Weighted mean curvature rebuilt from sampled disk positions alone:
// Euclidean curvature by second differences, then the conformal change.
double hf_from_positions(const CurveState& a, const CurveState& b, const CurveState& c,
                         const ShootingConfig& cfg) {
    const DiskPoint pa = disk_point(a), pb = disk_point(b), pc = disk_point(c);
    const double h1 = b.u - a.u, h2 = c.u - b.u;
    const Vec2 d1 = (pc.vec() - pa.vec()) * (1.0 / (h1 + h2));
    const Vec2 d2 = ((pc.vec() - pb.vec()) * (1.0 / h2) - (pb.vec() - pa.vec()) * (1.0 / h1)) * (2.0 / (h1 + h2));
    const double speed = d1.norm();
    const double kflat = (d1.x * d2.y - d1.y * d2.x) / (speed * speed * speed);
    const Vec2 T = d1 * (1.0 / speed);
    const Vec2 nu{T.y, -T.x};  // outward for counterclockwise traversal
    const double kg = curvature_convert(kflat, pb, nu);
    const double kc = comparison_circle(pb, T).circle.curvature();
    const double rho = dist_from_origin(pb);
    const double nun = nu.dot(pb.vec()) / pb.vec().norm();
    return kg + (cfg.n - 2) * kc + cfg.density.dh(rho) * nun;
}

}  // namespace

TEST_CASE("ball mean curvature") {
    const auto d = RadialDensity::cosh_power(1);
    CHECK(lambda_for_ball(2, d, 1.0) == doctest::Approx(1 / std::tanh(1.0) + std::tanh(1.0)));
    CHECK(lambda_for_ball(2, RadialDensity::cosh_power(3), 30.0) == doctest::Approx(4.0));
    for (int n = 2; n <= 6; ++n) {
        for (double tau : {0.3, 1.1, 2.4}) {
            const auto dd = RadialDensity::scaled_quadratic(0.05 * n);
            CHECK(lambda_for_ball(n, dd, tau) == doctest::Approx(ball_quantities(n, dd, tau).Hf).epsilon(1e-14));
        }
    }
    CHECK_THROWS(lambda_for_ball(3, d, 0.0));
}

TEST_CASE("rhs on the centered circle") {
    for (int n : {2, 3, 5}) {
        const double tau = 0.9;
        const auto cfg = ball_config(n, tau);
        // A point on the circle, heading counterclockwise: the velocity is
        // perpendicular to N; the angle runs clockwise, so alpha = theta - pi/2.
        const DiskPoint p = from_polar(tau, 1.1);
        const double theta = frame_at(p).theta;
        const CurveState st{to_fermi(p), theta - kPi / 2, 0.0};
        const auto r = rhs(st, cfg);
        CHECK(r.breakdown.kappa_gamma == doctest::Approx(1 / std::tanh(tau)).epsilon(1e-12));
        CHECK(r.breakdown.kappa_C == doctest::Approx(1 / std::tanh(tau)).epsilon(1e-12));
        CHECK(r.breakdown.H1 == doctest::Approx(std::tanh(tau)).epsilon(1e-12));
        CHECK(r.breakdown.Hf == doctest::Approx(cfg.lambda).epsilon(1e-14));
        CHECK(std::abs(radial_velocity(st)) < 1e-12);
        CHECK(normal_radial_component(st, 1) == doctest::Approx(1.0));
    }
}

TEST_CASE("rhs at the start point") {
    for (int n : {2, 3, 4}) {
        auto cfg = ball_config(n, 1.3, 1.07);
        const CurveState st{{0.0, 1.3}, kPi / 2, 0.0};
        const auto r = rhs(st, cfg);
        const double expect = (cfg.lambda - cfg.density.dh(1.3)) / (n - 1);
        CHECK(r.breakdown.kappa_gamma == doctest::Approx(expect).epsilon(1e-12));
        CHECK(r.breakdown.kappa_C == doctest::Approx(expect).epsilon(1e-12));
        CHECK(r.ds == doctest::Approx(1.0));
        CHECK(std::abs(r.dt) < 1e-15);
    }
    // n = 2: no comparison-circle term; alpha' = K1 cos(alpha) - kappa.
    auto cfg = ball_config(2, 1.0, 1.2);
    const CurveState st{{0.4, 0.3}, 0.7, 0.0};
    const auto r = rhs(st, cfg);
    CHECK(r.breakdown.Hf == doctest::Approx(r.breakdown.kappa_gamma + r.breakdown.H1));
    CHECK(r.dalpha == doctest::Approx(std::tanh(0.4) * std::cos(0.7) - r.breakdown.kappa_gamma));
}

TEST_CASE("centered circles close") {
    for (int n : {2, 3, 4}) {
        for (double tau : {0.5, 1.0, 2.0}) {
            const auto tr = shoot(ball_config(n, tau));
            const auto c = classify(tr);
            CHECK(c.kind == CurveClass::CenteredCircle);
            CHECK(c.max_radius_deviation < 1e-6);
            CHECK(tr.closure.closed);
            CHECK(std::abs(tr.closure.closing_angle_defect) < 1e-6);
            CHECK(tr.closure.landing_t == doctest::Approx(-tau).epsilon(1e-6));
            CHECK(tr.max_constraint_drift < 1e-10);
            for (std::size_t i = 1; i < tr.states.size(); ++i) {
                CHECK(tr.states[i].u > tr.states[i - 1].u);
                CHECK(tr.states[i].u - tr.states[i - 1].u <= tr.config.sample_du * (1 + 1e-12));
            }
        }
    }
}

TEST_CASE("perturbed lambda curls") {
    const auto tr = shoot(ball_config(3, 1.0, 1.1));
    const auto c = classify(tr);
    REQUIRE(c.kind == CurveClass::CurlSequence);
    CHECK(c.ordered_triple);
    CHECK(0 < c.a0);
    CHECK(c.a0 < c.a1);
    CHECK(c.a1 < c.a2);
    CHECK(c.witness_found);
    CHECK(c.witness_u <= c.a2 + 1e-9);
    // The witness is a genuine radial increase.
    bool increase = false;
    for (const auto& st : tr.states) {
        if (st.u <= c.a2 && radial_velocity(st) > 0) increase = true;
    }
    CHECK(increase);
    // Events are localized on their target angles.
    for (const auto& e : tr.events) {
        const double a = e.state.alpha;
        if (e.kind == TangentEventKind::HitsXPerp) CHECK(std::abs(std::sin(a)) < 1e-9);
        if (e.kind == TangentEventKind::HitsMinusX) CHECK(std::abs(std::sin(a) + 1) < 1e-9);
        if (e.kind == TangentEventKind::HitsPlusX) CHECK(std::abs(std::sin(a) - 1) < 1e-9);
    }
}

TEST_CASE("mirror symmetry") {
    auto cfg = ball_config(3, 1.0, 1.05);
    cfg.max_arclength = 2.5;
    const auto a = shoot(cfg);
    cfg.orientation = -1;
    const auto b = shoot(cfg);
    // Both runs record the same uniform u grid; compare states at equal u.
    std::size_t j = 0;
    int matched = 0;
    for (const auto& sa : a.states) {
        while (j < b.states.size() && b.states[j].u < sa.u) ++j;
        if (j == b.states.size() || b.states[j].u != sa.u) continue;
        const auto& sb = b.states[j];
        CHECK(std::abs(sa.fermi.s - sb.fermi.s) < 1e-8);
        CHECK(std::abs(sa.fermi.t + sb.fermi.t) < 1e-8);
        CHECK(std::abs(normalized_angle(sb.alpha, -1) - sa.alpha) < 1e-8);
        ++matched;
    }
    CHECK(matched >= 200);
}

TEST_CASE("truncated runs hit the step limit") {
    auto cfg = ball_config(3, 1.0, 1.1);
    cfg.max_arclength = 0.5;
    const auto tr = shoot(cfg);
    CHECK(tr.termination == Termination::MaxArclength);
    CHECK(classify(tr).kind == CurveClass::StepLimit);
}

TEST_CASE("constraint holds when rebuilt from positions") {
    for (int n : {2, 3, 4}) {
        for (double rel : {0.9, 1.0, 1.1}) {
            auto cfg = ball_config(n, 1.0, rel);
            cfg.sample_du = 1e-4;
            cfg.max_arclength = 3.0;
            // Dense-output interpolation error is amplified by 1/h^2 in the
            // second difference, so the curve is integrated more tightly.
            cfg.step_tol = 1e-12;
            const auto tr = shoot(cfg);
            double worst = 0.0;
            for (std::size_t i = 1; i + 1 < tr.states.size(); i += 37) {
                if (tr.states[i].fermi.s < 1e-2) continue;
                const double h1 = tr.states[i].u - tr.states[i - 1].u, h2 = tr.states[i + 1].u - tr.states[i].u;
                if (std::abs(h1 - cfg.sample_du) > 1e-3 * cfg.sample_du ||
                    std::abs(h2 - cfg.sample_du) > 1e-3 * cfg.sample_du) {
                    continue;  // a step endpoint sits between grid points
                }
                const double hf = hf_from_positions(tr.states[i - 1], tr.states[i], tr.states[i + 1], cfg);
                worst = std::max(worst, std::abs(hf - cfg.lambda));
            }
            CHECK(worst < 1e-4);
        }
    }
}

TEST_CASE("first-event curvature data at the start") {
    // For lambda at or above the ball value kappa_gamma(0) = kappa(C_0) > 1,
    // and kappa_gamma is stationary at u = 0.
    for (double rel : {1.0, 1.05, 1.1}) {
        auto cfg = ball_config(3, 1.0, rel);
        cfg.sample_du = 1e-3;
        cfg.max_arclength = 0.05;
        const auto tr = shoot(cfg);
        const auto& b0 = tr.breakdowns.front();
        CHECK(b0.kappa_gamma >= b0.kappa_C - 1e-12);
        CHECK(b0.kappa_C > 1.0);
        // Even in u by the reflection symmetry across e1: the one-sided
        // slope over the first samples is second order.
        const double slope = (tr.breakdowns[10].kappa_gamma - b0.kappa_gamma) / tr.states[10].u;
        CHECK(std::abs(slope) < 1e-1);
    }
}

TEST_CASE("comparison-circle centers move monotonically in quadrant II") {
    auto cfg = ball_config(3, 1.0, 1.1);
    cfg.sample_du = 1e-3;
    const auto tr = shoot(cfg);
    double prev = std::nan("");
    int checked = 0;
    for (std::size_t i = 0; i < tr.states.size(); ++i) {
        const auto& st = tr.states[i];
        const auto& b = tr.breakdowns[i];
        const double a = normalized_angle(st.alpha, cfg.orientation);
        const bool quad2 = a >= 0 && a <= kPi / 2 && st.fermi.s > 1e-3;
        if (!quad2 || !(b.kappa_gamma >= b.kappa_C && b.kappa_C > 1.0)) {
            prev = std::nan("");
            continue;
        }
        const auto c = comparison_circle(disk_point(st), disk_velocity(st)).circle.hyperbolic_center_on_axis();
        if (!c) {
            prev = std::nan("");
            continue;
        }
        if (!std::isnan(prev)) {
            CHECK(c->x1 >= prev - 1e-8);
            ++checked;
        }
        prev = c->x1;
    }
    CHECK(checked > 10);
}

TEST_CASE("exports") {
    auto cfg = ball_config(3, 1.0);
    cfg.max_arclength = 0.2;
    const auto tr = shoot(cfg);
    const std::string csv = trajectory_csv(tr);
    CHECK(csv.rfind("u,s,t,alpha,rho,kappa_gamma,kappa_C,H1,Hf\n", 0) == 0);
    const auto j = events_json(tr);
    CHECK(j.is_array());
    CHECK(to_string(CurveClass::CenteredCircle) == "CenteredCircle");
    CHECK(to_string(TangentEventKind::HitsMinusX) == "HitsMinusX");
}

TEST_CASE("config validation") {
    ShootingConfig cfg;
    cfg.start_t = -1.0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg.start_t = 1.0;
    cfg.orientation = 0;
    CHECK_THROWS_AS(shoot(cfg), std::invalid_argument);
}
