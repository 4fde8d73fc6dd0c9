#include "isohyp/generating_curve.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <boost/numeric/odeint.hpp>

#include "isohyp/functionals.hpp"
#include "isohyp/quadrature.hpp"

namespace isohyp {

namespace odeint = boost::numeric::odeint;

void ShootingConfig::validate() const {
    if (n < 2) throw std::invalid_argument("ShootingConfig: n must be >= 2");
    if (!(start_t > 0.0)) throw std::invalid_argument("ShootingConfig: start_t must be positive");
    if (!(max_arclength > 0.0)) throw std::invalid_argument("ShootingConfig: max_arclength must be positive");
    if (!(step_tol > 0.0)) throw std::invalid_argument("ShootingConfig: step_tol must be positive");
    if (!(sample_du > 0.0)) throw std::invalid_argument("ShootingConfig: sample_du must be positive");
    if (orientation != 1 && orientation != -1) throw std::invalid_argument("ShootingConfig: orientation is +1 or -1");
}

double lambda_for_ball(int n, const RadialDensity& d, double tau) {
    if (!(tau > 0.0)) throw std::invalid_argument("lambda_for_ball: tau must be positive");
    return (n - 1) / std::tanh(tau) + d.dh(tau);
}

double normalized_angle(double alpha, int orientation) { return orientation > 0 ? alpha : kPi - alpha; }

namespace {

// Components of N in the {X, X^perp} frame: g(N, X) and g(N, X^perp).
struct RadialFrame {
    double rho = 0.0;
    double sinh_rho = 0.0;
    double nx = 0.0;
    double nxp = 0.0;
};

RadialFrame radial_frame(double s, double t) {
    RadialFrame r;
    r.rho = fermi_radius({s, t});
    r.sinh_rho = std::sinh(r.rho);
    if (r.sinh_rho > 1e-300) {
        r.nx = std::sinh(s) * std::cosh(t) / r.sinh_rho;
        r.nxp = -std::sinh(t) / r.sinh_rho;
    }
    return r;
}

// Width of the band around e1 where the comparison-circle curvature is
// blended with its continuity limit at the start point.
constexpr double kAxisBlend = 1e-4;

double smoothstep(double x) {
    x = std::clamp(x, 0.0, 1.0);
    return x * x * (3.0 - 2.0 * x);
}

struct Local {
    RadialFrame rf;
    MeanCurvatureBreakdown b;
    double ds = 0.0, dt = 0.0, dalpha = 0.0;
    double radial_velocity = 0.0;
};

Local evaluate(double s, double t, double alpha, const ShootingConfig& cfg) {
    Local L;
    const int sigma = cfg.orientation;
    const double ca = std::cos(alpha);
    const double sa = std::sin(alpha);
    L.rf = radial_frame(s, t);
    const double nu_n = sigma * (ca * L.rf.nx - sa * L.rf.nxp);
    L.b.H1 = cfg.density.dh(L.rf.rho) * nu_n;
    const double m = cfg.n - 2;
    const double rhs = cfg.lambda - L.b.H1;
    // Near the start the curve leaves e1 perpendicularly and kappa(C) is
    // 0/0; its limit equals kappa_gamma (the comparison circle osculates).
    const bool start_region = std::abs(s) < kAxisBlend && std::sin(normalized_angle(alpha, sigma)) > 0.9;
    if (start_region) {
        const double w = smoothstep(std::abs(s) / kAxisBlend);
        const double trig = w > 0.0 ? sigma * ca / std::tanh(s) : 0.0;
        L.b.kappa_gamma = (rhs - m * w * trig) / (1.0 + m * (1.0 - w));
        L.b.kappa_C = w * trig + (1.0 - w) * L.b.kappa_gamma;
    } else {
        L.b.kappa_C = sigma * ca / std::tanh(s);
        L.b.kappa_gamma = rhs - m * L.b.kappa_C;
    }
    L.b.Hf = L.b.kappa_gamma + m * L.b.kappa_C + L.b.H1;
    L.ds = sa;
    L.dt = -ca / std::cosh(s);
    L.dalpha = std::tanh(s) * ca - sigma * L.b.kappa_gamma;
    L.radial_velocity = sa * L.rf.nx + ca * L.rf.nxp;
    return L;
}

using State = std::array<double, 6>;  // s, t, alpha, P, G, V

struct System {
    const ShootingConfig& cfg;

    void operator()(const State& x, State& dx, double /*u*/) const {
        const Local L = evaluate(x[0], x[1], x[2], cfg);
        dx[0] = L.ds;
        dx[1] = L.dt;
        dx[2] = L.dalpha;
        const double weight = std::exp(cfg.density.h(L.rf.rho));
        const double sh = std::abs(std::sinh(x[0]));
        const int m = cfg.n - 2;
        dx[3] = weight * std::pow(sh, m);
        dx[4] = weight * std::pow(L.rf.sinh_rho, cfg.n - 1) * L.radial_velocity;
        if (L.rf.sinh_rho > 1e-300) {
            const double ca = std::cos(x[2]);
            const double sa = std::sin(x[2]);
            const double dtheta = (L.rf.nx * ca - L.rf.nxp * sa) / L.rf.sinh_rho;
            const double sin_theta = sh / L.rf.sinh_rho;
            dx[5] = cfg.orientation * std::pow(sin_theta, m) * x[4] * dtheta;
        } else {
            dx[5] = 0.0;
        }
    }
};

CurveState to_curve_state(const State& x, double u) { return {{x[0], x[1]}, x[2], u}; }

enum EventSlot { kXPerp, kMinusX, kPlusX, kAxis, kBand, kWitness, kEscape, kSlots };

double event_value(int slot, const State& x, const ShootingConfig& cfg, double band) {
    const double an = normalized_angle(x[2], cfg.orientation);
    switch (slot) {
    case kXPerp: return an;
    case kMinusX: return an + 0.5 * kPi;
    case kPlusX: return an + 1.5 * kPi;
    case kAxis: return x[0];
    case kBand: return x[0] - band;
    case kWitness: return evaluate(x[0], x[1], x[2], cfg).radial_velocity - cfg.witness_tol;
    case kEscape: return fermi_radius({x[0], x[1]}) - cfg.rho_max;
    default: return 0.0;
    }
}

struct Found {
    int slot;
    double u;
    State x;
    bool rising;
};

// Closure defect: angle between the velocity and the tangent of the circle
// of the same curvature through the point that meets e1 perpendicularly.
double closing_defect(const State& x, const ShootingConfig& cfg) {
    const Local L = evaluate(x[0], x[1], x[2], cfg);
    const double an = normalized_angle(x[2], cfg.orientation);
    const double actual = std::asin(std::clamp(std::cos(an), -1.0, 1.0));
    const double ideal = std::asin(std::clamp(L.b.kappa_gamma * std::tanh(x[0]), -1.0, 1.0));
    return std::abs(actual - ideal);
}

// Completes the revolution integrals from the closure point to e1 along the
// comparison circle, which closes the curve perpendicularly.
void complete_tail(Trajectory& traj, const State& x) {
    const ShootingConfig& cfg = traj.config;
    const CurveState cs = to_curve_state(x, 0.0);
    const DiskPoint p = disk_point(cs);
    const Vec2 v = disk_velocity(cs);
    const ComparisonCircle cc = comparison_circle(p, v);
    const OrientedCircle& c = cc.circle;
    if (cc.underdetermined || c.kind != OrientedCircle::Kind::Circle) {
        traj.closure.landing_t = cs.fermi.t;
        return;
    }
    const Vec2 rel = p.vec() - c.center;
    const double psi0 = std::atan2(rel.y, rel.x);
    const Vec2 tangent_ccw{-std::sin(psi0), std::cos(psi0)};
    const double psi1 = v.dot(tangent_ccw) > 0.0 ? kPi : 0.0;
    const int m = cfg.n - 2;
    auto point_at = [&](double psi) {
        return DiskPoint{c.center.x + c.radius * std::cos(psi), c.radius * std::sin(psi)};
    };
    auto p_integrand = [&](double psi) {
        const DiskPoint q = point_at(psi);
        const FermiCoords f = to_fermi(q);
        const double rho = dist_from_origin(q);
        return std::exp(cfg.density.h(rho)) * std::pow(std::abs(std::sinh(f.s)), m) * conformal_factor(q) *
               c.radius;
    };
    auto v_integrand = [&](double psi) {
        const DiskPoint q = point_at(psi);
        const double rho = dist_from_origin(q);
        const double r2 = q.norm2();
        if (r2 == 0.0) return 0.0;
        const double dx = -c.radius * std::sin(psi);
        const double dy = c.radius * std::cos(psi);
        const double dtheta = (q.x1 * dy - q.x2 * dx) / r2;
        const double sin_theta = std::abs(q.x2) / std::sqrt(r2);
        return std::pow(sin_theta, m) * radial_volume_integral(cfg.n, cfg.density, rho) * dtheta;
    };
    const double sgn = psi1 > psi0 ? 1.0 : -1.0;
    const double lo = std::min(psi0, psi1), hi = std::max(psi0, psi1);
    traj.perimeter_integral += integrate_adaptive(p_integrand, lo, hi, 1e-12).value;
    traj.volume_integral += cfg.orientation * sgn * integrate_adaptive(v_integrand, lo, hi, 1e-12).value;
    const double landing_x = c.center.x + c.radius * std::cos(psi1);
    traj.closure.landing_t = 2.0 * std::atanh(landing_x);
}

}  // namespace

RhsResult rhs(const CurveState& state, const ShootingConfig& cfg) {
    const DiskPoint p = disk_point(state);
    if (!p.inside()) throw DomainError("rhs: state outside the disk");
    const Local L = evaluate(state.fermi.s, state.fermi.t, state.alpha, cfg);
    if (std::abs(state.fermi.s) < 1e-6 && std::abs(std::cos(state.alpha)) > 1e-6 && !std::isfinite(L.b.kappa_C)) {
        throw DomainError("rhs: comparison circle degenerates on the axis");
    }
    return {L.ds, L.dt, L.dalpha, L.b};
}

double radial_velocity(const CurveState& st) {
    const RadialFrame rf = radial_frame(st.fermi.s, st.fermi.t);
    return std::sin(st.alpha) * rf.nx + std::cos(st.alpha) * rf.nxp;
}

double normal_radial_component(const CurveState& st, int orientation) {
    const RadialFrame rf = radial_frame(st.fermi.s, st.fermi.t);
    return orientation * (std::cos(st.alpha) * rf.nx - std::sin(st.alpha) * rf.nxp);
}

DiskPoint disk_point(const CurveState& st) { return from_fermi(st.fermi); }

Vec2 disk_velocity(const CurveState& st) { return direction_from_angle(disk_point(st), st.alpha); }

Trajectory shoot(const ShootingConfig& cfg) {
    cfg.validate();
    Trajectory traj;
    traj.config = cfg;
    traj.closure.closing_angle_defect = std::numeric_limits<double>::quiet_NaN();

    const double t0 = cfg.orientation > 0 ? cfg.start_t : -cfg.start_t;
    State x{0.0, t0, 0.5 * kPi, 0.0, radial_volume_integral(cfg.n, cfg.density, cfg.start_t), 0.0};

    auto record = [&](const State& xs, double u) {
        if (!traj.states.empty() && u <= traj.states.back().u) return;
        const CurveState cs = to_curve_state(xs, u);
        traj.states.push_back(cs);
        const Local L = evaluate(xs[0], xs[1], xs[2], cfg);
        traj.breakdowns.push_back(L.b);
        traj.max_constraint_drift = std::max(traj.max_constraint_drift, std::abs(L.b.Hf - cfg.lambda));
    };
    record(x, 0.0);

    System sys{cfg};
    auto stepper = odeint::make_dense_output(cfg.step_tol, cfg.step_tol, odeint::runge_kutta_dopri5<State>());
    stepper.initialize(x, 0.0, std::min(1e-3, cfg.sample_du));

    double apex = 0.0;
    bool seen_minus_x = false;
    double next_sample = cfg.sample_du;
    std::array<double, kSlots> prev{};
    for (int k = 0; k < kSlots; ++k) prev[k] = event_value(k, x, cfg, 0.0);
    prev[kBand] = 0.0;

    bool done = false;
    while (!done) {
        std::pair<double, double> span;
        try {
            span = stepper.do_step(sys);
        } catch (const std::exception&) {
            traj.termination = Termination::Stiff;
            break;
        }
        const auto [ua, ub] = span;
        if (ub - ua < 1e-14) {
            traj.termination = Termination::Stiff;
            break;
        }
        const State xb = stepper.current_state();
        bool hit_end = ub >= cfg.max_arclength;
        const double u_end = std::min(ub, cfg.max_arclength);

        // locate sign changes inside the step
        const double band = cfg.closure_band_frac * apex;
        std::vector<Found> found;
        State xe;
        if (hit_end) stepper.calc_state(u_end, xe); else xe = xb;
        for (int k = 0; k < kSlots; ++k) {
            if (k == kBand && apex <= 0.0) continue;
            if (k == kWitness && traj.witness_found) continue;
            const double g0 = (k == kBand) ? event_value(k, stepper.previous_state(), cfg, band) : prev[k];
            const double g1 = event_value(k, xe, cfg, band);
            if (g0 == 0.0 || g0 * g1 > 0.0 || std::isnan(g1)) continue;
            double lo = ua, hi = u_end, glo = g0;
            State xm;
            for (int it = 0; it < 200 && hi - lo > 1e-13 * std::max(1.0, std::abs(hi)); ++it) {
                const double mid = 0.5 * (lo + hi);
                stepper.calc_state(mid, xm);
                const double gm = event_value(k, xm, cfg, band);
                if ((gm > 0.0) == (glo > 0.0)) {
                    lo = mid;
                    glo = gm;
                } else {
                    hi = mid;
                }
            }
            stepper.calc_state(hi, xm);
            found.push_back({k, hi, xm, g1 > 0.0});
        }
        std::sort(found.begin(), found.end(), [](const Found& a, const Found& b) { return a.u < b.u; });

        double cut = u_end;
        State xcut = xe;
        for (const Found& f : found) {
            bool terminal = false;
            switch (f.slot) {
            case kXPerp:
                traj.events.push_back({TangentEventKind::HitsXPerp, f.u, to_curve_state(f.x, f.u)});
                break;
            case kMinusX:
                traj.events.push_back({TangentEventKind::HitsMinusX, f.u, to_curve_state(f.x, f.u)});
                if (!f.rising) seen_minus_x = true;
                break;
            case kPlusX:
                traj.events.push_back({TangentEventKind::HitsPlusX, f.u, to_curve_state(f.x, f.u)});
                if (!f.rising && seen_minus_x) {
                    traj.closure.curl_detected = true;
                    traj.termination = Termination::CurlComplete;
                    terminal = true;
                }
                break;
            case kAxis:
                traj.events.push_back({TangentEventKind::AxisCrossing, f.u, to_curve_state(f.x, f.u)});
                traj.termination = Termination::AxisCrossing;
                terminal = true;
                break;
            case kBand:
                if (!f.rising) {
                    const double defect = closing_defect(f.x, cfg);
                    traj.closure.closing_angle_defect = defect;
                    if (defect < cfg.closure_tol) {
                        traj.closure.closed = true;
                        traj.termination = Termination::AxisReturn;
                        terminal = true;
                    }
                }
                break;
            case kWitness:
                if (f.rising && !traj.witness_found) {
                    traj.witness_found = true;
                    traj.witness_u = f.u;
                }
                break;
            case kEscape:
                if (f.rising) {
                    traj.termination = Termination::DomainExit;
                    terminal = true;
                }
                break;
            default: break;
            }
            if (terminal) {
                cut = f.u;
                xcut = f.x;
                done = true;
                break;
            }
        }

        // samples on the uniform grid up to the cut, then the cut itself
        while (next_sample < cut) {
            State xs;
            stepper.calc_state(next_sample, xs);
            for (const Found& f : found) {
                if (f.u < next_sample && f.u > (traj.states.empty() ? 0.0 : traj.states.back().u)) {
                    record(f.x, f.u);
                }
            }
            record(xs, next_sample);
            next_sample += cfg.sample_du;
        }
        for (const Found& f : found) {
            if (f.u <= cut) record(f.x, f.u);
        }
        record(xcut, cut);

        apex = std::max(apex, xcut[0]);
        for (int k = 0; k < kSlots; ++k) prev[k] = event_value(k, xcut, cfg, 0.0);

        if (done) {
            traj.perimeter_integral = xcut[3];
            traj.volume_integral = xcut[5];
            if (traj.closure.closed) complete_tail(traj, xcut);
            break;
        }
        if (hit_end) {
            traj.termination = Termination::MaxArclength;
            traj.perimeter_integral = xcut[3];
            traj.volume_integral = xcut[5];
            break;
        }
    }
    return traj;
}

Classification classify(const Trajectory& traj, double tol) {
    Classification c;
    c.witness_found = traj.witness_found;
    c.witness_u = traj.witness_u;
    const double rho0 = traj.config.start_t;
    for (const CurveState& st : traj.states) {
        c.max_radius_deviation = std::max(c.max_radius_deviation, std::abs(fermi_radius(st.fermi) - rho0));
    }
    // first a0, then the first a1 after it, then the first a2 after that
    bool have0 = false, have1 = false, have2 = false;
    for (const TangentEvent& e : traj.events) {
        if (!have0 && e.kind == TangentEventKind::HitsXPerp) {
            have0 = true;
            c.a0 = e.u;
        } else if (have0 && !have1 && e.kind == TangentEventKind::HitsMinusX) {
            have1 = true;
            c.a1 = e.u;
        } else if (have1 && !have2 && e.kind == TangentEventKind::HitsPlusX) {
            have2 = true;
            c.a2 = e.u;
        }
    }
    c.ordered_triple = have0 && have1 && have2 && c.a0 < c.a1 && c.a1 < c.a2;
    if (c.ordered_triple) {
        c.kind = CurveClass::CurlSequence;
    } else if (traj.closure.closed && c.max_radius_deviation < tol && traj.closure.closing_angle_defect < tol) {
        c.kind = CurveClass::CenteredCircle;
    } else if (traj.termination == Termination::DomainExit) {
        c.kind = CurveClass::Escaped;
    } else if (traj.termination == Termination::AxisReturn || traj.termination == Termination::AxisCrossing) {
        c.kind = CurveClass::AxisReturn;
    } else {
        c.kind = CurveClass::StepLimit;
    }
    return c;
}

std::string to_string(CurveClass c) {
    switch (c) {
    case CurveClass::CenteredCircle: return "CenteredCircle";
    case CurveClass::CurlSequence: return "CurlSequence";
    case CurveClass::Escaped: return "Escaped";
    case CurveClass::StepLimit: return "StepLimit";
    case CurveClass::AxisReturn: return "AxisReturn";
    }
    return "?";
}

std::string to_string(TangentEventKind k) {
    switch (k) {
    case TangentEventKind::HitsXPerp: return "HitsXPerp";
    case TangentEventKind::HitsMinusX: return "HitsMinusX";
    case TangentEventKind::HitsPlusX: return "HitsPlusX";
    case TangentEventKind::AxisCrossing: return "AxisCrossing";
    }
    return "?";
}

std::string to_string(Termination t) {
    switch (t) {
    case Termination::AxisReturn: return "AxisReturn";
    case Termination::AxisCrossing: return "AxisCrossing";
    case Termination::CurlComplete: return "CurlComplete";
    case Termination::DomainExit: return "DomainExit";
    case Termination::MaxArclength: return "MaxArclength";
    case Termination::Stiff: return "Stiff";
    }
    return "?";
}

std::string trajectory_csv(const Trajectory& traj) {
    std::ostringstream os;
    os.precision(17);
    os << "u,s,t,alpha,rho,kappa_gamma,kappa_C,H1,Hf\n";
    for (std::size_t i = 0; i < traj.states.size(); ++i) {
        const CurveState& st = traj.states[i];
        const MeanCurvatureBreakdown& b = traj.breakdowns[i];
        os << st.u << ',' << st.fermi.s << ',' << st.fermi.t << ',' << st.alpha << ',' << fermi_radius(st.fermi)
           << ',' << b.kappa_gamma << ',' << b.kappa_C << ',' << b.H1 << ',' << b.Hf << '\n';
    }
    return os.str();
}

nlohmann::json events_json(const Trajectory& traj) {
    nlohmann::json arr = nlohmann::json::array();
    for (const TangentEvent& e : traj.events) {
        arr.push_back({{"kind", to_string(e.kind)},
                       {"u", e.u},
                       {"s", e.state.fermi.s},
                       {"t", e.state.fermi.t},
                       {"alpha", e.state.alpha}});
    }
    return arr;
}

}  // namespace isohyp
