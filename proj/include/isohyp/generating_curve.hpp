#pragma once

// Generating curves of spherically symmetric hypersurfaces with constant
// weighted mean curvature, integrated in Fermi coordinates about e1.
//
// The curve is parametrized by hyperbolic arclength u and described by its
// Fermi coordinates (s, t) and the angle alpha of its velocity measured from
// X^perp toward X:
//
//   s'     = sin(alpha)
//   t'     = -cos(alpha) / cosh(s)
//   alpha' = tanh(s) cos(alpha) - sigma * kappa_gamma
//
// where sigma = +1 for counterclockwise traversal and kappa_gamma is solved
// from the weighted mean curvature constraint
//
//   lambda = kappa_gamma + (n - 2) kappa(C) + h'(rho) g_H(nu, N).

#include <string>
#include <vector>

#include <json.hpp>

#include "isohyp/density.hpp"
#include "isohyp/hyperbolic.hpp"

namespace isohyp {

struct ShootingConfig {
    int n = 2;
    RadialDensity density = RadialDensity::cosh_power(1);
    double lambda = 0.0;
    double start_t = 1.0;        ///< Fermi t of the start point on e1, > 0
    double step_tol = 1e-10;     ///< local error tolerance (abs and rel)
    double max_arclength = 50.0;
    /// +1: start at (0, start_t) heading along X, counterclockwise.
    /// -1: mirror image across e2, start at (0, -start_t), clockwise.
    int orientation = 1;
    double sample_du = 1e-2;     ///< maximal spacing of recorded states
    double rho_max = 20.0;       ///< distance from o counted as escape
    /// Closure is tested where the curve, heading back to e1, enters the band
    /// s < closure_band_frac * (apex height).
    double closure_band_frac = 0.05;
    double closure_tol = 1e-6;
    double witness_tol = 1e-9;

    void validate() const;
};

struct MeanCurvatureBreakdown {
    double kappa_gamma = 0.0;
    double kappa_C = 0.0;
    double H1 = 0.0;
    double Hf = 0.0;  ///< kappa_gamma + (n-2) kappa_C + H1
};

struct CurveState {
    FermiCoords fermi;
    double alpha = 0.0;  ///< continuous lift of the tangent angle
    double u = 0.0;      ///< arclength
};

enum class TangentEventKind { HitsXPerp, HitsMinusX, HitsPlusX, AxisCrossing };

struct TangentEvent {
    TangentEventKind kind;
    double u = 0.0;
    CurveState state;
};

enum class Termination { AxisReturn, AxisCrossing, CurlComplete, DomainExit, MaxArclength, Stiff };

struct Closure {
    bool closed = false;
    double closing_angle_defect = 0.0;  ///< radians; NaN if never tested
    bool curl_detected = false;
    double landing_t = 0.0;             ///< Fermi t where the closing circle meets e1
};

struct Trajectory {
    ShootingConfig config;
    std::vector<CurveState> states;
    std::vector<MeanCurvatureBreakdown> breakdowns;  ///< parallel to states
    std::vector<TangentEvent> events;
    Closure closure;
    Termination termination = Termination::MaxArclength;
    bool witness_found = false;   ///< g_H(N, velocity) > witness_tol somewhere
    double witness_u = 0.0;       ///< first such arclength
    double max_constraint_drift = 0.0;
    /// Revolution integrals along the curve (completed to e1 when closed):
    /// P = int e^h sinh^(n-2)(s) du and V = int sin^(n-2)(theta) G(rho) dtheta.
    double perimeter_integral = 0.0;
    double volume_integral = 0.0;
};

/// lambda of the centered ball of radius tau: (n-1) coth(tau) + h'(tau).
double lambda_for_ball(int n, const RadialDensity& d, double tau);

/// Orientation-normalized angle: alpha for counterclockwise curves,
/// pi - alpha for clockwise (mirrored) ones.
double normalized_angle(double alpha, int orientation);

struct RhsResult {
    double ds = 0.0;
    double dt = 0.0;
    double dalpha = 0.0;
    MeanCurvatureBreakdown breakdown;
};

RhsResult rhs(const CurveState& state, const ShootingConfig& cfg);

/// g_H(N, velocity) for a curve state; the radial monotonicity quantity.
double radial_velocity(const CurveState& state);

/// g_H(nu, N) with nu the outward normal for the given orientation.
double normal_radial_component(const CurveState& state, int orientation);

DiskPoint disk_point(const CurveState& state);
/// Euclidean unit velocity of the curve at the state.
Vec2 disk_velocity(const CurveState& state);

Trajectory shoot(const ShootingConfig& cfg);

enum class CurveClass { CenteredCircle, CurlSequence, Escaped, StepLimit, AxisReturn };

struct Classification {
    CurveClass kind = CurveClass::StepLimit;
    bool ordered_triple = false;
    double a0 = 0.0, a1 = 0.0, a2 = 0.0;
    bool witness_found = false;
    double witness_u = 0.0;
    double max_radius_deviation = 0.0;
};

Classification classify(const Trajectory& traj, double tol = 1e-6);

std::string to_string(CurveClass c);
std::string to_string(TangentEventKind k);
std::string to_string(Termination t);

/// CSV with columns u,s,t,alpha,rho,kappa_gamma,kappa_C,H1,Hf.
std::string trajectory_csv(const Trajectory& traj);
nlohmann::json events_json(const Trajectory& traj);

}  // namespace isohyp
