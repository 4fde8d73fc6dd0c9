#pragma once

// Randomized numerical checks of the comparison lemmas behind the
// isoperimetric argument, reported as sign and ordering margins.

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "isohyp/density.hpp"
#include "isohyp/generating_curve.hpp"
#include "isohyp/hyperbolic.hpp"

namespace isohyp {

// ---------------------------------------------------------------------------
// Normal derivative of h(d(., O)) along a Euclidean circle centered on e2.

struct H1CircleConfig {
    double y = 0.0;        ///< Euclidean height of the circle center (0, y)
    double tau_e = 0.5;    ///< Euclidean radius
    double o_tilde = 0.0;  ///< pole O = (-o_tilde, 0)
    RadialDensity density = RadialDensity::cosh_power(1);
    int samples = 64;

    void validate() const;
};

nlohmann::json to_json(const H1CircleConfig& c);

struct H1Report {
    double min_margin = 0.0;  ///< min of -H1' over the sampled (0, L]
    double h1pp0 = 0.0;       ///< H1''(0)
    double h1p_L = 0.0;       ///< H1'(L)
    double max_abs_h1p = 0.0;
    double tol = 0.0;         ///< 1e-9 plus the finite-difference error bound
    bool equality_case = false;
    bool pass = false;
};

/// H1 as a function of the Euclidean angle phi in [0, pi/2]; phi = 0 is
/// (tau_e, y) and phi = pi/2 the top point.
double h1_circle_value(const H1CircleConfig& cfg, double phi);

H1Report verify_h1_circle(const H1CircleConfig& cfg);

// ---------------------------------------------------------------------------
// Curvature in the {X, X^perp} frame: -kappa = beta' - K1 cos(beta).

struct FrameCurvatureReport {
    double max_residual = 0.0;
    int samples = 0;
};

/// Euclidean circle traversed counterclockwise; needs to lie in the
/// closed upper half-disk.
FrameCurvatureReport verify_formula_k_circle(Vec2 center, double radius, double fd_step = 1e-4);
/// Hypercycle leaf at Fermi height l traversed along X^perp.
FrameCurvatureReport verify_formula_k_leaf(double l, double fd_step = 1e-4);
/// Geodesic through (0, t0) orthogonal to e1 traversed along X.
FrameCurvatureReport verify_formula_k_geodesic(double t0, double fd_step = 1e-4);
/// Trajectory sampled with spacing fd_step (states with uniform neighbors).
FrameCurvatureReport verify_formula_k_trajectory(const Trajectory& traj);

// ---------------------------------------------------------------------------
// Hyperbolic center of the comparison circle for quadrant II tangents.

struct CenterDraw {
    FermiCoords point;
    double alpha = 0.0;
    double center_x1 = 0.0;     ///< Euclidean first coordinate of the center
    double trig_residual = 0.0; ///< |tanh(l) cos(alpha) - sin(alpha) sinh(s)|
};

/// Checks one point/tangent; returns false if the tangent violates the
/// hypothesis g(N, tangent) <= 0 or the comparison circle has no center.
bool center_draw(FermiCoords p, double alpha, CenterDraw& out);

struct CenterReport {
    int draws = 0;
    int passed = 0;
    int redraws = 0;
    double worst_x1 = 0.0;
    double worst_trig = 0.0;
    double pass_fraction() const { return draws ? double(passed) / draws : 0.0; }
};

CenterReport verify_center_C(int count, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Comparison of two constant-curvature graphical arcs sharing an endpoint.

enum class ComparisonMode { KappaComparison, CircleComparison, NormalComparison };

std::string to_string(ComparisonMode m);

struct ComparisonConfig {
    ComparisonMode mode = ComparisonMode::KappaComparison;
    /// Shared endpoint P (Fermi) and tangent angle there.
    double s_P = 1.0, t_P = 0.0, alpha_P = 0.0;
    /// Common starting leaf height.
    double l0 = 0.0;
    /// Constant curvatures of eta1 and eta2 (kappa1 >= kappa2).
    double kappa1 = 1.5, kappa2 = 1.5;
    double tol = 1e-9;
    int samples = 64;
    /// NormalComparison only: also require kappa2 >= kappa(C) along eta2,
    /// a property of the upper curve that the bare hypotheses do not imply.
    bool require_kappa_above_circle = false;
};

nlohmann::json to_json(const ComparisonConfig& c);

struct ComparisonReport {
    bool accepted = false;  ///< hypotheses hold for the constructed arcs
    std::string rejection;
    bool pass = false;
    bool equality = false;   ///< both sides agree within tol everywhere
    bool strict = false;     ///< strict inequality observed where expected
    double worst_margin = 0.0;       ///< min over samples of (rhs - lhs)
    double identity_residual = 0.0;  ///< integrated-identity check (kappa mode)
    double alpha1_l0 = 0.0, alpha2_l0 = 0.0;
};

ComparisonReport verify_comparison(const ComparisonConfig& cfg);

/// kappa(C) from the Euclidean construction against cos(alpha)/tanh(s),
/// worst absolute discrepancy over `count` random quadrant II draws.
double law_of_cosines_check(int count, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Angle of N along hypercycle leaves and the radial distance identity.

/// Angle of N from X^perp toward X at arclength sigma along the leaf at
/// height l, measured in the X^perp direction from e2.
double leaf_theta(double l, double sigma);

struct LeafReport {
    double reflection_residual = 0.0;  ///< max |theta(-s) - (pi - theta(s))|
    double max_theta_dot = 0.0;        ///< largest sampled d theta / d sigma
    int samples = 0;
};

LeafReport verify_leaf_angles(int count, std::uint64_t seed);

/// max |tanh(rho) - tanh(s)/cos(beta)| with cos(beta) = g(N, X).
double radial_distance_check(int count, std::uint64_t seed);

// ---------------------------------------------------------------------------

struct SuiteOptions {
    std::string suite = "all";  ///< all, h1, formula_k, center, kappa, circle, normal, leaf
    std::uint64_t seed = 7;
    int count = 200;
    int jobs = 1;
};

/// Runs the requested randomized suites; JSON with per-lemma pass counts,
/// worst margins and failing configurations.
nlohmann::json run_suites(const SuiteOptions& opt);

}  // namespace isohyp
