#pragma once

// Volume-constrained minimization of the weighted perimeter over even
// polar profiles rho(theta) = sum_k a_k cos(k theta), revolved about e1.

#include <cstdint>
#include <vector>

#include <json.hpp>

#include "isohyp/density.hpp"
#include "isohyp/functionals.hpp"
#include "isohyp/generating_curve.hpp"

namespace isohyp {

/// Mean curvature pieces of the revolved profile at polar angle theta in
/// [0, pi]; on e1 kappa(C) takes its limit kappa_gamma.
MeanCurvatureBreakdown profile_mean_curvature(const PolarProfile& p, const RadialDensity& d, double theta);

struct ProfileGradient {
    std::vector<double> dP;         ///< d Pf / d a_k
    std::vector<double> dV;         ///< d Vf / d a_k
    double mu = 0.0;                ///< <dP, dV> / |dV|^2
    std::vector<double> projected;  ///< dP - mu dV
    double Pf = 0.0, Vf = 0.0;      ///< values at the profile (Gauss-Legendre)
};

/// Coefficient-space gradient with the volume direction projected out.
ProfileGradient gradient(const PolarProfile& p, const RadialDensity& d);

/// Ball of radius tau plus a random cosine perturbation with sup norm at
/// most `amplitude`; mode k is weighted 1/k^2.
PolarProfile random_profile(int n, double tau, double amplitude, int K, std::uint64_t seed);

struct MinimizeConfig {
    int n = 3;
    RadialDensity density = RadialDensity::cosh_power(1);
    double target_volume = 1.0;
    int modes = 16;
    PolarProfile init;
    int max_iters = 2000;
    double grad_tol = 1e-8;
    std::uint64_t seed = 0;

    void validate() const;
};

struct MinimizeReport {
    PolarProfile final;
    std::vector<double> Pf_history;
    double Vf_drift = 0.0;   ///< relative, from adaptive quadrature
    double deficit = 0.0;    ///< Pf(final) - Pf(ball of the target volume)
    double nonround_energy = 0.0;
    bool converged = false;
    bool line_search_failed = false;
    int iterations = 0;
    double grad_norm = 0.0;
    double mu = 0.0;
    double hf_spread = 0.0;  ///< max - min of Hf over theta at the end
};

nlohmann::json to_json(const MinimizeReport& r);
/// CSV with columns iter,Pf.
std::string pf_history_csv(const MinimizeReport& r);

MinimizeReport minimize(const MinimizeConfig& cfg);

/// Rescales a_0 until Vf matches the target to 1e-13 relative.
void project_volume(PolarProfile& p, const RadialDensity& d, double target);

}  // namespace isohyp
