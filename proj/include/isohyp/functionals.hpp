#pragma once

// Weighted volume and perimeter of sets of revolution about e1 in H^n,
// described by their generating data in the plane.

#include <functional>
#include <vector>

#include <json.hpp>

#include "isohyp/density.hpp"

namespace isohyp {

struct Trajectory;

struct BallQuantities {
    double Pf = 0.0;
    double Vf = 0.0;
    double Hf = 0.0;
};

/// int_0^rho e^h(u) sinh^(n-1)(u) du.
double radial_volume_integral(int n, const RadialDensity& d, double rho);

BallQuantities ball_quantities(int n, const RadialDensity& d, double tau);
double ball_volume(int n, const RadialDensity& d, double tau);
/// Inverse of tau -> Vf(ball(tau)), relative accuracy 1e-10.
double ball_radius_for_volume(int n, const RadialDensity& d, double v);

/// rho(theta) = a0 + sum_k a_k cos(k theta), theta in [0, pi], extended
/// evenly across e1.
class PolarProfile {
public:
    PolarProfile() = default;
    PolarProfile(std::vector<double> coeffs, int n);

    /// Cosine projection of f on [0, pi] onto modes 0..K.
    static PolarProfile from_function(const std::function<double(double)>& f, int K, int n);
    static PolarProfile constant(double tau, int n, int K = 0);

    double rho(double theta) const;
    double drho(double theta) const;
    double d2rho(double theta) const;

    const std::vector<double>& coeffs() const { return coeffs_; }
    std::vector<double>& coeffs() { return coeffs_; }
    int n() const { return n_; }
    int modes() const { return static_cast<int>(coeffs_.size()) - 1; }

    /// Throws DomainError unless rho > 0 on a 2048-point grid.
    void validate() const;

private:
    std::vector<double> coeffs_{1.0};
    int n_ = 2;
};

struct FunctionalResult {
    double Pf = 0.0;
    double Vf = 0.0;
    double err = 0.0;  ///< combined quadrature error estimate
};

nlohmann::json to_json(const FunctionalResult& r);

FunctionalResult profile_functionals(const PolarProfile& p, const RadialDensity& d);

/// Polar profile about the origin of the geodesic ball of radius tau whose
/// center sits at signed distance c along e1.
double translated_ball_rho(double tau, double c, double theta);
PolarProfile translated_ball_profile(int n, double tau, double c, int K);

/// Functionals of the hypersurface generated by a closed trajectory.
/// Throws std::invalid_argument for open trajectories.
FunctionalResult trajectory_functionals(const Trajectory& traj);

}  // namespace isohyp
