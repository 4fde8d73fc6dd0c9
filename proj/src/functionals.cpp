#include "isohyp/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "isohyp/generating_curve.hpp"
#include "isohyp/quadrature.hpp"

namespace isohyp {

namespace {

void require_n(int n) {
    if (n < 2) throw std::invalid_argument("dimension n must be >= 2");
}

}  // namespace

double radial_volume_integral(int n, const RadialDensity& d, double rho) {
    require_n(n);
    if (rho <= 0.0) return 0.0;
    auto f = [&](double u) { return std::exp(d.h(u)) * std::pow(std::sinh(u), n - 1); };
    return integrate_adaptive(f, 0.0, rho, 1e-13).value;
}

BallQuantities ball_quantities(int n, const RadialDensity& d, double tau) {
    require_n(n);
    if (!(tau > 0.0)) throw std::invalid_argument("ball_quantities: tau must be positive");
    const double w = sphere_area(n - 1);
    BallQuantities b;
    b.Pf = w * std::pow(std::sinh(tau), n - 1) * std::exp(d.h(tau));
    b.Vf = w * radial_volume_integral(n, d, tau);
    b.Hf = (n - 1) / std::tanh(tau) + d.dh(tau);
    return b;
}

double ball_volume(int n, const RadialDensity& d, double tau) {
    return sphere_area(n - 1) * radial_volume_integral(n, d, tau);
}

double ball_radius_for_volume(int n, const RadialDensity& d, double v) {
    require_n(n);
    if (!(v > 0.0) || !std::isfinite(v)) throw std::invalid_argument("ball_radius_for_volume: v must be positive");
    double lo = 0.0, hi = 1.0;
    while (ball_volume(n, d, hi) < v) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e3) throw std::domain_error("ball_radius_for_volume: volume out of range");
    }
    double tau = 0.5 * (lo + hi);
    for (int it = 0; it < 200; ++it) {
        const double f = ball_volume(n, d, tau) - v;
        if (std::abs(f) <= 1e-13 * v) break;
        if (f > 0.0) hi = tau; else lo = tau;
        const double pf = sphere_area(n - 1) * std::pow(std::sinh(tau), n - 1) * std::exp(d.h(tau));
        double next = tau - f / pf;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (std::abs(next - tau) <= 1e-16 * tau) {
            tau = next;
            break;
        }
        tau = next;
    }
    return tau;
}

PolarProfile::PolarProfile(std::vector<double> coeffs, int n) : coeffs_(std::move(coeffs)), n_(n) {
    require_n(n);
    if (coeffs_.empty()) throw std::invalid_argument("PolarProfile: need at least a0");
}

PolarProfile PolarProfile::from_function(const std::function<double(double)>& f, int K, int n) {
    if (K < 0) throw std::invalid_argument("PolarProfile: K must be >= 0");
    const GaussLegendre gl(std::max(256, 4 * K + 64), 0.0, kPi);
    std::vector<double> a(K + 1, 0.0);
    std::vector<double> vals(gl.size());
    for (std::size_t i = 0; i < gl.size(); ++i) vals[i] = f(gl.nodes()[i]);
    for (int k = 0; k <= K; ++k) {
        double acc = 0.0;
        for (std::size_t i = 0; i < gl.size(); ++i) acc += gl.weights()[i] * vals[i] * std::cos(k * gl.nodes()[i]);
        a[k] = (k == 0 ? 1.0 : 2.0) * acc / kPi;
    }
    return PolarProfile(std::move(a), n);
}

PolarProfile PolarProfile::constant(double tau, int n, int K) {
    std::vector<double> a(K + 1, 0.0);
    a[0] = tau;
    return PolarProfile(std::move(a), n);
}

double PolarProfile::rho(double theta) const {
    double r = coeffs_[0];
    for (std::size_t k = 1; k < coeffs_.size(); ++k) r += coeffs_[k] * std::cos(k * theta);
    return r;
}

double PolarProfile::drho(double theta) const {
    double r = 0.0;
    for (std::size_t k = 1; k < coeffs_.size(); ++k) r -= k * coeffs_[k] * std::sin(k * theta);
    return r;
}

double PolarProfile::d2rho(double theta) const {
    double r = 0.0;
    for (std::size_t k = 1; k < coeffs_.size(); ++k) r -= double(k * k) * coeffs_[k] * std::cos(k * theta);
    return r;
}

void PolarProfile::validate() const {
    constexpr int kGrid = 2048;
    for (int i = 0; i < kGrid; ++i) {
        const double th = kPi * i / (kGrid - 1);
        const double r = rho(th);
        if (!(r > 0.0) || !std::isfinite(r)) throw DomainError("PolarProfile: rho must be positive");
    }
}

nlohmann::json to_json(const FunctionalResult& r) { return {{"Pf", r.Pf}, {"Vf", r.Vf}, {"err", r.err}}; }

FunctionalResult profile_functionals(const PolarProfile& p, const RadialDensity& d) {
    p.validate();
    const int n = p.n();
    const int m = n - 2;
    const double w = sphere_area(n - 2);
    auto perim = [&](double th) {
        const double r = p.rho(th);
        const double dr = p.drho(th);
        const double sh = std::sinh(r);
        return std::exp(d.h(r)) * std::pow(sh * std::sin(th), m) * std::sqrt(dr * dr + sh * sh);
    };
    auto vol = [&](double th) { return std::pow(std::sin(th), m) * radial_volume_integral(n, d, p.rho(th)); };
    const QuadResult P = integrate_adaptive(perim, 0.0, kPi, 1e-13);
    const QuadResult V = integrate_adaptive(vol, 0.0, kPi, 1e-13);
    return {w * P.value, w * V.value, w * (P.error + V.error)};
}

double translated_ball_rho(double tau, double c, double theta) {
    const double A = std::cosh(c);
    const double B = std::sinh(c) * std::cos(theta);
    return std::atanh(B / A) + std::acosh(std::cosh(tau) / std::sqrt(A * A - B * B));
}

PolarProfile translated_ball_profile(int n, double tau, double c, int K) {
    if (!(tau > 0.0)) throw std::invalid_argument("translated_ball_profile: tau must be positive");
    if (std::abs(c) >= tau) throw std::invalid_argument("translated_ball_profile: ball must contain the origin");
    return PolarProfile::from_function([&](double th) { return translated_ball_rho(tau, c, th); }, K, n);
}

FunctionalResult trajectory_functionals(const Trajectory& traj) {
    if (!traj.closure.closed) throw std::invalid_argument("trajectory_functionals: trajectory is not closed");
    const double w = sphere_area(traj.config.n - 2);
    return {w * traj.perimeter_integral, w * traj.volume_integral, w * traj.config.step_tol *
                                                                      (traj.perimeter_integral + std::abs(traj.volume_integral))};
}

}  // namespace isohyp
