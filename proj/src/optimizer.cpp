#include "isohyp/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

#include "isohyp/quadrature.hpp"

namespace isohyp {

namespace {

const GaussLegendre& rule(int size) {
    thread_local std::map<int, GaussLegendre> cache;
    auto it = cache.find(size);
    if (it == cache.end()) it = cache.emplace(size, GaussLegendre(size, 0.0, 1.0)).first;
    return it->second;
}

int theta_nodes(int K) { return std::max(256, 8 * K + 64); }

// G(r) = int_0^r e^h sinh^(n-1); the integrand is entire, so 64 nodes are
// exact to rounding for the radii that occur.
double radial_primitive(int n, const RadialDensity& d, double r) {
    const GaussLegendre& gl = rule(64);
    double acc = 0.0;
    for (std::size_t i = 0; i < gl.size(); ++i) {
        const double u = r * gl.nodes()[i];
        acc += gl.weights()[i] * std::exp(d.h(u)) * std::pow(std::sinh(u), n - 1);
    }
    return r * acc;
}

struct Evaluation {
    double Pf = 0.0, Vf = 0.0;
    std::vector<double> dP, dV;
};

// Values and the derivatives in a_0..a_{grad_modes - 1}.
Evaluation evaluate(const PolarProfile& p, const RadialDensity& d, int grad_modes) {
    const int n = p.n();
    const int m = n - 2;
    const int K = p.modes();
    const bool with_gradient = grad_modes > 0;
    const double w = sphere_area(n - 2);
    const GaussLegendre& gl = rule(theta_nodes(K));
    Evaluation e;
    if (with_gradient) {
        e.dP.assign(grad_modes, 0.0);
        e.dV.assign(grad_modes, 0.0);
    }
    for (std::size_t i = 0; i < gl.size(); ++i) {
        const double th = kPi * gl.nodes()[i];
        const double wt = kPi * gl.weights()[i];
        const double r = p.rho(th);
        if (!(r > 0.0)) throw DomainError("profile radius must be positive");
        const double dr = p.drho(th);
        const double sh = std::sinh(r), ch = std::cosh(r);
        const double eh = std::exp(d.h(r));
        const double sm = std::pow(std::sin(th), m);
        const double shm = std::pow(sh, m);
        const double W = std::sqrt(dr * dr + sh * sh);
        e.Pf += wt * eh * sm * shm * W;
        e.Vf += wt * sm * radial_primitive(n, d, r);
        if (!with_gradient) continue;
        const double shm1 = m > 0 ? m * std::pow(sh, m - 1) * ch : 0.0;
        const double F_r = eh * sm * ((d.dh(r) * shm + shm1) * W + shm * sh * ch / W);
        const double F_dr = eh * sm * shm * dr / W;
        const double V_r = sm * eh * std::pow(sh, n - 1);
        for (int k = 0; k < grad_modes; ++k) {
            const double c = std::cos(k * th), s = std::sin(k * th);
            e.dP[k] += wt * (F_r * c - F_dr * k * s);
            e.dV[k] += wt * V_r * c;
        }
    }
    e.Pf *= w;
    e.Vf *= w;
    for (double& x : e.dP) x *= w;
    for (double& x : e.dV) x *= w;
    return e;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

bool positive(const PolarProfile& p) {
    try {
        p.validate();
        return true;
    } catch (const DomainError&) {
        return false;
    }
}

}  // namespace

MeanCurvatureBreakdown profile_mean_curvature(const PolarProfile& p, const RadialDensity& d, double theta) {
    if (theta < 0.0 || theta > kPi) throw std::invalid_argument("profile_mean_curvature: theta must lie in [0, pi]");
    const double r = p.rho(theta);
    if (!(r > 0.0)) throw DomainError("profile radius must be positive");
    const double r1 = p.drho(theta), r2 = p.d2rho(theta);
    const double G = std::sinh(r), Gp = std::cosh(r);
    const double W = std::sqrt(r1 * r1 + G * G);
    MeanCurvatureBreakdown b;
    // geodesic curvature of r(theta) in dr^2 + sinh^2(r) dtheta^2
    b.kappa_gamma = (Gp * (2.0 * r1 * r1 + G * G) - G * r2) / (W * W * W);
    if (std::sin(theta) < 1e-7) {
        b.kappa_C = b.kappa_gamma;
    } else {
        const double th2 = std::tanh(0.5 * r);
        const double sech2 = 1.0 - th2 * th2;
        const DiskPoint x{th2 * std::cos(theta), th2 * std::sin(theta)};
        const Vec2 tangent = Vec2{std::cos(theta), std::sin(theta)} * (0.5 * sech2 * r1) +
                             Vec2{-std::sin(theta), std::cos(theta)} * th2;
        const ComparisonCircle cc = comparison_circle(x, tangent);
        if (cc.underdetermined) throw DomainError("profile_mean_curvature: degenerate tangent");
        b.kappa_C = cc.circle.curvature();
    }
    b.H1 = d.dh(r) * G / W;
    b.Hf = b.kappa_gamma + (p.n() - 2) * b.kappa_C + b.H1;
    return b;
}

ProfileGradient gradient(const PolarProfile& p, const RadialDensity& d) {
    const Evaluation e = evaluate(p, d, p.modes() + 1);
    ProfileGradient g;
    const double vv = dot(e.dV, e.dV);
    if (!(vv > 0.0)) throw DomainError("gradient: degenerate volume gradient");
    g.dP = e.dP;
    g.dV = e.dV;
    g.mu = dot(e.dP, e.dV) / vv;
    g.projected.resize(e.dP.size());
    for (std::size_t k = 0; k < e.dP.size(); ++k) g.projected[k] = e.dP[k] - g.mu * e.dV[k];
    g.Pf = e.Pf;
    g.Vf = e.Vf;
    return g;
}

PolarProfile random_profile(int n, double tau, double amplitude, int K, std::uint64_t seed) {
    if (!(tau > 0.0) || amplitude < 0.0 || amplitude >= tau) {
        throw std::invalid_argument("random_profile: need 0 <= amplitude < tau");
    }
    if (K < 1) throw std::invalid_argument("random_profile: need K >= 1");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> a(K + 1, 0.0);
    double total = 0.0;
    for (int k = 1; k <= K; ++k) {
        a[k] = u(rng) / (double(k) * k);
        total += std::abs(a[k]);
    }
    for (int k = 1; k <= K; ++k) a[k] *= amplitude / total;
    a[0] = tau;
    return PolarProfile(std::move(a), n);
}

void project_volume(PolarProfile& p, const RadialDensity& d, double target) {
    for (int it = 0; it < 100; ++it) {
        const Evaluation e = evaluate(p, d, 1);
        const double f = e.Vf - target;
        if (std::abs(f) <= 1e-13 * target) return;
        double step = f / e.dV[0];
        // keep the profile positive
        while (step > 0.5 * p.coeffs()[0]) step *= 0.5;
        p.coeffs()[0] -= step;
    }
    throw DomainError("project_volume: no convergence");
}

void MinimizeConfig::validate() const {
    if (n < 2) throw std::invalid_argument("minimize: n must be >= 2");
    if (!(target_volume > 0.0)) throw std::invalid_argument("minimize: target_volume must be positive");
    if (modes < 1) throw std::invalid_argument("minimize: modes must be >= 1");
    if (max_iters < 0) throw std::invalid_argument("minimize: max_iters must be >= 0");
    if (!(grad_tol > 0.0)) throw std::invalid_argument("minimize: grad_tol must be positive");
    if (init.n() != n) throw std::invalid_argument("minimize: init dimension does not match n");
    init.validate();
}

nlohmann::json to_json(const MinimizeReport& r) {
    return {{"final_coeffs", r.final.coeffs()},
            {"Pf_final", r.Pf_history.empty() ? 0.0 : r.Pf_history.back()},
            {"Vf_drift", r.Vf_drift},
            {"deficit", r.deficit},
            {"nonround_energy", r.nonround_energy},
            {"converged", r.converged},
            {"line_search_failed", r.line_search_failed},
            {"iterations", r.iterations},
            {"grad_norm", r.grad_norm},
            {"mu", r.mu},
            {"hf_spread", r.hf_spread}};
}

std::string pf_history_csv(const MinimizeReport& r) {
    std::ostringstream os;
    os.precision(17);
    os << "iter,Pf\n";
    for (std::size_t i = 0; i < r.Pf_history.size(); ++i) os << i << ',' << r.Pf_history[i] << '\n';
    return os.str();
}

MinimizeReport minimize(const MinimizeConfig& cfg) {
    cfg.validate();
    const RadialDensity& d = cfg.density;
    std::vector<double> a = cfg.init.coeffs();
    a.resize(cfg.modes + 1, 0.0);
    PolarProfile p(std::move(a), cfg.n);
    project_volume(p, d, cfg.target_volume);

    MinimizeReport rep;
    double step = 1.0;
    std::vector<double> prev_x, prev_g;
    for (int it = 0;; ++it) {
        const ProfileGradient g = gradient(p, d);
        rep.Pf_history.push_back(g.Pf);
        rep.mu = g.mu;
        rep.grad_norm = std::sqrt(dot(g.projected, g.projected));
        rep.iterations = it;
        if (rep.grad_norm < cfg.grad_tol) {
            rep.converged = true;
            break;
        }
        if (it >= cfg.max_iters) break;

        // preconditioned descent direction, kept tangent to the volume level set
        std::vector<double> dir(g.projected.size());
        for (std::size_t k = 0; k < dir.size(); ++k) dir[k] = -g.projected[k] / (1.0 + double(k * k));
        const double c = dot(dir, g.dV) / dot(g.dV, g.dV);
        for (std::size_t k = 0; k < dir.size(); ++k) dir[k] -= c * g.dV[k];
        const double slope = dot(g.projected, dir);
        if (!(slope < 0.0)) {
            rep.line_search_failed = true;
            break;
        }

        // Barzilai-Borwein trial step in the preconditioned metric
        if (!prev_x.empty()) {
            double sMs = 0.0, sy = 0.0;
            for (std::size_t k = 0; k < dir.size(); ++k) {
                const double sk = p.coeffs()[k] - prev_x[k];
                sMs += sk * sk * (1.0 + double(k * k));
                sy += sk * (g.projected[k] - prev_g[k]);
            }
            step = sy > 0.0 ? std::clamp(sMs / sy, 1e-8, 1e3) : 2.0 * step;
        }
        prev_x = p.coeffs();
        prev_g = g.projected;

        const double noise = 16.0 * std::numeric_limits<double>::epsilon() * std::abs(g.Pf);
        bool accepted = false;
        for (int ls = 0; ls < 60; ++ls, step *= 0.5) {
            PolarProfile trial = p;
            for (std::size_t k = 0; k < dir.size(); ++k) trial.coeffs()[k] += step * dir[k];
            if (!positive(trial)) continue;
            try {
                project_volume(trial, d, cfg.target_volume);
            } catch (const DomainError&) {
                continue;
            }
            const double P = evaluate(trial, d, 0).Pf;
            // Armijo, with an allowance at the rounding level of Pf so
            // that the iteration can reach gradients below sqrt(eps)
            if (P <= g.Pf + 1e-4 * step * slope + noise) {
                p = std::move(trial);
                accepted = true;
                break;
            }
        }
        if (!accepted) {
            // no sufficient decrease is measurable any more
            rep.line_search_failed = true;
            break;
        }
    }

    rep.final = p;
    const FunctionalResult fr = profile_functionals(p, d);
    rep.Vf_drift = std::abs(fr.Vf - cfg.target_volume) / cfg.target_volume;
    const double tau = ball_radius_for_volume(cfg.n, d, cfg.target_volume);
    rep.deficit = fr.Pf - ball_quantities(cfg.n, d, tau).Pf;
    for (int k = 1; k <= p.modes(); ++k) rep.nonround_energy += p.coeffs()[k] * p.coeffs()[k];
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (int i = 0; i <= 256; ++i) {
        const double hf = profile_mean_curvature(p, d, kPi * i / 256).Hf;
        lo = std::min(lo, hf);
        hi = std::max(hi, hf);
    }
    rep.hf_spread = hi - lo;
    return rep;
}

}  // namespace isohyp
