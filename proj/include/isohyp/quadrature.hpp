#pragma once

#include <functional>
#include <vector>

namespace isohyp {

struct QuadResult {
    double value = 0.0;
    double error = 0.0;
};

/// Adaptive Gauss-Kronrod (15/31) on [a, b]; rel_tol is relative to the L1
/// norm of the integrand, floored at 1e-13.
QuadResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                              double rel_tol = 1e-13);

/// Gauss-Legendre rule with n nodes mapped to [a, b].
class GaussLegendre {
public:
    GaussLegendre(int n, double a, double b);
    const std::vector<double>& nodes() const { return nodes_; }
    const std::vector<double>& weights() const { return weights_; }
    std::size_t size() const { return nodes_.size(); }

    template <class F>
    double integrate(F&& f) const {
        double acc = 0.0;
        for (std::size_t i = 0; i < nodes_.size(); ++i) acc += weights_[i] * f(nodes_[i]);
        return acc;
    }

private:
    std::vector<double> nodes_;
    std::vector<double> weights_;
};

/// Gamma at a positive integer or half-integer argument (2 * x integral),
/// exact by recursion from Gamma(1) = 1 and Gamma(1/2) = sqrt(pi).
double gamma_half_integer(int twice_x);

/// Area of the unit k-sphere S^k in R^(k+1): 2 pi^((k+1)/2) / Gamma((k+1)/2).
/// sphere_area(0) = 2 (two points), sphere_area(1) = 2 pi.
double sphere_area(int k);

}  // namespace isohyp
