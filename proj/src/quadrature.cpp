#include "isohyp/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/legendre.hpp>

#include "isohyp/hyperbolic.hpp"

namespace isohyp {

QuadResult integrate_adaptive(const std::function<double(double)>& f, double a, double b, double rel_tol) {
    QuadResult r;
    if (a == b) return r;
    // Below ~1e-13 the Kronrod-Gauss difference is rounding noise and the
    // recursion would run to its depth limit.
    const double tol = std::max(rel_tol, 1e-13);
    // Boost compares an error estimate taken on [-1, 1] against a tolerance scaled by the interval
    // half-width, so intervals shorter than about 1e-2 never terminate. Integrate over [0, 1].
    const double w = b - a;
    auto g = [&](double x) { return w * f(a + w * x); };
    double l1 = 0.0;
    r.value = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(g, 0.0, 1.0, 15, tol, &r.error, &l1);
    return r;
}

GaussLegendre::GaussLegendre(int n, double a, double b) {
    if (n < 1) throw std::invalid_argument("GaussLegendre: n must be positive");
    // boost returns the non-negative zeros in increasing order
    const std::vector<double> zeros = boost::math::legendre_p_zeros<double>(n);
    std::vector<double> x;
    std::vector<double> w;
    for (double z : zeros) {
        const double dp = boost::math::legendre_p_prime(n, z);
        const double wz = 2.0 / ((1.0 - z * z) * dp * dp);
        if (z == 0.0) {
            x.push_back(0.0);
            w.push_back(wz);
        } else {
            x.push_back(z);
            w.push_back(wz);
            x.push_back(-z);
            w.push_back(wz);
        }
    }
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    nodes_.reserve(x.size());
    weights_.reserve(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        nodes_.push_back(mid + half * x[i]);
        weights_.push_back(half * w[i]);
    }
}

double gamma_half_integer(int twice_x) {
    if (twice_x <= 0) throw std::invalid_argument("gamma_half_integer: argument must be positive");
    double g = (twice_x % 2 == 0) ? 1.0 : std::sqrt(kPi);
    int k = (twice_x % 2 == 0) ? 2 : 1;  // twice the current argument
    while (k < twice_x) {
        g *= 0.5 * k;
        k += 2;
    }
    return g;
}

double sphere_area(int k) {
    if (k < 0) throw std::invalid_argument("sphere_area: dimension must be >= 0");
    return 2.0 * std::pow(kPi, 0.5 * (k + 1)) / gamma_half_integer(k + 1);
}

}  // namespace isohyp
