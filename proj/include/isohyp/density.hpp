#pragma once

// Radial log-densities f = exp(h(d_H(o, x))) with h smooth, even and convex.

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "isohyp/hyperbolic.hpp"

namespace isohyp {

enum class DensityFamily { CoshPower, EvenPolynomial, ScaledQuadratic };

/// h is not normalized: h(0) may be nonzero (EvenPolynomial has no constant
/// term, the others vanish at 0). Comparisons between functionals always use
/// the same density, so the additive constant never matters.
class RadialDensity {
public:
    /// h(s) = p ln cosh(s).
    static RadialDensity cosh_power(int exponent);
    /// h(s) = c[0] s^2 + c[1] s^4 + ...
    static RadialDensity even_polynomial(std::vector<double> coeffs);
    /// h(s) = c s^2.
    static RadialDensity scaled_quadratic(double c);

    DensityFamily family() const { return family_; }
    const std::vector<double>& params() const { return params_; }

    /// d^order h / ds^order at s, order in 0..3.
    double derivative(double s, int order) const;
    double h(double s) const { return derivative(s, 0); }
    double dh(double s) const { return derivative(s, 1); }

    /// f(p) = exp(h(d_H(o, p))).
    double weight_at(DiskPoint p) const;

    std::string describe() const;

private:
    RadialDensity(DensityFamily f, std::vector<double> p) : family_(f), params_(std::move(p)) {}
    DensityFamily family_;
    std::vector<double> params_;
};

struct StrictnessReport {
    bool pass = false;
    double worst_margin = 0.0;  ///< min sampled h''
    double argmin = 0.0;        ///< where the minimum is attained
};

/// Samples h'' on [0, 10] with spacing 1e-3.
StrictnessReport validate_strict(const RadialDensity& d);

/// Mini-syntax "cosh:p", "quad:c", "poly:c2,c4,...".
RadialDensity parse_density(std::string_view spec);

/// {"family": "cosh" | "quad" | "poly" (or the long names), "params": [...]}.
RadialDensity density_from_json(const nlohmann::json& j);
nlohmann::json density_to_json(const RadialDensity& d);

}  // namespace isohyp
