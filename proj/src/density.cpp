#include "isohyp/density.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace isohyp {

RadialDensity RadialDensity::cosh_power(int exponent) {
    if (exponent < 0) throw std::invalid_argument("cosh_power: exponent must be >= 0");
    return RadialDensity(DensityFamily::CoshPower, {static_cast<double>(exponent)});
}

RadialDensity RadialDensity::even_polynomial(std::vector<double> coeffs) {
    if (coeffs.empty()) throw std::invalid_argument("even_polynomial: need at least one coefficient");
    return RadialDensity(DensityFamily::EvenPolynomial, std::move(coeffs));
}

RadialDensity RadialDensity::scaled_quadratic(double c) {
    if (c < 0.0) throw std::invalid_argument("scaled_quadratic: c must be >= 0");
    return RadialDensity(DensityFamily::ScaledQuadratic, {c});
}

double RadialDensity::derivative(double s, int order) const {
    if (order < 0 || order > 3) throw std::invalid_argument("derivative order must be in 0..3");
    switch (family_) {
    case DensityFamily::CoshPower: {
        const double p = params_[0];
        const double a = std::abs(s);
        switch (order) {
        case 0:
            // ln cosh without overflow
            return p * (a + std::log1p(std::exp(-2.0 * a)) - std::log(2.0));
        case 1:
            return p * std::tanh(s);
        case 2: {
            const double sech = 1.0 / std::cosh(s);
            return p * sech * sech;
        }
        default: {
            const double sech = 1.0 / std::cosh(s);
            return -2.0 * p * sech * sech * std::tanh(s);
        }
        }
    }
    case DensityFamily::ScaledQuadratic: {
        const double c = params_[0];
        switch (order) {
        case 0: return c * s * s;
        case 1: return 2.0 * c * s;
        case 2: return 2.0 * c;
        default: return 0.0;
        }
    }
    case DensityFamily::EvenPolynomial: {
        // sum_k c_k s^(2k), k = 1..K
        double acc = 0.0;
        for (std::size_t i = 0; i < params_.size(); ++i) {
            const int e = 2 * static_cast<int>(i + 1);
            if (e < order) continue;
            double fall = 1.0;
            for (int j = 0; j < order; ++j) fall *= (e - j);
            acc += params_[i] * fall * std::pow(s, e - order);
        }
        return acc;
    }
    }
    return 0.0;
}

double RadialDensity::weight_at(DiskPoint p) const { return std::exp(h(dist_from_origin(p))); }

std::string RadialDensity::describe() const {
    std::ostringstream os;
    switch (family_) {
    case DensityFamily::CoshPower: os << "cosh:" << static_cast<int>(params_[0]); break;
    case DensityFamily::ScaledQuadratic: os << "quad:" << params_[0]; break;
    case DensityFamily::EvenPolynomial:
        os << "poly:";
        for (std::size_t i = 0; i < params_.size(); ++i) os << (i ? "," : "") << params_[i];
        break;
    }
    return os.str();
}

StrictnessReport validate_strict(const RadialDensity& d) {
    StrictnessReport r;
    r.worst_margin = d.derivative(0.0, 2);
    r.argmin = 0.0;
    constexpr int kSamples = 10000;
    for (int i = 1; i <= kSamples; ++i) {
        const double s = 1e-3 * i;
        const double v = d.derivative(s, 2);
        if (v < r.worst_margin) {
            r.worst_margin = v;
            r.argmin = s;
        }
    }
    r.pass = r.worst_margin > 0.0;
    return r;
}

namespace {

std::vector<double> parse_numbers(std::string_view text) {
    std::vector<double> out;
    std::string buf(text);
    std::istringstream is(buf);
    std::string tok;
    while (std::getline(is, tok, ',')) {
        std::size_t used = 0;
        const double v = std::stod(tok, &used);
        if (used != tok.size()) throw std::invalid_argument("bad number in density spec: " + tok);
        out.push_back(v);
    }
    return out;
}

RadialDensity make(std::string_view family, const std::vector<double>& params) {
    if (family == "cosh" || family == "CoshPower") {
        if (params.size() != 1 || params[0] != std::floor(params[0])) {
            throw std::invalid_argument("cosh density takes one integer exponent");
        }
        return RadialDensity::cosh_power(static_cast<int>(params[0]));
    }
    if (family == "quad" || family == "ScaledQuadratic") {
        if (params.size() != 1) throw std::invalid_argument("quad density takes one coefficient");
        return RadialDensity::scaled_quadratic(params[0]);
    }
    if (family == "poly" || family == "EvenPolynomial") {
        return RadialDensity::even_polynomial(params);
    }
    throw std::invalid_argument("unknown density family: " + std::string(family));
}

}  // namespace

RadialDensity parse_density(std::string_view spec) {
    const auto colon = spec.find(':');
    if (colon == std::string_view::npos) throw std::invalid_argument("density spec needs family:params");
    return make(spec.substr(0, colon), parse_numbers(spec.substr(colon + 1)));
}

RadialDensity density_from_json(const nlohmann::json& j) {
    const auto family = j.at("family").get<std::string>();
    std::vector<double> params;
    const auto& p = j.at("params");
    if (p.is_array()) {
        params = p.get<std::vector<double>>();
    } else {
        params.push_back(p.get<double>());
    }
    return make(family, params);
}

nlohmann::json density_to_json(const RadialDensity& d) {
    static constexpr const char* names[] = {"cosh", "poly", "quad"};
    return {{"family", names[static_cast<int>(d.family())]}, {"params", d.params()}};
}

}  // namespace isohyp
