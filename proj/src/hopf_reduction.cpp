#include "isohyp/hopf_reduction.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "isohyp/functionals.hpp"
#include "isohyp/quadrature.hpp"

namespace isohyp {

std::string to_string(Field f) {
    switch (f) {
    case Field::R: return "R";
    case Field::C: return "C";
    case Field::H: return "H";
    case Field::O: return "O";
    }
    return "?";
}

Field parse_field(const std::string& s) {
    if (s == "R") return Field::R;
    if (s == "C") return Field::C;
    if (s == "H") return Field::H;
    if (s == "O") return Field::O;
    throw std::invalid_argument("unknown field: " + s);
}

SpaceParams SpaceParams::make(Field field, int m) {
    SpaceParams sp;
    sp.field = field;
    sp.m = m;
    static constexpr int dims[] = {1, 2, 4, 8};
    sp.d = dims[static_cast<int>(field)];
    sp.n = sp.d * m;
    sp.validate();
    return sp;
}

void SpaceParams::validate() const {
    static constexpr int dims[] = {1, 2, 4, 8};
    if (m < 2) throw std::invalid_argument("SpaceParams: m must be >= 2");
    if (d != dims[static_cast<int>(field)]) throw std::invalid_argument("SpaceParams: d does not match the field");
    if (field == Field::O && m != 2) throw std::invalid_argument("SpaceParams: the octonions only give the Cayley plane (m = 2)");
    if (n != d * m) throw std::invalid_argument("SpaceParams: n must equal d * m");
}

RadialDensity hopf_density(const SpaceParams& sp, bool allow_trivial) {
    sp.validate();
    if (sp.field == Field::R && !allow_trivial) {
        throw std::invalid_argument("hopf_density: the real field gives the trivial, non-strict density");
    }
    return RadialDensity::cosh_power(sp.d - 1);
}

HopfBall ball_direct(const SpaceParams& sp, double tau) {
    sp.validate();
    if (!(tau > 0.0)) throw std::invalid_argument("ball_direct: tau must be positive");
    // n - d directions with eigenvalue -1, d - 1 with eigenvalue -4
    auto jacobi = [&](double t) {
        return std::pow(std::sinh(t), sp.n - sp.d) * std::pow(0.5 * std::sinh(2.0 * t), sp.d - 1);
    };
    const double w = sphere_area(sp.n - 1);
    return {w * jacobi(tau), w * integrate_adaptive(jacobi, 0.0, tau, 1e-13).value};
}

Crosscheck crosscheck(const SpaceParams& sp, double tau) {
    Crosscheck c;
    c.space = sp;
    c.tau = tau;
    const HopfBall direct = ball_direct(sp, tau);
    const BallQuantities weighted = ball_quantities(sp.n, hopf_density(sp, true), tau);
    c.P_direct = direct.P;
    c.V_direct = direct.V;
    c.P_weighted = weighted.Pf;
    c.V_weighted = weighted.Vf;
    c.relerr_P = std::abs(c.P_direct - c.P_weighted) / std::abs(c.P_weighted);
    c.relerr_V = std::abs(c.V_direct - c.V_weighted) / std::abs(c.V_weighted);
    return c;
}

std::string crosscheck_csv(const std::vector<Crosscheck>& rows) {
    std::ostringstream os;
    os.precision(17);
    os << "field,m,n,d,tau,P_direct,V_direct,P_weighted,V_weighted,relerr_P,relerr_V\n";
    for (const Crosscheck& c : rows) {
        os << to_string(c.space.field) << ',' << c.space.m << ',' << c.space.n << ',' << c.space.d << ',' << c.tau
           << ',' << c.P_direct << ',' << c.V_direct << ',' << c.P_weighted << ',' << c.V_weighted << ','
           << c.relerr_P << ',' << c.relerr_V << '\n';
    }
    return os.str();
}

}  // namespace isohyp
