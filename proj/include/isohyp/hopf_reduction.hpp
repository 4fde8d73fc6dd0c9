#pragma once

// Balls in the rank-one symmetric spaces H_K^m, normalized so the Jacobi
// operator has eigenvalues {0, -1, -4}, and their weighted counterparts in
// H^n with density cosh^(d-1).

#include <string>
#include <vector>

#include "isohyp/density.hpp"

namespace isohyp {

enum class Field { R, C, H, O };

std::string to_string(Field f);
Field parse_field(const std::string& s);

struct SpaceParams {
    Field field = Field::C;
    int m = 2;
    int d = 2;  ///< real dimension of the field
    int n = 4;  ///< real dimension of the space, d * m

    static SpaceParams make(Field field, int m);
    void validate() const;
};

/// cosh^(d-1) as a radial density, i.e. h = (d-1) ln cosh. The real field
/// gives the trivial density and is rejected unless allow_trivial is set.
RadialDensity hopf_density(const SpaceParams& sp, bool allow_trivial = false);

struct HopfBall {
    double P = 0.0;
    double V = 0.0;
};

/// Area and volume of the geodesic ball of radius tau from the Jacobi
/// factor sinh^(n-d)(t) (sinh(2t)/2)^(d-1).
HopfBall ball_direct(const SpaceParams& sp, double tau);

struct Crosscheck {
    SpaceParams space;
    double tau = 0.0;
    double P_direct = 0.0, V_direct = 0.0;
    double P_weighted = 0.0, V_weighted = 0.0;
    double relerr_P = 0.0, relerr_V = 0.0;
};

Crosscheck crosscheck(const SpaceParams& sp, double tau);

/// Columns field,m,n,d,tau,P_direct,V_direct,P_weighted,V_weighted,relerr_P,relerr_V.
std::string crosscheck_csv(const std::vector<Crosscheck>& rows);

}  // namespace isohyp
