#include "isohyp/symmetrize.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "isohyp/functionals.hpp"
#include "isohyp/quadrature.hpp"

namespace isohyp {

OccupancyGrid::OccupancyGrid(std::size_t nr, std::size_t ntheta, double r_max)
    : nr_(nr), ntheta_(ntheta), r_max_(r_max), occ_(nr * ntheta, 0.0) {
    if (nr == 0 || ntheta < 2 || ntheta % 2 != 0) {
        throw std::invalid_argument("OccupancyGrid: need nr > 0 and an even ntheta >= 2");
    }
    if (!(r_max > 0.0)) throw std::invalid_argument("OccupancyGrid: r_max must be positive");
}

double OccupancyGrid::dtheta() const { return 2.0 * kPi / ntheta_; }

double OccupancyGrid::theta_center(std::size_t j) const { return (j + 0.5) * dtheta() - kPi; }

bool OccupancyGrid::empty() const {
    return std::all_of(occ_.begin(), occ_.end(), [](double v) { return v <= 0.0; });
}

std::vector<double> radial_cell_weights(const OccupancyGrid& g, const RadialDensity& d, int n) {
    std::vector<double> w(g.nr());
    for (std::size_t i = 0; i < g.nr(); ++i) {
        auto f = [&](double u) { return std::exp(d.h(u)) * std::pow(std::sinh(u), n - 1); };
        w[i] = integrate_adaptive(f, i * g.dr(), (i + 1) * g.dr(), 1e-13).value;
    }
    return w;
}

std::vector<double> angular_cell_weights(const OccupancyGrid& g, int n) {
    std::vector<double> a(g.ntheta());
    if (n == 2) {
        std::fill(a.begin(), a.end(), g.dtheta());
        return a;
    }
    const double half = 0.5 * sphere_area(n - 2);
    for (std::size_t j = 0; j < g.ntheta(); ++j) {
        const double lo = -kPi + j * g.dtheta();
        auto f = [&](double th) { return std::pow(std::abs(std::sin(th)), n - 2); };
        a[j] = half * integrate_adaptive(f, lo, lo + g.dtheta(), 1e-13).value;
    }
    return a;
}

double weighted_volume(const OccupancyGrid& g, const RadialDensity& d, int n) {
    const auto W = radial_cell_weights(g, d, n);
    const auto A = angular_cell_weights(g, n);
    double v = 0.0;
    for (std::size_t i = 0; i < g.nr(); ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < g.ntheta(); ++j) row += g.at(i, j) * A[j];
        v += W[i] * row;
    }
    return v;
}

namespace {

// Column pairs symmetric about theta = 0, from the center outward.
std::pair<std::size_t, std::size_t> cap_pair(const OccupancyGrid& g, std::size_t k) {
    const std::size_t c = g.ntheta() / 2;
    return {c - 1 - k, c + k};
}

bool row_is_cap(const OccupancyGrid& g, std::size_t i) {
    bool partial_seen = false;
    for (std::size_t k = 0; k < g.ntheta() / 2; ++k) {
        const auto [l, r] = cap_pair(g, k);
        const double v = g.at(i, l);
        if (v != g.at(i, r) || v < 0.0 || v > 1.0) return false;
        if (partial_seen) {
            if (v != 0.0) return false;
        } else if (v < 1.0) {
            partial_seen = true;
        }
    }
    return true;
}

}  // namespace

OccupancyGrid symmetrize(const OccupancyGrid& g, const RadialDensity& d, int n) {
    (void)d;  // the radial weight is constant on each annulus
    if (n < 2) throw std::invalid_argument("symmetrize: n must be >= 2");
    if (g.empty()) throw std::invalid_argument("symmetrize: empty grid");
    const auto A = angular_cell_weights(g, n);
    OccupancyGrid out = g;
    for (std::size_t i = 0; i < g.nr(); ++i) {
        if (row_is_cap(g, i)) continue;
        double remaining = 0.0;
        for (std::size_t j = 0; j < g.ntheta(); ++j) remaining += g.at(i, j) * A[j];
        for (std::size_t k = 0; k < g.ntheta() / 2; ++k) {
            const auto [l, r] = cap_pair(g, k);
            const double pm = A[l] + A[r];
            double fill;
            if (remaining >= pm) {
                fill = 1.0;
                remaining -= pm;
            } else {
                fill = std::clamp(remaining / pm, 0.0, 1.0);
                remaining = 0.0;
            }
            out.at(i, l) = fill;
            out.at(i, r) = fill;
        }
    }
    return out;
}

namespace {

// Signed angular distance, in cells, from each cell center to the nearest 0.5-crossing of its row.
// Rows without a crossing saturate at +-ntheta. Interpolating this field between rows joins arc
// endpoints directly instead of along the row boundary, which removes the staircase bias of
// rows whose occupancy jumps by several cells.
std::vector<double> row_signed_distance(const OccupancyGrid& g) {
    const std::size_t nr = g.nr(), nt = g.ntheta();
    const double far = double(nt);
    std::vector<double> out(nr * nt);
    std::vector<double> x;
    for (std::size_t i = 0; i < nr; ++i) {
        x.clear();
        for (std::size_t j = 0; j < nt; ++j) {
            const double a = g.at(i, j) - 0.5, b = g.at(i, (j + 1) % nt) - 0.5;
            if ((a >= 0.0) != (b >= 0.0)) x.push_back(double(j) + a / (a - b));
        }
        for (std::size_t j = 0; j < nt; ++j) {
            double best = far;
            if (!x.empty()) {
                // crossings are sorted; the nearest one (cyclically) neighbours the insertion point
                const auto it = std::lower_bound(x.begin(), x.end(), double(j));
                const std::size_t hi = std::size_t(it - x.begin()) % x.size();
                const std::size_t lo = (hi + x.size() - 1) % x.size();
                for (std::size_t k : {lo, hi}) best = std::min(best, std::abs(std::remainder(double(j) - x[k], far)));
            }
            out[i * nt + j] = g.at(i, j) >= 0.5 ? best : -best;
        }
    }
    return out;
}

}  // namespace

double perimeter_estimate(const OccupancyGrid& g, const RadialDensity& d) {
    const std::size_t nr = g.nr(), nt = g.ntheta();
    const double dr = g.dr(), dth = g.dtheta();
    const auto sd = row_signed_distance(g);
    // Row -1 is the antipodal copy of row 0 at negative radius; row nr is empty.
    auto value = [&](long i, std::size_t j) -> double {
        j %= nt;
        if (i < 0) return sd[(j + nt / 2) % nt];
        if (i >= long(nr)) return -double(nt);
        return sd[std::size_t(i) * nt + j];
    };
    struct P {
        double r, th;
    };
    auto seg_length = [&](P a, P b) {
        const double rm = 0.5 * (a.r + b.r);
        const double sh = std::sinh(rm);
        const double drr = b.r - a.r, dt = b.th - a.th;
        return std::sqrt(drr * drr + sh * sh * dt * dt) * std::exp(d.h(std::abs(rm)));
    };
    auto cross = [](P p1, double v1, P p2, double v2) {
        const double f = v1 / (v1 - v2);
        return P{p1.r + f * (p2.r - p1.r), p1.th + f * (p2.th - p1.th)};
    };

    double total = 0.0;
    for (long i = -1; i < long(nr); ++i) {
        for (std::size_t j = 0; j < nt; ++j) {
            if (i == -1 && j >= nt / 2) continue;  // the strip through the origin is covered once
            const double r0 = (i + 0.5) * dr, r1 = (i + 1.5) * dr;
            const double t0 = g.theta_center(j), t1 = t0 + dth;
            const P corner[4] = {{r0, t0}, {r1, t0}, {r1, t1}, {r0, t1}};
            const double v[4] = {value(i, j), value(i + 1, j), value(i + 1, j + 1), value(i, j + 1)};
            bool in[4];
            int count = 0;
            for (int k = 0; k < 4; ++k) count += (in[k] = v[k] >= 0.0);
            if (count == 0 || count == 4) continue;
            P e[4];
            bool has[4];
            for (int k = 0; k < 4; ++k) {
                const int k2 = (k + 1) % 4;
                has[k] = in[k] != in[k2];
                if (has[k]) e[k] = cross(corner[k], v[k], corner[k2], v[k2]);
            }
            const int nedges = has[0] + has[1] + has[2] + has[3];
            if (nedges == 2) {
                P pts[2];
                int m = 0;
                for (int k = 0; k < 4; ++k)
                    if (has[k]) pts[m++] = e[k];
                total += seg_length(pts[0], pts[1]);
            } else {
                // saddle: edges k join corners k and k+1
                const bool center_in = v[0] + v[1] + v[2] + v[3] >= 0.0;
                if (in[0] == center_in) {
                    // corners 1 and 3 are cut off
                    total += seg_length(e[0], e[1]) + seg_length(e[2], e[3]);
                } else {
                    total += seg_length(e[3], e[0]) + seg_length(e[1], e[2]);
                }
            }
        }
    }
    return total;
}

}  // namespace isohyp
