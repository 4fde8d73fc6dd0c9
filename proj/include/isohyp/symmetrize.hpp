#pragma once

// Spherical symmetrization on a polar occupancy grid about the origin.

#include <cstddef>
#include <vector>

#include "isohyp/density.hpp"

namespace isohyp {

/// Cells (i, j) cover r in [i dr, (i+1) dr] and theta in [-pi + j dtheta,
/// -pi + (j+1) dtheta], dr = r_max / nr, dtheta = 2 pi / ntheta. The grid is
/// the meridian half-plane for n >= 3 (rotated about e1) and the disk itself
/// for n = 2.
class OccupancyGrid {
public:
    OccupancyGrid(std::size_t nr, std::size_t ntheta, double r_max);

    std::size_t nr() const { return nr_; }
    std::size_t ntheta() const { return ntheta_; }
    double r_max() const { return r_max_; }
    double dr() const { return r_max_ / nr_; }
    double dtheta() const;
    double r_center(std::size_t i) const { return (i + 0.5) * dr(); }
    double theta_center(std::size_t j) const;

    double& at(std::size_t i, std::size_t j) { return occ_[i * ntheta_ + j]; }
    double at(std::size_t i, std::size_t j) const { return occ_[i * ntheta_ + j]; }
    const std::vector<double>& data() const { return occ_; }

    bool empty() const;

private:
    std::size_t nr_, ntheta_;
    double r_max_;
    std::vector<double> occ_;
};

/// Weighted measures of a cell's radial and angular factors.
std::vector<double> radial_cell_weights(const OccupancyGrid& g, const RadialDensity& d, int n);
std::vector<double> angular_cell_weights(const OccupancyGrid& g, int n);

double weighted_volume(const OccupancyGrid& g, const RadialDensity& d, int n);

/// Rearranges every annulus into a cap centered on the positive e1 axis with
/// the same weighted measure. Rows already in cap form are left untouched.
OccupancyGrid symmetrize(const OccupancyGrid& g, const RadialDensity& d, int n);

/// Weighted boundary length (n = 2) of the 1/2 level set of the occupancy,
/// traced by marching squares on the cell centers.
double perimeter_estimate(const OccupancyGrid& g, const RadialDensity& d);

/// Fills each cell with the fraction of a sub-sampled 4x4 pattern inside
/// the set {(r, theta) : inside(r, theta)}.
template <class F>
OccupancyGrid rasterize(std::size_t nr, std::size_t ntheta, double r_max, F&& inside) {
    OccupancyGrid g(nr, ntheta, r_max);
    constexpr int kSub = 4;
    for (std::size_t i = 0; i < nr; ++i) {
        for (std::size_t j = 0; j < ntheta; ++j) {
            int hits = 0;
            for (int a = 0; a < kSub; ++a) {
                for (int b = 0; b < kSub; ++b) {
                    const double r = (i + (a + 0.5) / kSub) * g.dr();
                    const double th = g.theta_center(j) + ((b + 0.5) / kSub - 0.5) * g.dtheta();
                    if (inside(r, th)) ++hits;
                }
            }
            g.at(i, j) = double(hits) / (kSub * kSub);
        }
    }
    return g;
}

}  // namespace isohyp
