#include <doctest.h>

#include <cmath>
#include <random>

#include "isohyp/functionals.hpp"
#include "isohyp/symmetrize.hpp"

using namespace isohyp;

namespace {

OccupancyGrid random_grid(std::uint64_t seed, std::size_t nr = 40, std::size_t nt = 64) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    const double r_in = 0.3 + 0.5 * U(rng), r_out = r_in + 0.3 + 0.8 * U(rng);
    const double t0 = -kPi + 2 * kPi * U(rng), width = 0.5 + 2.5 * U(rng);
    const double cx = 0.5 * U(rng), cy = 0.5 * U(rng), rb = 0.3 + 0.4 * U(rng);
    return rasterize(nr, nt, 2.5, [&](double r, double th) {
        double dth = std::remainder(th - t0, 2 * kPi);
        const bool annulus = r > r_in && r < r_out && std::abs(dth) < width;
        const double x = r * std::cos(th) - cx, y = r * std::sin(th) - cy;
        return annulus || (x * x + y * y < rb * rb);
    });
}

}  // namespace

TEST_CASE("grid geometry") {
    OccupancyGrid g(10, 8, 2.0);
    CHECK(g.dr() == doctest::Approx(0.2));
    CHECK(g.dtheta() == doctest::Approx(kPi / 4));
    CHECK(g.theta_center(0) == doctest::Approx(-kPi + kPi / 8));
    CHECK(g.empty());
    CHECK_THROWS(OccupancyGrid(10, 7, 1.0));
    CHECK_THROWS(OccupancyGrid(0, 8, 1.0));
}

TEST_CASE("full-disk grid has the ball volume") {
    const auto d = RadialDensity::cosh_power(1);
    for (int n : {2, 3, 5}) {
        const auto g = rasterize(32, 16, 1.5, [](double r, double) { return r < 1.5; });
        CHECK(weighted_volume(g, d, n) == doctest::Approx(ball_volume(n, d, 1.5)).epsilon(1e-12));
    }
}

TEST_CASE("fixed points") {
    const auto d = RadialDensity::cosh_power(1);
    const auto disk = rasterize(20, 32, 2.0, [](double r, double) { return r < 1.3; });
    const auto s = symmetrize(disk, d, 2);
    CHECK(s.data() == disk.data());

    // A cap grid: rows filled symmetrically from theta = 0 outward.
    OccupancyGrid cap(12, 16, 1.0);
    for (std::size_t i = 0; i < cap.nr(); ++i) {
        const std::size_t full = i % 8;
        for (std::size_t k = 0; k < full; ++k) {
            cap.at(i, 7 - k) = 1.0;
            cap.at(i, 8 + k) = 1.0;
        }
        if (full < 8) {
            cap.at(i, 7 - full) = 0.25;
            cap.at(i, 8 + full) = 0.25;
        }
    }
    for (int n : {2, 4}) CHECK(symmetrize(cap, d, n).data() == cap.data());
}

TEST_CASE("volume bookkeeping and idempotence") {
    const auto d = RadialDensity::cosh_power(3);
    for (int n : {2, 3, 4}) {
        for (std::uint64_t seed = 1; seed <= 10; ++seed) {
            const auto g = random_grid(seed);
            const auto s = symmetrize(g, d, n);
            const double v0 = weighted_volume(g, d, n), v1 = weighted_volume(s, d, n);
            CHECK(std::abs(v1 - v0) <= 1e-12 * v0);
            const auto s2 = symmetrize(s, d, n);
            CHECK(s2.data() == s.data());
            for (double v : s.data()) {
                CHECK(v >= 0.0);
                CHECK(v <= 1.0);
            }
        }
    }
}

TEST_CASE("perimeter estimator on disks") {
    // The weighted length of the circle of radius tau about the origin.
    const auto d = RadialDensity::cosh_power(1);
    for (double tau : {0.5, 1.0, 1.7}) {
        const auto g = rasterize(200, 256, 2.5, [&](double r, double) { return r < tau; });
        const double exact = ball_quantities(2, d, tau).Pf;
        CHECK(perimeter_estimate(g, d) == doctest::Approx(exact).epsilon(1e-2));
    }
    // An off-center disk of radius tau has the unweighted length 2 pi sinh tau.
    const AxisTranslation T(0.6);
    const DiskPoint c = T.apply({0, 0});
    const auto g = rasterize(200, 256, 2.5, [&](double r, double th) {
        return dist(from_polar(r, th), c) < 0.9;
    });
    CHECK(perimeter_estimate(g, RadialDensity::cosh_power(0)) ==
          doctest::Approx(2 * kPi * std::sinh(0.9)).epsilon(1e-2));
}

TEST_CASE("perimeter estimator on a symmetrized off-center disk") {
    // A disk centered on the positive e1 axis is its own symmetrization. The rearranged rows are
    // sharp, so this guards against the staircase bias of row-wise caps.
    const AxisTranslation T(0.5);
    const DiskPoint c = T.apply({0, 0});
    const auto flat = RadialDensity::cosh_power(0);
    const double exact = 2 * kPi * std::sinh(0.9);
    for (std::size_t scale : {1, 2}) {
        const auto g = rasterize(200 * scale, 256 * scale, 2.5, [&](double r, double th) {
            return dist(from_polar(r, th), c) < 0.9;
        });
        const auto s = symmetrize(g, flat, 2);
        CHECK(perimeter_estimate(s, flat) == doctest::Approx(exact).epsilon(5e-3));
    }
}

TEST_CASE("symmetrization does not increase the planar perimeter") {
    const auto d = RadialDensity::cosh_power(1);
    for (std::uint64_t seed = 100; seed < 110; ++seed) {
        const auto g = random_grid(seed, 480, 768);
        const auto s = symmetrize(g, d, 2);
        const double p0 = perimeter_estimate(g, d), p1 = perimeter_estimate(s, d);
        CHECK(p1 <= p0 * (1 + 1e-2));
    }
}
