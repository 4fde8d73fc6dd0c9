#pragma once

// Poincare disk model of the hyperbolic plane: points, Fermi coordinates
// about the horizontal axis e1, the {X, X^perp} and {N, N^perp} frames,
// curvature conversions and comparison circles.

#include <complex>
#include <optional>
#include <stdexcept>

namespace isohyp {

inline constexpr double kPi = 3.14159265358979323846;

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2 operator+(Vec2 b) const { return {x + b.x, y + b.y}; }
    Vec2 operator-(Vec2 b) const { return {x - b.x, y - b.y}; }
    Vec2 operator-() const { return {-x, -y}; }
    Vec2 operator*(double a) const { return {a * x, a * y}; }
    double dot(Vec2 b) const { return x * b.x + y * b.y; }
    double norm2() const { return x * x + y * y; }
    double norm() const;
    Vec2 normalized() const;
    /// Counterclockwise rotation by pi/2.
    Vec2 rot90() const { return {-y, x}; }
};

inline Vec2 operator*(double a, Vec2 v) { return v * a; }

/// Euclidean coordinates of a point of the open unit disk.
struct DiskPoint {
    double x1 = 0.0;
    double x2 = 0.0;

    Vec2 vec() const { return {x1, x2}; }
    double norm2() const { return x1 * x1 + x2 * x2; }
    bool inside() const { return norm2() < 1.0; }
};

/// s: signed distance to the axis e1 (positive in the upper half-disk).
/// t: signed distance along e1 from the origin to the foot of the
/// perpendicular through the point.
struct FermiCoords {
    double s = 0.0;
    double t = 0.0;
};

class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

void require_inside(DiskPoint p, const char* what);

/// Factor 2/(1-r^2): hyperbolic length = factor * Euclidean length.
double conformal_factor(DiskPoint p);

double dist(DiskPoint p, DiskPoint q);
double dist_from_origin(DiskPoint p);

/// Euclidean coordinates of the point at distance rho from the origin in
/// polar direction theta (measured from e1).
DiskPoint from_polar(double rho, double theta);

FermiCoords to_fermi(DiskPoint p);
DiskPoint from_fermi(FermiCoords f);

/// Hyperbolic distance of the point with the given Fermi coordinates from
/// the origin; cosh(rho) = cosh(s) cosh(t).
double fermi_radius(FermiCoords f);

/// Metric g_H applied to two tangent vectors given by disk components.
double metric(DiskPoint p, Vec2 a, Vec2 b);

/// Frames at a point. All vectors are g_H-unit and expressed by their disk
/// (Euclidean) components.
struct FramePacket {
    Vec2 X;           ///< gradient of the signed distance s to e1
    Vec2 Xperp;       ///< counterclockwise rotation of X
    Vec2 N;           ///< radial unit field; zero at the origin
    bool n_defined = false;
    double theta = 0.0;  ///< angle of N from X^perp toward X, in (-pi, pi]
    double K1 = 0.0;     ///< curvature of the hypercycle leaf, tanh(s)
};

FramePacket frame_at(DiskPoint p);

/// Euclidean unit direction of the tangent making angle alpha with X^perp
/// (measured toward X) at p.
Vec2 direction_from_angle(DiskPoint p, double alpha);

/// Angle in (-pi, pi] from X^perp toward X of a Euclidean tangent direction.
double angle_from_direction(DiskPoint p, Vec2 dir);

/// Wrap an angle into (-pi, pi].
double wrap_angle(double a);

/// Signed hyperbolic curvature of a curve through p with Euclidean signed
/// curvature kappa_flat, with respect to the unit outward Euclidean normal
/// nu_flat.
double curvature_convert(double kappa_flat, DiskPoint p, Vec2 nu_flat);

/// Hypercycle leaf curvature in terms of the Euclidean height l of the leaf
/// on e2: 2l/(1+l^2).
double leaf_curvature_from_height(double l);

/// An oriented Euclidean circle or line. Orientation +1 means the circle is
/// traversed counterclockwise.
struct OrientedCircle {
    enum class Kind { Circle, Line };
    Kind kind = Kind::Circle;
    Vec2 center;          ///< Circle: Euclidean center
    double radius = 0.0;  ///< Circle: Euclidean radius
    int orientation = 1;  ///< Circle: +1 counterclockwise, -1 clockwise
    Vec2 base;            ///< Line: a point on the line
    Vec2 direction;       ///< Line: unit direction of traversal

    /// Hyperbolic signed curvature with respect to the left-hand normal of
    /// the traversal direction.
    double curvature() const;

    /// Hyperbolic center for a circle lying inside the disk with center on
    /// e1, expressed as the Euclidean point on e1.
    std::optional<DiskPoint> hyperbolic_center_on_axis() const;
};

struct ComparisonCircle {
    OrientedCircle circle;
    /// True on e1 when the tangent is perpendicular to e1 (tangency does
    /// not determine the circle) or parallel to e1 (zero radius).
    bool underdetermined = false;
};

/// The circle (or line) through p tangent to `tangent` whose Euclidean
/// center lies on e1, oriented along `tangent`.
ComparisonCircle comparison_circle(DiskPoint p, Vec2 tangent);

/// cos(alpha)/tanh(s), the comparison-circle curvature from the right
/// triangle spanned by the point, its foot on e1 and the circle center.
double comparison_curvature_trig(double alpha, double s);

/// Mobius map z -> (a z + b)/(c z + d) with real coefficients, acting on
/// the complexified disk coordinate.
class AxisTranslation {
public:
    AxisTranslation() = default;
    /// Translation by hyperbolic distance c along e1 (toward +e1 for c > 0).
    explicit AxisTranslation(double c);

    DiskPoint apply(DiskPoint p) const;
    /// Push forward of a tangent vector at p.
    Vec2 push(DiskPoint p, Vec2 v) const;
    AxisTranslation compose(const AxisTranslation& inner) const;
    AxisTranslation inverse() const;
    double distance() const;

private:
    AxisTranslation(double a, double b, double c, double d) : a_(a), b_(b), c_(c), d_(d) {}
    double a_ = 1.0, b_ = 0.0, c_ = 0.0, d_ = 1.0;
};

inline DiskPoint reflect_e1(DiskPoint p) { return {p.x1, -p.x2}; }
inline DiskPoint reflect_e2(DiskPoint p) { return {-p.x1, p.x2}; }

}  // namespace isohyp
