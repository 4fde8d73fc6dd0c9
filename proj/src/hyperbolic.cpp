#include "isohyp/hyperbolic.hpp"

#include <cmath>
#include <string>

namespace isohyp {

double Vec2::norm() const { return std::hypot(x, y); }

Vec2 Vec2::normalized() const {
    const double n = norm();
    return {x / n, y / n};
}

void require_inside(DiskPoint p, const char* what) {
    if (!(p.norm2() < 1.0)) {
        throw DomainError(std::string(what) + ": point outside the open unit disk");
    }
}

double conformal_factor(DiskPoint p) { return 2.0 / (1.0 - p.norm2()); }

double dist(DiskPoint p, DiskPoint q) {
    require_inside(p, "dist");
    require_inside(q, "dist");
    const double chord = std::hypot(p.x1 - q.x1, p.x2 - q.x2);
    return 2.0 * std::asinh(chord / std::sqrt((1.0 - p.norm2()) * (1.0 - q.norm2())));
}

double dist_from_origin(DiskPoint p) {
    require_inside(p, "dist_from_origin");
    return 2.0 * std::atanh(std::sqrt(p.norm2()));
}

DiskPoint from_polar(double rho, double theta) {
    const double r = std::tanh(0.5 * rho);
    return {r * std::cos(theta), r * std::sin(theta)};
}

FermiCoords to_fermi(DiskPoint p) {
    require_inside(p, "to_fermi");
    // hyperboloid coordinates (X0, X1, X2) = ((1+r^2), 2x1, 2x2)/(1-r^2)
    const double w = 1.0 - p.norm2();
    const double X1 = 2.0 * p.x1 / w;
    const double X2 = 2.0 * p.x2 / w;
    const double s = std::asinh(X2);
    const double t = std::asinh(X1 / std::cosh(s));
    return {s, t};
}

DiskPoint from_fermi(FermiCoords f) {
    const double cs = std::cosh(f.s);
    const double X0 = cs * std::cosh(f.t);
    const double X1 = cs * std::sinh(f.t);
    const double X2 = std::sinh(f.s);
    return {X1 / (1.0 + X0), X2 / (1.0 + X0)};
}

double fermi_radius(FermiCoords f) {
    // acosh(cosh s cosh t) loses accuracy near the origin; use
    // sinh^2(rho) = cosh^2 s cosh^2 t - 1 = sinh^2 s + cosh^2 s sinh^2 t.
    const double ss = std::sinh(f.s);
    const double st = std::cosh(f.s) * std::sinh(f.t);
    return std::asinh(std::sqrt(ss * ss + st * st));
}

double metric(DiskPoint p, Vec2 a, Vec2 b) {
    const double w = 1.0 - p.norm2();
    return 4.0 / (w * w) * a.dot(b);
}

namespace {

// Euclidean unit direction of X = grad(s); from sinh(s) = 2 x2 / (1 - r^2).
Vec2 unit_X(DiskPoint p) {
    const Vec2 g{2.0 * p.x1 * p.x2, 1.0 - p.x1 * p.x1 + p.x2 * p.x2};
    return g.normalized();
}

}  // namespace

FramePacket frame_at(DiskPoint p) {
    require_inside(p, "frame_at");
    const double scale = 0.5 * (1.0 - p.norm2());
    const Vec2 ux = unit_X(p);
    FramePacket f;
    f.X = ux * scale;
    f.Xperp = ux.rot90() * scale;
    f.K1 = std::tanh(to_fermi(p).s);
    const double r = std::sqrt(p.norm2());
    if (r > 0.0) {
        const Vec2 un{p.x1 / r, p.x2 / r};
        f.N = un * scale;
        f.n_defined = true;
        f.theta = std::atan2(un.dot(ux), un.dot(ux.rot90()));
        if (f.theta == -kPi) f.theta = kPi;
    }
    return f;
}

Vec2 direction_from_angle(DiskPoint p, double alpha) {
    const Vec2 ux = unit_X(p);
    return ux.rot90() * std::cos(alpha) + ux * std::sin(alpha);
}

double angle_from_direction(DiskPoint p, Vec2 dir) {
    const Vec2 ux = unit_X(p);
    double a = std::atan2(dir.dot(ux), dir.dot(ux.rot90()));
    if (a == -kPi) a = kPi;
    return a;
}

double wrap_angle(double a) {
    a = std::remainder(a, 2.0 * kPi);
    if (a <= -kPi) a += 2.0 * kPi;
    return a;
}

double curvature_convert(double kappa_flat, DiskPoint p, Vec2 nu_flat) {
    require_inside(p, "curvature_convert");
    return 0.5 * (1.0 - p.norm2()) * kappa_flat + p.vec().dot(nu_flat);
}

double leaf_curvature_from_height(double l) { return 2.0 * l / (1.0 + l * l); }

double OrientedCircle::curvature() const {
    if (kind == Kind::Line) {
        // kappa_flat = 0 and the outward normal is the right-hand normal.
        return -base.dot(direction.rot90());
    }
    // (1 - |x0|^2 + tau0^2)/(2 tau0), rewritten through a point of the
    // circle so that huge nearly-straight circles do not cancel.
    return orientation * (1.0 + base.norm2() - 2.0 * base.dot(center)) / (2.0 * radius);
}

std::optional<DiskPoint> OrientedCircle::hyperbolic_center_on_axis() const {
    if (kind != Kind::Circle || std::abs(center.y) > 1e-14) return std::nullopt;
    const double lo = center.x - radius;
    const double hi = center.x + radius;
    if (!(lo > -1.0 && hi < 1.0)) return std::nullopt;
    const double tc = std::atanh(lo) + std::atanh(hi);  // midpoint of 2 atanh(.)
    return DiskPoint{std::tanh(0.5 * tc), 0.0};
}

ComparisonCircle comparison_circle(DiskPoint p, Vec2 tangent) {
    require_inside(p, "comparison_circle");
    const Vec2 T = tangent.normalized();
    ComparisonCircle out;
    if (std::abs(T.x) < 1e-14) {
        if (p.x2 == 0.0) {
            out.underdetermined = true;
            out.circle.kind = OrientedCircle::Kind::Line;
            out.circle.base = p.vec();
            out.circle.direction = T;
            return out;
        }
        out.circle.kind = OrientedCircle::Kind::Line;
        out.circle.base = p.vec();
        out.circle.direction = T;
        return out;
    }
    if (p.x2 == 0.0) {
        // normal line through p is not e1, so the center is p itself
        out.underdetermined = true;
        out.circle.center = p.vec();
        out.circle.base = p.vec();
        out.circle.radius = 0.0;
        return out;
    }
    const double lam = -p.x2 / T.x;  // center = p + lam * rot90(T)
    out.circle.kind = OrientedCircle::Kind::Circle;
    out.circle.center = {p.x1 + p.x2 * T.y / T.x, 0.0};
    out.circle.radius = std::abs(lam);
    out.circle.orientation = lam > 0.0 ? 1 : -1;
    out.circle.base = p.vec();
    return out;
}

double comparison_curvature_trig(double alpha, double s) { return std::cos(alpha) / std::tanh(s); }

AxisTranslation::AxisTranslation(double c) {
    const double th = std::tanh(0.5 * c);
    a_ = 1.0;
    b_ = th;
    c_ = th;
    d_ = 1.0;
}

DiskPoint AxisTranslation::apply(DiskPoint p) const {
    const std::complex<double> z{p.x1, p.x2};
    const std::complex<double> w = (a_ * z + b_) / (c_ * z + d_);
    return {w.real(), w.imag()};
}

Vec2 AxisTranslation::push(DiskPoint p, Vec2 v) const {
    const std::complex<double> z{p.x1, p.x2};
    const std::complex<double> den = c_ * z + d_;
    const std::complex<double> w = (a_ * d_ - b_ * c_) / (den * den) * std::complex<double>{v.x, v.y};
    return {w.real(), w.imag()};
}

AxisTranslation AxisTranslation::compose(const AxisTranslation& in) const {
    AxisTranslation r(a_ * in.a_ + b_ * in.c_, a_ * in.b_ + b_ * in.d_, c_ * in.a_ + d_ * in.c_,
                      c_ * in.b_ + d_ * in.d_);
    // keep the representative normalized (det = 1 up to the common scale)
    const double sc = 1.0 / std::sqrt(r.a_ * r.d_ - r.b_ * r.c_);
    r.a_ *= sc;
    r.b_ *= sc;
    r.c_ *= sc;
    r.d_ *= sc;
    return r;
}

AxisTranslation AxisTranslation::inverse() const { return {d_, -b_, -c_, a_}; }

double AxisTranslation::distance() const { return 2.0 * std::atanh(b_ / d_); }

}  // namespace isohyp
