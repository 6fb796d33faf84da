#include "cyleig/mobius.hpp"

#include <array>
#include <cmath>

#include "cyleig/errors.hpp"
#include "cyleig/tolerances.hpp"

namespace cyleig {

MobiusTransform::MobiusTransform(Complex a, Complex b) : a_(a), b_(b) {
    const double n2 = std::norm(a_) - std::norm(b_);
    if (n2 <= 0.0) throw DomainError("mobius: |a|^2 - |b|^2 must be positive");
    const double s = 1.0 / std::sqrt(n2);
    a_ *= s;
    b_ *= s;
}

MobiusTransform MobiusTransform::rotation(double theta) {
    return MobiusTransform(std::polar(1.0, theta / 2.0), 0.0);
}

MobiusTransform MobiusTransform::axis_translation(double tau) {
    if (std::abs(tau) >= 1.0) throw DomainError("mobius: |tau| must be < 1");
    const double a = 1.0 / std::sqrt(1.0 - tau * tau);
    return MobiusTransform(a, tau * a);
}

Complex MobiusTransform::operator()(Complex z) const {
    const Complex den = std::conj(b_) * z + std::conj(a_);
    if (std::abs(den) < 1e-14) throw DomainError("mobius: singular evaluation");
    return (a_ * z + b_) / den;
}

MobiusTransform MobiusTransform::compose(const MobiusTransform& o) const {
    return MobiusTransform(a_ * o.a_ + b_ * std::conj(o.b_), a_ * o.b_ + b_ * std::conj(o.a_));
}

MobiusTransform MobiusTransform::inverse() const {
    return MobiusTransform(std::conj(a_), -b_);
}

double MobiusTransform::normalization_residual() const {
    return std::abs(std::norm(a_) - std::norm(b_) - 1.0);
}

MobiusTransform MobiusTransform::from_boundary_points(const double (&src)[3], const double (&dst)[3]) {
    // M = (dst frame)^{-1} * (src frame) where the frame map sends the three
    // points to 0, 1, inf; work in GL(2,C) and project to SU(1,1) at the end.
    auto frame = [](const double (&t)[3]) {
        const Complex z1 = std::polar(1.0, t[0]);
        const Complex z2 = std::polar(1.0, t[1]);
        const Complex z3 = std::polar(1.0, t[2]);
        // Map z -> ((z - z1)(z2 - z3)) / ((z - z3)(z2 - z1)) sends z1,z2,z3 to 0,1,inf.
        const Complex k = (z2 - z3) / (z2 - z1);
        // Matrix form: [k, -k z1; 1, -z3]
        return std::array<Complex, 4>{k, -k * z1, 1.0, -z3};
    };
    auto mul = [](const std::array<Complex, 4>& m, const std::array<Complex, 4>& n) {
        return std::array<Complex, 4>{m[0] * n[0] + m[1] * n[2], m[0] * n[1] + m[1] * n[3],
                                      m[2] * n[0] + m[3] * n[2], m[2] * n[1] + m[3] * n[3]};
    };
    auto inv = [](const std::array<Complex, 4>& m) {
        const Complex det = m[0] * m[3] - m[1] * m[2];
        return std::array<Complex, 4>{m[3] / det, -m[1] / det, -m[2] / det, m[0] / det};
    };
    const auto m = mul(inv(frame(dst)), frame(src));
    // m is a disk automorphism in GL(2,C); bring it to SU(1,1) shape
    // [a, b; conj(b), conj(a)] by scaling.  For a disk automorphism the matrix
    // satisfies d = conj(a) * s and c = conj(b) * s for a unimodular s after
    // det-normalization.
    const Complex det = m[0] * m[3] - m[1] * m[2];
    const Complex sdet = std::sqrt(det);
    std::array<Complex, 4> u{m[0] / sdet, m[1] / sdet, m[2] / sdet, m[3] / sdet};
    // Now u has det 1; for a disk automorphism either u or -u has the
    // SU(1,1) form [a, b; conj(b), conj(a)].
    if (std::abs(u[0] + std::conj(u[3])) < std::abs(u[0] - std::conj(u[3])))
        for (auto& e : u) e = -e;
    const Complex a_est = 0.5 * (u[0] + std::conj(u[3]));
    const Complex b_est = 0.5 * (u[1] + std::conj(u[2]));
    MobiusTransform result(a_est, b_est);
    // Validate against the correspondences.
    for (int k = 0; k < 3; ++k) {
        const Complex img = result(std::polar(1.0, src[k]));
        if (std::abs(img - std::polar(1.0, dst[k])) > 1e-8)
            throw GeometryError("mobius: boundary-point correspondence not realizable");
    }
    return result;
}

OrthoDisk::OrthoDisk(Complex c, double r) : center(c), radius(r) {
    if (r <= 0.0) throw DomainError("orthodisk: radius must be positive");
    if (std::abs(c) == 0.0) throw DomainError("orthodisk: center must be nonzero");
    if (orthogonality_residual() > 1e-9)
        throw GeometryError("orthodisk: not orthogonal to the unit circle");
}

double OrthoDisk::orthogonality_residual() const {
    return std::abs(std::norm(center) - 1.0 - radius * radius);
}

void OrthoDisk::ideal_endpoints(double& lo, double& hi) const {
    // |e^{i phi} - c|^2 = r^2 with |c|^2 = 1 + r^2 gives cos(phi - arg c) = 1/|c|.
    const double half = std::acos(1.0 / std::abs(center));
    const double tc = std::arg(center);
    lo = tc - half;
    hi = tc + half;
}

double hyperbolic_distance(Complex z, Complex w) {
    const double nz = std::norm(z), nw = std::norm(w);
    if (nz >= 1.0 || nw >= 1.0)
        throw DomainError("hyperbolic_distance: arguments must lie in the open unit disk");
    const double t = 2.0 * std::norm(z - w) / ((1.0 - nz) * (1.0 - nw));
    return std::acosh(1.0 + t);
}

double signed_sinh_distance(Complex z, const OrthoDisk& d) {
    return (std::norm(z - d.center) - d.radius * d.radius) / (d.radius * (1.0 - std::norm(z)));
}

double dist_origin_to_geodesic(const OrthoDisk& d) {
    const double m = std::abs(d.center) - d.radius;
    if (m >= 1.0) throw DomainError("dist_origin_to_geodesic: disk outside the closed unit disk");
    if (m <= 0.0) throw DomainError("dist_origin_to_geodesic: origin inside the disk");
    return 2.0 * std::atanh(m);
}

double inversive_distance(const OrthoDisk& a, const OrthoDisk& b) {
    return (std::norm(a.center - b.center) - a.radius * a.radius - b.radius * b.radius) /
           (2.0 * a.radius * b.radius);
}

double dist_between_geodesics(const OrthoDisk& a, const OrthoDisk& b) {
    const double delta = inversive_distance(a, b);
    if (delta <= 1.0)
        throw GeometryError("dist_between_geodesics: geodesics intersect or are tangent");
    return std::acosh(delta);
}

Complex geodesic_point(const OrthoDisk& d, double s) {
    const double m = std::abs(d.center) - d.radius;
    const Complex t(0.0, std::tanh(s / 2.0));
    return std::polar(1.0, std::arg(d.center)) * (t + m) / (1.0 + m * t);
}

Complex geodesic_tangent(const OrthoDisk& d, double s) {
    const double m = std::abs(d.center) - d.radius;
    const double th = std::tanh(s / 2.0);
    const Complex t(0.0, th);
    // d/ds of (t+m)/(1+mt) with dt/ds = i (1-th^2)/2
    const Complex dt(0.0, (1.0 - th * th) / 2.0);
    const Complex den = 1.0 + m * t;
    Complex v = std::polar(1.0, std::arg(d.center)) * dt * (1.0 - m * m) / (den * den);
    return v / std::abs(v);
}

double geodesic_coordinate(const OrthoDisk& d, Complex z) {
    const double m = std::abs(d.center) - d.radius;
    const Complex w = std::polar(1.0, -std::arg(d.center)) * z;
    const Complex t = (w - m) / (1.0 - m * w);
    return 2.0 * std::atanh(t.imag());
}

Complex circle_intersection_inside(const OrthoDisk& a, const OrthoDisk& b) {
    const Complex d = b.center - a.center;
    const double d2 = std::norm(d);
    const double t = (d2 + a.radius * a.radius - b.radius * b.radius) / (2.0 * d2);
    const double h2 = a.radius * a.radius / d2 - t * t;
    if (h2 < 0.0) throw GeometryError("circle_intersection_inside: circles do not intersect");
    const double h = std::sqrt(h2);
    const Complex base = a.center + t * d;
    const Complex perp = Complex(0.0, 1.0) * d;
    const Complex p1 = base + h * perp, p2 = base - h * perp;
    return (std::abs(p1) < std::abs(p2)) ? p1 : p2;
}

}  // namespace cyleig
