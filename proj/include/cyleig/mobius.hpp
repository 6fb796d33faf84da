#pragma once

#include <complex>

namespace cyleig {

using Complex = std::complex<double>;

// Disk-preserving isometry z -> (a z + b) / (conj(b) z + conj(a)),
// normalized so that |a|^2 - |b|^2 = 1.
class MobiusTransform {
  public:
    MobiusTransform() : a_(1.0, 0.0), b_(0.0, 0.0) {}
    MobiusTransform(Complex a, Complex b);

    static MobiusTransform identity() { return MobiusTransform(); }
    // Rotation about the origin by angle theta.
    static MobiusTransform rotation(double theta);
    // Translation along the real diameter: z -> (z + tau) / (1 + tau z).
    static MobiusTransform axis_translation(double tau);
    // The unique disk automorphism determined by three boundary-point
    // correspondences e^{i src[k]} -> e^{i dst[k]} (orientation-preserving).
    static MobiusTransform from_boundary_points(const double (&src)[3], const double (&dst)[3]);

    Complex operator()(Complex z) const;
    MobiusTransform compose(const MobiusTransform& other) const;  // this after other
    MobiusTransform inverse() const;

    Complex a() const { return a_; }
    Complex b() const { return b_; }
    double normalization_residual() const;

  private:
    Complex a_, b_;
};

inline MobiusTransform operator*(const MobiusTransform& t, const MobiusTransform& u) {
    return t.compose(u);
}

// A Euclidean disk orthogonal to the unit circle; its boundary is a
// hyperbolic geodesic of the disk model.
struct OrthoDisk {
    Complex center;
    double radius = 0.0;

    OrthoDisk() = default;
    OrthoDisk(Complex c, double r);

    double orthogonality_residual() const;
    bool contains(Complex z) const { return std::abs(z - center) < radius; }
    // Ideal endpoints of the geodesic, as angles on the unit circle.
    // Returns {arg(center) - half, arg(center) + half}.
    void ideal_endpoints(double& lo, double& hi) const;
};

double hyperbolic_distance(Complex z, Complex w);

// sinh of the signed hyperbolic distance from z to the geodesic boundary of
// d; positive outside the disk, negative inside.
double signed_sinh_distance(Complex z, const OrthoDisk& d);

// Distance from the origin to the geodesic, 2 artanh(|center| - radius).
double dist_origin_to_geodesic(const OrthoDisk& d);

// Inversive distance between the two boundary circles.
double inversive_distance(const OrthoDisk& a, const OrthoDisk& b);

// arcosh of the inversive distance; throws GeometryError unless > 1.
double dist_between_geodesics(const OrthoDisk& a, const OrthoDisk& b);

// Arclength parametrization of the geodesic: the point at signed hyperbolic
// arclength s from the point nearest the origin, oriented toward increasing
// argument.
Complex geodesic_point(const OrthoDisk& d, double s);
// Unit tangent of geodesic_point at s.
Complex geodesic_tangent(const OrthoDisk& d, double s);
// Inverse: the arclength coordinate of a point z lying on the geodesic.
double geodesic_coordinate(const OrthoDisk& d, Complex z);

// The intersection point of the two boundary circles lying inside the unit
// disk; the circles must intersect.
Complex circle_intersection_inside(const OrthoDisk& a, const OrthoDisk& b);

}  // namespace cyleig
