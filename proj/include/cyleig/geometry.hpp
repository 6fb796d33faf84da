#pragma once

#include <vector>

#include "cyleig/mobius.hpp"

namespace cyleig {

// Radius of the ball B on which test functions live.
inline constexpr double kBallRadius = 0.41421356237309515;  // sqrt(2) - 1

struct SurfaceGeometry;

// One geodesic arc of the core boundary, in surface traversal order.
// point(y) = geodesic_point(disk, s_start + (y - y_start) * sign(s_end - s_start))
// for y in [y_start, y_end].
struct BoundaryArc {
    int core_disk = 0;      // index into SurfaceGeometry::core_disks
    double y_start = 0.0;
    double y_end = 0.0;
    double s_start = 0.0;   // arclength coordinates on that geodesic
    double s_end = 0.0;
};

// Arclength parametrization of the core boundary geodesic, anchored at y = 0
// on the positive real axis and oriented so small positive y has positive
// imaginary part.  J-equivariant: point(-y) = conj(point(y)).
class BoundaryParametrization {
  public:
    BoundaryParametrization(const SurfaceGeometry& geo);

    double total_length() const { return total_length_; }
    const std::vector<BoundaryArc>& arcs() const { return arcs_; }

    // Lift of the boundary point at coordinate y (mod total length) to the
    // fundamental domain.  Corner values of y have two lifts; the arc whose
    // interval contains y first in traversal order is used.
    Complex point(double y) const;
    Complex tangent(double y) const;
    // The arc whose closed y-interval contains y.
    const BoundaryArc& arc_at(double y) const;

  private:
    double reduce(double y) const;  // y mod total length, snapped to corners

    std::vector<BoundaryArc> arcs_;
    std::vector<OrthoDisk> disks_;
    double total_length_ = 0.0;
};

// The full hyperbolic construction: 4g sector-inscribed disks D_j, the core
// disks D_j', the 2g generators S_j, and the boundary length.
struct SurfaceGeometry {
    int genus = 1;
    double alpha = 0.0;
    double alpha_prime = 0.0;                // == alpha unless symmetry is broken
    std::vector<OrthoDisk> disks;            // D_1 .. D_{4g}
    std::vector<OrthoDisk> core_disks;       // D_1' .. D_{4g}'
    std::vector<MobiusTransform> generators; // S_1 .. S_{2g}
    double ell = 0.0;

    // Per-disk half-angle (alpha or alpha_prime).
    double disk_alpha(int j) const;  // j is 1-based
};

// Disk inscribed in the sector |arg z - (2j-1)pi/(4 genus)| < alpha.
OrthoDisk inscribed_disk(int j, int genus, double alpha);

// Disk orthogonal to the unit circle, to D_j, and to D_{j+1}; for the
// symmetric geometry its center has argument j pi / (2 genus).
OrthoDisk core_boundary_disk(int j, int genus, double alpha);
// General form used by the broken-symmetry construction: the orthodisk
// orthogonal to both given neighbors, with center argument between theirs.
OrthoDisk core_boundary_disk_between(const OrthoDisk& dj, const OrthoDisk& djp1);

// Hyperbolic translation S_j with axis through +-e^{i theta_j} mapping D_j to
// the exterior of D_{j+2g} (symmetric geometry).
MobiusTransform generator(int j, int genus, double alpha);
// Broken-symmetry variant: the pure hyperbolic translation along the diameter
// through the (anti-aligned) centers of `from` and `to`, by their geodesic
// distance.  It maps the boundary of `from` onto the boundary of `to` with
// the ideal endpoints swapped and no sliding along the target geodesic.
MobiusTransform translation_between(const OrthoDisk& from, const OrthoDisk& to);

// ell(alpha, genus) = 4 genus arcosh((1 - cos(pi/2g) - sin^2 a) / sin^2 a).
double boundary_length(int genus, double alpha);

SurfaceGeometry make_surface(int genus, double alpha);
SurfaceGeometry make_surface_broken(double alpha, double alpha_prime);  // genus 1 only

bool in_fundamental_domain(Complex z, const SurfaceGeometry& geo);
bool in_core(Complex z, const SurfaceGeometry& geo);

// Smallest Euclidean clearance between the ball B and all D_j, D_j'.
double ball_clearance(const SurfaceGeometry& geo);

}  // namespace cyleig
