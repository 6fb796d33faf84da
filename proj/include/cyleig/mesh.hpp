#pragma once

#include <array>
#include <vector>

#include "cyleig/end_profile.hpp"
#include "cyleig/geometry.hpp"

namespace cyleig {

// Node pairing identified during assembly: u(a) and u(b) share one degree of
// freedom.  `transform` records which generator (0-based index into
// SurfaceGeometry::generators) maps node a onto node b; -1 for non-Mobius
// pairings (interface r = 0).
struct NodePair {
    int a = 0;
    int b = 0;
    int transform = -1;
};

// Two-chart P1 mesh of the surface: a Delaunay triangulation of the curved
// core region (disk-model coordinates) glued along the core boundary to a
// structured triangulation of the cylinder [0, L] x (R/ell Z).  End-chart
// coordinates are stored as (r, yt) with yt = 2 pi y, which makes the flat
// part isometric to a Euclidean strip and keeps the structured triangles
// well-shaped.
struct GluedMesh {
    // node coordinates; core nodes first, then end nodes
    std::vector<Complex> core_vertices;                // disk model z
    std::vector<std::array<double, 2>> end_vertices;   // (r, yt = 2 pi y)
    int num_core = 0;  // end node k has global index num_core + k

    std::vector<std::array<int, 3>> triangles;  // global indices, ccw
    std::vector<int> tri_chart;                 // 0 = core, 1 = end

    std::vector<NodePair> side_pairings;               // core <-> core via S_j
    std::vector<std::array<int, 2>> interface_pairs;   // core <-> end at r = 0
    std::vector<std::array<int, 2>> symmetry_pairs;    // node <-> J(node)
    std::vector<int> fixed_nodes;                      // on Fix(J)
    std::vector<int> truncation_nodes;                 // end nodes at r = L

    // shared transverse grid: y values in (-ell/2, ell/2], ascending
    std::vector<double> y_grid;
    // core node lifted from the boundary point at y_grid[i] (core-only and
    // glued meshes); end node at (r = 0, y_grid[i]) (end and glued meshes)
    std::vector<int> core_boundary_nodes;
    std::vector<int> end_base_nodes;

    double h = 0.0;
    double L = 0.0;
    double ell = 0.0;

    int num_nodes() const { return num_core + int(end_vertices.size()); }
};

// Delaunay triangulation (Bowyer-Watson) of a planar point set; returns ccw
// triangles of the convex hull.  Deterministic for a fixed input order.
std::vector<std::array<int, 3>> delaunay(const std::vector<Complex>& pts);

// Triangulate the core region (fundamental domain minus the core disks) at
// hyperbolic mesh size h.  Boundary nodes along the core boundary geodesic
// are placed on the shared y-grid; paired side nodes are generated on the
// free sides and pushed forward so identified node sets match exactly; the
// mesh is built on the upper half plane and reflected, making J exact.
// Only the core-related fields of GluedMesh are filled.
GluedMesh build_core_mesh(const SurfaceGeometry& geo, double h);

// Shared y-grid on [-ell/2, ell/2): symmetric under y -> -y, contains 0,
// ell/2, and every corner of the boundary parametrization as grid points.
std::vector<double> boundary_y_grid(const SurfaceGeometry& geo, double h);

// Structured end chart on [0, L] x (R/ell Z) using the given y-grid; the
// r-grid contains r0 and R.  Fills only the end-related fields.
GluedMesh build_end_mesh(const EndProfile& profile, double L, double h,
                         const std::vector<double>& y_grid);

// Full glued mesh: core + end + interface identifications.
GluedMesh build_glued_mesh(const SurfaceGeometry& geo, const EndProfile& profile,
                           double L, double h);

// Chart coordinates of triangle t as complex numbers: disk-model z for the
// core chart, r + i*yt for the end chart (periodic yt unwrapped per element).
void triangle_coords(const GluedMesh& mesh, int t, Complex out[3]);

// Minimum interior angle over all triangles, in degrees (in chart coordinates).
double min_angle_deg(const GluedMesh& mesh);

// Euler characteristic V - E + F after applying all pairings (side, interface,
// symmetry excluded -- symmetry is not an identification on the surface).
int euler_characteristic(const GluedMesh& mesh);

// Total area of the core chart in the hyperbolic metric (3-point quadrature).
double core_hyperbolic_area(const GluedMesh& mesh);

}  // namespace cyleig
