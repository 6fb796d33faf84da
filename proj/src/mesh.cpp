#include "cyleig/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <string>
#include <unordered_map>
#include <unordered_set>

#include "cyleig/errors.hpp"
#include "cyleig/tolerances.hpp"

namespace cyleig {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kAxisEps = 1e-12;
constexpr double kDedupTol = 1e-8;

// ---------------------------------------------------------------------------
// Bowyer-Watson Delaunay

struct DTri {
    int a, b, c;
    double cx, cy, rr;  // circumcircle
    bool alive;
};

bool circumcircle(const std::vector<Complex>& p, int a, int b, int c,
                  double& cx, double& cy, double& rr) {
    const double ax = p[a].real(), ay = p[a].imag();
    const double bx = p[b].real() - ax, by = p[b].imag() - ay;
    const double ccx = p[c].real() - ax, ccy = p[c].imag() - ay;
    const double d = 2.0 * (bx * ccy - by * ccx);
    if (std::abs(d) < 1e-300) return false;
    const double ux = (ccy * (bx * bx + by * by) - by * (ccx * ccx + ccy * ccy)) / d;
    const double uy = (bx * (ccx * ccx + ccy * ccy) - ccx * (bx * bx + by * by)) / d;
    cx = ax + ux;
    cy = ay + uy;
    rr = ux * ux + uy * uy;
    return true;
}

}  // namespace

std::vector<std::array<int, 3>> delaunay(const std::vector<Complex>& pts) {
    const int n = int(pts.size());
    if (n < 3) throw MeshError("delaunay: need at least 3 points");
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const auto& z : pts) {
        xmin = std::min(xmin, z.real());
        xmax = std::max(xmax, z.real());
        ymin = std::min(ymin, z.imag());
        ymax = std::max(ymax, z.imag());
    }
    const double span = std::max(xmax - xmin, ymax - ymin) + 1e-12;
    const double mx = 0.5 * (xmin + xmax), my = 0.5 * (ymin + ymax);

    std::vector<Complex> p(pts);
    p.emplace_back(mx - 2e4 * span, my - 1e4 * span);  // super-triangle, ccw
    p.emplace_back(mx + 2e4 * span, my - 1e4 * span);
    p.emplace_back(mx, my + 2e4 * span);

    std::vector<DTri> tris;
    {
        DTri t{n, n + 1, n + 2, 0, 0, 0, true};
        circumcircle(p, t.a, t.b, t.c, t.cx, t.cy, t.rr);
        tris.push_back(t);
    }

    std::vector<int> bad;
    std::unordered_map<long long, int> edge_count;  // directed edge -> count
    auto ekey = [&](int u, int v) { return (long long)u * (n + 3) + v; };

    for (int ip = 0; ip < n; ++ip) {
        const double px = p[ip].real(), py = p[ip].imag();
        bad.clear();
        for (int t = 0; t < int(tris.size()); ++t) {
            if (!tris[t].alive) continue;
            const int vs[3] = {tris[t].a, tris[t].b, tris[t].c};
            int nsuper = 0;
            for (int v : vs) nsuper += (v >= n);
            if (nsuper == 1) {
                // circumcircle limit for one far vertex: the half-plane left
                // of the real edge; the tolerance admits collinear hull runs
                int u = -1, v = -1;
                if (vs[0] >= n) { u = vs[1]; v = vs[2]; }
                else if (vs[1] >= n) { u = vs[2]; v = vs[0]; }
                else { u = vs[0]; v = vs[1]; }
                const double ex = p[v].real() - p[u].real(), ey = p[v].imag() - p[u].imag();
                const double cr = ex * (py - p[u].imag()) - ey * (px - p[u].real());
                if (cr > -1e-12 * span * std::hypot(ex, ey)) bad.push_back(t);
                continue;
            }
            const double dx = px - tris[t].cx, dy = py - tris[t].cy;
            if (dx * dx + dy * dy < tris[t].rr * (1.0 - 1e-12)) bad.push_back(t);
        }
        if (bad.empty()) throw MeshError("delaunay: point insertion found empty cavity");
        edge_count.clear();
        for (int t : bad) {
            const DTri& tr = tris[t];
            ++edge_count[ekey(tr.a, tr.b)];
            ++edge_count[ekey(tr.b, tr.c)];
            ++edge_count[ekey(tr.c, tr.a)];
            tris[t].alive = false;
        }
        for (int t : bad) {
            const int vs[3] = {tris[t].a, tris[t].b, tris[t].c};
            for (int e = 0; e < 3; ++e) {
                const int u = vs[e], v = vs[(e + 1) % 3];
                if (edge_count.count(ekey(v, u))) continue;  // interior to cavity
                // boundary edge (u, v): fan triangle (u, v, ip)
                const double area2 = (p[v].real() - p[u].real()) * (py - p[u].imag()) -
                                     (p[v].imag() - p[u].imag()) * (px - p[u].real());
                if (area2 <= 1e-300) continue;  // degenerate sliver on a straight edge
                DTri nt{u, v, ip, 0, 0, 0, true};
                if (!circumcircle(p, u, v, ip, nt.cx, nt.cy, nt.rr)) continue;
                tris.push_back(nt);
            }
        }
    }

    std::vector<std::array<int, 3>> out;
    for (const DTri& t : tris) {
        if (!t.alive) continue;
        if (t.a >= n || t.b >= n || t.c >= n) continue;
        out.push_back({t.a, t.b, t.c});
    }
    return out;
}

// ---------------------------------------------------------------------------
// Shared transverse grid

std::vector<double> boundary_y_grid(const SurfaceGeometry& geo, double h) {
    if (!(h > 0.0)) throw DomainError("boundary_y_grid: h must be positive");
    BoundaryParametrization param(geo);
    const double ell = param.total_length();
    const double half = 0.5 * ell;
    // breakpoints in [0, ell/2]: corners of the parametrization plus the ends
    std::vector<double> brk = {0.0, half};
    for (const auto& a : param.arcs()) {
        for (double v : {a.y_start, a.y_end})
            if (v > kDedupTol && v < half - kDedupTol) brk.push_back(v);
    }
    std::sort(brk.begin(), brk.end());
    brk.erase(std::unique(brk.begin(), brk.end(),
                          [](double a, double b) { return std::abs(a - b) < kDedupTol; }),
              brk.end());
    // subdivide each piece at spacing ~ h/2, then mirror to negative y
    const double delta = 0.5 * h;
    std::vector<double> halfgrid = {0.0};
    for (size_t i = 0; i + 1 < brk.size(); ++i) {
        const double len = brk[i + 1] - brk[i];
        const int k = std::max(1, int(std::ceil(len / delta)));
        for (int q = 1; q <= k; ++q) halfgrid.push_back(brk[i] + len * q / k);
    }
    std::vector<double> ys;
    for (size_t i = halfgrid.size() - 1; i >= 2; --i) ys.push_back(-halfgrid[i - 1]);
    ys.push_back(0.0);
    for (size_t i = 1; i < halfgrid.size(); ++i) ys.push_back(halfgrid[i]);
    return ys;  // ascending, in (-ell/2, ell/2]
}

// ---------------------------------------------------------------------------
// Core chart

namespace {

struct CoreNodes {
    std::vector<Complex> pos;
    std::vector<int> kind;  // 0 = core boundary, 1 = side, 2 = interior,
                            // 3 = boundary layer (interior but pinned)
    std::vector<char> alive;
    std::vector<int> bdry_by_y;               // node per upper grid value t_0..t_m
    std::vector<std::vector<int>> side_sets;  // upper node sets N_1 .. N_{2g}
};

int add_or_find(CoreNodes& nd, Complex z, int kind) {
    // dedup only against boundary-type nodes (corners appear twice)
    for (int i = 0; i < int(nd.pos.size()); ++i)
        if (nd.kind[i] != 2 && std::abs(nd.pos[i] - z) < kDedupTol) return i;
    nd.pos.push_back(z);
    nd.kind.push_back(kind);
    nd.alive.push_back(1);
    return int(nd.pos.size()) - 1;
}

double clearance_h(Complex z, const SurfaceGeometry& geo) {
    double best = 1e300;
    for (const auto* list : {&geo.disks, &geo.core_disks})
        for (const auto& d : *list)
            best = std::min(best, std::abs(std::asinh(signed_sinh_distance(z, d))));
    return best;
}

struct UpperTri {
    std::vector<std::array<int, 3>> tris;  // indices into CoreNodes
};

UpperTri triangulate_upper(const CoreNodes& nd, const SurfaceGeometry& geo) {
    std::vector<Complex> pts;
    std::vector<int> back;
    for (int i = 0; i < int(nd.pos.size()); ++i) {
        if (!nd.alive[i]) continue;
        pts.push_back(nd.pos[i]);
        back.push_back(i);
    }
    auto raw = delaunay(pts);
    UpperTri out;
    for (const auto& t : raw) {
        const Complex cen = (pts[t[0]] + pts[t[1]] + pts[t[2]]) / 3.0;
        if (!in_core(cen, geo)) continue;
        out.tris.push_back({back[t[0]], back[t[1]], back[t[2]]});
    }
    return out;
}

double tri_min_angle(Complex a, Complex b, Complex c) {
    const double la = std::abs(b - c), lb = std::abs(c - a), lc = std::abs(a - b);
    auto ang = [](double opp, double s1, double s2) {
        double v = (s1 * s1 + s2 * s2 - opp * opp) / (2.0 * s1 * s2);
        v = std::clamp(v, -1.0, 1.0);
        return std::acos(v);
    };
    return std::min({ang(la, lb, lc), ang(lb, lc, la), ang(lc, la, lb)}) * 180.0 / kPi;
}

void smooth_interior(CoreNodes& nd, const UpperTri& tri, const SurfaceGeometry& geo, double h) {
    std::vector<std::unordered_set<int>> adj(nd.pos.size());
    for (const auto& t : tri.tris)
        for (int e = 0; e < 3; ++e) {
            adj[t[e]].insert(t[(e + 1) % 3]);
            adj[t[e]].insert(t[(e + 2) % 3]);
        }
    std::vector<Complex> next = nd.pos;
    for (int i = 0; i < int(nd.pos.size()); ++i) {
        if (!nd.alive[i] || nd.kind[i] != 2 || adj[i].empty()) continue;
        Complex s = 0.0;
        for (int j : adj[i]) s += nd.pos[j];
        s /= double(adj[i].size());
        if (std::abs(nd.pos[i].imag()) < kAxisEps) s = Complex(s.real(), 0.0);
        if (!in_core(s, geo) || clearance_h(s, geo) <= 0.35 * h || s.imag() < -kAxisEps)
            continue;
        // never move closer to a neighbor than 0.4 h unless it improves the
        // current worst separation (prevents smoothing from collapsing pairs)
        double dnew = 1e300, dold = 1e300;
        for (int j : adj[i]) {
            dnew = std::min(dnew, hyperbolic_distance(s, nd.pos[j]));
            dold = std::min(dold, hyperbolic_distance(nd.pos[i], nd.pos[j]));
        }
        if (dnew >= std::min(0.4 * h, dold)) next[i] = s;
    }
    nd.pos = next;
}

// Kill movable interior nodes that ended up closer than 0.35 h to any other
// node (the earlier of an interior pair survives).
void remove_close_interior(CoreNodes& nd, double h) {
    const int n = int(nd.pos.size());
    for (int i = 0; i < n; ++i) {
        if (!nd.alive[i] || nd.kind[i] != 2) continue;
        for (int j = 0; j < n && nd.alive[i]; ++j) {
            if (j == i || !nd.alive[j]) continue;
            if (nd.kind[j] == 2 && j > i) continue;
            if (std::abs(nd.pos[i] - nd.pos[j]) > 0.35 * h) continue;
            if (hyperbolic_distance(nd.pos[i], nd.pos[j]) < 0.35 * h) nd.alive[i] = 0;
        }
    }
}

}  // namespace

GluedMesh build_core_mesh(const SurfaceGeometry& geo, double h) {
    if (!(h > 0.0)) throw DomainError("build_core_mesh: h must be positive");
    const int g = geo.genus, n = 4 * g;
    BoundaryParametrization param(geo);
    const double ell = param.total_length();
    std::vector<double> ys = boundary_y_grid(geo, h);
    const int ny = int(ys.size());
    const int m = ny / 2;  // ys = {-t_{m-1}..-t_1, 0, t_1..t_m}

    CoreNodes nd;
    // 1) core-boundary nodes.  The boundary geodesic wanders through both
    //    half-planes (the lift jumps across the domain at side corners), so
    //    each grid value lifts either into the closed upper half (node made
    //    here) or into the lower half (made later as the mirror of the lift
    //    at -y; J-equivariance point(-y) = conj(point(y)) pairs them exactly).
    nd.bdry_by_y.assign(ny, -1);
    for (int i = 0; i < ny; ++i) {
        const Complex z = param.point(ys[i]);
        if (std::abs(z.imag()) < kDedupTol)  // Fix(J): snap exactly onto the axis
            nd.bdry_by_y[i] = add_or_find(nd, Complex(z.real(), 0.0), 0);
        else if (z.imag() > 0.0)
            nd.bdry_by_y[i] = add_or_find(nd, z, 0);
    }
    // 2) side node sets: free sets on D_1..D_g, partners by conj . S_j
    nd.side_sets.assign(2 * g, {});
    const double dside = 0.5 * h;
    for (int j = 1; j <= g; ++j) {
        const OrthoDisk& dj = geo.disks[j - 1];
        const Complex ca = circle_intersection_inside(dj, geo.core_disks[(j - 2 + n) % n]);
        const Complex cb = circle_intersection_inside(dj, geo.core_disks[j - 1]);
        const double sa = geodesic_coordinate(dj, ca), sb = geodesic_coordinate(dj, cb);
        const int k = std::max(1, int(std::ceil(std::abs(sb - sa) / dside)));
        std::vector<Complex> free_nodes;
        for (int q = 0; q <= k; ++q)
            free_nodes.push_back(geodesic_point(dj, sa + (sb - sa) * q / double(k)));
        for (const Complex& z : free_nodes)
            nd.side_sets[j - 1].push_back(add_or_find(nd, z, 1));
        // partner set N_{2g+1-j} = conj(S_j(N_j)), also in the upper half
        for (const Complex& z : free_nodes) {
            const Complex w = std::conj(geo.generators[j - 1](z));
            nd.side_sets[2 * g - j].push_back(add_or_find(nd, w, 1));
        }
    }
    // 2b) thin-strip nodes along the rays through the core-disk centers.
    //    Near the maximal angle each side disk is nearly tangent to those
    //    rays, pinching strips narrower than the ring clearance below; they
    //    would stay empty and triangulate as slivers.  Pinned nodes down the
    //    middle of each strip keep the triangles there well shaped.
    std::vector<Complex> strip;
    for (int k = 0; k <= 2 * g; ++k) {
        const double th = k * kPi / (2.0 * g);
        const double rho_lim = 2.0 * std::atanh(0.999);
        double last = -1e300;
        for (double rho = 0.45 * h; rho < rho_lim; rho += 0.05 * h) {
            Complex z = std::polar(std::tanh(0.5 * rho), th);
            if (std::abs(z.imag()) < kAxisEps) z = Complex(z.real(), 0.0);
            if (!in_core(z, geo)) continue;
            const double gap = clearance_h(z, geo);
            if (gap >= 1.2 * h || gap < 0.28 * h) continue;
            if (rho - last < std::clamp(0.8 * gap, 0.35 * h, 0.5 * h)) continue;
            strip.push_back(z);
            last = rho;
        }
    }

    // 3) boundary-layer candidates: one interior node offset ~0.43 h inward of
    //    every boundary/side node keeps the first row of triangles well shaped
    //    (the polar rings below have no relation to the arcs and would leave
    //    slivers along them).  At a corner the offset direction of one arc is
    //    tangent to the other (the circles are orthogonal), so the clearance
    //    check drops corner offsets automatically.
    std::vector<Complex> layer;
    auto try_add_layer = [&](Complex z, Complex dir) {
        Complex w = z + (0.43 * h * 0.5 * (1.0 - std::norm(z))) * dir;
        // snap near-axis points exactly onto the axis: collinear runs must be
        // exact or the triangulation emits degenerate slivers along them
        if (std::abs(w.imag()) < kAxisEps) w = Complex(w.real(), 0.0);
        if (w.imag() < -kAxisEps || !in_core(w, geo)) return;
        if (clearance_h(w, geo) < 0.36 * h) return;
        for (const Complex& q : strip)
            if (hyperbolic_distance(w, q) < 0.33 * h) return;
        for (const Complex& q : layer)
            if (hyperbolic_distance(w, q) < 0.45 * h) return;
        layer.push_back(w);
    };
    for (int i = 0; i < int(nd.pos.size()); ++i) {
        if (nd.kind[i] == 2) continue;
        for (const auto* list : {&geo.core_disks, &geo.disks})
            for (const auto& d : *list) {
                if (std::abs(std::asinh(signed_sinh_distance(nd.pos[i], d))) > 1e-6) continue;
                // domain lies outside the disk: offset away from its center
                const Complex dir = (nd.pos[i] - d.center) / std::abs(nd.pos[i] - d.center);
                try_add_layer(nd.pos[i], dir);
            }
    }

    // 4) interior candidates: hyperbolic polar rings with deterministic jitter
    double rho_max = 0.0;
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < 2; ++k) {
            const Complex c = circle_intersection_inside(geo.core_disks[i], geo.disks[(i + k) % n]);
            rho_max = std::max(rho_max, hyperbolic_distance(Complex(0, 0), c));
        }
    const double dring = 0.85 * h;
    std::mt19937 rng(20240817u);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    auto try_add_interior = [&](Complex z) {
        if (std::abs(z.imag()) < kAxisEps) z = Complex(z.real(), 0.0);
        if (z.imag() < -kAxisEps) return;
        if (!in_core(z, geo)) return;
        if (clearance_h(z, geo) < 0.55 * h) return;
        for (const Complex& q : strip)
            if (hyperbolic_distance(z, q) < 0.5 * h) return;
        for (const Complex& q : layer)
            if (hyperbolic_distance(z, q) < 0.5 * h) return;
        nd.pos.push_back(z);
        nd.kind.push_back(2);
        nd.alive.push_back(1);
    };
    for (const auto* list : {&strip, &layer})
        for (const Complex& q : *list) {
            nd.pos.push_back(q);
            nd.kind.push_back(3);
            nd.alive.push_back(1);
        }
    try_add_interior(Complex(0.0, 0.0));
    for (int kr = 1; kr * dring < rho_max + 1.0; ++kr) {
        const double rho = kr * dring;
        const double re = std::tanh(0.5 * rho);
        int mring = std::max(8, int(std::lround(2.0 * kPi * std::sinh(rho) / dring)));
        if (mring % 2) ++mring;
        const double jit = 0.15 * dring * (1.0 - re * re) * 0.5;  // Euclidean scale
        for (int q = 0; q <= mring / 2; ++q) {
            const double th = 2.0 * kPi * q / mring;
            Complex z = std::polar(re, th);
            const double jx = jit * uni(rng), jy = jit * uni(rng);
            if (q == 0 || q == mring / 2)
                z += Complex(jx, 0.0);  // keep axis points on the axis
            else
                z += Complex(jx, jy);
            try_add_interior(z);
        }
    }

    // triangulate, smooth, and clean up low-quality triangles
    UpperTri tri = triangulate_upper(nd, geo);
    for (int it = 0; it < 6; ++it) {
        smooth_interior(nd, tri, geo, h);
        tri = triangulate_upper(nd, geo);
    }
    remove_close_interior(nd, h);
    tri = triangulate_upper(nd, geo);
    smooth_interior(nd, tri, geo, h);
    tri = triangulate_upper(nd, geo);
    for (int attempt = 0; attempt < 3; ++attempt) {
        bool removed = false;
        for (const auto& t : tri.tris) {
            if (tri_min_angle(nd.pos[t[0]], nd.pos[t[1]], nd.pos[t[2]]) >= tol::kMinAngleDeg)
                continue;
            for (int e = 0; e < 3; ++e)
                if (nd.kind[t[e]] == 2 && nd.alive[t[e]]) {
                    nd.alive[t[e]] = 0;
                    removed = true;
                    break;
                }
        }
        if (!removed) break;
        tri = triangulate_upper(nd, geo);
        smooth_interior(nd, tri, geo, h);
        tri = triangulate_upper(nd, geo);
    }

    // reflect across the axis
    GluedMesh mesh;
    mesh.h = h;
    mesh.ell = ell;
    mesh.y_grid = ys;
    const int nu = int(nd.pos.size());
    std::vector<int> gid(nu, -1), mirror(nu, -1);
    for (int i = 0; i < nu; ++i) {
        if (!nd.alive[i]) continue;
        gid[i] = int(mesh.core_vertices.size());
        mesh.core_vertices.push_back(nd.pos[i]);
    }
    for (int i = 0; i < nu; ++i) {
        if (gid[i] < 0) continue;
        if (std::abs(nd.pos[i].imag()) < kAxisEps) {
            mirror[i] = gid[i];
            mesh.fixed_nodes.push_back(gid[i]);
        } else {
            mirror[i] = int(mesh.core_vertices.size());
            mesh.core_vertices.push_back(std::conj(nd.pos[i]));
            mesh.symmetry_pairs.push_back({gid[i], mirror[i]});
        }
    }
    mesh.num_core = int(mesh.core_vertices.size());
    for (const auto& t : tri.tris) {
        mesh.triangles.push_back({gid[t[0]], gid[t[1]], gid[t[2]]});
        mesh.tri_chart.push_back(0);
        mesh.triangles.push_back({mirror[t[0]], mirror[t[2]], mirror[t[1]]});
        mesh.tri_chart.push_back(0);
    }
    // side pairings: S_j maps N_j onto the mirror of N_{2g+1-j}
    for (int j = 1; j <= g; ++j) {
        const auto& A = nd.side_sets[j - 1];
        const auto& B = nd.side_sets[2 * g - j];
        for (size_t i = 0; i < A.size(); ++i) {
            mesh.side_pairings.push_back({gid[A[i]], mirror[B[i]], j - 1});
            mesh.side_pairings.push_back({gid[B[i]], mirror[A[i]], 2 * g - j});
        }
    }
    // core boundary nodes aligned with the full y-grid; lower-half lifts are
    // the mirrors of the upper-half lift at the opposite grid value
    mesh.core_boundary_nodes.assign(ny, -1);
    for (int i = 0; i < ny; ++i) {
        if (nd.bdry_by_y[i] >= 0) {
            mesh.core_boundary_nodes[i] = gid[nd.bdry_by_y[i]];
        } else {
            const int ip = 2 * (m - 1) - i;  // grid index of -y_grid[i]
            mesh.core_boundary_nodes[i] = mirror[nd.bdry_by_y[ip]];
        }
    }

    const double mina = min_angle_deg(mesh);
    if (mina < tol::kMinAngleDeg)
        throw MeshError("build_core_mesh: minimum triangle angle " + std::to_string(mina) +
                        " deg below quality bound; use a smaller h");
    return mesh;
}

// ---------------------------------------------------------------------------
// End chart

GluedMesh build_end_mesh(const EndProfile& profile, double L, double h,
                         const std::vector<double>& y_grid) {
    if (!(L >= profile.R())) throw DomainError("build_end_mesh: need L >= R");
    if (!(h > 0.0)) throw DomainError("build_end_mesh: h must be positive");
    const double ell = profile.ell();
    const int ny = int(y_grid.size());
    if (ny < 4 || ny % 2 != 0)
        throw DomainError("build_end_mesh: y-grid must have an even size >= 4");
    const int m = ny / 2;

    std::vector<double> rg = {0.0};
    const double pieces[3][2] = {{0.0, profile.r0()}, {profile.r0(), profile.R()}, {profile.R(), L}};
    for (const auto& pc : pieces) {
        const double len = pc[1] - pc[0];
        if (len < 1e-12) continue;
        const int k = std::max(1, int(std::ceil(len / h)));
        for (int q = 1; q <= k; ++q) rg.push_back(pc[0] + len * q / k);
    }
    const int nr = int(rg.size()) - 1;

    GluedMesh mesh;
    mesh.h = h;
    mesh.L = L;
    mesh.ell = ell;
    mesh.y_grid = y_grid;
    mesh.num_core = 0;
    auto node = [&](int ir, int iy) { return ir * ny + iy; };
    for (int ir = 0; ir <= nr; ++ir)
        for (int iy = 0; iy < ny; ++iy)
            mesh.end_vertices.push_back({rg[ir], 2.0 * kPi * y_grid[iy]});

    for (int ir = 0; ir < nr; ++ir) {
        for (int j = 0; j < ny; ++j) {
            const int j2 = (j + 1) % ny;
            double dy = y_grid[j2] - y_grid[j];
            if (dy <= 0) dy += ell;  // wrap cell
            double mid = y_grid[j] + 0.5 * dy;
            if (mid > 0.5 * ell) mid -= ell;
            // J-symmetric diagonal rule: flip orientation with the sign of y
            if (mid > 0) {
                mesh.triangles.push_back({node(ir, j), node(ir + 1, j), node(ir + 1, j2)});
                mesh.triangles.push_back({node(ir, j), node(ir + 1, j2), node(ir, j2)});
            } else {
                mesh.triangles.push_back({node(ir, j), node(ir + 1, j), node(ir, j2)});
                mesh.triangles.push_back({node(ir + 1, j), node(ir + 1, j2), node(ir, j2)});
            }
            mesh.tri_chart.push_back(1);
            mesh.tri_chart.push_back(1);
        }
    }

    for (int ir = 0; ir <= nr; ++ir) {
        mesh.fixed_nodes.push_back(node(ir, m - 1));       // y = 0
        mesh.fixed_nodes.push_back(node(ir, 2 * m - 1));   // y = ell/2
        for (int i = 1; i < m; ++i)
            mesh.symmetry_pairs.push_back({node(ir, m - 1 + i), node(ir, m - 1 - i)});
    }
    for (int iy = 0; iy < ny; ++iy) mesh.truncation_nodes.push_back(node(nr, iy));
    mesh.end_base_nodes.resize(ny);
    for (int iy = 0; iy < ny; ++iy) mesh.end_base_nodes[iy] = node(0, iy);
    return mesh;
}

// ---------------------------------------------------------------------------
// Gluing

GluedMesh build_glued_mesh(const SurfaceGeometry& geo, const EndProfile& profile,
                           double L, double h) {
    GluedMesh core = build_core_mesh(geo, h);
    GluedMesh end = build_end_mesh(profile, L, h, core.y_grid);
    GluedMesh mesh = core;
    mesh.L = L;
    const int off = mesh.num_core;
    mesh.end_vertices = end.end_vertices;
    for (size_t t = 0; t < end.triangles.size(); ++t) {
        mesh.triangles.push_back({end.triangles[t][0] + off, end.triangles[t][1] + off,
                                  end.triangles[t][2] + off});
        mesh.tri_chart.push_back(1);
    }
    for (const auto& p : end.symmetry_pairs)
        mesh.symmetry_pairs.push_back({p[0] + off, p[1] + off});
    for (int v : end.fixed_nodes) mesh.fixed_nodes.push_back(v + off);
    for (int v : end.truncation_nodes) mesh.truncation_nodes.push_back(v + off);
    mesh.end_base_nodes.resize(end.end_base_nodes.size());
    for (size_t i = 0; i < end.end_base_nodes.size(); ++i)
        mesh.end_base_nodes[i] = end.end_base_nodes[i] + off;
    for (size_t i = 0; i < mesh.y_grid.size(); ++i)
        mesh.interface_pairs.push_back({mesh.core_boundary_nodes[i], mesh.end_base_nodes[i]});
    return mesh;
}

// ---------------------------------------------------------------------------
// Diagnostics

void triangle_coords(const GluedMesh& mesh, int t, Complex out[3]) {
    const auto& tr = mesh.triangles[t];
    if (mesh.tri_chart[t] == 0) {
        for (int e = 0; e < 3; ++e) out[e] = mesh.core_vertices[tr[e]];
        return;
    }
    const double period = 2.0 * kPi * mesh.ell;
    double yt[3];
    for (int e = 0; e < 3; ++e) {
        const auto& v = mesh.end_vertices[tr[e] - mesh.num_core];
        out[e] = Complex(v[0], 0.0);
        yt[e] = v[1];
    }
    const double ymin = std::min({yt[0], yt[1], yt[2]});
    for (int e = 0; e < 3; ++e) {
        if (yt[e] - ymin > 0.5 * period) yt[e] -= period;
        out[e] += Complex(0.0, yt[e]);
    }
}

double min_angle_deg(const GluedMesh& mesh) {
    double best = 180.0;
    Complex c[3];
    for (int t = 0; t < int(mesh.triangles.size()); ++t) {
        triangle_coords(mesh, t, c);
        best = std::min(best, tri_min_angle(c[0], c[1], c[2]));
    }
    return best;
}

int euler_characteristic(const GluedMesh& mesh) {
    const int nn = mesh.num_nodes();
    std::vector<int> root(nn);
    for (int i = 0; i < nn; ++i) root[i] = i;
    std::function<int(int)> find = [&](int x) {
        while (root[x] != x) x = root[x] = root[root[x]];
        return x;
    };
    auto unite = [&](int a, int b) { root[find(a)] = find(b); };
    for (const auto& p : mesh.side_pairings) unite(p.a, p.b);
    for (const auto& p : mesh.interface_pairs) unite(p[0], p[1]);
    std::unordered_set<int> verts;
    std::unordered_set<long long> edges;
    for (const auto& t : mesh.triangles) {
        for (int e = 0; e < 3; ++e) {
            const int u = find(t[e]), v = find(t[(e + 1) % 3]);
            verts.insert(u);
            verts.insert(v);
            edges.insert((long long)std::min(u, v) * nn + std::max(u, v));
        }
    }
    return int(verts.size()) - int(edges.size()) + int(mesh.triangles.size());
}

double core_hyperbolic_area(const GluedMesh& mesh) {
    double area = 0.0;
    for (int t = 0; t < int(mesh.triangles.size()); ++t) {
        if (mesh.tri_chart[t] != 0) continue;
        const auto& tr = mesh.triangles[t];
        const Complex a = mesh.core_vertices[tr[0]], b = mesh.core_vertices[tr[1]],
                      c = mesh.core_vertices[tr[2]];
        const double ae = 0.5 * std::abs((b - a).real() * (c - a).imag() -
                                         (b - a).imag() * (c - a).real());
        double w = 0.0;
        for (const Complex& mid : {0.5 * (a + b), 0.5 * (b + c), 0.5 * (c + a)}) {
            const double s = 1.0 - std::norm(mid);
            w += 4.0 / (s * s);
        }
        area += ae * w / 3.0;
    }
    return area;
}

}  // namespace cyleig
