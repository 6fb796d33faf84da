// Acceptance gate: one PASS/FAIL line per criterion, exit nonzero on any
// failure.  Each criterion pins its own tolerances and a wall-clock budget.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "cyleig/certificate.hpp"
#include "cyleig/end_profile.hpp"
#include "cyleig/errors.hpp"
#include "cyleig/geometry.hpp"
#include "cyleig/mesh.hpp"
#include "cyleig/solver.hpp"
#include "cyleig/test_function.hpp"

using namespace cyleig;

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

int g_failures = 0;

struct Check {
    bool ok = true;
    std::string notes;

    void require(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            if (!notes.empty()) notes += "; ";
            notes += what;
        }
    }
    void note(const std::string& what) {
        if (!notes.empty()) notes += "; ";
        notes += what;
    }
};

template <typename Body>
void criterion(int n, const std::string& title, double budget_sec, Body body) {
    Check c;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        body(c);
    } catch (const std::exception& e) {
        c.require(false, std::string("exception: ") + e.what());
    }
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    c.require(dt < budget_sec, "runtime " + std::to_string(dt) + " s exceeds budget");
    std::printf("criterion %d (%s): %s — %.2f s%s%s\n", n, title.c_str(),
                c.ok ? "PASS" : "FAIL", dt, c.notes.empty() ? "" : " — ",
                c.notes.c_str());
    std::fflush(stdout);
    if (!c.ok) ++g_failures;
}

double closed_form_ell(int g, double alpha) {
    const double s2 = std::sin(alpha) * std::sin(alpha);
    return 4.0 * g * std::acosh((1.0 - std::cos(kPi / (2 * g)) - s2) / s2);
}

// Brute-force polar quadrature (midpoint in r and theta), 4000 x 250 nodes.
template <typename F>
double polar_oracle(F f, double rad, int nr = 4000, int nt = 250) {
    double total = 0.0;
    for (int i = 0; i < nr; ++i) {
        const double r = rad * (i + 0.5) / nr;
        double ring = 0.0;
        for (int j = 0; j < nt; ++j) {
            const double t = 2.0 * kPi * (j + 0.5) / nt;
            ring += f(r * std::cos(t), r * std::sin(t));
        }
        total += ring * r;
    }
    return total * (rad / nr) * (2.0 * kPi / nt);
}

// Generator suite shared by criteria 2 and 7: S_j carries 40 samples of the
// boundary of D_j onto the boundary of D_{j+2g}.
void check_generators(Check& c, int genus, double tol) {
    const double alpha = 0.6 * kPi / (4 * genus);
    const SurfaceGeometry geo = make_surface(genus, alpha);
    for (int j = 1; j <= 2 * genus; ++j) {
        const OrthoDisk& from = geo.disks[j - 1];
        const OrthoDisk& to = geo.disks[j - 1 + 2 * genus];
        for (int i = 0; i < 40; ++i) {
            const Complex z = from.center + from.radius * std::polar(1.0, 2 * kPi * i / 40.0);
            if (std::abs(z) >= 1.0) continue;
            const Complex w = geo.generators[j - 1](z);
            c.require(std::abs(std::abs(w - to.center) - to.radius) < tol,
                      "genus " + std::to_string(genus) + ": S_" + std::to_string(j) +
                          " misses its partner circle");
            if (!c.ok) return;
        }
    }
}

// Flat-cylinder lambda_1 at mesh size hr with ny transverse intervals.
double lambda1_flat(double hr, int ny, double L, double ell) {
    const int m = ny / 2;
    std::vector<double> ys(ny);
    for (int i = 0; i < ny; ++i) ys[i] = (i - (m - 1)) * (ell / ny);
    const EndProfile profile = make_profile(0.5, 1.0, ell);
    const GluedMesh mesh = build_end_mesh(profile, L, hr, ys);
    const AssembledSystem sys = assemble(mesh, nullptr);  // exactly flat metric
    const ReducedSystem red =
        apply_sector(sys, mesh, Sector::full, TruncationBC::dirichlet, true);
    return solve_smallest(red.A, red.M, 1, 1e-10).values.front();
}

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

}  // namespace

int main() {
    criterion(1, "trigonometric identities, genus 1", 1.0, [](Check& c) {
        for (int i = 1; i <= 50; ++i) {
            const double alpha = 0.05 + (kPi / 4 - 0.01 - 0.05) * i / 51.0;
            const double rho = dist_origin_to_geodesic(inscribed_disk(1, 1, alpha));
            const double sh = std::sinh(rho);
            c.require(std::abs(std::tan(alpha) * sh - 1.0) < 1e-12,
                      "tan(a) sinh(rho) != 1 at a=" + fmt(alpha));
            // ell from the inversive-distance route, independent of the
            // closed form below
            const double ell = boundary_length(1, alpha);
            const double scale = std::max(1.0, sh * sh);
            c.require(std::abs(std::cosh(ell / 4) - sh * sh) < 1e-12 * scale,
                      "cosh(ell/4) != sinh^2(rho) at a=" + fmt(alpha));
            c.require(std::abs(std::tan(alpha) * std::tan(alpha) * std::cosh(ell / 4) - 1.0) <
                          1e-12 * scale,
                      "tan^2(a) cosh(ell/4) != 1 at a=" + fmt(alpha));
            c.require(std::abs(ell - closed_form_ell(1, alpha)) < 1e-12 * std::max(1.0, ell),
                      "inversive route disagrees with closed form at a=" + fmt(alpha));
            if (!c.ok) return;
        }
        c.note("50 angles, 4 identities each");
    });

    criterion(2, "generators map side circles to partners", 1.0, [](Check& c) {
        for (int g : {1, 2, 3}) {
            check_generators(c, g, 1e-10);
            if (!c.ok) return;
        }
        // conj . S_1^{-1} . conj = S_2 pointwise (genus 1)
        const SurfaceGeometry geo = make_surface(1, 0.6 * kPi / 4);
        const MobiusTransform s1inv = geo.generators[0].inverse();
        for (int i = 0; i < 40; ++i) {
            const Complex z = std::polar(0.05 + 0.9 * i / 40.0, 2 * kPi * i / 40.0 + 0.1);
            const Complex lhs = std::conj(s1inv(std::conj(z)));
            c.require(std::abs(lhs - geo.generators[1](z)) < 1e-12,
                      "conjugation relation fails at sample " + std::to_string(i));
            if (!c.ok) return;
        }
        c.note("genus 1, 2, 3 circle transport + genus-1 conjugation relation");
    });

    criterion(3, "certificate: critical angle, forms, quadrature", 10.0, [](Check& c) {
        const TestFunction phi = TestFunction::family(1, 3);
        const double e = dirichlet_energy(phi);
        const double m = weighted_l2(phi);
        // bisection vs the closed form arctan(1 / sqrt(cosh(q))),
        // q = ||phi|| / (4 ||d phi||)
        const double astar = critical_alpha(phi, 1);
        const double q = std::sqrt(m) / (4.0 * std::sqrt(e));
        const double closed = std::atan(1.0 / std::sqrt(std::cosh(q)));
        c.require(std::abs(astar - closed) < 1e-10,
                  "critical angle " + fmt(astar) + " vs closed form " + fmt(closed));
        // the Rayleigh criterion and the trigonometric form agree in boolean
        // on a 100-point angle grid
        for (int i = 1; i <= 100; ++i) {
            const double alpha = 0.05 + (kPi / 4 - 0.001 - 0.05) * i / 100.0;
            const CertificateReport rep = check_condition(phi, 1, alpha);
            c.require(rep.holds == (rep.rayleigh < rep.threshold),
                      "holds flag inconsistent at a=" + fmt(alpha));
            c.require(rep.holds == (rep.equivalent_form_value > 1.0),
                      "trig form disagrees at a=" + fmt(alpha));
            if (!c.ok) return;
        }
        // adaptive quadrature vs the 10^6-node brute-force oracle
        const double e_oracle = polar_oracle(
            [&](double x, double y) {
                const auto g = phi.gradient(Complex(x, y));
                return g[0] * g[0] + g[1] * g[1];
            },
            phi.support_radius());
        const double m_oracle = polar_oracle(
            [&](double x, double y) {
                const double v = phi.value(Complex(x, y));
                const double s = 1.0 - x * x - y * y;
                return v * v * 4.0 / (s * s);
            },
            phi.support_radius());
        c.require(std::abs(e - e_oracle) < 1e-7 * e_oracle, "energy quadrature off oracle");
        c.require(std::abs(m - m_oracle) < 1e-7 * m_oracle, "mass quadrature off oracle");
        c.note("critical angle " + fmt(astar));
    });

    criterion(4, "flat-cylinder oracle and h^2 convergence", 60.0, [](Check& c) {
        const double L = 2.0, ell = 2.0;
        // exact eigenvalues (pi k / L)^2 + (m / ell)^2, Dirichlet ends,
        // full sector (m = 0 allowed, +-m degenerate)
        std::vector<double> oracle;
        for (int k = 1; k <= 12; ++k)
            for (int m = 0; m <= 12; ++m) {
                const double lam = std::pow(kPi * k / L, 2) + std::pow(m / ell, 2);
                oracle.push_back(lam);
                if (m > 0) oracle.push_back(lam);
            }
        std::sort(oracle.begin(), oracle.end());
        const int ny = 96;
        std::vector<double> ys(ny);
        for (int i = 0; i < ny; ++i) ys[i] = (i - (ny / 2 - 1)) * (ell / ny);
        const EndProfile profile = make_profile(0.5, 1.0, ell);
        const GluedMesh mesh = build_end_mesh(profile, L, 0.05, ys);
        const AssembledSystem sys = assemble(mesh, nullptr);
        const ReducedSystem red =
            apply_sector(sys, mesh, Sector::full, TruncationBC::dirichlet, true);
        const EigenSolveResult res = solve_smallest(red.A, red.M, 6, 1e-9);
        for (int i = 0; i < 5; ++i)
            c.require(std::abs(res.values[i] - oracle[i]) < 0.01 * oracle[i],
                      "eigenvalue " + std::to_string(i) + ": " + fmt(res.values[i]) +
                          " vs exact " + fmt(oracle[i]));
        // Richardson ratio of lambda_1 under h -> h/2 -> h/4
        const double l1 = lambda1_flat(0.10, 32, L, ell);
        const double l2 = lambda1_flat(0.05, 64, L, ell);
        const double l3 = lambda1_flat(0.025, 128, L, ell);
        const double ratio = (l1 - l2) / (l2 - l3);
        c.require(ratio > 3.5 && ratio < 4.5, "Richardson ratio " + fmt(ratio));
        c.note("5 eigenvalues within 1%, Richardson ratio " + fmt(ratio));
    });

    criterion(5, "trapped mode at the prescribed working angle", 300.0, [](Check& c) {
        const TestFunction phi = TestFunction::family(1, 3);
        const double astar = critical_alpha(phi, 1);
        const double alpha = std::min(astar + 0.05, kPi / 4 - 0.01);
        const double h = 0.03;
        SpectrumConfig cfg;
        cfg.genus = 1;
        cfg.alpha = alpha;
        cfg.h = h;
        cfg.k = 4;
        cfg.sector = Sector::odd;
        const SpectrumReport rep = compute_spectrum(cfg);
        const double lam = rep.eigenvalues_dirichlet.front();
        c.note("alpha=" + fmt(alpha) + " (critical angle " + fmt(astar) +
               "), lambda_min=" + fmt(lam) + ", threshold=" + fmt(rep.threshold) +
               ", L=" + fmt(rep.L));
        c.require(rep.count_below_threshold >= 1, "no eigenvalue below the threshold");
        c.require(lam < rep.threshold - 10.0 * h * h,
                  "lambda_min not below threshold - 10 h^2 = " +
                      fmt(rep.threshold - 10.0 * h * h));
        // exact matrix inequality: lambda_min <= Rayleigh quotient of the
        // interpolated certificate function (same matrices, re-assembled)
        const SurfaceGeometry geo = make_surface(1, alpha);
        const EndProfile profile = make_profile(cfg.r0, cfg.R, geo.ell);
        const GluedMesh mesh = build_glued_mesh(geo, profile, rep.L, h);
        const AssembledSystem sys = assemble(mesh, &profile);
        const ReducedSystem red =
            apply_sector(sys, mesh, Sector::odd, TruncationBC::dirichlet);
        std::vector<double> nodal(mesh.num_nodes(), 0.0);
        for (int i = 0; i < mesh.num_core; ++i) nodal[i] = phi.value(mesh.core_vertices[i]);
        const Eigen::VectorXd x = reduce_node_vector(sys, red, nodal);
        const EigenSolveResult own = solve_smallest(red.A, red.M, 1, cfg.tol);
        const double rq = x.dot(red.A * x) / x.dot(red.M * x);
        c.require(own.values.front() <= rq * (1.0 + 1e-12),
                  "lambda_min " + fmt(own.values.front()) + " above interpolant quotient " +
                      fmt(rq));
        // truncation bracket closes at the automatic length
        c.require(std::abs(rep.eigenvalues_dirichlet.front() -
                           rep.eigenvalues_neumann.front()) < 1e-4,
                  "Dirichlet/Neumann bracket wider than 1e-4: " +
                      fmt(rep.eigenvalues_dirichlet.front()) + " vs " +
                      fmt(rep.eigenvalues_neumann.front()));
    });

    criterion(6, "two certified modes near the maximal angle", 300.0, [](Check& c) {
        const double alpha = kPi / 4 - 1.5e-4;
        const std::vector<TestFunction> span = {TestFunction::family(1, 3),
                                                TestFunction::family(2, 3)};
        const MultiCertificate mc = multi_certificate(span, 1, alpha);
        const double ell = boundary_length(1, alpha);
        c.require(mc.certified_count == 2,
                  "span certificate count " + std::to_string(mc.certified_count));
        c.require(mc.mu_max < 1.0 / (ell * ell),
                  "mu_max " + fmt(mc.mu_max) + " not below " + fmt(1.0 / (ell * ell)));
        SpectrumConfig cfg;
        cfg.genus = 1;
        cfg.alpha = alpha;
        cfg.h = 0.03;
        cfg.k = 4;
        cfg.sector = Sector::odd;
        const SpectrumReport rep = compute_spectrum(cfg);
        c.require(rep.count_below_threshold >= 2,
                  "FEM found only " + std::to_string(rep.count_below_threshold) +
                      " eigenvalues below the threshold");
        c.note("mu_max=" + fmt(mc.mu_max) + ", threshold=" + fmt(rep.threshold) +
               ", lowest=" +
               fmt(rep.eigenvalues_dirichlet.empty() ? 0.0
                                                     : rep.eigenvalues_dirichlet.front()));
    });

    criterion(7, "genus-2 identities and core topology", 120.0, [](Check& c) {
        for (int i = 1; i <= 20; ++i) {
            const double alpha = 0.01 + (kPi / 8 - 0.02) * i / 20.0;
            const double rho = dist_origin_to_geodesic(inscribed_disk(1, 2, alpha));
            c.require(std::abs(std::tan(alpha) * std::sinh(rho) - 1.0) < 1e-12,
                      "tan(a) sinh(rho) != 1 at a=" + fmt(alpha));
            const double ell = boundary_length(2, alpha);  // inversive route
            c.require(std::abs(ell - closed_form_ell(2, alpha)) < 1e-12 * std::max(1.0, ell),
                      "inversive route disagrees with closed form at a=" + fmt(alpha));
            if (!c.ok) return;
        }
        check_generators(c, 2, 1e-10);
        // conj . S_1^{-1} . conj = S_4 (reflection swaps j and 2g+1-j)
        const SurfaceGeometry geo = make_surface(2, 0.6 * kPi / 8);
        const MobiusTransform s1inv = geo.generators[0].inverse();
        for (int i = 0; i < 40; ++i) {
            const Complex z = std::polar(0.05 + 0.9 * i / 40.0, 2 * kPi * i / 40.0 + 0.1);
            c.require(std::abs(std::conj(s1inv(std::conj(z))) - geo.generators[3](z)) < 1e-12,
                      "conjugation relation fails at sample " + std::to_string(i));
            if (!c.ok) return;
        }
        const GluedMesh core = build_core_mesh(make_surface(2, 0.62 * kPi / 8), 0.05);
        c.require(euler_characteristic(core) == -3,
                  "core Euler characteristic " + std::to_string(euler_characteristic(core)));
        c.note("20 angles; generator transport; core chi = -3");
    });

    criterion(8, "genus-1 glued mesh: topology and area", 30.0, [](Check& c) {
        const SurfaceGeometry geo = make_surface(1, 0.7);
        const EndProfile profile = make_profile(1.0, 3.0, geo.ell);
        const GluedMesh mesh = build_glued_mesh(geo, profile, 4.0, 0.05);
        c.require(euler_characteristic(mesh) == -1,
                  "glued Euler characteristic " + std::to_string(euler_characteristic(mesh)));
        const double area = core_hyperbolic_area(mesh);
        c.require(std::abs(area - 2.0 * kPi) < 0.02 * 2.0 * kPi,
                  "core area " + fmt(area) + " vs 2 pi");
        c.note("chi = -1, core area " + fmt(area));
    });

    if (g_failures) {
        std::printf("ACCEPTANCE: %d criterion(s) FAILED\n", g_failures);
        return 1;
    }
    std::printf("ACCEPTANCE: all criteria passed\n");
    return 0;
}
