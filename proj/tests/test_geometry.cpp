#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "cyleig/errors.hpp"
#include "cyleig/geometry.hpp"
#include "cyleig/tolerances.hpp"

using namespace cyleig;

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;

double closed_form_ell(int g, double alpha) {
    const double s2 = std::sin(alpha) * std::sin(alpha);
    return 4.0 * g * std::acosh((1.0 - std::cos(kPi / (2 * g)) - s2) / s2);
}
}  // namespace

TEST_CASE("angle of parallelism: tan(alpha) sinh(rho(0, D_1)) = 1") {
    for (int i = 1; i <= 50; ++i) {
        const double alpha = 0.05 + (kPi / 4 - 0.06) * i / 50.0;
        const OrthoDisk d1 = inscribed_disk(1, 1, alpha);
        const double rho = dist_origin_to_geodesic(d1);
        CHECK(std::abs(std::tan(alpha) * std::sinh(rho) - 1.0) < tol::kExact);
    }
}

TEST_CASE("genus-1 boundary length identities") {
    for (int i = 1; i <= 50; ++i) {
        const double alpha = 0.05 + (kPi / 4 - 0.06) * i / 50.0;
        const double ell = boundary_length(1, alpha);  // inversive-distance route
        const double rho = dist_origin_to_geodesic(inscribed_disk(1, 1, alpha));
        const double sh = std::sinh(rho);
        CHECK(std::abs(std::cosh(ell / 4.0) - sh * sh) < tol::kExact * std::max(1.0, sh * sh));
        CHECK(std::abs(std::tan(alpha) * std::tan(alpha) * std::cosh(ell / 4.0) - 1.0) <
              tol::kExact * 10);
        // inversive distance between adjacent disks is cot^2(alpha)
        const double inv = inversive_distance(inscribed_disk(1, 1, alpha),
                                              inscribed_disk(2, 1, alpha));
        const double cot = 1.0 / std::tan(alpha);
        CHECK(inv == doctest::Approx(cot * cot).epsilon(1e-13));
    }
}

TEST_CASE("closed-form ell matches the inversive route for genus 1, 2, 3") {
    for (int g : {1, 2, 3})
        for (int i = 1; i <= 20; ++i) {
            const double alpha = (kPi / (4 * g) - 0.02) * i / 20.0 + 0.01;
            const double ell = boundary_length(g, alpha);
            CHECK(std::abs(ell - closed_form_ell(g, alpha)) < 1e-12 * std::max(1.0, ell));
        }
}

TEST_CASE("generators map side circles onto their partners") {
    for (int g : {1, 2, 3}) {
        const double alpha = kPi / (4 * g) * 0.6;
        const SurfaceGeometry geo = make_surface(g, alpha);
        for (int j = 1; j <= 2 * g; ++j) {
            const OrthoDisk& from = geo.disks[j - 1];
            const OrthoDisk& to = geo.disks[j - 1 + 2 * g];
            for (int i = 0; i < 40; ++i) {
                const Complex z = from.center + from.radius * std::polar(1.0, 2 * kPi * i / 40.0);
                if (std::abs(z) >= 1.0) continue;
                const Complex w = geo.generators[j - 1](z);
                CHECK(std::abs(std::abs(w - to.center) - to.radius) < 1e-10);
            }
        }
    }
}

TEST_CASE("conjugation relation: conj . S_1^{-1} . conj = S_2 (genus 1)") {
    const SurfaceGeometry geo = make_surface(1, 0.62);
    const MobiusTransform s1inv = geo.generators[0].inverse();
    for (int i = 0; i < 25; ++i) {
        const Complex z = std::polar(0.05 + 0.9 * i / 25.0, 2 * kPi * i / 25.0 + 0.1);
        const Complex lhs = std::conj(s1inv(std::conj(z)));
        CHECK(std::abs(lhs - geo.generators[1](z)) < 1e-12);
    }
}

TEST_CASE("surface assembly invariants") {
    const SurfaceGeometry geo = make_surface(1, 0.7);
    REQUIRE(geo.disks.size() == 4);
    REQUIRE(geo.core_disks.size() == 4);
    REQUIRE(geo.generators.size() == 2);
    CHECK(geo.ell == doctest::Approx(closed_form_ell(1, 0.7)).epsilon(1e-13));
    // core disks orthogonal to the unit circle and to their neighbors
    for (int i = 0; i < 4; ++i) {
        CHECK(geo.core_disks[i].orthogonality_residual() < 1e-9);
        for (int k = 0; k < 2; ++k) {
            const OrthoDisk& nb = geo.disks[(i + k) % 4];
            const double r = std::abs(std::norm(geo.core_disks[i].center - nb.center) -
                                      geo.core_disks[i].radius * geo.core_disks[i].radius -
                                      nb.radius * nb.radius);
            CHECK(r < 1e-9);
        }
    }
    CHECK(in_core(Complex(0, 0), geo));
    CHECK(!in_core(geo.disks[0].center, geo));
    CHECK(ball_clearance(geo) > 0.0);
    CHECK_THROWS_AS(make_surface(1, 0.9), DomainError);   // alpha >= pi/4
    CHECK_THROWS_AS(make_surface(1, -0.1), DomainError);
}

TEST_CASE("boundary parametrization: length, equivariance, lift validity") {
    for (double alpha : {0.55, 0.7, 0.78}) {
        const SurfaceGeometry geo = make_surface(1, alpha);
        const BoundaryParametrization param(geo);
        const double ell = boundary_length(1, alpha);
        CHECK(std::abs(param.total_length() - ell) < 1e-8 * ell);
        for (int i = 0; i <= 40; ++i) {
            const double y = ell * i / 40.0 - ell / 2.0;
            const Complex z = param.point(y);
            // lies on its core disk and in the closed fundamental domain
            const BoundaryArc& a = param.arc_at(y);
            const OrthoDisk& d = geo.core_disks[a.core_disk];
            CHECK(std::abs(std::abs(z - d.center) - d.radius) < 1e-10);
            // J-equivariance
            CHECK(std::abs(param.point(-y) - std::conj(z)) < 1e-9);
        }
        // anchored on the positive real axis
        CHECK(std::abs(param.point(0.0).imag()) < 1e-12);
        CHECK(param.point(0.0).real() > 0.0);
        // unit speed: finite differences of the point have hyperbolic speed 1
        for (double y : {0.03, 0.2, 0.4 * ell}) {
            const double eps = 1e-6;
            const double d = hyperbolic_distance(param.point(y - eps), param.point(y + eps));
            CHECK(d == doctest::Approx(2 * eps).epsilon(1e-5));
        }
    }
}

TEST_CASE("genus 2 and 3 parametrizations close up") {
    for (int g : {2, 3}) {
        const double alpha = kPi / (4 * g) * 0.55;
        const SurfaceGeometry geo = make_surface(g, alpha);
        const BoundaryParametrization param(geo);
        CHECK(std::abs(param.total_length() - geo.ell) < 1e-8 * geo.ell);
        CHECK(param.arcs().size() >= size_t(4 * g));
    }
}

TEST_CASE("broken symmetry: enlarged opposite pair keeps the gluing relations") {
    const double alpha = 0.6, alpha_prime = 0.68;
    const SurfaceGeometry geo = make_surface_broken(alpha, alpha_prime);
    CHECK(geo.disk_alpha(1) == alpha);
    CHECK(geo.disk_alpha(2) == alpha_prime);
    // S_1 maps boundary of D_1 to boundary of D_3
    for (int i = 0; i < 40; ++i) {
        const Complex z = geo.disks[0].center +
                          geo.disks[0].radius * std::polar(1.0, 2 * kPi * i / 40.0);
        if (std::abs(z) >= 1.0) continue;
        const Complex w = geo.generators[0](z);
        CHECK(std::abs(std::abs(w - geo.disks[2].center) - geo.disks[2].radius) < 1e-9);
    }
    // conj relation still defines S_2
    for (int i = 0; i < 10; ++i) {
        const Complex z = std::polar(0.3 + 0.05 * i, 0.61 * i);
        const Complex lhs = std::conj(geo.generators[0].inverse()(std::conj(z)));
        CHECK(std::abs(lhs - geo.generators[1](z)) < 1e-11);
    }
    // S_2 maps boundary of D_2 to boundary of D_4
    for (int i = 0; i < 40; ++i) {
        const Complex z = geo.disks[1].center +
                          geo.disks[1].radius * std::polar(1.0, 2 * kPi * i / 40.0);
        if (std::abs(z) >= 1.0) continue;
        const Complex w = geo.generators[1](z);
        CHECK(std::abs(std::abs(w - geo.disks[3].center) - geo.disks[3].radius) < 1e-9);
    }
    // With unequal angles the gluing cannot identify the core corner on one
    // side of D_1 with the corner on D_3 on both ends (the side segments have
    // different lengths), so the perpendicular arcs do not stitch into a
    // closed curve; the parametrization must report that as a geometry error.
    CHECK_THROWS_AS((void)BoundaryParametrization{geo}, GeometryError);
    // enlarged disks pull the neighbors closer: shorter boundary
    CHECK(geo.ell < boundary_length(1, alpha));
    CHECK_THROWS_AS(make_surface_broken(0.7, 0.6), DomainError);
}
