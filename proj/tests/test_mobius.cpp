#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "cyleig/errors.hpp"
#include "cyleig/mobius.hpp"

using namespace cyleig;

namespace {

// deterministic sample points in the disk
std::vector<Complex> sample_points(int n, double rmax = 0.9) {
    std::mt19937 rng(1234u);
    std::uniform_real_distribution<double> ur(0.0, rmax), ut(0.0, 2 * M_PI);
    std::vector<Complex> out;
    for (int i = 0; i < n; ++i) out.push_back(std::polar(ur(rng), ut(rng)));
    return out;
}

std::vector<MobiusTransform> sample_transforms() {
    return {
        MobiusTransform::identity(),
        MobiusTransform::rotation(0.7),
        MobiusTransform::axis_translation(0.4),
        MobiusTransform::rotation(2.1) * MobiusTransform::axis_translation(-0.6),
        MobiusTransform::axis_translation(0.25) * MobiusTransform::rotation(-1.3) *
            MobiusTransform::axis_translation(0.8),
    };
}

}  // namespace

TEST_CASE("transforms stay normalized and preserve the unit disk") {
    for (const auto& t : sample_transforms()) {
        CHECK(t.normalization_residual() < 1e-12);
        for (const Complex& z : sample_points(20)) {
            CHECK(std::abs(t(z)) < 1.0);
        }
        // boundary to boundary
        CHECK(std::abs(std::abs(t(std::polar(1.0, 0.3))) - 1.0) < 1e-12);
    }
}

TEST_CASE("composition and inverse: identity chain") {
    const auto ts = sample_transforms();
    for (const auto& t : ts)
        for (const auto& u : ts) {
            const MobiusTransform chain = t.inverse() * (t * u) * u.inverse();
            for (const Complex& z : sample_points(10))
                CHECK(std::abs(chain(z) - z) < 1e-12);
        }
}

TEST_CASE("hyperbolic distance: closed form properties") {
    // distance from 0 to r on the real axis is 2 artanh r
    for (double r : {0.1, 0.5, 0.9})
        CHECK(hyperbolic_distance(Complex(0, 0), Complex(r, 0)) ==
              doctest::Approx(2.0 * std::atanh(r)).epsilon(1e-13));
    // symmetry and triangle inequality on samples
    const auto pts = sample_points(8);
    for (const auto& a : pts)
        for (const auto& b : pts) {
            CHECK(hyperbolic_distance(a, b) == doctest::Approx(hyperbolic_distance(b, a)));
            for (const auto& c : pts)
                CHECK(hyperbolic_distance(a, b) <=
                      hyperbolic_distance(a, c) + hyperbolic_distance(c, b) + 1e-12);
        }
}

TEST_CASE("isometry invariance of the distance") {
    const auto pts = sample_points(12);
    for (const auto& t : sample_transforms())
        for (size_t i = 0; i + 1 < pts.size(); i += 2) {
            const double d0 = hyperbolic_distance(pts[i], pts[i + 1]);
            const double d1 = hyperbolic_distance(t(pts[i]), t(pts[i + 1]));
            CHECK(d1 == doctest::Approx(d0).epsilon(1e-11));
        }
}

TEST_CASE("orthodisk: orthogonality and ideal endpoints") {
    const OrthoDisk d(std::polar(1.25, 0.4), 0.75);
    CHECK(d.orthogonality_residual() < 1e-12);
    double lo, hi;
    d.ideal_endpoints(lo, hi);
    for (double e : {lo, hi}) {
        const Complex z = std::polar(1.0, e);
        CHECK(std::abs(std::abs(z - d.center) - d.radius) < 1e-12);
    }
    CHECK_THROWS_AS(OrthoDisk(Complex(0.5, 0), 0.75), GeometryError);
}

TEST_CASE("signed sinh distance agrees with a sampled distance oracle") {
    const OrthoDisk d(std::polar(1.25, 0.4), 0.75);
    for (const Complex& z : sample_points(6, 0.8)) {
        // oracle: minimize the distance to densely sampled geodesic points
        double best = 1e300;
        for (int i = -4000; i <= 4000; ++i)
            best = std::min(best, hyperbolic_distance(z, geodesic_point(d, i * 2.5e-3)));
        const double got = std::abs(std::asinh(signed_sinh_distance(z, d)));
        CHECK(got == doctest::Approx(best).epsilon(1e-5));
        // sign: negative inside the Euclidean disk
        CHECK((signed_sinh_distance(z, d) < 0) == d.contains(z));
    }
}

TEST_CASE("geodesic parametrization is unit speed and invertible") {
    const OrthoDisk d(std::polar(1.4, -0.9), std::sqrt(1.4 * 1.4 - 1.0));
    for (double s1 : {-1.0, 0.0, 0.7})
        for (double s2 : {-0.4, 0.2, 1.5}) {
            const Complex a = geodesic_point(d, s1), b = geodesic_point(d, s2);
            CHECK(std::abs(std::abs(a - d.center) - d.radius) < 1e-12);  // on the circle
            CHECK(hyperbolic_distance(a, b) == doctest::Approx(std::abs(s1 - s2)).epsilon(1e-11));
            CHECK(geodesic_coordinate(d, a) == doctest::Approx(s1).epsilon(1e-11));
        }
    // tangent matches finite differences of the point
    for (double s : {-0.8, 0.1, 1.2}) {
        const double eps = 1e-6;
        const Complex fd = (geodesic_point(d, s + eps) - geodesic_point(d, s - eps)) / (2 * eps);
        const Complex t = geodesic_tangent(d, s);
        CHECK(std::abs(t - fd / std::abs(fd) * std::abs(t)) / std::abs(t) < 1e-5);
    }
}

TEST_CASE("dist_origin_to_geodesic and inversive distance") {
    const OrthoDisk d(Complex(1.25, 0.0), 0.75);
    // closed form: 2 artanh(|c| - r)
    CHECK(dist_origin_to_geodesic(d) == doctest::Approx(2.0 * std::atanh(0.5)).epsilon(1e-13));
    // sampled oracle
    double best = 1e300;
    for (int i = -3000; i <= 3000; ++i)
        best = std::min(best, hyperbolic_distance(Complex(0, 0), geodesic_point(d, i * 1e-3)));
    CHECK(dist_origin_to_geodesic(d) == doctest::Approx(best).epsilon(1e-6));

    const OrthoDisk e(Complex(-1.25, 0.0), 0.75);
    // disjoint geodesics: arcosh(inversive distance) equals the sampled minimum
    double mind = 1e300;
    for (int i = -2000; i <= 2000; ++i)
        for (int j = -200; j <= 200; ++j)
            mind = std::min(mind, hyperbolic_distance(geodesic_point(d, i * 2e-3),
                                                      geodesic_point(e, j * 2e-2)));
    CHECK(dist_between_geodesics(d, e) == doctest::Approx(mind).epsilon(1e-3));
}

TEST_CASE("circle intersection point lies on both circles, inside the disk") {
    const OrthoDisk a(std::polar(1.3, 0.2), std::sqrt(1.3 * 1.3 - 1.0));
    const OrthoDisk b(std::polar(1.3, 1.1), std::sqrt(1.3 * 1.3 - 1.0));
    const Complex z = circle_intersection_inside(a, b);
    CHECK(std::abs(z) < 1.0);
    CHECK(std::abs(std::abs(z - a.center) - a.radius) < 1e-12);
    CHECK(std::abs(std::abs(z - b.center) - b.radius) < 1e-12);
}

TEST_CASE("from_boundary_points realizes the three correspondences") {
    const double src[3] = {0.2, 1.5, 3.9};
    const double dst[3] = {-0.4, 0.9, 2.7};
    const MobiusTransform t = MobiusTransform::from_boundary_points(src, dst);
    CHECK(t.normalization_residual() < 1e-10);
    for (int i = 0; i < 3; ++i)
        CHECK(std::abs(t(std::polar(1.0, src[i])) - std::polar(1.0, dst[i])) < 1e-8);
}
