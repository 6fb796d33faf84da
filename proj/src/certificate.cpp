#include "cyleig/certificate.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "cyleig/errors.hpp"
#include "cyleig/geometry.hpp"
#include "cyleig/quadrature.hpp"
#include "cyleig/tolerances.hpp"

namespace cyleig {

namespace {

constexpr double kQuadRelTol = 1e-10;

double hyperbolic_weight(double x, double y) {
    const double s = 1.0 - x * x - y * y;
    return 4.0 / (s * s);
}

}  // namespace

double dirichlet_energy(const TestFunction& phi) {
    // Conformal invariance in two dimensions: the hyperbolic weight cancels
    // between |grad|^2 and the area element, so integrate the flat density.
    auto integrand = [&](double x, double y) {
        const auto g = phi.gradient(Complex(x, y));
        return g[0] * g[0] + g[1] * g[1];
    };
    return integrate_disk(integrand, phi.support_radius(), kQuadRelTol).value;
}

double weighted_l2(const TestFunction& phi) {
    auto integrand = [&](double x, double y) {
        const double v = phi.value(Complex(x, y));
        return v * v * hyperbolic_weight(x, y);
    };
    return integrate_disk(integrand, phi.support_radius(), kQuadRelTol).value;
}

CertificateReport check_condition(const TestFunction& phi, int genus, double alpha) {
    CertificateReport rep;
    auto energy = integrate_disk(
        [&](double x, double y) {
            const auto g = phi.gradient(Complex(x, y));
            return g[0] * g[0] + g[1] * g[1];
        },
        phi.support_radius(), kQuadRelTol);
    auto norm = integrate_disk(
        [&](double x, double y) {
            const double v = phi.value(Complex(x, y));
            return v * v * hyperbolic_weight(x, y);
        },
        phi.support_radius(), kQuadRelTol);
    rep.dirichlet_energy = energy.value;
    rep.weighted_l2 = norm.value;
    rep.quadrature_error_estimate = std::max(energy.error_estimate, norm.error_estimate);
    if (!(rep.weighted_l2 > 0.0))
        throw DomainError("certificate: test function is identically zero");
    rep.rayleigh = rep.dirichlet_energy / rep.weighted_l2;
    rep.ell = boundary_length(genus, alpha);
    rep.threshold = 1.0 / (rep.ell * rep.ell);
    rep.holds = rep.rayleigh < rep.threshold;
    if (genus == 1) {
        const double q = std::sqrt(rep.weighted_l2) / (4.0 * std::sqrt(rep.dirichlet_energy));
        const double t = std::tan(alpha);
        rep.equivalent_form_value = t * t * std::cosh(q);
        const bool holds_trig = rep.equivalent_form_value > 1.0;
        if (holds_trig != rep.holds)
            throw GeometryError("certificate: the two criterion forms disagree");
    }
    return rep;
}

double critical_alpha(const TestFunction& phi, int genus) {
    const double energy = dirichlet_energy(phi);
    const double norm = weighted_l2(phi);
    if (!(norm > 0.0))
        throw DomainError("certificate: test function is identically zero");
    const double rayleigh = energy / norm;
    const double upper = M_PI / (4.0 * genus);

    auto margin = [&](double a) {
        const double ell = boundary_length(genus, a);
        return 1.0 / (ell * ell) - rayleigh;  // > 0 where the certificate holds
    };
    double lo = 1e-6, hi = upper - 1e-9;
    if (margin(hi) <= 0.0)
        throw ConvergenceError(
            "certificate: condition fails over the whole admissible angle range", hi);
    if (margin(lo) > 0.0) return lo;  // certified everywhere; degenerate but legal
    while (hi - lo > tol::kCriticalAlpha) {
        const double mid = 0.5 * (lo + hi);
        (margin(mid) > 0.0 ? hi : lo) = mid;
    }
    const double alpha_star = 0.5 * (lo + hi);
    if (genus == 1) {
        // closed form: tan^2(a*) cosh(q) = 1 with q = ||phi|| / (4 ||d phi||)
        const double q = std::sqrt(norm) / (4.0 * std::sqrt(energy));
        const double closed = std::atan(1.0 / std::sqrt(std::cosh(q)));
        if (std::abs(alpha_star - closed) > 1e-10)
            throw GeometryError("certificate: bisection disagrees with the closed form");
    }
    return alpha_star;
}

MultiCertificate multi_certificate(const std::vector<TestFunction>& phis,
                                   int genus, double alpha) {
    const int m = int(phis.size());
    if (m == 0) throw DomainError("multi_certificate: empty family");
    Eigen::MatrixXd A(m, m), M(m, m);
    for (int i = 0; i < m; ++i) {
        for (int j = i; j < m; ++j) {
            const double rad = std::max(phis[i].support_radius(), phis[j].support_radius());
            A(i, j) = A(j, i) = integrate_disk(
                [&](double x, double y) {
                    const auto gi = phis[i].gradient(Complex(x, y));
                    const auto gj = phis[j].gradient(Complex(x, y));
                    return gi[0] * gj[0] + gi[1] * gj[1];
                },
                rad, kQuadRelTol).value;
            M(i, j) = M(j, i) = integrate_disk(
                [&](double x, double y) {
                    return phis[i].value(Complex(x, y)) * phis[j].value(Complex(x, y)) *
                           hyperbolic_weight(x, y);
                },
                rad, kQuadRelTol).value;
        }
    }
    Eigen::LLT<Eigen::MatrixXd> llt(M);
    if (llt.info() != Eigen::Success || M.diagonal().minCoeff() <= 1e-12)
        throw DomainError("multi_certificate: family is linearly dependent (mass matrix not SPD)");
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(A, M);
    if (es.info() != Eigen::Success)
        throw ConvergenceError("multi_certificate: dense eigensolve failed", 0.0);
    MultiCertificate out;
    out.mu_max = es.eigenvalues().maxCoeff();
    const double ell = boundary_length(genus, alpha);
    out.certified_count = (out.mu_max < 1.0 / (ell * ell)) ? m : 0;
    return out;
}

}  // namespace cyleig
