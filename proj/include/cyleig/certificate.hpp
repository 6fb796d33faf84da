#pragma once

#include <vector>

#include "cyleig/test_function.hpp"

namespace cyleig {

// Outcome of the trapped-eigenvalue existence check: an odd test function
// supported in the central ball certifies an eigenvalue below the continuous
// spectrum whenever its Rayleigh quotient drops under 1/ell^2.
struct CertificateReport {
    double dirichlet_energy = 0.0;  // ||d phi||^2 (Euclidean = hyperbolic, conformal)
    double weighted_l2 = 0.0;       // ||phi||^2 with hyperbolic area weight
    double rayleigh = 0.0;
    double ell = 0.0;
    double threshold = 0.0;  // 1 / ell^2
    bool holds = false;
    // genus-1 only: tan^2(alpha) * cosh(||phi|| / (4 ||d phi||)); > 1 iff holds
    double equivalent_form_value = 0.0;
    double quadrature_error_estimate = 0.0;
};

// Euclidean Dirichlet energy of phi over its support ball.  By conformal
// invariance of the 2-d Dirichlet integral this equals the energy in the
// hyperbolic metric, so no weight is inserted.
double dirichlet_energy(const TestFunction& phi);

// L^2 norm squared of phi with the hyperbolic area weight 4 / (1 - |z|^2)^2.
double weighted_l2(const TestFunction& phi);

// Evaluate the certificate for the surface with the given genus and angle.
// For genus 1 also evaluates the closed trigonometric form and asserts the two
// booleans agree.
CertificateReport check_condition(const TestFunction& phi, int genus, double alpha);

// The unique angle where the Rayleigh quotient equals 1/ell(alpha)^2; the
// certificate holds exactly on (alpha*, pi/(4 genus)).  Bisection to 1e-12;
// genus 1 result is cross-checked against tan^2(a*) = 1/cosh(q).
double critical_alpha(const TestFunction& phi, int genus);

struct MultiCertificate {
    double mu_max = 0.0;
    int certified_count = 0;
};

// m-dimensional extension: largest generalized eigenvalue of the span's
// stiffness/mass pencil; if mu_max < 1/ell^2 the whole span is certified.
MultiCertificate multi_certificate(const std::vector<TestFunction>& phis,
                                   int genus, double alpha);

}  // namespace cyleig
