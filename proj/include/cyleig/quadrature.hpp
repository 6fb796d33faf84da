#pragma once

#include <functional>
#include <vector>

namespace cyleig {

// Gauss-Legendre nodes and weights on [a, b].
void gauss_legendre(int n, double a, double b,
                    std::vector<double>& nodes, std::vector<double>& weights);

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;  // |last refinement change|, relative
    int order = 0;                // tensor order of the final pass
};

// Integral of f(x, y) over the disk of the given radius, computed as a polar
// tensor Gauss-Legendre rule with order doubling until the relative change of
// successive passes drops below rel_tol.  Throws ConvergenceError (carrying
// the best estimate) if max_order is reached first.
QuadratureResult integrate_disk(const std::function<double(double, double)>& f,
                                double radius, double rel_tol, int max_order = 2048);

}  // namespace cyleig
