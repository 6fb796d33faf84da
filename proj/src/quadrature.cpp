#include "cyleig/quadrature.hpp"

#include <cmath>

#include "cyleig/errors.hpp"

namespace cyleig {

void gauss_legendre(int n, double a, double b,
                    std::vector<double>& nodes, std::vector<double>& weights) {
    nodes.resize(n);
    weights.resize(n);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        // Newton iteration on P_n from the Chebyshev-like initial guess
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (x * p0 - p1) / (x * x - 1.0);
            const double dx = p0 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        nodes[i] = mid - half * x;
        nodes[n - 1 - i] = mid + half * x;
        weights[i] = weights[n - 1 - i] = 2.0 * half / ((1.0 - x * x) * pp * pp);
    }
}

QuadratureResult integrate_disk(const std::function<double(double, double)>& f,
                                double radius, double rel_tol, int max_order) {
    auto pass = [&](int n) {
        std::vector<double> rn, rw, tn, tw;
        gauss_legendre(n, 0.0, radius, rn, rw);
        gauss_legendre(2 * n, 0.0, 2.0 * M_PI, tn, tw);
        double sum = 0.0;
        for (int i = 0; i < n; ++i) {
            const double r = rn[i];
            double ang = 0.0;
            for (size_t j = 0; j < tn.size(); ++j)
                ang += tw[j] * f(r * std::cos(tn[j]), r * std::sin(tn[j]));
            sum += rw[i] * r * ang;
        }
        return sum;
    };
    double prev = pass(8);
    for (int n = 16; n <= max_order; n *= 2) {
        const double cur = pass(n);
        // identically (or numerically) zero integrals: converged in absolute
        // terms, a relative criterion would chase round-off forever
        if (std::max(std::abs(cur), std::abs(prev)) < 1e-14)
            return {cur, std::abs(cur - prev), n};
        const double scale = std::max({std::abs(cur), std::abs(prev), 1e-300});
        const double rel = std::abs(cur - prev) / scale;
        if (rel < rel_tol) return {cur, rel, n};
        prev = cur;
    }
    throw ConvergenceError("integrate_disk: quadrature did not converge", prev);
}

}  // namespace cyleig
