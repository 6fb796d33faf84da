#include "cyleig/end_profile.hpp"

#include <cmath>

#include "cyleig/errors.hpp"

namespace cyleig {

namespace {
constexpr double kFlat = 4.0 * M_PI * M_PI;  // (2 pi)^2, the flat-part value
}

EndProfile::EndProfile(double r0, double R, double ell) : r0_(r0), R_(R), ell_(ell) {
    if (!(0.0 < r0 && r0 < R))
        throw DomainError("end profile: need 0 < r0 < R");
    const double c = std::cosh(r0);
    if (!(c * c < kFlat))
        throw DomainError("end profile: cosh^2(r0) must stay below (2 pi)^2");
    if (!(ell > 0.0))
        throw DomainError("end profile: ell must be positive");

    // Quintic Hermite blend in t = (r - r0)/(R - r0): match value and the
    // first two derivatives of cosh^2 at r0 and of the constant at R.
    const double hs = R - r0;
    const double v0 = c * c, d0 = hs * std::sinh(2.0 * r0),
                 dd0 = hs * hs * 2.0 * std::cosh(2.0 * r0);
    const double v1 = kFlat, d1 = 0.0, dd1 = 0.0;
    coef_[0] = v0;
    coef_[1] = d0;
    coef_[2] = 0.5 * dd0;
    coef_[3] = -10.0 * v0 - 6.0 * d0 - 1.5 * dd0 + 0.5 * dd1 - 4.0 * d1 + 10.0 * v1;
    coef_[4] = 15.0 * v0 + 8.0 * d0 + 1.5 * dd0 - dd1 + 7.0 * d1 - 15.0 * v1;
    coef_[5] = -6.0 * v0 - 3.0 * d0 - 0.5 * dd0 + 0.5 * dd1 - 3.0 * d1 + 6.0 * v1;

    // Monotonicity check on a fine grid; fails only for extreme parameters.
    const int n = 10000;
    for (int i = 1; i < n; ++i) {
        const double r = R * double(i) / double(n);
        if (!(F_prime(r) > 0.0))
            throw DomainError(
                "end profile: blend is not strictly increasing on (0, R); "
                "choose a larger R or smaller r0");
    }
}

double EndProfile::F(double r) const {
    if (r <= r0_) {
        const double c = std::cosh(r);
        return c * c;
    }
    if (r >= R_) return kFlat;
    const double t = (r - r0_) / (R_ - r0_);
    double p = coef_[5];
    for (int i = 4; i >= 0; --i) p = p * t + coef_[i];
    return p;
}

double EndProfile::F_prime(double r) const {
    if (r <= r0_) return std::sinh(2.0 * r);
    if (r >= R_) return 0.0;
    const double t = (r - r0_) / (R_ - r0_);
    double p = 5.0 * coef_[5];
    for (int i = 4; i >= 1; --i) p = p * t + i * coef_[i];
    return p / (R_ - r0_);
}

EndProfile make_profile(double r0, double R, double ell) { return EndProfile(r0, R, ell); }

double mode_threshold(int n, double ell) {
    if (n < 0) throw DomainError("mode_threshold: n must be >= 0");
    return double(n) * double(n) / (ell * ell);
}

double decay_rate(double lambda, int n, double ell) {
    const double thr = mode_threshold(n, ell);
    if (!(lambda < thr))
        throw DomainError("decay_rate: lambda must lie below the mode threshold");
    return std::sqrt(thr - lambda);
}

}  // namespace cyleig
