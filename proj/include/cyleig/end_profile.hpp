#pragma once

namespace cyleig {

// Warped-product metric dr^2 + F(r) dy^2 on the cylindrical end: F = cosh^2
// near the core boundary, blended C^2 to the flat constant (2 pi)^2 past R.
class EndProfile {
  public:
    // Quintic Hermite blend on [r0, R]; monotonicity of F on (0, R) is
    // validated on a 10^4-point grid at construction.
    EndProfile(double r0, double R, double ell);

    double F(double r) const;
    double F_prime(double r) const;

    double r0() const { return r0_; }
    double R() const { return R_; }
    double ell() const { return ell_; }

  private:
    double r0_ = 1.0;
    double R_ = 3.0;
    double ell_ = 0.0;
    double coef_[6] = {};  // blend polynomial in t = (r - r0)/(R - r0)
};

EndProfile make_profile(double r0, double R, double ell);

// Cutoff energy of transverse Fourier mode n on the flat part: n^2 / ell^2.
// The odd sector excludes n = 0, so its essential spectrum starts at mode 1.
double mode_threshold(int n, double ell);

// Exponential decay rate sqrt(n^2/ell^2 - lambda) of a trapped mode along the
// flat end; used to choose the truncation length L.
double decay_rate(double lambda, int n, double ell);

}  // namespace cyleig
