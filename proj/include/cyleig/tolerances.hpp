#pragma once

namespace cyleig::tol {

// Normalization and identity residuals of exact constructions.
inline constexpr double kExact = 1e-12;

// Matching tolerance for node pairings and arc stitching.
inline constexpr double kPairing = 1e-9;

// Relative tolerance of the adaptive quadrature.
inline constexpr double kQuadRel = 1e-10;

// Relative agreement of the stitched boundary length with the closed form.
inline constexpr double kBoundaryLengthRel = 1e-8;

// Bisection tolerance for the critical angle.
inline constexpr double kCriticalAlpha = 1e-12;

// Default relative residual of reported eigenpairs.
inline constexpr double kEigenResidual = 1e-8;

// Minimum triangle angle accepted by the mesher, degrees.
inline constexpr double kMinAngleDeg = 15.0;

}  // namespace cyleig::tol
