#pragma once

#include <stdexcept>
#include <string>

namespace cyleig {

// Invalid parameters, inputs outside the admissible domain.
struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// Geometric construction failed (tangent disks, degenerate core disk, arc
// stitching gap, ...).
struct GeometryError : std::runtime_error {
    explicit GeometryError(const std::string& what) : std::runtime_error(what) {}
};

// Triangulation quality or conformity failure.
struct MeshError : std::runtime_error {
    explicit MeshError(const std::string& what) : std::runtime_error(what) {}
};

// Quadrature or eigensolver failed to reach the requested accuracy.
struct ConvergenceError : std::runtime_error {
    explicit ConvergenceError(const std::string& what, double best_estimate = 0.0)
        : std::runtime_error(what), best(best_estimate) {}
    double best;
};

}  // namespace cyleig
