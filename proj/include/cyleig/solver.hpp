#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <string>
#include <vector>

#include "cyleig/end_profile.hpp"
#include "cyleig/mesh.hpp"

namespace cyleig {

using SpMat = Eigen::SparseMatrix<double>;

enum class Sector { odd, even, full };
enum class TruncationBC { neumann, dirichlet };

// P1 stiffness/mass system with all node pairings (Mobius sides, core/end
// interface) already merged into shared degrees of freedom.
struct AssembledSystem {
    SpMat A, M;
    std::vector<int> node_dof;  // mesh node -> dof
    int num_dofs = 0;
};

// `profile` supplies the end-chart metric coefficient; may be null when the
// mesh has no end triangles.
AssembledSystem assemble(const GluedMesh& mesh, const EndProfile* profile);

// Symmetry-sector restriction and boundary conditions, realized as a signed
// selection matrix P: reduced matrices are P^T A P, P^T M P.
struct ReducedSystem {
    SpMat A, M;
    std::vector<int> dof_index;    // -1 = constrained to zero
    std::vector<double> dof_sign;  // u(dof) = sign * x(dof_index)
    int num_reduced = 0;
};

// dirichlet_base additionally clamps the r = 0 end nodes (used by the
// flat-cylinder oracle, which has no core chart).
ReducedSystem apply_sector(const AssembledSystem& sys, const GluedMesh& mesh,
                           Sector sector, TruncationBC bc, bool dirichlet_base = false);

struct EigenSolveResult {
    std::vector<double> values;     // ascending
    std::vector<double> residuals;  // ||A v - lambda M v|| / ||M v||
    Eigen::MatrixXd vectors;        // columns, M-normalized
};

// k smallest eigenvalues of A x = lambda M x by shift-invert Lanczos with a
// sparse LDLT inner solve and full reorthogonalization; deterministic start.
EigenSolveResult solve_smallest(const SpMat& A, const SpMat& M, int k, double tol = 1e-8);

// Restrict a per-node vector (assumed compatible with all identifications and
// the sector symmetry) to reduced coordinates; and the inverse expansion.
Eigen::VectorXd reduce_node_vector(const AssembledSystem& sys, const ReducedSystem& red,
                                   const std::vector<double>& node_values);
std::vector<double> expand_to_nodes(const AssembledSystem& sys, const ReducedSystem& red,
                                    const Eigen::VectorXd& x);

struct SpectrumConfig {
    int genus = 1;
    double alpha = 0.7;
    double alpha_prime = -1.0;  // < 0: fully symmetric surface
    double r0 = 1.0, R = 3.0;
    double L = 0.0;  // <= 0: choose automatically from the decay rate
    double h = 0.05;
    int k = 6;
    double tol = 1e-8;
    Sector sector = Sector::odd;
};

struct SpectrumReport {
    Sector sector = Sector::odd;
    double ell = 0.0, threshold = 0.0, h = 0.0, L = 0.0;
    std::vector<double> eigenvalues_dirichlet, residuals_dirichlet;
    std::vector<double> eigenvalues_neumann, residuals_neumann;
    int count_below_threshold = 0;  // Dirichlet-truncated values below 1/ell^2
    double decay_rate_est = 0.0;
    std::vector<double> L_sequence;        // truncation-convergence study
    std::vector<double> lambda_min_by_L;   // Neumann lambda_min at each L
    std::vector<std::string> warnings;
};

// End-to-end pipeline: geometry, profile, glued mesh, sector reduction, and
// the Dirichlet/Neumann truncation bracket with an L-convergence sequence.
SpectrumReport compute_spectrum(const SpectrumConfig& config);

}  // namespace cyleig
