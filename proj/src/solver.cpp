#include "cyleig/solver.hpp"

#include <Eigen/SparseCholesky>
#include <cmath>
#include <random>

#include "cyleig/errors.hpp"
#include "cyleig/geometry.hpp"

namespace cyleig {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) {
        for (int i = 0; i < n; ++i) parent[i] = i;
    }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

double hyperbolic_weight(Complex z) {
    const double s = 1.0 - std::norm(z);
    return 4.0 / (s * s);
}

}  // namespace

AssembledSystem assemble(const GluedMesh& mesh, const EndProfile* profile) {
    const int nn = mesh.num_nodes();
    UnionFind uf(nn);
    for (const auto& p : mesh.side_pairings) uf.unite(p.a, p.b);
    for (const auto& p : mesh.interface_pairs) uf.unite(p[0], p[1]);

    AssembledSystem sys;
    sys.node_dof.assign(nn, -1);
    int nd = 0;
    for (int i = 0; i < nn; ++i)
        if (uf.find(i) == i) sys.node_dof[i] = nd++;
    for (int i = 0; i < nn; ++i) sys.node_dof[i] = sys.node_dof[uf.find(i)];
    sys.num_dofs = nd;

    std::vector<Eigen::Triplet<double>> ta, tm;
    ta.reserve(mesh.triangles.size() * 9);
    tm.reserve(mesh.triangles.size() * 9);
    Complex c[3];
    for (int t = 0; t < int(mesh.triangles.size()); ++t) {
        triangle_coords(mesh, t, c);
        const double x1 = c[0].real(), y1 = c[0].imag();
        const double x2 = c[1].real(), y2 = c[1].imag();
        const double x3 = c[2].real(), y3 = c[2].imag();
        const double det = (x2 - x1) * (y3 - y1) - (x3 - x1) * (y2 - y1);
        if (!(det > 0.0)) throw MeshError("assemble: non-positively-oriented triangle");
        const double area = 0.5 * det;
        // P1 gradients
        const double gx[3] = {(y2 - y3) / det, (y3 - y1) / det, (y1 - y2) / det};
        const double gy[3] = {(x3 - x2) / det, (x1 - x3) / det, (x2 - x1) / det};
        double ke[3][3], me[3][3] = {};
        if (mesh.tri_chart[t] == 0) {
            // core chart: Euclidean stiffness (conformal invariance), weighted
            // mass via the 3-point edge-midpoint rule
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j)
                    ke[i][j] = area * (gx[i] * gx[j] + gy[i] * gy[j]);
            for (int e = 0; e < 3; ++e) {
                const Complex mid = 0.5 * (c[e] + c[(e + 1) % 3]);
                const double w = hyperbolic_weight(mid) * area / 3.0;
                double phi[3] = {0, 0, 0};
                phi[e] = phi[(e + 1) % 3] = 0.5;
                for (int i = 0; i < 3; ++i)
                    for (int j = 0; j < 3; ++j) me[i][j] += w * phi[i] * phi[j];
            }
        } else {
            // end chart (r, yt): density sqrt(G) u_r^2 + u_yt^2 / sqrt(G),
            // mass density sqrt(G), with G = F(r)/(2 pi)^2 at the centroid.
            // A null profile means the exactly flat cylinder F = (2 pi)^2
            // (the asymptotic metric), used by the separation-of-variables
            // oracle tests.
            const double rc = (x1 + x2 + x3) / 3.0;
            const double sg = profile ? std::sqrt(profile->F(rc)) / (2.0 * kPi) : 1.0;
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j)
                    ke[i][j] = area * (sg * gx[i] * gx[j] + gy[i] * gy[j] / sg);
            const double w = sg * area / 12.0;
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) me[i][j] = w * (i == j ? 2.0 : 1.0);
        }
        const auto& tr = mesh.triangles[t];
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                if (!std::isfinite(ke[i][j]) || !std::isfinite(me[i][j]))
                    throw MeshError("assemble: non-finite element entry");
                ta.emplace_back(sys.node_dof[tr[i]], sys.node_dof[tr[j]], ke[i][j]);
                tm.emplace_back(sys.node_dof[tr[i]], sys.node_dof[tr[j]], me[i][j]);
            }
    }
    sys.A.resize(nd, nd);
    sys.M.resize(nd, nd);
    sys.A.setFromTriplets(ta.begin(), ta.end());
    sys.M.setFromTriplets(tm.begin(), tm.end());
    return sys;
}

namespace {

// union-find with a relative sign on each link; detects forced-zero dofs
struct SignedUnionFind {
    std::vector<int> parent;
    std::vector<double> sign;  // sign relative to parent
    std::vector<char> zero;    // valid at roots
    explicit SignedUnionFind(int n) : parent(n), sign(n, 1.0), zero(n, 0) {
        for (int i = 0; i < n; ++i) parent[i] = i;
    }
    std::pair<int, double> find(int x) {
        double s = 1.0;
        while (parent[x] != x) {
            s *= sign[x];
            x = parent[x];
        }
        return {x, s};
    }
    void unite(int a, int b, double s) {
        auto [ra, sa] = find(a);
        auto [rb, sb] = find(b);
        if (ra == rb) {
            if (sa * sb * s < 0) zero[ra] = 1;  // u = -u forces zero
            return;
        }
        parent[ra] = rb;
        sign[ra] = sa * sb * s;  // value(a) = sa*value(ra); want value(a) = s*value(b)
        zero[rb] = char(zero[rb] | zero[ra]);
    }
    void force_zero(int a) { zero[find(a).first] = 1; }
};

}  // namespace

ReducedSystem apply_sector(const AssembledSystem& sys, const GluedMesh& mesh,
                           Sector sector, TruncationBC bc, bool dirichlet_base) {
    SignedUnionFind uf(sys.num_dofs);
    if (sector != Sector::full) {
        const double s = (sector == Sector::odd) ? -1.0 : 1.0;
        for (const auto& p : mesh.symmetry_pairs)
            uf.unite(sys.node_dof[p[0]], sys.node_dof[p[1]], s);
        if (sector == Sector::odd)
            for (int v : mesh.fixed_nodes) uf.force_zero(sys.node_dof[v]);
    }
    if (bc == TruncationBC::dirichlet)
        for (int v : mesh.truncation_nodes) uf.force_zero(sys.node_dof[v]);
    if (dirichlet_base)
        for (int v : mesh.end_base_nodes) uf.force_zero(sys.node_dof[v]);

    ReducedSystem red;
    red.dof_index.assign(sys.num_dofs, -1);
    red.dof_sign.assign(sys.num_dofs, 0.0);
    std::vector<int> root_index(sys.num_dofs, -1);
    int nr = 0;
    for (int d = 0; d < sys.num_dofs; ++d) {
        auto [r, s] = uf.find(d);
        if (uf.zero[r]) continue;
        if (root_index[r] < 0) root_index[r] = nr++;
        red.dof_index[d] = root_index[r];
        red.dof_sign[d] = s;
    }
    red.num_reduced = nr;

    SpMat P(sys.num_dofs, nr);
    std::vector<Eigen::Triplet<double>> tp;
    for (int d = 0; d < sys.num_dofs; ++d)
        if (red.dof_index[d] >= 0) tp.emplace_back(d, red.dof_index[d], red.dof_sign[d]);
    P.setFromTriplets(tp.begin(), tp.end());
    red.A = P.transpose() * sys.A * P;
    red.M = P.transpose() * sys.M * P;
    return red;
}

Eigen::VectorXd reduce_node_vector(const AssembledSystem& sys, const ReducedSystem& red,
                                   const std::vector<double>& node_values) {
    Eigen::VectorXd x = Eigen::VectorXd::Zero(red.num_reduced);
    for (int i = 0; i < int(node_values.size()); ++i) {
        const int d = sys.node_dof[i];
        if (red.dof_index[d] >= 0) x[red.dof_index[d]] = red.dof_sign[d] * node_values[i];
    }
    return x;
}

std::vector<double> expand_to_nodes(const AssembledSystem& sys, const ReducedSystem& red,
                                    const Eigen::VectorXd& x) {
    std::vector<double> out(sys.node_dof.size(), 0.0);
    for (size_t i = 0; i < sys.node_dof.size(); ++i) {
        const int d = sys.node_dof[i];
        if (red.dof_index[d] >= 0) out[i] = red.dof_sign[d] * x[red.dof_index[d]];
    }
    return out;
}

EigenSolveResult solve_smallest(const SpMat& A, const SpMat& M, int k, double tol) {
    const int n = int(A.rows());
    if (n == 0) throw DomainError("solve_smallest: empty system");
    k = std::min(k, n);
    const double sigma = -1.0;  // A is positive semidefinite, so A - sigma M is SPD
    SpMat B = A - sigma * M;
    Eigen::SimplicialLDLT<SpMat> ldlt(B);
    if (ldlt.info() != Eigen::Success)
        throw ConvergenceError("solve_smallest: LDLT factorization failed", 0.0);

    std::mt19937 rng(424242u);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) v[i] = uni(rng);

    const int mmax = std::min(n, std::max(240, 6 * k + 60));
    Eigen::MatrixXd Q(n, mmax + 1);
    std::vector<double> alpha, beta;
    {
        const double nrm = std::sqrt(v.dot(M * v));
        Q.col(0) = v / nrm;
    }
    EigenSolveResult best;
    int j = 0, checkpoint = std::min(mmax, std::max(40, 2 * k + 20));
    while (j < mmax) {
        // Lanczos step in the M inner product on Op = (A - sigma M)^{-1} M
        Eigen::VectorXd w = ldlt.solve(M * Q.col(j));
        if (j > 0) w -= beta[j - 1] * Q.col(j - 1);
        const double a = w.dot(M * Q.col(j));
        alpha.push_back(a);
        w -= a * Q.col(j);
        for (int pass = 0; pass < 2; ++pass) {  // full reorthogonalization
            Eigen::VectorXd c = Q.leftCols(j + 1).transpose() * (M * w);
            w -= Q.leftCols(j + 1) * c;
        }
        const double b = std::sqrt(std::max(0.0, w.dot(M * w)));
        beta.push_back(b);
        ++j;
        if (b < 1e-14 || j == checkpoint || j == mmax) {
            // Ritz extraction from the tridiagonal
            Eigen::MatrixXd T = Eigen::MatrixXd::Zero(j, j);
            for (int i = 0; i < j; ++i) {
                T(i, i) = alpha[i];
                if (i + 1 < j) T(i, i + 1) = T(i + 1, i) = beta[i];
            }
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
            // largest theta -> smallest lambda = sigma + 1/theta
            const int kk = std::min(k, j);
            EigenSolveResult res;
            res.vectors.resize(n, kk);
            for (int i = 0; i < kk; ++i) {
                const double theta = es.eigenvalues()[j - 1 - i];
                const double lam = sigma + 1.0 / theta;
                Eigen::VectorXd x = Q.leftCols(j) * es.eigenvectors().col(j - 1 - i);
                const double xn = std::sqrt(x.dot(M * x));
                x /= xn;
                const Eigen::VectorXd mx = M * x;
                const double resid = (A * x - lam * mx).norm() / mx.norm();
                res.values.push_back(lam);
                res.residuals.push_back(resid);
                res.vectors.col(i) = x;
            }
            best = res;
            const bool ok = int(res.values.size()) == k &&
                            *std::max_element(res.residuals.begin(), res.residuals.end()) <= tol;
            if (ok || b < 1e-14 || j == mmax) {
                if (!ok && j == mmax && b >= 1e-14)
                    throw ConvergenceError(
                        "solve_smallest: residual contract not met at max Lanczos steps",
                        res.values.empty() ? 0.0 : res.values.front());
                return best;
            }
            checkpoint = std::min(mmax, 2 * checkpoint);
        }
        Q.col(j) = w / beta[j - 1];
    }
    return best;
}

SpectrumReport compute_spectrum(const SpectrumConfig& config) {
    SurfaceGeometry geo = (config.alpha_prime > 0.0)
                              ? make_surface_broken(config.alpha, config.alpha_prime)
                              : make_surface(config.genus, config.alpha);
    EndProfile profile = make_profile(config.r0, config.R, geo.ell);
    SpectrumReport rep;
    rep.sector = config.sector;
    rep.ell = geo.ell;
    rep.h = config.h;
    rep.threshold = mode_threshold(config.sector == Sector::odd ? 1 : 0, geo.ell);
    const double odd_threshold = mode_threshold(1, geo.ell);

    auto solve_at = [&](double L, TruncationBC bc) {
        GluedMesh mesh = build_glued_mesh(geo, profile, L, config.h);
        AssembledSystem sys = assemble(mesh, &profile);
        ReducedSystem red = apply_sector(sys, mesh, config.sector, bc);
        return solve_smallest(red.A, red.M, config.k, config.tol);
    };

    // provisional solve to estimate the decay rate of a trapped mode
    const double L0 = config.R + 2.0;
    EigenSolveResult prov = solve_at(L0, TruncationBC::neumann);
    double rate = 0.0;
    if (!prov.values.empty() && prov.values.front() < odd_threshold)
        rate = decay_rate(prov.values.front(), 1, geo.ell);
    rep.decay_rate_est = rate;
    if (rate > 0.0 && rate < 0.1)
        rep.warnings.push_back(
            "eigenvalue within 0.01 of the continuum threshold: truncation unreliable");

    double L = config.L;
    if (L <= 0.0) {
        // target truncation error ~1e-8: exp(-2 rate (L - R)) < 1e-8
        L = (rate > 0.0) ? config.R + std::min(40.0, std::max(2.0, 9.21 / rate)) : L0;
    }
    if (L < config.R) throw DomainError("compute_spectrum: L must be >= R");
    rep.L = L;

    EigenSolveResult dir = solve_at(L, TruncationBC::dirichlet);
    EigenSolveResult neu = solve_at(L, TruncationBC::neumann);
    rep.eigenvalues_dirichlet = dir.values;
    rep.residuals_dirichlet = dir.residuals;
    rep.eigenvalues_neumann = neu.values;
    rep.residuals_neumann = neu.residuals;
    for (double lam : dir.values)
        if (lam < rep.threshold) ++rep.count_below_threshold;

    const double step = 2.0 / std::max(rate, 0.5);
    rep.L_sequence = {L, L + step, L + 2.0 * step};
    rep.lambda_min_by_L.push_back(neu.values.empty() ? 0.0 : neu.values.front());
    for (size_t i = 1; i < rep.L_sequence.size(); ++i) {
        EigenSolveResult r = solve_at(rep.L_sequence[i], TruncationBC::neumann);
        rep.lambda_min_by_L.push_back(r.values.empty() ? 0.0 : r.values.front());
    }
    return rep;
}

}  // namespace cyleig
