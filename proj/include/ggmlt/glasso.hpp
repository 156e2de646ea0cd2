#pragma once

#include "ggmlt/graph.hpp"
#include "ggmlt/numerics.hpp"

namespace ggmlt {

enum class Normalization {
    kSampleAveraged,  // S = X X^T / n
    kUnnormalized,    // S = X X^T
};

enum class Centering {
    kAssumeZeroMean,  // use X as-is
    kCenterColumns,   // subtract the per-variable mean over samples first
};

struct CovarianceConfig {
    Normalization normalization = Normalization::kSampleAveraged;
    Centering centering = Centering::kAssumeZeroMean;
};

/// Empirical covariance of X (p rows = variables, n columns = samples).
/// Symmetric positive semidefinite; singular when n < p, which glasso_fit
/// accepts since alpha > 0 regularizes.
SymMatrix empirical_covariance(const DenseMatrix& x, const CovarianceConfig& cfg = {});

/// max_{i != j} |S_ij| (0 for dim 1). For alpha >= this value the glasso
/// solution is exactly diagonal with K_ii = 1/S_ii, since the penalty
/// excludes the diagonal.
double alpha_max(const SymMatrix& s);

struct GlassoSolution {
    SymMatrix precision;   // K, exact zeros from soft-thresholding
    SymMatrix covariance;  // W, its working inverse; W_ii = S_ii at optimum
    double alpha = 0.0;
    int iterations = 0;    // outer sweeps performed
    double duality_gap = 0.0;
    bool converged = false;
};

/// Minimizes Tr(S K) - log det K + alpha * sum_{i != j} |K_ij| over positive
/// definite K. Block coordinate descent over columns: each column's
/// subproblem is an L1 lasso solved by cyclic coordinate descent with
/// soft-thresholding (inner tolerance tol/10), the update order is fixed and
/// cyclic, so results are bit-reproducible. W starts at S + alpha*I for a
/// positive definite start even when S is singular; the diagonal is pinned to
/// S_ii at each column update because the penalty excludes the diagonal.
/// Convergence is declared when the duality gap drops below tol; if max_iter
/// sweeps pass first (possible for alpha -> 0 with singular S), the best
/// iterate is returned with converged = false.
///
/// Throws std::invalid_argument for alpha <= 0, tol <= 0 or an empty matrix,
/// and std::domain_error if some S_ii <= 0 (the estimator does not exist).
GlassoSolution glasso_fit(const SymMatrix& s, double alpha, double tol = 1e-6,
                          int max_iter = 200);

/// Optimality certificate Tr(S K) + alpha * sum_{i != j} |K_ij| - p.
/// Nonnegative (up to roundoff) whenever K's implied dual K^-1 is feasible,
/// and zero exactly at the optimum. Throws std::domain_error if K is not
/// positive definite.
double duality_gap(const SymMatrix& s, const SymMatrix& k, double alpha);

struct SelectedGraph {
    Graph graph;
    double source_alpha = 0.0;
};

/// Graph with an edge {i,j} wherever |K_ij| > zero_tol. The default 0 relies
/// on the exact zeros the coordinate-descent solver produces; a small
/// positive value suits solutions imported from float-based solvers.
SelectedGraph select_graph(const GlassoSolution& sol, double zero_tol = 0.0);

}  // namespace ggmlt
