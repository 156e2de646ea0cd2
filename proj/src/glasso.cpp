#include "ggmlt/glasso.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace ggmlt {

SymMatrix empirical_covariance(const DenseMatrix& x, const CovarianceConfig& cfg) {
    if (x.rows < 1 || x.cols < 1)
        throw std::invalid_argument("data must have at least one variable and one sample");
    int p = x.rows, n = x.cols;

    DenseMatrix centered = x;
    if (cfg.centering == Centering::kCenterColumns) {
        for (int i = 0; i < p; ++i) {
            double mean = 0.0;
            for (int k = 0; k < n; ++k) mean += centered.at(i, k);
            mean /= n;
            for (int k = 0; k < n; ++k) centered.at(i, k) -= mean;
        }
    }

    double scale = cfg.normalization == Normalization::kSampleAveraged ? 1.0 / n : 1.0;
    SymMatrix s(p);
    for (int i = 0; i < p; ++i) {
        for (int j = i; j < p; ++j) {
            double acc = 0.0;
            for (int k = 0; k < n; ++k) acc += centered.at(i, k) * centered.at(j, k);
            s.set(i, j, acc * scale);
        }
    }
    return s;
}

double alpha_max(const SymMatrix& s) {
    double m = 0.0;
    for (int i = 0; i < s.dim; ++i)
        for (int j = i + 1; j < s.dim; ++j) m = std::max(m, std::abs(s.at(i, j)));
    return m;
}

namespace {

double soft_threshold(double x, double t) {
    if (x > t) return x - t;
    if (x < -t) return x + t;
    return 0.0;
}

// Tr(S K) + alpha * sum_{i != j} |K_ij| - p, no PD validation.
double gap_value(const SymMatrix& s, const SymMatrix& k, double alpha) {
    int p = s.dim;
    double trace = 0.0, penalty = 0.0;
    for (int i = 0; i < p; ++i) {
        for (int j = 0; j < p; ++j) {
            trace += s.at(i, j) * k.at(i, j);
            if (i != j) penalty += std::abs(k.at(i, j));
        }
    }
    return trace + alpha * penalty - p;
}

}  // namespace

double duality_gap(const SymMatrix& s, const SymMatrix& k, double alpha) {
    if (s.dim != k.dim) throw std::invalid_argument("dimension mismatch");
    cholesky(k);  // throws std::domain_error when K is not positive definite
    return gap_value(s, k, alpha);
}

GlassoSolution glasso_fit(const SymMatrix& s, double alpha, double tol, int max_iter) {
    const int p = s.dim;
    if (p < 1) throw std::invalid_argument("covariance matrix must have positive dimension");
    if (alpha <= 0.0) throw std::invalid_argument("alpha must be positive");
    if (tol <= 0.0) throw std::invalid_argument("tol must be positive");
    if (max_iter < 1) throw std::invalid_argument("max_iter must be at least 1");
    for (int i = 0; i < p; ++i)
        if (!(s.at(i, i) > 0.0))
            throw std::domain_error("covariance diagonal must be strictly positive");

    GlassoSolution sol;
    sol.alpha = alpha;

    if (p == 1) {
        sol.precision = SymMatrix(1);
        sol.covariance = SymMatrix(1);
        sol.precision.at(0, 0) = 1.0 / s.at(0, 0);
        sol.covariance.at(0, 0) = s.at(0, 0);
        sol.duality_gap = 0.0;
        sol.converged = true;
        return sol;
    }

    // W = S + alpha*I is positive definite even for singular (PSD) S; the
    // diagonal is pinned back to S_ii column by column below, since the
    // penalty excludes the diagonal.
    SymMatrix w = s;
    for (int i = 0; i < p; ++i) w.at(i, i) += alpha;
    SymMatrix k = spd_inverse(w);

    double diag_scale = 0.0;
    for (int i = 0; i < p; ++i) diag_scale = std::max(diag_scale, s.at(i, i));

    // The column subproblems are solved essentially exactly: a loose inner
    // tolerance leaves each block slightly off its optimum and the sweep
    // cycle then orbits the solution instead of settling on it.
    const double inner_tol = std::min(tol / 10.0, 1e-12 * (1.0 + diag_scale));
    const int max_inner = 1000;
    const int q = p - 1;
    std::vector<double> v(std::size_t(q) * q), b(q), beta(q), w12(q);

    // Every column update writes a K column that inverts the W of that
    // moment exactly, so once a whole sweep leaves W essentially unchanged
    // the assembled K is the inverse of the final W. Requiring that
    // stability alongside the gap keeps W*K = I tight at convergence.
    const double stable_tol = 1e-11 * (1.0 + diag_scale);

    double gap = gap_value(s, k, alpha);
    bool pd_failure = false;
    int sweeps = 0;
    while (sweeps < max_iter && !pd_failure) {
        ++sweeps;
        double w_change = 0.0;
        for (int j = 0; j < p; ++j) {
            w_change = std::max(w_change, std::abs(w.at(j, j) - s.at(j, j)));
            w.at(j, j) = s.at(j, j);

            // column subproblem: min 0.5 b'V b - s12'b + alpha|b|_1 over the
            // off-column coordinates, V = W11, warm-started from K
            int ri = 0;
            for (int r = 0; r < p; ++r) {
                if (r == j) continue;
                b[ri] = s.at(r, j);
                beta[ri] = -k.at(r, j) / k.at(j, j);
                int ci = 0;
                for (int c = 0; c < p; ++c) {
                    if (c == j) continue;
                    v[std::size_t(ri) * q + ci] = w.at(r, c);
                    ++ci;
                }
                ++ri;
            }

            for (int it = 0; it < max_inner; ++it) {
                double dmax = 0.0;
                for (int a = 0; a < q; ++a) {
                    double r = b[a];
                    const double* row = &v[std::size_t(a) * q];
                    for (int l = 0; l < q; ++l)
                        if (l != a) r -= row[l] * beta[l];
                    double nb = soft_threshold(r, alpha) / row[a];
                    dmax = std::max(dmax, std::abs(nb - beta[a]));
                    beta[a] = nb;
                }
                if (dmax < inner_tol) break;
            }

            double quad = 0.0;
            for (int r = 0; r < q; ++r) {
                double acc = 0.0;
                for (int c = 0; c < q; ++c) acc += v[std::size_t(r) * q + c] * beta[c];
                w12[r] = acc;
                quad += acc * beta[r];
            }
            double schur = w.at(j, j) - quad;
            if (!(schur > 1e-12 * w.at(j, j))) {
                // lost positive definiteness (can happen for alpha -> 0 with
                // singular S); keep the last consistent iterate
                pd_failure = true;
                break;
            }

            double kjj = 1.0 / schur;
            k.at(j, j) = kjj;
            ri = 0;
            for (int r = 0; r < p; ++r) {
                if (r == j) continue;
                w_change = std::max(w_change, std::abs(w.at(r, j) - w12[ri]));
                w.set(r, j, w12[ri]);
                k.set(r, j, -beta[ri] * kjj);
                ++ri;
            }
        }
        gap = gap_value(s, k, alpha);
        if (!pd_failure && std::abs(gap) < tol && w_change <= stable_tol) {
            sol.converged = true;
            break;
        }
    }

    sol.precision = std::move(k);
    sol.covariance = std::move(w);
    sol.iterations = sweeps;
    sol.duality_gap = gap;
    return sol;
}

SelectedGraph select_graph(const GlassoSolution& sol, double zero_tol) {
    int p = sol.precision.dim;
    if (p > kMaxVertices)
        throw std::invalid_argument("selected graph would exceed the " +
                                    std::to_string(kMaxVertices) + "-vertex limit");
    Graph g;
    g.p = p;
    for (int i = 1; i <= p; ++i)
        for (int j = i + 1; j <= p; ++j)
            if (std::abs(sol.precision.at(i - 1, j - 1)) > zero_tol)
                g.edge_mask |= std::uint64_t(1) << Graph::edge_bit(p, i, j);
    return {g, sol.alpha};
}

}  // namespace ggmlt
