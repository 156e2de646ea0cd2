#pragma once

// Shared helpers for the unit and acceptance suites: small graph builders,
// independent oracles (floating-point rank, Jacobi eigenvalues, the glasso
// objective) and statistics utilities. Oracles here deliberately avoid the
// library's own computation paths.

#include "ggmlt/glasso.hpp"
#include "ggmlt/graph.hpp"
#include "ggmlt/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace testutil {

inline ggmlt::Graph complete_graph(int p) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 1; i <= p; ++i)
        for (int j = i + 1; j <= p; ++j) edges.emplace_back(i, j);
    return ggmlt::graph_from_edges(p, edges);
}

inline ggmlt::Graph cycle_graph(int p) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 1; i < p; ++i) edges.emplace_back(i, i + 1);
    edges.emplace_back(p, 1);
    return ggmlt::graph_from_edges(p, edges);
}

inline ggmlt::Graph path_graph(int p) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 1; i < p; ++i) edges.emplace_back(i, i + 1);
    return ggmlt::graph_from_edges(p, edges);
}

inline ggmlt::Graph empty_graph(int p) { return ggmlt::graph_from_edges(p, {}); }

inline ggmlt::Graph graph_from_mask(int p, std::uint64_t mask) {
    ggmlt::Graph g;
    g.p = p;
    g.edge_mask = mask & ((std::uint64_t(1) << ggmlt::Graph::pair_count(p)) - 1);
    return g;
}

inline ggmlt::Graph random_graph(ggmlt::SeededRng& rng, int p) {
    return graph_from_mask(p, rng.next_u64());
}

/// Uniform random labeled tree by decoding a random Pruefer sequence.
inline ggmlt::Graph random_tree(ggmlt::SeededRng& rng, int p) {
    std::vector<std::pair<int, int>> edges;
    std::vector<int> degree(std::size_t(p) + 1, 1);
    std::vector<int> seq;
    for (int i = 0; i < p - 2; ++i) {
        int v = int(rng.next_below(std::uint64_t(p))) + 1;
        seq.push_back(v);
        ++degree[std::size_t(v)];
    }
    for (int v : seq) {
        for (int leaf = 1; leaf <= p; ++leaf) {
            if (degree[std::size_t(leaf)] == 1) {
                edges.emplace_back(leaf, v);
                --degree[std::size_t(leaf)];
                --degree[std::size_t(v)];
                break;
            }
        }
    }
    int a = 0, b = 0;
    for (int v = 1; v <= p; ++v) {
        if (degree[std::size_t(v)] == 1) {
            if (!a) a = v;
            else b = v;
        }
    }
    edges.emplace_back(a, b);
    return ggmlt::graph_from_edges(p, edges);
}

/// Rank by floating Gaussian elimination with partial pivoting. Reliable for
/// the small, well-scaled matrices used in tests; independent of field_rank.
inline int float_rank(ggmlt::DenseMatrix m, double rel_tol = 1e-9) {
    double scale = 0.0;
    for (double v : m.entries) scale = std::max(scale, std::abs(v));
    if (scale == 0.0) return 0;
    int rank = 0;
    for (int col = 0; col < m.cols && rank < m.rows; ++col) {
        int pivot = rank;
        for (int r = rank + 1; r < m.rows; ++r)
            if (std::abs(m.at(r, col)) > std::abs(m.at(pivot, col))) pivot = r;
        if (std::abs(m.at(pivot, col)) <= rel_tol * scale) continue;
        if (pivot != rank)
            for (int c = col; c < m.cols; ++c) std::swap(m.at(pivot, c), m.at(rank, c));
        for (int r = rank + 1; r < m.rows; ++r) {
            double f = m.at(r, col) / m.at(rank, col);
            for (int c = col; c < m.cols; ++c) m.at(r, c) -= f * m.at(rank, c);
        }
        ++rank;
    }
    return rank;
}

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations.
inline std::vector<double> jacobi_eigenvalues(ggmlt::SymMatrix a) {
    int n = a.dim;
    for (int sweep = 0; sweep < 200; ++sweep) {
        double off = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) off += a.at(i, j) * a.at(i, j);
        if (off < 1e-26) break;
        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                if (std::abs(a.at(p, q)) < 1e-300) continue;
                double theta = (a.at(q, q) - a.at(p, p)) / (2.0 * a.at(p, q));
                double t = (theta >= 0 ? 1.0 : -1.0) /
                           (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0);
                double s = t * c;
                for (int k = 0; k < n; ++k) {
                    double akp = a.at(k, p), akq = a.at(k, q);
                    a.at(k, p) = c * akp - s * akq;
                    a.at(k, q) = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    double apk = a.at(p, k), aqk = a.at(q, k);
                    a.at(p, k) = c * apk - s * aqk;
                    a.at(q, k) = s * apk + c * aqk;
                }
            }
        }
    }
    std::vector<double> eig;
    for (int i = 0; i < n; ++i) eig.push_back(a.at(i, i));
    std::sort(eig.begin(), eig.end());
    return eig;
}

/// Random SPD matrix with unit diagonal (correlation-like, desk scale).
inline ggmlt::SymMatrix random_spd(ggmlt::SeededRng& rng, int p, double offdiag_scale = 0.3) {
    ggmlt::DenseMatrix l(p, p);
    for (int i = 0; i < p; ++i) {
        l.at(i, i) = 0.5 + rng.next_unit();
        for (int j = 0; j < i; ++j) l.at(i, j) = offdiag_scale * rng.next_normal();
    }
    ggmlt::SymMatrix a(p);
    for (int i = 0; i < p; ++i)
        for (int j = i; j < p; ++j) {
            double s = 0.0;
            for (int k = 0; k <= std::min(i, j); ++k) s += l.at(i, k) * l.at(j, k);
            a.set(i, j, s);
        }
    for (int i = 0; i < p; ++i)
        for (int j = 0; j < p; ++j)
            if (i != j) a.at(i, j) /= std::sqrt(a.at(i, i) * a.at(j, j));
    for (int i = 0; i < p; ++i) a.at(i, i) = 1.0;
    return a;
}

/// The penalized objective Tr(SK) - log det K + alpha * sum_{i!=j} |K_ij|.
inline double glasso_objective(const ggmlt::SymMatrix& s, const ggmlt::SymMatrix& k, double alpha) {
    double trace = 0.0, penalty = 0.0;
    for (int i = 0; i < s.dim; ++i)
        for (int j = 0; j < s.dim; ++j) {
            trace += s.at(i, j) * k.at(i, j);
            if (i != j) penalty += std::abs(k.at(i, j));
        }
    return trace - ggmlt::log_det(k) + alpha * penalty;
}

inline std::vector<double> average_ranks(const std::vector<double>& x) {
    std::size_t n = x.size();
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
    std::vector<double> ranks(n, 0.0);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && x[idx[j + 1]] == x[idx[i]]) ++j;
        double r = (double(i) + double(j)) / 2.0 + 1.0;
        for (std::size_t k = i; k <= j; ++k) ranks[idx[k]] = r;
        i = j + 1;
    }
    return ranks;
}

/// Spearman rank correlation with average ranks for ties.
inline double spearman(const std::vector<double>& x, const std::vector<double>& y) {
    std::vector<double> rx = average_ranks(x), ry = average_ranks(y);
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < rx.size(); ++i) {
        mx += rx[i];
        my += ry[i];
    }
    mx /= double(rx.size());
    my /= double(ry.size());
    double num = 0, dx = 0, dy = 0;
    for (std::size_t i = 0; i < rx.size(); ++i) {
        num += (rx[i] - mx) * (ry[i] - my);
        dx += (rx[i] - mx) * (rx[i] - mx);
        dy += (ry[i] - my) * (ry[i] - my);
    }
    if (dx == 0.0 || dy == 0.0) return 0.0;
    return num / std::sqrt(dx * dy);
}

/// Checks that a q-over-alpha series rises and then holds its level. The rank
/// correlation is taken over the prefix through the first attainment of the
/// series maximum: once a series saturates, tie-averaged Spearman over the
/// whole series degenerates (a noise-free monotone series plateauing after
/// three points scores ~0.5), which would misreport a perfect trend. The
/// plateau itself must stay within `slack` of the maximum.
inline bool rising_trend_ok(const std::vector<double>& alphas, const std::vector<double>& qs,
                            std::string* why = nullptr, double min_rho = 0.8,
                            double slack = 0.05) {
    double qmax = qs[0], qmin = qs[0];
    for (double q : qs) {
        qmax = std::max(qmax, q);
        qmin = std::min(qmin, q);
    }
    if (qmax == qmin) return true;  // constant series are exempt

    std::size_t first_max = 0;
    while (qs[first_max] != qmax) ++first_max;

    double tail_sum = 0.0;
    std::size_t tail_count = 0;
    for (std::size_t i = first_max + 1; i < qs.size(); ++i) {
        tail_sum += qs[i];
        ++tail_count;
    }
    if (tail_count > 0 && tail_sum / double(tail_count) < qmax - slack) {
        if (why) *why = "series declines after its peak";
        return false;
    }

    std::vector<double> pa(alphas.begin(), alphas.begin() + long(first_max) + 1);
    std::vector<double> pq(qs.begin(), qs.begin() + long(first_max) + 1);
    if (pa.size() >= 3 && pq.front() != pq.back()) {
        double rho = spearman(pa, pq);
        if (rho < min_rho) {
            if (why) *why = "Spearman over the rising prefix is " + std::to_string(rho);
            return false;
        }
    }
    return true;
}

}  // namespace testutil
