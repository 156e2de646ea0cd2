#pragma once

#include "ggmlt/graph.hpp"
#include "ggmlt/numerics.hpp"

namespace ggmlt {

/// Independent random samples per generic-rank query; the max of the sampled
/// ranks is reported. One sample already fails only with probability
/// ~ degree/2^62, three make the seed-stability property testable.
inline constexpr int kGenericRankTrials = 3;

struct GenericRankReport {
    Graph graph;
    int dim = 0;
    int rank = 0;    // <= min(|E|, p*dim)
    int trials = 0;  // samples actually drawn (early exit once rank hits |E|)
};

/// The |E| x (p*n) matrix whose row for edge {i,j} carries X_ik - X_jk in
/// column (i,k) and X_jk - X_ik in column (j,k), zero elsewhere. Rows follow
/// the lexicographic edge order; columns are (vertex, coordinate) row-major.
DenseMatrix rigidity_matrix(const Graph& g, const DenseMatrix& x);

/// Same construction over F_q (subtraction mod q).
PrimeFieldMatrix rigidity_matrix(const Graph& g, const PrimeFieldMatrix& x);

/// Rank of the rigidity matrix at a random configuration, i.e. the generic
/// rank at this dimension (up to the negligible specialization probability).
/// dim = 0 yields rank 0 (an |E| x 0 matrix).
GenericRankReport generic_rank(const Graph& g, int dim, SeededRng& rng);

/// Generic completion rank: the minimum n >= 1 with generic rank |E| at
/// dimension n-1. The empty edge set gives 1. Throws std::logic_error if no
/// n <= p+1 qualifies, which would mean the rank routine is broken (the
/// generic rank at dimension p-1 is |E| for every graph on p vertices).
int gcr(const Graph& g, SeededRng& rng);

/// Maximum likelihood threshold of a graph on at most kMaxMltVertices
/// vertices, where it coincides with the generic completion rank. Always in
/// [clique_number(g), k_core_bound(g)]. Throws std::invalid_argument for
/// larger graphs, where the two quantities can differ.
int mlt(const Graph& g, SeededRng& rng);

}  // namespace ggmlt
