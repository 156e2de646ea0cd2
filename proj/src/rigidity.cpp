#include "ggmlt/rigidity.hpp"

#include <stdexcept>
#include <string>

namespace ggmlt {

namespace {

// Shared layout for both scalar types: row per edge (lexicographic order),
// column (v, k) at index v*n + k, entries x_ik - x_jk / x_jk - x_ik.
template <typename Matrix, typename Sub>
Matrix build_rigidity(const Graph& g, const Matrix& x, Sub sub) {
    if (x.rows != g.p)
        throw std::invalid_argument("configuration must have one row per vertex (expected " +
                                    std::to_string(g.p) + ", got " + std::to_string(x.rows) + ")");
    if (x.cols < 1) throw std::invalid_argument("configuration needs at least one column");

    int n = x.cols;
    Matrix r(g.edge_count(), g.p * n);
    int row = 0;
    for (auto [i, j] : g.edge_list()) {
        for (int k = 0; k < n; ++k) {
            auto xik = x.at(i - 1, k);
            auto xjk = x.at(j - 1, k);
            r.at(row, (i - 1) * n + k) = sub(xik, xjk);
            r.at(row, (j - 1) * n + k) = sub(xjk, xik);
        }
        ++row;
    }
    return r;
}

}  // namespace

DenseMatrix rigidity_matrix(const Graph& g, const DenseMatrix& x) {
    return build_rigidity(g, x, [](double a, double b) { return a - b; });
}

PrimeFieldMatrix rigidity_matrix(const Graph& g, const PrimeFieldMatrix& x) {
    return build_rigidity(g, x, [](std::uint64_t a, std::uint64_t b) { return field_sub(a, b); });
}

GenericRankReport generic_rank(const Graph& g, int dim, SeededRng& rng) {
    if (dim < 0) throw std::invalid_argument("dimension must be nonnegative");
    int e = g.edge_count();
    if (dim == 0 || e == 0) return {g, dim, 0, 0};

    int best = 0;
    int trials = 0;
    for (int t = 0; t < kGenericRankTrials; ++t) {
        PrimeFieldMatrix x = sample_uniform_field(rng, g.p, dim);
        best = std::max(best, field_rank(rigidity_matrix(g, x)));
        ++trials;
        if (best == e) break;  // specialization can only lose rank, so |E| is final
    }
    return {g, dim, best, trials};
}

int gcr(const Graph& g, SeededRng& rng) {
    int e = g.edge_count();
    if (e == 0) return 1;
    for (int n = 1; n <= g.p + 1; ++n)
        if (generic_rank(g, n - 1, rng).rank == e) return n;
    throw std::logic_error("generic rank never reached |E| up to dimension p; "
                           "the rank computation is inconsistent");
}

int mlt(const Graph& g, SeededRng& rng) {
    if (g.p > kMaxMltVertices)
        throw std::invalid_argument(
            "the maximum likelihood threshold is only computed for graphs on at most " +
            std::to_string(kMaxMltVertices) + " vertices (got " + std::to_string(g.p) +
            "); beyond that it can differ from the generic completion rank");
    return gcr(g, rng);
}

}  // namespace ggmlt
