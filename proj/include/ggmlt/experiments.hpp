#pragma once

#include "ggmlt/glasso.hpp"
#include "ggmlt/graph.hpp"
#include "ggmlt/numerics.hpp"

#include <functional>
#include <iosfwd>
#include <mutex>
#include <optional>
#include <unordered_map>
#include <vector>

namespace ggmlt {

enum class SuccessPredicate {
    kMltAtMostN,    // success iff mlt(selected graph) <= n
    kMltLessThanN,  // strict variant
};

/// Monte Carlo sweep configuration. Every output byte is a pure function of
/// this struct: per-trial seeds derive from (master_seed, p, n, alpha index,
/// trial index), never from execution order.
struct GridConfig {
    std::vector<int> p_values = {3, 4, 5, 6, 7, 8, 9};
    double alpha_start = 0.01;
    double alpha_stop = 1.5;
    double alpha_step = 0.01;
    int trials = 1000;
    std::uint64_t master_seed = 0;
    CovarianceConfig covariance;
    SuccessPredicate predicate = SuccessPredicate::kMltAtMostN;
    double glasso_tol = 1e-6;
    int glasso_max_iter = 200;
    double zero_tol = 0.0;
};

struct GridCellResult {
    int p = 0;
    int n = 0;
    double alpha = 0.0;
    int trials = 0;
    int successes = 0;
    int nonconverged = 0;  // fits that hit max_iter; their best iterate still counts
    double q_hat = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
};

/// Memo table (p, edge mask) -> MLT. Shared across trials and threads; values
/// for a given key are identical no matter who computes them, so the
/// last-writer-wins store is benign.
class MltCache {
public:
    std::optional<int> lookup(const Graph& g) const;
    void store(const Graph& g, int value);
    std::size_t size() const;
    std::vector<std::pair<std::uint64_t, int>> snapshot() const;  // (key, mlt)

private:
    mutable std::mutex mu_;
    std::unordered_map<std::uint64_t, int> map_;
};

/// Cache hit returns the stored value without touching rng; a miss computes
/// rigidity mlt, stores and returns it.
int mlt_cached(const Graph& g, MltCache& cache, SeededRng& rng);

/// Seed derivation (documented contract): splitmix64 chained over the
/// components, h = mix(h ^ component) starting from the master seed.
std::uint64_t trial_seed(std::uint64_t master_seed, int p, int n, int alpha_index, int trial);

/// Seed for a graph's MLT computation, a function of the graph only (plus the
/// master seed) so that cache state and thread schedule cannot perturb it.
std::uint64_t graph_seed(std::uint64_t master_seed, const Graph& g);

/// The alpha grid: start + i*step for i = 0.., last value <= stop (+eps).
std::vector<double> alpha_grid(const GridConfig& cfg);

/// 95% normal-approximation interval q_hat +- 1.96*sqrt(q_hat(1-q_hat)/trials),
/// clamped to [0,1].
std::pair<double, double> binomial_ci(int successes, int trials);

/// One (p, n, alpha) cell: `trials` independent draws of X ~ N(0, I_p)^n,
/// glasso fit, graph selection, MLT-vs-n success count.
GridCellResult run_cell(int p, int n, double alpha, int alpha_index,
                        const GridConfig& cfg, MltCache& cache);

/// All cells (p in p_values, n in 1..p, alpha in grid), sorted by (p, n,
/// alpha). `jobs` worker threads split the cells; results are identical for
/// any jobs >= 1. The optional progress callback receives (done, total).
std::vector<GridCellResult> run_grid(const GridConfig& cfg, int jobs = 1,
                                     const std::function<void(int, int)>& progress = {});

/// Decimal places needed to print the grid's alpha values exactly
/// (2 at the default 0.01 step).
int alpha_print_decimals(const GridConfig& cfg);

/// CSV schema: header "p,n,alpha,trials,successes,nonconverged,q_hat,ci_low,
/// ci_high"; q_hat and the CI bounds use 6 decimals, alpha uses
/// alpha_decimals.
void write_csv(std::ostream& os, const std::vector<GridCellResult>& rows, int alpha_decimals);
std::vector<GridCellResult> read_csv(std::istream& is);  // throws ParseError

}  // namespace ggmlt
