#include "ggmlt/experiments.hpp"

#include "ggmlt/rigidity.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <thread>

namespace ggmlt {

std::optional<int> MltCache::lookup(const Graph& g) const {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = map_.find(g.key());
    if (it == map_.end()) return std::nullopt;
    return it->second;
}

void MltCache::store(const Graph& g, int value) {
    std::lock_guard<std::mutex> lock(mu_);
    map_[g.key()] = value;
}

std::size_t MltCache::size() const {
    std::lock_guard<std::mutex> lock(mu_);
    return map_.size();
}

std::vector<std::pair<std::uint64_t, int>> MltCache::snapshot() const {
    std::lock_guard<std::mutex> lock(mu_);
    std::vector<std::pair<std::uint64_t, int>> out(map_.begin(), map_.end());
    std::sort(out.begin(), out.end());
    return out;
}

int mlt_cached(const Graph& g, MltCache& cache, SeededRng& rng) {
    if (auto hit = cache.lookup(g)) return *hit;
    int value = mlt(g, rng);  // off-lock; ties recompute the same value
    cache.store(g, value);
    return value;
}

std::uint64_t trial_seed(std::uint64_t master_seed, int p, int n, int alpha_index, int trial) {
    std::uint64_t h = master_seed;
    h = splitmix64(h ^ std::uint64_t(p));
    h = splitmix64(h ^ std::uint64_t(n));
    h = splitmix64(h ^ std::uint64_t(alpha_index));
    h = splitmix64(h ^ std::uint64_t(trial));
    return h;
}

std::uint64_t graph_seed(std::uint64_t master_seed, const Graph& g) {
    return splitmix64(splitmix64(master_seed ^ 0x6d6c74ULL) ^ g.key());
}

std::vector<double> alpha_grid(const GridConfig& cfg) {
    if (cfg.alpha_step <= 0.0) throw std::invalid_argument("alpha_step must be positive");
    if (cfg.alpha_start <= 0.0) throw std::invalid_argument("alpha_start must be positive");
    if (cfg.alpha_stop < cfg.alpha_start)
        throw std::invalid_argument("alpha_stop must be at least alpha_start");
    int count = int(std::floor((cfg.alpha_stop - cfg.alpha_start) / cfg.alpha_step + 1e-9)) + 1;
    std::vector<double> grid;
    grid.reserve(std::size_t(count));
    for (int i = 0; i < count; ++i) grid.push_back(cfg.alpha_start + i * cfg.alpha_step);
    return grid;
}

std::pair<double, double> binomial_ci(int successes, int trials) {
    double q = double(successes) / trials;
    double half = 1.96 * std::sqrt(q * (1.0 - q) / trials);
    return {std::max(0.0, q - half), std::min(1.0, q + half)};
}

GridCellResult run_cell(int p, int n, double alpha, int alpha_index,
                        const GridConfig& cfg, MltCache& cache) {
    if (p < 1 || p > kMaxMltVertices)
        throw std::invalid_argument("p must be between 1 and " + std::to_string(kMaxMltVertices));
    if (n < 1 || n > p) throw std::invalid_argument("n must be between 1 and p");
    if (alpha <= 0.0) throw std::invalid_argument("alpha must be positive");
    if (cfg.trials < 1) throw std::invalid_argument("trials must be at least 1");

    GridCellResult cell;
    cell.p = p;
    cell.n = n;
    cell.alpha = alpha;
    cell.trials = cfg.trials;

    for (int t = 0; t < cfg.trials; ++t) {
        SeededRng rng(trial_seed(cfg.master_seed, p, n, alpha_index, t));
        DenseMatrix x = sample_standard_normal(rng, p, n);
        SymMatrix s = empirical_covariance(x, cfg.covariance);
        GlassoSolution sol = glasso_fit(s, alpha, cfg.glasso_tol, cfg.glasso_max_iter);
        if (!sol.converged) ++cell.nonconverged;
        Graph g = select_graph(sol, cfg.zero_tol).graph;

        SeededRng mlt_rng(graph_seed(cfg.master_seed, g));
        int m = mlt_cached(g, cache, mlt_rng);
        bool success = cfg.predicate == SuccessPredicate::kMltAtMostN ? m <= n : m < n;
        if (success) ++cell.successes;
    }

    cell.q_hat = double(cell.successes) / cell.trials;
    std::tie(cell.ci_low, cell.ci_high) = binomial_ci(cell.successes, cell.trials);
    return cell;
}

std::vector<GridCellResult> run_grid(const GridConfig& cfg, int jobs,
                                     const std::function<void(int, int)>& progress) {
    std::vector<double> grid = alpha_grid(cfg);

    struct Cell {
        int p, n, alpha_index;
        double alpha;
    };
    std::vector<int> ps = cfg.p_values;
    std::sort(ps.begin(), ps.end());
    ps.erase(std::unique(ps.begin(), ps.end()), ps.end());

    std::vector<Cell> cells;
    for (int p : ps)
        for (int n = 1; n <= p; ++n)
            for (int ai = 0; ai < int(grid.size()); ++ai)
                cells.push_back({p, n, ai, grid[std::size_t(ai)]});

    std::vector<GridCellResult> results(cells.size());
    if (cells.empty()) return results;

    MltCache cache;
    std::atomic<std::size_t> next{0};
    std::atomic<int> done{0};
    std::mutex progress_mu;
    std::exception_ptr first_error;
    std::mutex error_mu;

    auto worker = [&]() {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= cells.size()) return;
            {
                std::lock_guard<std::mutex> lock(error_mu);
                if (first_error) return;
            }
            try {
                const Cell& c = cells[i];
                results[i] = run_cell(c.p, c.n, c.alpha, c.alpha_index, cfg, cache);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mu);
                if (!first_error) first_error = std::current_exception();
                return;
            }
            int d = done.fetch_add(1) + 1;
            if (progress) {
                std::lock_guard<std::mutex> lock(progress_mu);
                progress(d, int(cells.size()));
            }
        }
    };

    jobs = std::max(1, jobs);
    std::vector<std::thread> pool;
    for (int t = 1; t < jobs; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
    return results;
}

int alpha_print_decimals(const GridConfig& cfg) {
    auto needed = [](double x) {
        for (int d = 0; d <= 6; ++d) {
            double scaled = x * std::pow(10.0, d);
            if (std::abs(scaled - std::round(scaled)) < 1e-7) return d;
        }
        return 6;
    };
    return std::max(needed(cfg.alpha_start), needed(cfg.alpha_step));
}

static const char* kCsvHeader = "p,n,alpha,trials,successes,nonconverged,q_hat,ci_low,ci_high";

void write_csv(std::ostream& os, const std::vector<GridCellResult>& rows, int alpha_decimals) {
    os << kCsvHeader << '\n';
    char buf[192];
    for (const GridCellResult& r : rows) {
        std::snprintf(buf, sizeof(buf), "%d,%d,%.*f,%d,%d,%d,%.6f,%.6f,%.6f\n", r.p, r.n,
                      alpha_decimals, r.alpha, r.trials, r.successes, r.nonconverged, r.q_hat,
                      r.ci_low, r.ci_high);
        os << buf;
    }
}

std::vector<GridCellResult> read_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw ParseError("empty CSV input");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kCsvHeader)
        throw ParseError("unexpected CSV header; want \"" + std::string(kCsvHeader) + "\"");

    std::vector<GridCellResult> rows;
    int lineno = 1;
    while (std::getline(is, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;

        std::vector<std::string> fields;
        std::size_t start = 0;
        for (;;) {
            auto pos = line.find(',', start);
            fields.push_back(line.substr(start, pos - start));
            if (pos == std::string::npos) break;
            start = pos + 1;
        }
        if (fields.size() != 9)
            throw ParseError("CSV line " + std::to_string(lineno) + ": expected 9 fields, got " +
                             std::to_string(fields.size()));

        auto to_int = [&](const std::string& f) {
            int v = 0;
            auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
            if (ec != std::errc{} || ptr != f.data() + f.size())
                throw ParseError("CSV line " + std::to_string(lineno) + ": bad integer \"" + f + "\"");
            return v;
        };
        auto to_double = [&](const std::string& f) {
            char* end = nullptr;
            double v = std::strtod(f.c_str(), &end);
            if (end != f.c_str() + f.size() || f.empty())
                throw ParseError("CSV line " + std::to_string(lineno) + ": bad number \"" + f + "\"");
            return v;
        };

        GridCellResult r;
        r.p = to_int(fields[0]);
        r.n = to_int(fields[1]);
        r.alpha = to_double(fields[2]);
        r.trials = to_int(fields[3]);
        r.successes = to_int(fields[4]);
        r.nonconverged = to_int(fields[5]);
        r.q_hat = to_double(fields[6]);
        r.ci_low = to_double(fields[7]);
        r.ci_high = to_double(fields[8]);
        rows.push_back(r);
    }
    return rows;
}

}  // namespace ggmlt
