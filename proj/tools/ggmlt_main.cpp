#include "ggmlt/experiments.hpp"
#include "ggmlt/glasso.hpp"
#include "ggmlt/graph.hpp"
#include "ggmlt/numerics.hpp"
#include "ggmlt/plot.hpp"
#include "ggmlt/rigidity.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitParse = 2;
constexpr int kExitNoConvergence = 3;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ggmlt::ParseError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

ggmlt::Graph load_graph(const std::string& text, const std::string& file) {
    if (!file.empty()) return ggmlt::parse_graph(read_file(file));
    if (text.empty()) throw ggmlt::ParseError("no graph given (pass a graph or --file)");
    return ggmlt::parse_graph(text);
}

// CSV of doubles, one matrix row per line: the p x n data matrix.
ggmlt::DenseMatrix read_data_csv(const std::string& path) {
    std::string text = read_file(path);
    std::vector<std::vector<double>> rows;
    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<double> row;
        std::istringstream fields(line);
        std::string field;
        while (std::getline(fields, field, ',')) {
            char* end = nullptr;
            double v = std::strtod(field.c_str(), &end);
            if (end != field.c_str() + field.size() || field.empty())
                throw ggmlt::ParseError("bad number \"" + field + "\" in " + path);
            row.push_back(v);
        }
        if (!rows.empty() && row.size() != rows.front().size())
            throw ggmlt::ParseError("ragged rows in " + path);
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw ggmlt::ParseError("no data rows in " + path);
    ggmlt::DenseMatrix x(int(rows.size()), int(rows.front().size()));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows.front().size(); ++j)
            x.at(int(i), int(j)) = rows[i][j];
    return x;
}

ggmlt::CovarianceConfig make_cov_config(const std::string& normalize, const std::string& centering) {
    ggmlt::CovarianceConfig cov;
    if (normalize == "sample")
        cov.normalization = ggmlt::Normalization::kSampleAveraged;
    else if (normalize == "unnormalized")
        cov.normalization = ggmlt::Normalization::kUnnormalized;
    else
        throw CLI::ValidationError("--normalize must be 'sample' or 'unnormalized'");
    if (centering == "zero-mean")
        cov.centering = ggmlt::Centering::kAssumeZeroMean;
    else if (centering == "center")
        cov.centering = ggmlt::Centering::kCenterColumns;
    else
        throw CLI::ValidationError("--centering must be 'zero-mean' or 'center'");
    return cov;
}

void print_matrix(std::ostream& os, const ggmlt::SymMatrix& m) {
    char buf[64];
    for (int i = 0; i < m.dim; ++i) {
        for (int j = 0; j < m.dim; ++j) {
            std::snprintf(buf, sizeof(buf), "%.9g", m.at(i, j) + 0.0);  // +0.0 drops -0
            os << (j ? "," : "") << buf;
        }
        os << '\n';
    }
}

int cmd_glasso(const ggmlt::SymMatrix& s, double alpha, double tol, int max_iter, double zero_tol) {
    ggmlt::GlassoSolution sol = ggmlt::glasso_fit(s, alpha, tol, max_iter);
    std::cout << "converged: " << (sol.converged ? "yes" : "no") << '\n';
    std::cout << "iterations: " << sol.iterations << '\n';
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", sol.duality_gap);
    std::cout << "duality_gap: " << buf << '\n';
    std::cout << "K:\n";
    print_matrix(std::cout, sol.precision);
    std::cout << "edges:\n";
    for (int i = 0; i < s.dim; ++i)
        for (int j = i + 1; j < s.dim; ++j)
            if (std::abs(sol.precision.at(i, j)) > zero_tol)
                std::cout << (i + 1) << ' ' << (j + 1) << '\n';
    return sol.converged ? 0 : kExitNoConvergence;
}

void apply_json_config(const std::string& path, ggmlt::GridConfig& cfg, int& jobs, std::string& out) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(read_file(path));
    } catch (const nlohmann::json::exception& e) {
        throw ggmlt::ParseError("bad config JSON: " + std::string(e.what()));
    }
    try {
        if (j.contains("p_values")) cfg.p_values = j["p_values"].get<std::vector<int>>();
        if (j.contains("alpha_start")) cfg.alpha_start = j["alpha_start"].get<double>();
        if (j.contains("alpha_stop")) cfg.alpha_stop = j["alpha_stop"].get<double>();
        if (j.contains("alpha_step")) cfg.alpha_step = j["alpha_step"].get<double>();
        if (j.contains("trials")) cfg.trials = j["trials"].get<int>();
        if (j.contains("seed")) cfg.master_seed = j["seed"].get<std::uint64_t>();
        if (j.contains("predicate")) {
            std::string p = j["predicate"].get<std::string>();
            if (p == "atmost")
                cfg.predicate = ggmlt::SuccessPredicate::kMltAtMostN;
            else if (p == "strict")
                cfg.predicate = ggmlt::SuccessPredicate::kMltLessThanN;
            else
                throw ggmlt::ParseError("config predicate must be 'atmost' or 'strict'");
        }
        if (j.contains("normalize") || j.contains("centering")) {
            std::string n = j.value("normalize", "sample");
            std::string c = j.value("centering", "zero-mean");
            cfg.covariance = make_cov_config(n, c);
        }
        if (j.contains("jobs")) jobs = j["jobs"].get<int>();
        if (j.contains("out")) out = j["out"].get<std::string>();
    } catch (const nlohmann::json::exception& e) {
        throw ggmlt::ParseError("bad config value: " + std::string(e.what()));
    } catch (const CLI::ValidationError& e) {
        throw ggmlt::ParseError(e.what());
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"maximum likelihood thresholds of small graphs, graphical lasso, "
                 "and Monte Carlo estimation of q(p,n,alpha)"};
    app.require_subcommand(1);

    // mlt / gcr / bounds
    std::string graph_text, graph_file;
    std::uint64_t seed = 0;
    auto add_graph_opts = [&](CLI::App* sub, bool with_seed) {
        sub->add_option("graph", graph_text, "graph6 string or edge list \"p; i j; ...\"");
        sub->add_option("--file", graph_file, "read the graph from a file instead");
        if (with_seed) sub->add_option("--seed", seed, "seed for the randomized rank computation");
    };
    CLI::App* sub_mlt = app.add_subcommand("mlt", "maximum likelihood threshold with its combinatorial bounds");
    add_graph_opts(sub_mlt, true);
    CLI::App* sub_gcr = app.add_subcommand("gcr", "generic completion rank");
    add_graph_opts(sub_gcr, true);
    CLI::App* sub_bounds = app.add_subcommand("bounds", "clique lower bound and k-core upper bound");
    add_graph_opts(sub_bounds, false);

    // glasso
    std::string data_file;
    int rows = 0, cols = 0;
    double alpha = 0.0, tol = 1e-6, zero_tol = 0.0;
    int max_iter = 200;
    std::string normalize = "sample", centering = "zero-mean";
    CLI::App* sub_glasso = app.add_subcommand("glasso", "graphical lasso estimate for one dataset");
    sub_glasso->add_option("--data", data_file, "CSV with one row per variable, one column per sample");
    CLI::Option* opt_rows = sub_glasso->add_option("--rows", rows, "variables of a seed-generated N(0,1) dataset");
    CLI::Option* opt_cols = sub_glasso->add_option("--cols", cols, "samples of a seed-generated N(0,1) dataset");
    sub_glasso->add_option("--alpha", alpha, "L1 penalty weight (> 0)")->required();
    sub_glasso->add_option("--tol", tol, "duality-gap convergence tolerance");
    sub_glasso->add_option("--max-iter", max_iter, "outer sweep limit");
    sub_glasso->add_option("--zero-tol", zero_tol, "edge-detection threshold on |K_ij|");
    sub_glasso->add_option("--normalize", normalize, "sample | unnormalized");
    sub_glasso->add_option("--centering", centering, "zero-mean | center");
    sub_glasso->add_option("--seed", seed, "seed for --rows/--cols data generation");
    opt_rows->needs(opt_cols);
    opt_cols->needs(opt_rows);

    // experiment
    ggmlt::GridConfig grid_defaults;
    std::string config_file, out_file;
    std::vector<int> p_values;
    double alpha_start = grid_defaults.alpha_start, alpha_stop = grid_defaults.alpha_stop,
           alpha_step = grid_defaults.alpha_step;
    int trials = grid_defaults.trials, jobs = 1;
    std::string predicate = "atmost";
    CLI::App* sub_exp = app.add_subcommand("experiment", "Monte Carlo sweep over (p, n, alpha); CSV out");
    sub_exp->add_option("--config", config_file, "JSON config; explicit flags win on conflict");
    CLI::Option* o_pv = sub_exp->add_option("--p-values", p_values, "vertex counts")->delimiter(',');
    CLI::Option* o_as = sub_exp->add_option("--alpha-start", alpha_start, "first alpha");
    CLI::Option* o_ao = sub_exp->add_option("--alpha-stop", alpha_stop, "last alpha (inclusive)");
    CLI::Option* o_ap = sub_exp->add_option("--alpha-step", alpha_step, "alpha increment");
    CLI::Option* o_tr = sub_exp->add_option("--trials", trials, "trials per cell");
    CLI::Option* o_se = sub_exp->add_option("--seed", seed, "master seed");
    CLI::Option* o_pr = sub_exp->add_option("--predicate", predicate, "atmost | strict");
    CLI::Option* o_no = sub_exp->add_option("--normalize", normalize, "sample | unnormalized");
    CLI::Option* o_ce = sub_exp->add_option("--centering", centering, "zero-mean | center");
    CLI::Option* o_jo = sub_exp->add_option("--jobs", jobs, "worker threads");
    CLI::Option* o_ou = sub_exp->add_option("--out", out_file, "output CSV path (default: stdout)");

    // plot
    std::string csv_file, out_dir;
    CLI::App* sub_plot = app.add_subcommand("plot", "render one SVG chart per p from an experiment CSV");
    sub_plot->add_option("--csv", csv_file, "experiment CSV")->required();
    sub_plot->add_option("--out-dir", out_dir, "output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (app.got_subcommand(sub_mlt)) {
            ggmlt::Graph g = load_graph(graph_text, graph_file);
            ggmlt::SeededRng rng(seed);
            int m = ggmlt::mlt(g, rng);
            std::cout << "mlt=" << m << " clique=" << ggmlt::clique_number(g)
                      << " kcore=" << ggmlt::k_core_bound(g) << '\n';
            return 0;
        }
        if (app.got_subcommand(sub_gcr)) {
            ggmlt::Graph g = load_graph(graph_text, graph_file);
            ggmlt::SeededRng rng(seed);
            std::cout << "gcr=" << ggmlt::gcr(g, rng) << '\n';
            return 0;
        }
        if (app.got_subcommand(sub_bounds)) {
            ggmlt::Graph g = load_graph(graph_text, graph_file);
            std::cout << "clique=" << ggmlt::clique_number(g)
                      << " kcore=" << ggmlt::k_core_bound(g) << '\n';
            return 0;
        }
        if (app.got_subcommand(sub_glasso)) {
            ggmlt::DenseMatrix x;
            if (!data_file.empty()) {
                x = read_data_csv(data_file);
            } else if (rows > 0 && cols > 0) {
                ggmlt::SeededRng rng(seed);
                x = ggmlt::sample_standard_normal(rng, rows, cols);
            } else {
                std::cerr << "glasso needs --data or --rows/--cols\n";
                return kExitUsage;
            }
            ggmlt::SymMatrix s = ggmlt::empirical_covariance(x, make_cov_config(normalize, centering));
            return cmd_glasso(s, alpha, tol, max_iter, zero_tol);
        }
        if (app.got_subcommand(sub_exp)) {
            ggmlt::GridConfig cfg;
            if (!config_file.empty()) apply_json_config(config_file, cfg, jobs, out_file);
            if (o_pv->count()) cfg.p_values = p_values;
            if (o_as->count()) cfg.alpha_start = alpha_start;
            if (o_ao->count()) cfg.alpha_stop = alpha_stop;
            if (o_ap->count()) cfg.alpha_step = alpha_step;
            if (o_tr->count()) cfg.trials = trials;
            if (o_se->count()) cfg.master_seed = seed;
            if (o_pr->count() || config_file.empty()) {
                if (predicate == "atmost")
                    cfg.predicate = ggmlt::SuccessPredicate::kMltAtMostN;
                else if (predicate == "strict")
                    cfg.predicate = ggmlt::SuccessPredicate::kMltLessThanN;
                else
                    throw ggmlt::ParseError("--predicate must be 'atmost' or 'strict'");
            }
            if (o_no->count() || o_ce->count()) {
                using ggmlt::Centering;
                using ggmlt::Normalization;
                std::string n = o_no->count() ? normalize
                                : cfg.covariance.normalization == Normalization::kSampleAveraged
                                    ? "sample" : "unnormalized";
                std::string c = o_ce->count() ? centering
                                : cfg.covariance.centering == Centering::kAssumeZeroMean
                                    ? "zero-mean" : "center";
                cfg.covariance = make_cov_config(n, c);
            }

            auto progress = [](int done, int total) {
                int step = std::max(1, total / 50);
                if (done == total || done % step == 0)
                    std::fprintf(stderr, "progress: %d/%d cells\n", done, total);
            };
            std::vector<ggmlt::GridCellResult> results = ggmlt::run_grid(cfg, jobs, progress);

            int decimals = ggmlt::alpha_print_decimals(cfg);
            if (out_file.empty()) {
                ggmlt::write_csv(std::cout, results, decimals);
            } else {
                std::ofstream out(out_file, std::ios::binary);
                if (!out) throw std::runtime_error("cannot open " + out_file + " for writing");
                ggmlt::write_csv(out, results, decimals);
            }
            return 0;
        }
        if (app.got_subcommand(sub_plot)) {
            std::ifstream in(csv_file, std::ios::binary);
            if (!in) throw ggmlt::ParseError("cannot open " + csv_file);
            std::vector<ggmlt::GridCellResult> rows_in = ggmlt::read_csv(in);
            try {
                for (const std::string& path : ggmlt::write_plots(rows_in, out_dir))
                    std::cout << path << '\n';
            } catch (const std::invalid_argument& e) {
                throw ggmlt::ParseError(e.what());
            }
            return 0;
        }
    } catch (const ggmlt::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitParse;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitParse;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitParse;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
