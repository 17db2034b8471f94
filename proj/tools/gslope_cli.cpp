// Command-line front end: graph denoising, weight schedules, simulation
// sweeps, oracle tuning, and graph utilities. Data goes to files, stdout
// carries a short human summary only.
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "gslope/experiments.hpp"
#include "gslope/weights.hpp"
#include "json.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace gslope;

namespace {

constexpr int kExitParse = 2;
constexpr int kExitDimension = 3;
constexpr int kExitNoConvergence = 4;

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DimensionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Vec read_signal_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open signal file: " + path);
    Vec out;
    double x;
    while (in >> x) out.push_back(x);
    if (out.empty()) throw ParseError("signal file is empty: " + path);
    return out;
}

Graph load_graph(const std::string& path) {
    try {
        return read_edge_list_file(path);
    } catch (const std::exception& e) {
        throw ParseError(e.what());
    }
}

void ensure_dir(const std::string& dir) { fs::create_directories(dir); }

void write_json(const std::string& path, const json& j) {
    std::ofstream out(path);
    out << j.dump(2) << '\n';
}

std::ofstream open_csv(const std::string& path) {
    std::ofstream out(path);
    out.precision(17);
    return out;
}

OrderedWeights scheme_weights(const Graph& g, const std::string& scheme, double sigma,
                              double alpha, int mc_replicates, std::uint64_t seed,
                              json& meta) {
    meta["scheme"] = scheme;
    meta["sigma"] = sigma;
    if (scheme == "corollary" || scheme == "practical_gs" || scheme == "practical_gl") {
        double r = rho(g);
        meta["rho"] = r;
        if (scheme == "corollary") return weights_corollary_with_rho(g, sigma, r);
        if (scheme == "practical_gs") return weights_practical_gs(g, sigma);
        return OrderedWeights::constant(g.num_edges(), weights_practical_gl(g, sigma));
    }
    if (scheme == "alpha_scaled") {
        meta["alpha"] = alpha;
        return weights_alpha(g, sigma, alpha).first;
    }
    if (scheme == "monte_carlo") {
        meta["replicates"] = mc_replicates;
        meta["seed"] = seed;
        Rng rng(seed);
        return weights_monte_carlo(g, sigma, mc_replicates, rng);
    }
    throw ParseError("unknown scheme: " + scheme);
}

struct DenoiseArgs {
    std::string graph_file, signal_file, weights_file, scheme = "practical_gs";
    std::string out_dir = ".";
    double sigma = 1.0, alpha = 1.0, eps = 1e-2;
    int max_iter = 100000, mc_replicates = 1000;
    std::uint64_t seed = 0;
};

int cmd_denoise(const DenoiseArgs& a) {
    Graph g = load_graph(a.graph_file);
    Vec y = read_signal_file(a.signal_file);
    if (static_cast<int>(y.size()) != g.num_vertices()) {
        throw DimensionError("signal length does not match vertex count");
    }
    json meta;
    OrderedWeights w = [&] {
        if (!a.weights_file.empty()) {
            meta["scheme"] = "file";
            meta["weights_file"] = a.weights_file;
            try {
                return read_weights_file(a.weights_file);
            } catch (const std::exception& e) {
                throw ParseError(e.what());
            }
        }
        return scheme_weights(g, a.scheme, a.sigma, a.alpha, a.mc_replicates, a.seed, meta);
    }();
    if (static_cast<int>(w.size()) != g.num_edges()) {
        throw DimensionError("weight length does not match edge count");
    }

    SolverConfig cfg;
    cfg.gap_tolerance = a.eps;
    cfg.max_iterations = a.max_iter;
    auto res = solve(DenoiseProblem(g, y, w), cfg);

    ensure_dir(a.out_dir);
    auto csv = open_csv(a.out_dir + "/result.csv");
    csv << "vertex_id,y,beta_hat\n";
    for (int i = 0; i < g.num_vertices(); ++i) {
        csv << i << ',' << y[i] << ',' << res.beta_hat[i] << '\n';
    }
    json diag = {{"gap", res.gap},
                 {"iterations", res.iterations},
                 {"converged", res.converged},
                 {"gap_tolerance", a.eps},
                 {"max_iterations", a.max_iter},
                 {"scheme", meta}};
    write_json(a.out_dir + "/result.json", diag);
    std::cout << "denoise: gap=" << res.gap << " iterations=" << res.iterations
              << " converged=" << (res.converged ? "yes" : "no") << '\n';
    return res.converged ? 0 : kExitNoConvergence;
}

struct WeightsArgs {
    std::string graph_file, scheme = "practical_gs", out_dir = ".";
    double sigma = 1.0, alpha = 1.0;
    int mc_replicates = 1000;
    std::uint64_t seed = 0;
};

int cmd_weights(const WeightsArgs& a) {
    Graph g = load_graph(a.graph_file);
    json meta;
    OrderedWeights w =
        scheme_weights(g, a.scheme, a.sigma, a.alpha, a.mc_replicates, a.seed, meta);
    ensure_dir(a.out_dir);
    write_weights_file(a.out_dir + "/weights.txt", w);
    meta["p"] = g.num_edges();
    meta["n"] = g.num_vertices();
    write_json(a.out_dir + "/weights.json", meta);
    std::cout << "weights: wrote " << w.size() << " values (" << a.scheme << ")\n";
    return 0;
}

Graph graph_from_json(const json& spec) {
    if (spec.contains("file")) return load_graph(spec.at("file").get<std::string>());
    const std::string kind = spec.value("kind", "");
    if (kind == "path") return gen_path(spec.at("n").get<int>());
    if (kind == "caveman") {
        Rng rng(spec.value("seed", 0));
        return gen_caveman(spec.at("l").get<int>(), spec.at("k").get<int>(),
                           spec.at("q").get<double>(), rng);
    }
    throw ParseError("config: graph must name a file or a generator kind");
}

struct SimulateArgs {
    std::string config_file, out_dir = ".";
    std::optional<double> sigma;
    std::optional<int> replicates;
    std::optional<std::uint64_t> seed;
    std::optional<int> threads;
};

int cmd_simulate(const SimulateArgs& a) {
    json cfg_json;
    {
        std::ifstream in(a.config_file);
        if (!in) throw ParseError("cannot open config: " + a.config_file);
        try {
            in >> cfg_json;
        } catch (const json::exception& e) {
            throw ParseError(std::string("config: ") + e.what());
        }
    }
    ProtocolConfig cfg;
    try {
        cfg.sigma = cfg_json.at("sigma").get<double>();
        cfg.schemes = cfg_json.at("schemes").get<std::vector<std::string>>();
        cfg.n0_sweep = cfg_json.at("n0_sweep").get<std::vector<int>>();
        cfg.replicates = cfg_json.at("replicates").get<int>();
        cfg.seed = cfg_json.value("seed", 0);
        cfg.amplitude = cfg_json.value("amplitude", 8.0);
        cfg.monte_carlo_replicates = cfg_json.value("monte_carlo_replicates", 1000);
        cfg.threads = cfg_json.value("threads", 1);
        if (cfg_json.contains("gap_tolerance")) {
            cfg.solver.gap_tolerance = cfg_json.at("gap_tolerance").get<double>();
        }
    } catch (const json::exception& e) {
        throw ParseError(std::string("config: ") + e.what());
    }
    // flags win over the config file
    if (a.sigma) cfg.sigma = *a.sigma;
    if (a.replicates) cfg.replicates = *a.replicates;
    if (a.seed) cfg.seed = *a.seed;
    if (a.threads) cfg.threads = *a.threads;

    Graph g = graph_from_json(cfg_json.at("graph"));
    auto report = run_protocol(g, cfg);

    ensure_dir(a.out_dir);
    auto csv = open_csv(a.out_dir + "/report.csv");
    csv << "scheme,n0,replicates,mean_mse,mean_fdr,mean_tdr\n";
    for (const auto& cell : report.cells) {
        csv << cell.scheme << ',' << cell.n0 << ',' << cell.replicates << ','
            << cell.mean_mse << ',' << cell.mean_fdr << ',' << cell.mean_tdr << '\n';
    }
    json echo = cfg_json;
    echo["effective"] = {{"sigma", cfg.sigma},
                         {"replicates", cfg.replicates},
                         {"seed", cfg.seed},
                         {"threads", cfg.threads},
                         {"amplitude", cfg.amplitude},
                         {"gap_tolerance", cfg.solver.gap_tolerance},
                         {"n", g.num_vertices()},
                         {"p", g.num_edges()}};
    write_json(a.out_dir + "/config_echo.json", echo);
    std::cout << "simulate: " << report.cells.size() << " sweep cells written\n";
    return 0;
}

struct TuneArgs {
    std::string graph_file, signal_file, truth_file, out_dir = ".";
    double sigma = 1.0;
    TuneGrid grid;
    double eps = 1e-2;
};

int cmd_tune(const TuneArgs& a) {
    Graph g = load_graph(a.graph_file);
    Vec y = read_signal_file(a.signal_file);
    Vec truth = read_signal_file(a.truth_file);
    if (static_cast<int>(y.size()) != g.num_vertices() || truth.size() != y.size()) {
        throw DimensionError("signal/truth length does not match vertex count");
    }
    SolverConfig solver;
    solver.gap_tolerance = a.eps;
    auto res = oracle_tune(g, y, truth, a.sigma, a.grid, solver);

    ensure_dir(a.out_dir);
    auto csv = open_csv(a.out_dir + "/curves.csv");
    csv << "alpha,mse_gl,mse_gs\n";
    for (std::size_t i = 0; i < res.alphas.size(); ++i) {
        csv << res.alphas[i] << ',' << res.mse_gl[i] << ',' << res.mse_gs[i] << '\n';
    }
    json summary = {{"best_alpha_gl", res.best_alpha_gl},
                    {"best_alpha_gs", res.best_alpha_gs},
                    {"best_mse_gl", res.best_mse_gl},
                    {"best_mse_gs", res.best_mse_gs},
                    {"sigma", a.sigma},
                    {"grid", {{"points", a.grid.points}, {"lo", a.grid.lo}, {"hi", a.grid.hi}}}};
    write_json(a.out_dir + "/tune.json", summary);
    std::cout << "tune: best alpha GL=" << res.best_alpha_gl
              << " GS=" << res.best_alpha_gs << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Graph-Slope denoising toolkit"};
    app.require_subcommand(1);

    DenoiseArgs da;
    auto* denoise = app.add_subcommand("denoise", "Denoise a graph signal");
    denoise->add_option("--graph", da.graph_file)->required();
    denoise->add_option("--signal", da.signal_file)->required();
    denoise->add_option("--weights", da.weights_file);
    denoise->add_option("--scheme", da.scheme);
    denoise->add_option("--sigma", da.sigma);
    denoise->add_option("--alpha", da.alpha);
    denoise->add_option("--eps", da.eps);
    denoise->add_option("--max-iter", da.max_iter);
    denoise->add_option("--mc-replicates", da.mc_replicates);
    denoise->add_option("--seed", da.seed);
    denoise->add_option("--out-dir", da.out_dir);

    WeightsArgs wa;
    auto* weights = app.add_subcommand("weights", "Compute a weight schedule");
    weights->add_option("--graph", wa.graph_file)->required();
    weights->add_option("--scheme", wa.scheme);
    weights->add_option("--sigma", wa.sigma);
    weights->add_option("--alpha", wa.alpha);
    weights->add_option("--N", wa.mc_replicates);
    weights->add_option("--seed", wa.seed);
    weights->add_option("--out-dir", wa.out_dir);

    SimulateArgs sa;
    auto* simulate = app.add_subcommand("simulate", "Run a replication sweep");
    simulate->add_option("--config", sa.config_file)->required();
    double sim_sigma;
    int sim_reps, sim_threads;
    std::uint64_t sim_seed;
    auto* so = simulate->add_option("--sigma", sim_sigma);
    auto* ro = simulate->add_option("--replicates", sim_reps);
    auto* qo = simulate->add_option("--seed", sim_seed);
    auto* to = simulate->add_option("--threads", sim_threads);
    simulate->add_option("--out-dir", sa.out_dir);

    TuneArgs ta;
    auto* tune = app.add_subcommand("tune", "Oracle alpha tuning against ground truth");
    tune->add_option("--graph", ta.graph_file)->required();
    tune->add_option("--signal", ta.signal_file)->required();
    tune->add_option("--truth", ta.truth_file)->required();
    tune->add_option("--sigma", ta.sigma);
    tune->add_option("--grid-points", ta.grid.points);
    tune->add_option("--grid-lo", ta.grid.lo);
    tune->add_option("--grid-hi", ta.grid.hi);
    tune->add_option("--eps", ta.eps);
    tune->add_option("--out-dir", ta.out_dir);

    auto* graph_cmd = app.add_subcommand("graph", "Graph utilities");
    graph_cmd->require_subcommand(1);
    std::string gen_kind = "path", gen_out = "graph.txt";
    int gen_n = 100, gen_l = 4, gen_k = 10;
    double gen_q = 0.1;
    std::uint64_t gen_seed = 0;
    auto* gen = graph_cmd->add_subcommand("gen", "Generate a graph file");
    gen->add_option("kind", gen_kind)->check(CLI::IsMember({"path", "caveman"}));
    gen->add_option("--n", gen_n);
    gen->add_option("--l", gen_l);
    gen->add_option("--k", gen_k);
    gen->add_option("--q", gen_q);
    gen->add_option("--seed", gen_seed);
    gen->add_option("-o,--out", gen_out);
    std::string inspect_file;
    auto* inspect = graph_cmd->add_subcommand("inspect", "Print graph statistics");
    inspect->add_option("file", inspect_file)->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*denoise) return cmd_denoise(da);
        if (*weights) return cmd_weights(wa);
        if (*simulate) {
            if (*so) sa.sigma = sim_sigma;
            if (*ro) sa.replicates = sim_reps;
            if (*qo) sa.seed = sim_seed;
            if (*to) sa.threads = sim_threads;
            return cmd_simulate(sa);
        }
        if (*tune) return cmd_tune(ta);
        if (*gen) {
            Graph g = [&] {
                if (gen_kind == "path") return gen_path(gen_n);
                Rng rng(gen_seed);
                return gen_caveman(gen_l, gen_k, gen_q, rng);
            }();
            write_edge_list_file(gen_out, g);
            std::cout << "graph gen: n=" << g.num_vertices() << " p=" << g.num_edges()
                      << " -> " << gen_out << '\n';
            return 0;
        }
        if (*inspect) {
            Graph g = load_graph(inspect_file);
            auto comps = connected_components(g);
            std::cout << "n=" << g.num_vertices() << '\n'
                      << "p=" << g.num_edges() << '\n'
                      << "K=" << comps.count << '\n'
                      << "rho=" << rho(g) << '\n'
                      << "lambda_max=" << spectral_norm_sq(g) << '\n';
            return 0;
        }
    } catch (const DimensionError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitDimension;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitParse;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitParse;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
