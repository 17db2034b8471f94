#include "gslope/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <thread>

#include "gslope/weights.hpp"

namespace gslope {

Vec gen_edge_subset_signal(const Graph& g, int n0, double c, Rng& rng) {
    const int p = g.num_edges();
    if (n0 < 0 || n0 > p) throw std::invalid_argument("n0 out of range");
    const int n = g.num_vertices();

    auto subset = rng.sample_without_replacement(p, n0);
    Vec gauss = rng.normal_vec(n);

    // Components of (V, J): union-find over the kept edges.
    std::vector<int> parent(n);
    for (int i = 0; i < n; ++i) parent[i] = i;
    std::function<int(int)> find = [&](int a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    };
    for (int j : subset) {
        const Edge& e = g.edges()[j];
        parent[find(e.u)] = find(e.v);
    }
    std::vector<double> sums(n, 0.0);
    std::vector<int> counts(n, 0);
    for (int i = 0; i < n; ++i) {
        int r = find(i);
        sums[r] += gauss[i];
        ++counts[r];
    }
    Vec out(n);
    for (int i = 0; i < n; ++i) {
        int r = find(i);
        out[i] = c * sums[r] / counts[r];
    }
    return out;
}

Vec gen_path_piecewise(int n, int s, Rng& rng) {
    if (n < 2) throw std::invalid_argument("path needs n >= 2");
    if (s < 0 || s > n - 1) throw std::invalid_argument("s out of range");
    auto breaks = rng.sample_without_replacement(n - 1, s);
    std::sort(breaks.begin(), breaks.end());
    Vec jumps(n - 1, 0.0);
    for (int b : breaks) jumps[b] = rng.normal();
    Vec out(n, 0.0);
    for (int i = 1; i < n; ++i) out[i] = out[i - 1] + jumps[i - 1];
    return out;
}

Vec gen_infection_signal(const Graph& g, int n_sources, double infect_prob,
                         int iterations, Rng& rng) {
    const int n = g.num_vertices();
    if (n_sources < 1 || n_sources > n) throw std::invalid_argument("bad source count");
    if (infect_prob < 0.0 || infect_prob > 1.0) throw std::invalid_argument("bad probability");
    std::vector<char> infected(n, 0);
    for (int s : rng.sample_without_replacement(n, n_sources)) infected[s] = 1;
    for (int it = 0; it < iterations; ++it) {
        std::vector<char> next = infected;
        for (int v = 0; v < n; ++v) {
            if (!infected[v]) continue;
            for (int w : g.adjacency()[v]) {
                if (!next[w] && rng.uniform() < infect_prob) next[w] = 1;
            }
        }
        infected = std::move(next);
    }
    Vec out(n);
    for (int v = 0; v < n; ++v) out[v] = infected[v] ? 1.0 : 0.0;
    return out;
}

Vec add_noise(const Vec& signal, double sigma, Rng& rng) {
    Vec out = signal;
    for (double& x : out) x += sigma * rng.normal();
    return out;
}

double mse(const Vec& estimate, const Vec& truth) {
    if (estimate.size() != truth.size()) throw std::invalid_argument("mse: length mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < estimate.size(); ++i) {
        const double d = estimate[i] - truth[i];
        s += d * d;
    }
    return s / estimate.size();
}

double support_tolerance(const Graph& g, const Vec& beta) {
    double mx = 0.0;
    for (double d : g.incidence_t_apply(beta)) mx = std::max(mx, std::abs(d));
    return 1e-8 * std::max(1.0, mx);
}

namespace {

std::vector<char> edge_support(const Graph& g, const Vec& beta, double tol) {
    Vec d = g.incidence_t_apply(beta);
    std::vector<char> s(d.size());
    for (std::size_t j = 0; j < d.size(); ++j) s[j] = std::abs(d[j]) > tol;
    return s;
}

}  // namespace

double fdr(const Vec& estimate, const Vec& truth, const Graph& g, double tol) {
    auto est = edge_support(g, estimate, tol);
    auto tru = edge_support(g, truth, tol);
    int discovered = 0, false_disc = 0;
    for (std::size_t j = 0; j < est.size(); ++j) {
        if (est[j]) {
            ++discovered;
            if (!tru[j]) ++false_disc;
        }
    }
    return discovered == 0 ? 0.0 : static_cast<double>(false_disc) / discovered;
}

double tdr(const Vec& estimate, const Vec& truth, const Graph& g, double tol) {
    auto est = edge_support(g, estimate, tol);
    auto tru = edge_support(g, truth, tol);
    int true_edges = 0, found = 0;
    for (std::size_t j = 0; j < est.size(); ++j) {
        if (tru[j]) {
            ++true_edges;
            if (est[j]) ++found;
        }
    }
    return true_edges == 0 ? 0.0 : static_cast<double>(found) / true_edges;
}

namespace {

struct SchemeWeights {
    std::string name;
    bool is_lasso = false;
    double lambda_gl = 0.0;
    Vec lambdas_gs;  // empty for lasso
};

SchemeWeights make_scheme(const Graph& g, const std::string& name, const ProtocolConfig& cfg,
                          double rho_value) {
    SchemeWeights sw;
    sw.name = name;
    if (name == "practical_gl") {
        sw.is_lasso = true;
        const double n = g.num_vertices();
        sw.lambda_gl = rho_value * cfg.sigma * std::sqrt(2.0 * std::log(double(g.num_edges())) / n);
    } else if (name == "practical_gs") {
        const double n = g.num_vertices();
        const int p = g.num_edges();
        sw.lambdas_gs.resize(p);
        for (int j = 0; j < p; ++j) {
            sw.lambdas_gs[j] = rho_value * cfg.sigma * std::sqrt(2.0 * std::log(double(p) / (j + 1)) / n);
        }
        sw.lambdas_gs[p - 1] = 0.0;
    } else if (name == "corollary") {
        sw.lambdas_gs = weights_corollary_with_rho(g, cfg.sigma, rho_value).values();
    } else if (name == "monte_carlo") {
        Rng mc_rng(Rng::derive(cfg.seed, 0x6d63));
        sw.lambdas_gs =
            weights_monte_carlo(g, cfg.sigma, cfg.monte_carlo_replicates, mc_rng).values();
    } else {
        throw std::invalid_argument("unknown weight scheme: " + name);
    }
    return sw;
}

}  // namespace

ExperimentReport run_protocol(const Graph& g, const ProtocolConfig& cfg) {
    if (cfg.schemes.empty() || cfg.n0_sweep.empty() || cfg.replicates < 1) {
        throw std::invalid_argument("protocol config invalid");
    }
    const double rho_value = rho(g);
    std::vector<SchemeWeights> schemes;
    for (const auto& name : cfg.schemes) schemes.push_back(make_scheme(g, name, cfg, rho_value));

    ExperimentReport report;
    report.seed = cfg.seed;
    report.sigma = cfg.sigma;
    report.amplitude = cfg.amplitude;
    report.cells.resize(cfg.n0_sweep.size() * schemes.size());

    // Each (n0, scheme) cell regenerates the same per-replicate signal and
    // noise from (seed, n0, replicate), so all schemes see paired data and
    // the result is independent of the thread count.
    auto run_cell = [&](std::size_t cell_index) {
        const std::size_t a = cell_index / schemes.size();
        const std::size_t b = cell_index % schemes.size();
        const int n0 = cfg.n0_sweep[a];
        const SchemeWeights& sw = schemes[b];
        SweepCell cell;
        cell.scheme = sw.name;
        cell.n0 = n0;
        cell.replicates = cfg.replicates;
        for (int r = 0; r < cfg.replicates; ++r) {
            Rng rng(Rng::derive(cfg.seed, static_cast<std::uint64_t>(n0) + 1, r));
            Vec truth = gen_edge_subset_signal(g, n0, cfg.amplitude, rng);
            Vec y = add_noise(truth, cfg.sigma, rng);
            SolverResult sol;
            if (sw.is_lasso) {
                sol = solve_graph_lasso(g, y, sw.lambda_gl, cfg.solver);
            } else {
                sol = solve(DenoiseProblem(g, y, OrderedWeights(sw.lambdas_gs)), cfg.solver);
            }
            if (!sol.converged) ++cell.non_converged;
            const double tol = support_tolerance(g, sol.beta_hat);
            cell.mean_mse += mse(sol.beta_hat, truth);
            cell.mean_fdr += fdr(sol.beta_hat, truth, g, tol);
            cell.mean_tdr += tdr(sol.beta_hat, truth, g, tol);
        }
        cell.mean_mse /= cfg.replicates;
        cell.mean_fdr /= cfg.replicates;
        cell.mean_tdr /= cfg.replicates;
        report.cells[cell_index] = std::move(cell);
    };

    const std::size_t total = report.cells.size();
    const int threads = std::max(1, cfg.threads);
    if (threads == 1) {
        for (std::size_t i = 0; i < total; ++i) run_cell(i);
    } else {
        std::vector<std::thread> pool;
        std::atomic<std::size_t> next{0};
        for (int t = 0; t < threads; ++t) {
            pool.emplace_back([&] {
                for (std::size_t i = next.fetch_add(1); i < total; i = next.fetch_add(1)) {
                    run_cell(i);
                }
            });
        }
        for (auto& th : pool) th.join();
    }
    return report;
}

OracleTuneResult oracle_tune(const Graph& g, const Vec& y, const Vec& truth,
                             double sigma, const TuneGrid& grid, const SolverConfig& solver) {
    if (grid.points < 1 || !(grid.lo > 0.0) || !(grid.hi >= grid.lo)) {
        throw std::invalid_argument("bad tuning grid");
    }
    OracleTuneResult res;
    const double log_lo = std::log(grid.lo);
    const double log_hi = std::log(grid.hi);
    for (int i = 0; i < grid.points; ++i) {
        const double f = grid.points == 1 ? 0.0 : static_cast<double>(i) / (grid.points - 1);
        const double alpha = std::exp(log_lo + f * (log_hi - log_lo));
        auto [w_gs, l_gl] = weights_alpha(g, sigma, alpha);
        const double m_gl = mse(solve_graph_lasso(g, y, l_gl, solver).beta_hat, truth);
        const double m_gs = mse(solve(DenoiseProblem(g, y, w_gs), solver).beta_hat, truth);
        res.alphas.push_back(alpha);
        res.mse_gl.push_back(m_gl);
        res.mse_gs.push_back(m_gs);
        // Ascending grid plus strict improvement = ties go to smaller alpha.
        if (i == 0 || m_gl < res.best_mse_gl) {
            res.best_mse_gl = m_gl;
            res.best_alpha_gl = alpha;
        }
        if (i == 0 || m_gs < res.best_mse_gs) {
            res.best_mse_gs = m_gs;
            res.best_alpha_gs = alpha;
        }
    }
    return res;
}

KappaEstimate estimate_kappa(const Graph& g, const OrderedWeights& w, int s,
                             int budget, Rng& rng) {
    const int p = g.num_edges();
    if (s < 1 || s > p) throw std::invalid_argument("estimate_kappa: s out of range");
    if (budget < 1) throw std::invalid_argument("estimate_kappa: empty budget");
    const int n = g.num_vertices();
    const double lam_s = capital_lambda(w, s);

    auto ratio_if_feasible = [&](const Vec& v, double& out) {
        Vec d = g.incidence_t_apply(v);
        double d2 = 0.0;
        for (double x : d) d2 += x * x;
        const double dn = std::sqrt(d2);
        if (dn == 0.0) return false;
        for (double& x : d) x = std::abs(x);
        std::sort(d.begin(), d.end(), std::greater<>());
        double tail = 0.0;
        for (int j = s; j < p; ++j) tail += w[j] * d[j];
        if (!(3.0 * lam_s * dn > tail)) return false;
        double v2 = 0.0;
        for (double x : v) v2 += x * x;
        out = std::sqrt(v2) / dn;
        return true;
    };

    KappaEstimate est;
    est.value = std::numeric_limits<double>::infinity();
    Vec best;
    int used = 0;
    // Multi-start sampling phase (half the budget).
    for (; used < (budget + 1) / 2; ++used) {
        Vec v = rng.normal_vec(n);
        double r;
        if (ratio_if_feasible(v, r) && r < est.value) {
            est.value = r;
            est.feasible_found = true;
            best = v;
        }
    }
    // Local perturbation descent around the incumbent.
    double scale = 0.5;
    for (; used < budget && est.feasible_found; ++used) {
        Vec v = best;
        for (double& x : v) x += scale * rng.normal();
        double r;
        if (ratio_if_feasible(v, r) && r < est.value) {
            est.value = r;
            best = v;
        } else {
            scale = std::max(1e-4, scale * 0.97);
        }
    }
    est.samples_used = used;
    return est;
}

double oracle_rhs(double sigma, int n, int p, double rho_value, double kappa,
                  int s, double delta) {
    if (s < 1 || s > p) throw std::invalid_argument("oracle_rhs: s out of range");
    if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("oracle_rhs: delta in (0,1)");
    if (!(kappa > 0.0)) throw std::invalid_argument("oracle_rhs: kappa must be positive");
    const double e = std::exp(1.0);
    return sigma * sigma / n *
           (48.0 * rho_value * rho_value * s / (kappa * kappa) * std::log(2.0 * e * p / s) +
            2.0 + 16.0 * std::log(1.0 / delta));
}

}  // namespace gslope
