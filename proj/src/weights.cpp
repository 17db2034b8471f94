#include "gslope/weights.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace gslope {

namespace {

void require_connected(const Graph& g) {
    if (connected_components(g).count != 1) {
        throw std::invalid_argument("weight scheme requires a connected graph");
    }
}

}  // namespace

OrderedWeights weights_corollary_with_rho(const Graph& g, double sigma, double rho_value) {
    if (!(sigma > 0.0)) throw std::invalid_argument("sigma must be positive");
    const int p = g.num_edges();
    const double n = g.num_vertices();
    Vec lambdas(p);
    for (int j = 0; j < p; ++j) {
        lambdas[j] = 8.0 * sigma * rho_value * std::sqrt(std::log(2.0 * p / (j + 1))) / n;
    }
    return OrderedWeights(std::move(lambdas));
}

OrderedWeights weights_corollary(const Graph& g, double sigma,
                                 const LaplacianSolveConfig& cfg) {
    require_connected(g);
    return weights_corollary_with_rho(g, sigma, rho(g, cfg));
}

namespace {

OrderedWeights practical_gs(const Graph& g, double sigma, double scale) {
    const int p = g.num_edges();
    if (p < 2) throw std::invalid_argument("practical GS weights need p >= 2");
    const double n = g.num_vertices();
    Vec lambdas(p);
    for (int j = 0; j < p; ++j) {
        lambdas[j] = scale * sigma * std::sqrt(2.0 * std::log(static_cast<double>(p) / (j + 1)) / n);
    }
    lambdas[p - 1] = 0.0;  // log(p/p); avoid -0/rounding noise
    return OrderedWeights(std::move(lambdas));
}

double practical_gl(const Graph& g, double sigma, double scale) {
    const double n = g.num_vertices();
    return scale * sigma * std::sqrt(2.0 * std::log(static_cast<double>(g.num_edges())) / n);
}

}  // namespace

OrderedWeights weights_practical_gs(const Graph& g, double sigma,
                                    const LaplacianSolveConfig& cfg) {
    if (!(sigma > 0.0)) throw std::invalid_argument("sigma must be positive");
    require_connected(g);
    return practical_gs(g, sigma, rho(g, cfg));
}

double weights_practical_gl(const Graph& g, double sigma, const LaplacianSolveConfig& cfg) {
    if (!(sigma > 0.0)) throw std::invalid_argument("sigma must be positive");
    require_connected(g);
    return practical_gl(g, sigma, rho(g, cfg));
}

std::pair<OrderedWeights, double> weights_alpha(const Graph& g, double sigma, double alpha) {
    if (!(sigma > 0.0)) throw std::invalid_argument("sigma must be positive");
    if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
    return {practical_gs(g, sigma, alpha), practical_gl(g, sigma, alpha)};
}

OrderedWeights weights_monte_carlo(const Graph& g, double sigma, int n_replicates,
                                   Rng& rng, const MonteCarloWeightsConfig& mc_cfg,
                                   const LaplacianSolveConfig& cfg) {
    if (!(sigma > 0.0)) throw std::invalid_argument("sigma must be positive");
    if (n_replicates < 100) throw std::invalid_argument("monte carlo weights need N >= 100");
    require_connected(g);
    const int n = g.num_vertices();
    const int p = g.num_edges();
    const double level =
        mc_cfg.quantile_level > 0.0 ? mc_cfg.quantile_level : 1.0 - 1.0 / (3.0 * p);
    if (level >= 1.0) throw std::invalid_argument("quantile level must be < 1");

    // samples[j][i] = 2 |g|^down_j of replicate i, with g = D^T L^+ eps.
    std::vector<Vec> samples(p, Vec(n_replicates));
    for (int i = 0; i < n_replicates; ++i) {
        Vec eps = rng.normal_vec(n);
        for (double& e : eps) e *= sigma;
        Vec gvec = g.incidence_t_apply(laplacian_pinv_solve(g, eps, cfg));
        for (double& x : gvec) x = std::abs(x);
        std::sort(gvec.begin(), gvec.end(), std::greater<>());
        for (int j = 0; j < p; ++j) samples[j][i] = 2.0 * gvec[j];
    }

    // Order-statistic quantile: ceil(level * N)-th smallest.
    const int rank = std::max(1, static_cast<int>(std::ceil(level * n_replicates)));
    Vec lambdas(p);
    for (int j = 0; j < p; ++j) {
        std::nth_element(samples[j].begin(), samples[j].begin() + (rank - 1), samples[j].end());
        lambdas[j] = samples[j][rank - 1] / n;
    }
    // Finite-sample quantiles of ordered statistics can jitter; repair.
    for (int j = p - 2; j >= 0; --j) lambdas[j] = std::max(lambdas[j], lambdas[j + 1]);
    return OrderedWeights(std::move(lambdas));
}

double event_frequency(const Graph& g, const OrderedWeights& weights, double sigma,
                       int trials, Rng& rng, bool use_max_ratio_bound,
                       const LaplacianSolveConfig& cfg) {
    if (trials < 1) throw std::invalid_argument("need at least one trial");
    const int n = g.num_vertices();
    const int p = g.num_edges();
    if (static_cast<int>(weights.size()) != p) {
        throw std::invalid_argument("event_frequency: weight length mismatch");
    }
    if (use_max_ratio_bound && weights[p - 1] <= 0.0) {
        throw std::invalid_argument("max-ratio bound needs lambda_p > 0");
    }
    int hits = 0;
    for (int t = 0; t < trials; ++t) {
        Vec eps = rng.normal_vec(n);
        for (double& e : eps) e *= sigma;
        Vec gvec = g.incidence_t_apply(laplacian_pinv_solve(g, eps, cfg));
        double stat;
        if (use_max_ratio_bound) {
            for (double& x : gvec) x = std::abs(x);
            std::sort(gvec.begin(), gvec.end(), std::greater<>());
            stat = 0.0;
            for (int j = 0; j < p; ++j) stat = std::max(stat, gvec[j] / (n * weights[j]));
        } else {
            stat = slope_dual_norm(weights, gvec) / n;
        }
        if (stat <= 0.5) ++hits;
    }
    return static_cast<double>(hits) / trials;
}

}  // namespace gslope
