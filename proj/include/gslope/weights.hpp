#pragma once

#include <utility>

#include "gslope/graph.hpp"
#include "gslope/ordered_l1.hpp"
#include "gslope/rng.hpp"

namespace gslope {

// All schemes return weights on the 1/(2n) objective scale (the lambda of the
// Graph-Slope program), so n*lambda_j matches the displayed formulas.

// n lambda_j = 8 sigma rho(G) sqrt(log(2p/j)).
OrderedWeights weights_corollary(const Graph& g, double sigma,
                                 const LaplacianSolveConfig& cfg = {});
OrderedWeights weights_corollary_with_rho(const Graph& g, double sigma, double rho_value);

// Practical forms with the constant 8 dropped:
//   (lambda_GS)_j = rho sigma sqrt(2 log(p/j) / n),
//   lambda_GL     = rho sigma sqrt(2 log(p) / n).
// GS requires p >= 2 (else lambda_1 = 0).
OrderedWeights weights_practical_gs(const Graph& g, double sigma,
                                    const LaplacianSolveConfig& cfg = {});
double weights_practical_gl(const Graph& g, double sigma,
                            const LaplacianSolveConfig& cfg = {});

// Practical forms with rho replaced by a free scale alpha > 0.
// Returns {GS weights, GL constant}.
std::pair<OrderedWeights, double> weights_alpha(const Graph& g, double sigma, double alpha);

struct MonteCarloWeightsConfig {
    double quantile_level = -1.0;  // <0 means 1 - 1/(3p)
};

// Quantile heuristic: simulate eps ~ N(0, sigma^2 Id), form g = D^T L^+ eps,
// take per-rank order-statistic quantiles of 2|g|^down, repair monotonicity
// with a running max from the right. Needs n_replicates >= 100.
OrderedWeights weights_monte_carlo(const Graph& g, double sigma, int n_replicates,
                                   Rng& rng, const MonteCarloWeightsConfig& mc_cfg = {},
                                   const LaplacianSolveConfig& cfg = {});

// Empirical frequency of (1/n) ||D^T L^+ eps||* <= 1/2 under the exact dual
// norm (or the max-ratio upper bound when use_max_ratio_bound is set, in
// which case lambda_p > 0 is required).
double event_frequency(const Graph& g, const OrderedWeights& weights, double sigma,
                       int trials, Rng& rng, bool use_max_ratio_bound = false,
                       const LaplacianSolveConfig& cfg = {});

}  // namespace gslope
