#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gslope/graph.hpp"
#include "gslope/ordered_l1.hpp"
#include "gslope/rng.hpp"
#include "gslope/solver.hpp"

namespace gslope {

// beta* = c * P_J(g) with g ~ N(0, Id) and P_J the per-component averaging of
// the subgraph keeping only a uniform size-n0 edge subset J. Every J-edge
// carries an exactly zero difference, so ||D^T beta*||_0 <= p - n0.
Vec gen_edge_subset_signal(const Graph& g, int n0, double c, Rng& rng);

// Piecewise-constant signal on a path: s breakpoints uniform without
// replacement among the n-1 edges, i.i.d. standard normal jump amplitudes.
Vec gen_path_piecewise(int n, int s, Rng& rng);

// Binary infection cascade: sources uniform without replacement, then each
// infected vertex infects each neighbor independently per iteration.
Vec gen_infection_signal(const Graph& g, int n_sources, double infect_prob,
                         int iterations, Rng& rng);

Vec add_noise(const Vec& signal, double sigma, Rng& rng);

double mse(const Vec& estimate, const Vec& truth);

// Default support threshold: 1e-8 * max(1, ||D^T beta||_inf) of the estimate.
double support_tolerance(const Graph& g, const Vec& beta);

// Edge-support rates on D^T differences; |.| > tol defines the support.
// FDR is 0 when the estimated support is empty, TDR is 0 when the true
// support is empty.
double fdr(const Vec& estimate, const Vec& truth, const Graph& g, double tol);
double tdr(const Vec& estimate, const Vec& truth, const Graph& g, double tol);

struct SweepCell {
    std::string scheme;
    int n0 = 0;
    int replicates = 0;
    double mean_mse = 0.0;
    double mean_fdr = 0.0;
    double mean_tdr = 0.0;
    int non_converged = 0;
};

struct ExperimentReport {
    std::vector<SweepCell> cells;  // sweep order: n0-major, scheme-minor
    std::uint64_t seed = 0;
    double sigma = 0.0;
    double amplitude = 0.0;
};

struct ProtocolConfig {
    double sigma = 0.2;
    std::vector<std::string> schemes;  // of: practical_gl, practical_gs,
                                       // corollary, monte_carlo
    std::vector<int> n0_sweep;
    int replicates = 100;
    double amplitude = 8.0;
    std::uint64_t seed = 0;
    int monte_carlo_replicates = 1000;
    int threads = 1;
    SolverConfig solver;
};

// Edge-subset sweep: per (n0, replicate) draw one signal and one noise
// vector, shared across all schemes (paired comparison), solve, aggregate.
// Deterministic given the master seed, regardless of thread count.
ExperimentReport run_protocol(const Graph& g, const ProtocolConfig& cfg);

struct OracleTuneResult {
    std::vector<double> alphas;
    std::vector<double> mse_gl;
    std::vector<double> mse_gs;
    double best_alpha_gl = 0.0;
    double best_alpha_gs = 0.0;
    double best_mse_gl = 0.0;
    double best_mse_gs = 0.0;
};

struct TuneGrid {
    int points = 100;
    double lo = 1e-5;
    double hi = 31.622776601683793;  // 10^1.5
};

// Evaluates both estimators on a geometric alpha grid against known ground
// truth; ties broken toward smaller alpha.
OracleTuneResult oracle_tune(const Graph& g, const Vec& y, const Vec& truth,
                             double sigma, const TuneGrid& grid = {},
                             const SolverConfig& solver = {});

struct KappaEstimate {
    double value = 0.0;        // upper bound of the infimum (sampled minimum)
    bool feasible_found = false;
    int samples_used = 0;
};

// Compatibility factor kappa(s): sampled minimum of ||v|| / ||D^T v|| over
// the cone {3 Lambda(lambda,s) ||D^T v||_2 > sum_{j>s} lambda_j |D^T v|^down_j},
// random multi-start plus local perturbation descent.
KappaEstimate estimate_kappa(const Graph& g, const OrderedWeights& w, int s,
                             int budget, Rng& rng);

// (sigma^2/n) * (48 rho^2 s / kappa^2 * log(2ep/s) + 2 + 16 log(1/delta)).
double oracle_rhs(double sigma, int n, int p, double rho_value, double kappa,
                  int s, double delta);

}  // namespace gslope
