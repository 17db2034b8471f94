#pragma once

#include <vector>

#include "gslope/graph.hpp"
#include "gslope/ordered_l1.hpp"

namespace gslope {

// Graph-Slope denoising instance:
//   minimize (1/2n) ||y - beta||^2 + sum_j lambda_j |D^T beta|^down_j.
// Weights are per-edge and live on the 1/(2n) data-term scale.
struct DenoiseProblem {
    Graph graph;
    Vec y;
    OrderedWeights weights;

    DenoiseProblem(Graph g, Vec obs, OrderedWeights w);
};

struct SolverConfig {
    double gap_tolerance = 1e-2;
    int max_iterations = 100000;
    int gap_check_period = 10;
    double step_scale = 1.0;  // multiplies 1/L; <1 for conservative runs
    bool record_gap_history = false;
};

struct SolverResult {
    Vec beta_hat;   // primal, length n
    Vec theta_hat;  // dual, length p, feasible for the lambda-tilde dual ball
    double gap = 0.0;
    int iterations = 0;
    bool converged = false;
    std::vector<double> gap_history;
};

// Internal solver scale: lambda_tilde = n * lambda turns the objective into
// 0.5 * ||y - beta||^2 + slope_norm(lambda_tilde, D^T beta).
OrderedWeights effective_weights(const DenoiseProblem& prob);

// Duality gap on the lambda-tilde scale:
//   0.5||y-beta||^2 + ||D^T beta||_lt + 0.5||D theta - y||^2 - 0.5||y||^2,
// +inf when slope_dual_norm(lambda_tilde, theta) > 1 + 1e-9.
double duality_gap(const DenoiseProblem& prob, const Vec& beta, const Vec& theta);

// FISTA on the dual: project gradient steps of 0.5||D theta - y||^2 onto the
// unit ball of the lambda-tilde dual norm; primal recovery beta = y - D theta.
SolverResult solve(const DenoiseProblem& prob, const SolverConfig& cfg = {});

// Graph-Lasso: equal weights lambda1 on every edge.
SolverResult solve_graph_lasso(const Graph& g, const Vec& y, double lambda1,
                               const SolverConfig& cfg = {});

}  // namespace gslope
