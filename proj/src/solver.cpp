#include "gslope/solver.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace gslope {

namespace {

double sq_norm(const Vec& a) {
    double s = 0.0;
    for (double x : a) s += x * x;
    return s;
}

bool all_finite(const Vec& a) {
    for (double x : a) {
        if (!std::isfinite(x)) return false;
    }
    return true;
}

}  // namespace

DenoiseProblem::DenoiseProblem(Graph g, Vec obs, OrderedWeights w)
    : graph(std::move(g)), y(std::move(obs)), weights(std::move(w)) {
    if (static_cast<int>(y.size()) != graph.num_vertices()) {
        throw std::invalid_argument("problem: observation length != vertex count");
    }
    if (static_cast<int>(weights.size()) != graph.num_edges()) {
        throw std::invalid_argument("problem: weight length != edge count");
    }
    if (!all_finite(y)) throw std::invalid_argument("problem: non-finite observation");
}

OrderedWeights effective_weights(const DenoiseProblem& prob) {
    const double n = prob.graph.num_vertices();
    Vec scaled = prob.weights.values();
    for (double& l : scaled) l *= n;
    return OrderedWeights(std::move(scaled));
}

namespace {

double gap_value(const DenoiseProblem& prob, const OrderedWeights& lt,
                 const Vec& beta, const Vec& theta) {
    if (slope_dual_norm(lt, theta) > 1.0 + 1e-9) {
        return std::numeric_limits<double>::infinity();
    }
    Vec resid(beta.size());
    for (std::size_t i = 0; i < beta.size(); ++i) resid[i] = prob.y[i] - beta[i];
    Vec dtheta = prob.graph.incidence_apply(theta);
    double dual_fit = 0.0;
    for (std::size_t i = 0; i < dtheta.size(); ++i) {
        const double d = dtheta[i] - prob.y[i];
        dual_fit += d * d;
    }
    return 0.5 * sq_norm(resid) + slope_norm(lt, prob.graph.incidence_t_apply(beta)) +
           0.5 * dual_fit - 0.5 * sq_norm(prob.y);
}

}  // namespace

double duality_gap(const DenoiseProblem& prob, const Vec& beta, const Vec& theta) {
    if (static_cast<int>(beta.size()) != prob.graph.num_vertices() ||
        static_cast<int>(theta.size()) != prob.graph.num_edges()) {
        throw std::invalid_argument("duality_gap: length mismatch");
    }
    return gap_value(prob, effective_weights(prob), beta, theta);
}

SolverResult solve(const DenoiseProblem& prob, const SolverConfig& cfg) {
    if (!(cfg.gap_tolerance > 0.0) || cfg.max_iterations < 1 || cfg.gap_check_period < 1) {
        throw std::invalid_argument("solver config invalid");
    }
    const Graph& g = prob.graph;
    const int n = g.num_vertices();
    const int p = g.num_edges();
    const OrderedWeights lt = effective_weights(prob);

    const double lipschitz = std::max(spectral_norm_sq(g), 1e-12);
    const double step = cfg.step_scale / lipschitz;

    SolverResult res;
    res.theta_hat.assign(p, 0.0);  // always dual-feasible
    res.beta_hat = prob.y;
    Vec theta = res.theta_hat;
    Vec theta_bar = theta;
    double t_momentum = 1.0;

    res.gap = gap_value(prob, lt, res.beta_hat, res.theta_hat);
    if (cfg.record_gap_history) res.gap_history.push_back(res.gap);
    if (res.gap <= cfg.gap_tolerance) {
        res.converged = true;
        return res;
    }

    for (int k = 1; k <= cfg.max_iterations; ++k) {
        // Gradient of 0.5 ||D theta - y||^2 at theta_bar, then dual-ball projection.
        Vec grad_pt = g.incidence_apply(theta_bar);
        for (int i = 0; i < n; ++i) grad_pt[i] -= prob.y[i];
        Vec grad = g.incidence_t_apply(grad_pt);
        Vec candidate(p);
        for (int j = 0; j < p; ++j) candidate[j] = theta_bar[j] - step * grad[j];
        Vec theta_next = project_dual_ball(lt, candidate, 1.0);

        const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t_momentum * t_momentum));
        const double extr = (t_momentum - 1.0) / t_next;
        for (int j = 0; j < p; ++j) {
            theta_bar[j] = theta_next[j] + extr * (theta_next[j] - theta[j]);
        }
        theta = std::move(theta_next);
        t_momentum = t_next;
        res.iterations = k;

        if (k % cfg.gap_check_period == 0 || k == cfg.max_iterations) {
            Vec dtheta = g.incidence_apply(theta);
            Vec beta(n);
            for (int i = 0; i < n; ++i) beta[i] = prob.y[i] - dtheta[i];
            const double gap = gap_value(prob, lt, beta, theta);
            if (cfg.record_gap_history) res.gap_history.push_back(gap);
            if (gap < res.gap) {
                res.gap = gap;
                res.beta_hat = beta;
                res.theta_hat = theta;
            }
            if (res.gap <= cfg.gap_tolerance) {
                res.converged = true;
                return res;
            }
        }
    }
    res.converged = false;
    return res;
}

SolverResult solve_graph_lasso(const Graph& g, const Vec& y, double lambda1,
                               const SolverConfig& cfg) {
    return solve(DenoiseProblem(g, y, OrderedWeights::constant(g.num_edges(), lambda1)), cfg);
}

}  // namespace gslope
