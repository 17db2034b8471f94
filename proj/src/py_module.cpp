#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gslope/experiments.hpp"
#include "gslope/weights.hpp"

namespace py = pybind11;
using namespace gslope;

PYBIND11_MODULE(_gslope, m) {
    m.doc() = "Graph-Slope denoising: sparse graph operators, ordered-l1 prox, "
              "dual FISTA solver, weight schedules and simulation helpers";

    py::class_<Graph>(m, "Graph")
        .def_static("build", &Graph::build, py::arg("n"), py::arg("edges"))
        .def_property_readonly("num_vertices", &Graph::num_vertices)
        .def_property_readonly("num_edges", &Graph::num_edges)
        .def_property_readonly("edge_list",
                               [](const Graph& g) {
                                   std::vector<std::pair<int, int>> out;
                                   for (const auto& e : g.edges()) out.emplace_back(e.u, e.v);
                                   return out;
                               })
        .def("incidence_t_apply", &Graph::incidence_t_apply, py::arg("x"))
        .def("incidence_apply", &Graph::incidence_apply, py::arg("theta"))
        .def("laplacian_apply", &Graph::laplacian_apply, py::arg("x"));

    m.def("gen_path", &gen_path, py::arg("n"));
    m.def(
        "gen_caveman",
        [](int l, int k, double q, std::uint64_t seed) {
            Rng rng(seed);
            return gen_caveman(l, k, q, rng);
        },
        py::arg("l"), py::arg("k"), py::arg("q"), py::arg("seed") = 0);
    m.def("read_edge_list", &read_edge_list_file, py::arg("path"));
    m.def("write_edge_list", &write_edge_list_file, py::arg("path"), py::arg("graph"));

    m.def(
        "num_components",
        [](const Graph& g) { return connected_components(g).count; },
        py::arg("graph"));
    m.def(
        "project_kernel",
        [](const Graph& g, const Vec& x) { return project_kernel(g, x); },
        py::arg("graph"), py::arg("x"));
    m.def(
        "laplacian_pinv_solve",
        [](const Graph& g, const Vec& b, double tol) {
            LaplacianSolveConfig cfg;
            cfg.tolerance = tol;
            return laplacian_pinv_solve(g, b, cfg);
        },
        py::arg("graph"), py::arg("b"), py::arg("tolerance") = 1e-10);
    m.def("rho", [](const Graph& g) { return rho(g); }, py::arg("graph"));
    m.def("spectral_norm_sq", &spectral_norm_sq, py::arg("graph"));

    py::class_<OrderedWeights>(m, "OrderedWeights")
        .def(py::init<Vec>(), py::arg("lambdas"))
        .def_static("constant", &OrderedWeights::constant, py::arg("p"), py::arg("c"))
        .def_property_readonly("values", &OrderedWeights::values)
        .def("__len__", &OrderedWeights::size);

    m.def("slope_norm", &slope_norm, py::arg("weights"), py::arg("theta"));
    m.def("slope_dual_norm", &slope_dual_norm, py::arg("weights"), py::arg("v"));
    m.def("isotonic_nonneg", &isotonic_nonneg, py::arg("y"));
    m.def("prox_slope", &prox_slope, py::arg("weights"), py::arg("u"), py::arg("t"));
    m.def("project_dual_ball", &project_dual_ball, py::arg("weights"), py::arg("theta"),
          py::arg("r"));
    m.def("capital_lambda", &capital_lambda, py::arg("weights"), py::arg("s"));

    py::class_<SolverConfig>(m, "SolverConfig")
        .def(py::init<>())
        .def_readwrite("gap_tolerance", &SolverConfig::gap_tolerance)
        .def_readwrite("max_iterations", &SolverConfig::max_iterations)
        .def_readwrite("gap_check_period", &SolverConfig::gap_check_period)
        .def_readwrite("step_scale", &SolverConfig::step_scale)
        .def_readwrite("record_gap_history", &SolverConfig::record_gap_history);

    py::class_<SolverResult>(m, "SolverResult")
        .def_readonly("beta_hat", &SolverResult::beta_hat)
        .def_readonly("theta_hat", &SolverResult::theta_hat)
        .def_readonly("gap", &SolverResult::gap)
        .def_readonly("iterations", &SolverResult::iterations)
        .def_readonly("converged", &SolverResult::converged)
        .def_readonly("gap_history", &SolverResult::gap_history);

    m.def(
        "solve",
        [](const Graph& g, const Vec& y, const OrderedWeights& w, const SolverConfig& cfg) {
            return solve(DenoiseProblem(g, y, w), cfg);
        },
        py::arg("graph"), py::arg("y"), py::arg("weights"),
        py::arg("config") = SolverConfig{});
    m.def("solve_graph_lasso", &solve_graph_lasso, py::arg("graph"), py::arg("y"),
          py::arg("lambda1"), py::arg("config") = SolverConfig{});
    m.def(
        "duality_gap",
        [](const Graph& g, const Vec& y, const OrderedWeights& w, const Vec& beta,
           const Vec& theta) { return duality_gap(DenoiseProblem(g, y, w), beta, theta); },
        py::arg("graph"), py::arg("y"), py::arg("weights"), py::arg("beta"), py::arg("theta"));

    m.def(
        "weights_corollary",
        [](const Graph& g, double sigma) { return weights_corollary(g, sigma); },
        py::arg("graph"), py::arg("sigma"));
    m.def(
        "weights_practical_gs",
        [](const Graph& g, double sigma) { return weights_practical_gs(g, sigma); },
        py::arg("graph"), py::arg("sigma"));
    m.def(
        "weights_practical_gl",
        [](const Graph& g, double sigma) { return weights_practical_gl(g, sigma); },
        py::arg("graph"), py::arg("sigma"));
    m.def("weights_alpha", &weights_alpha, py::arg("graph"), py::arg("sigma"), py::arg("alpha"));
    m.def(
        "weights_monte_carlo",
        [](const Graph& g, double sigma, int n, std::uint64_t seed, double quantile_level) {
            Rng rng(seed);
            MonteCarloWeightsConfig mc;
            mc.quantile_level = quantile_level;
            return weights_monte_carlo(g, sigma, n, rng, mc);
        },
        py::arg("graph"), py::arg("sigma"), py::arg("n_replicates"), py::arg("seed") = 0,
        py::arg("quantile_level") = -1.0);
    m.def(
        "event_frequency",
        [](const Graph& g, const OrderedWeights& w, double sigma, int trials,
           std::uint64_t seed, bool use_max_ratio_bound) {
            Rng rng(seed);
            return event_frequency(g, w, sigma, trials, rng, use_max_ratio_bound);
        },
        py::arg("graph"), py::arg("weights"), py::arg("sigma"), py::arg("trials"),
        py::arg("seed") = 0, py::arg("use_max_ratio_bound") = false);

    m.def(
        "gen_edge_subset_signal",
        [](const Graph& g, int n0, double c, std::uint64_t seed) {
            Rng rng(seed);
            return gen_edge_subset_signal(g, n0, c, rng);
        },
        py::arg("graph"), py::arg("n0"), py::arg("c"), py::arg("seed") = 0);
    m.def(
        "gen_path_piecewise",
        [](int n, int s, std::uint64_t seed) {
            Rng rng(seed);
            return gen_path_piecewise(n, s, rng);
        },
        py::arg("n"), py::arg("s"), py::arg("seed") = 0);
    m.def(
        "gen_infection_signal",
        [](const Graph& g, int sources, double infect_prob, int iterations,
           std::uint64_t seed) {
            Rng rng(seed);
            return gen_infection_signal(g, sources, infect_prob, iterations, rng);
        },
        py::arg("graph"), py::arg("n_sources"), py::arg("infect_prob") = 0.75,
        py::arg("iterations") = 8, py::arg("seed") = 0);
    m.def(
        "add_noise",
        [](const Vec& sig, double sigma, std::uint64_t seed) {
            Rng rng(seed);
            return add_noise(sig, sigma, rng);
        },
        py::arg("signal"), py::arg("sigma"), py::arg("seed") = 0);

    m.def("mse", &mse, py::arg("estimate"), py::arg("truth"));
    m.def("support_tolerance", &support_tolerance, py::arg("graph"), py::arg("beta"));
    m.def("fdr", &fdr, py::arg("estimate"), py::arg("truth"), py::arg("graph"), py::arg("tol"));
    m.def("tdr", &tdr, py::arg("estimate"), py::arg("truth"), py::arg("graph"), py::arg("tol"));

    m.def(
        "estimate_kappa",
        [](const Graph& g, const OrderedWeights& w, int s, int budget, std::uint64_t seed) {
            Rng rng(seed);
            auto est = estimate_kappa(g, w, s, budget, rng);
            return py::make_tuple(est.value, est.feasible_found);
        },
        py::arg("graph"), py::arg("weights"), py::arg("s"), py::arg("budget"),
        py::arg("seed") = 0);
    m.def("oracle_rhs", &oracle_rhs, py::arg("sigma"), py::arg("n"), py::arg("p"),
          py::arg("rho"), py::arg("kappa"), py::arg("s"), py::arg("delta"));
}
