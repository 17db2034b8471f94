"""Smoke tests for the pybind11 bindings.

The heavy correctness checks live in the C++ suites; here we only verify the
Python surface is wired up and returns sane values.
"""

import math
import os
import sys

import pytest

_mod_dir = os.environ.get("GSLOPE_MODULE_DIR")
if _mod_dir:
    sys.path.insert(0, _mod_dir)

gs = pytest.importorskip("_gslope")


def test_graph_basics():
    g = gs.gen_path(5)
    assert g.num_vertices == 5
    assert g.num_edges == 4
    assert gs.num_components(g) == 1
    assert g.incidence_t_apply([1.0, 2.0, 4.0, 4.0, 4.0]) == [-1.0, -2.0, 0.0, 0.0]


def test_build_canonicalizes():
    g = gs.Graph.build(3, [(2, 0), (1, 2)])
    assert g.edge_list == [(0, 2), (1, 2)]


def test_prox_and_norms():
    w = gs.OrderedWeights([1.5, 0.5])
    assert gs.slope_norm(w, [1.0, -2.0]) == pytest.approx(3.5)
    assert gs.prox_slope(w, [-3.0, 1.0], 1.0) == pytest.approx([-1.5, 0.5])
    assert gs.slope_dual_norm(w, gs.project_dual_ball(w, [5.0, -7.0], 1.0)) <= 1 + 1e-9


def test_solver_converges():
    g = gs.gen_path(20)
    truth = gs.gen_path_piecewise(20, 2, seed=1)
    y = gs.add_noise(truth, 0.3, seed=2)
    w = gs.weights_practical_gs(g, 0.3)
    cfg = gs.SolverConfig()
    cfg.gap_tolerance = 1e-4
    res = gs.solve(g, y, w, cfg)
    assert res.converged
    assert res.gap <= 1e-4
    assert gs.mse(res.beta_hat, truth) < gs.mse(y, truth) * 2


def test_graph_lasso_and_metrics():
    g = gs.gen_path(10)
    y = [0.0] * 5 + [3.0] * 5
    res = gs.solve_graph_lasso(g, y, 0.01)
    tol = gs.support_tolerance(g, res.beta_hat)
    assert 0.0 <= gs.fdr(res.beta_hat, y, g, tol) <= 1.0
    assert 0.0 <= gs.tdr(res.beta_hat, y, g, tol) <= 1.0


def test_weight_schemes():
    g = gs.gen_caveman(2, 4, 0.1, seed=3)
    sigma = 0.2
    cor = gs.weights_corollary(g, sigma).values
    assert all(a >= b for a, b in zip(cor, cor[1:]))
    mc = gs.weights_monte_carlo(g, sigma, 200, seed=4).values
    assert mc == gs.weights_monte_carlo(g, sigma, 200, seed=4).values
    freq = gs.event_frequency(g, gs.weights_corollary(g, sigma), sigma, 50, seed=5)
    assert 0.0 <= freq <= 1.0


def test_capital_lambda_and_rhs():
    w = gs.OrderedWeights([2.0, 1.0])
    assert gs.capital_lambda(w, 2) == pytest.approx(math.sqrt(5.0))
    assert gs.oracle_rhs(1.0, 50, 49, 2.0, 0.5, 4, 0.1) > gs.oracle_rhs(
        1.0, 50, 49, 2.0, 0.5, 3, 0.1
    )


def test_errors_surface_as_python_exceptions():
    with pytest.raises(ValueError):
        gs.Graph.build(2, [(0, 0)])
    with pytest.raises(ValueError):
        gs.OrderedWeights([1.0, 2.0])
