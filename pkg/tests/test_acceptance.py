"""End-to-end properties of fitted splines on randomized instances."""
import time

import numpy as np
import pytest

from conftest import random_knots
from lspline import Kernel
from lspline.Experiments import Experiments
from lspline.Reference import cubic_clamped_fit, dense_solve, tridiagonal_to_dense
from lspline.Solver import solve_tridiagonal
from lspline.Spline import fit_clamped, fit_natural
from lspline.System import (
    Clamped,
    KnotGrid,
    TridiagonalSystem,
    assemble_clamped,
    natural_q_matrix,
    natural_r_matrix,
)


def relative_error(actual, expected):
    return np.max(np.abs(actual - expected)) / np.max(np.abs(expected))


def test_demo_figure(demo_grid):
    experiment = Experiments()
    np.testing.assert_array_equal(experiment.knots, demo_grid)
    started = time.perf_counter()
    report = experiment.report(experiment.fit())
    elapsed = time.perf_counter() - started
    assert report["interpolation"] <= 1e-11
    assert report["end_derivative"] <= 1e-9
    assert report["jump_d1"] <= 1e-8
    assert report["jump_d2"] <= 1e-8
    assert elapsed < 0.1


def test_clamped_systems_are_strictly_dominant(rng):
    for _ in range(1000):
        n = int(rng.integers(3, 201))
        widths = 10 ** rng.uniform(-8, 3, n - 1)
        grid = KnotGrid(np.concatenate([[0.0], np.cumsum(widths)]))
        sys = assemble_clamped(grid, 1.0, np.zeros(n), Clamped(0.0, 0.0))
        margins = sys.dominance_margins()
        assert np.all(margins > 0)
        for row, h in ((0, grid.widths[0]), (-1, grid.widths[-1])):
            rho, sigma = Kernel.rho(1.0, h), Kernel.sigma(1.0, h)
            assert margins[row] >= (rho - sigma) * (1 - 1e-13)
            assert rho - sigma >= 0.5 * rho - 1e-13 * rho


NULL_SPACE = {
    "exp": (lambda xi, t: np.exp(xi * t), lambda xi, t: xi * np.exp(xi * t)),
    "exp_neg": (lambda xi, t: np.exp(-xi * t), lambda xi, t: -xi * np.exp(-xi * t)),
    "t_exp": (
        lambda xi, t: t * np.exp(xi * t),
        lambda xi, t: (1 + xi * t) * np.exp(xi * t),
    ),
    "t_exp_neg": (
        lambda xi, t: t * np.exp(-xi * t),
        lambda xi, t: (1 - xi * t) * np.exp(-xi * t),
    ),
}


@pytest.mark.parametrize("name", sorted(NULL_SPACE))
@pytest.mark.parametrize("xi", [0.5, 5.0, 50.0])
def test_null_space_is_reproduced(name, xi, rng):
    f, df = NULL_SPACE[name]
    t = np.linspace(0.0, 1.0, 1000)
    for _ in range(20):
        knots = random_knots(rng, int(rng.integers(3, 40)))
        ends = df(xi, knots[[0, -1]])
        spline = fit_clamped(knots, f(xi, knots), xi, *ends)
        assert relative_error(spline(t), f(xi, t)) <= 1e-9


def test_cubic_limit_matches_cubic_spline(rng):
    xi = 1e-8
    for _ in range(50):
        n = int(rng.integers(3, 30))
        knots = random_knots(rng, n, -1.0, 3.0)
        z = rng.normal(size=n)
        d1, d2 = rng.normal(size=2)
        t = np.linspace(knots[0], knots[-1], 400)
        spline = fit_clamped(knots, z, xi, d1, d2)
        oracle = cubic_clamped_fit(knots, z, d1, d2)
        assert relative_error(spline(t), oracle(t)) <= 1e-8


def test_solver_matches_dense_oracle(rng):
    for _ in range(200):
        m = int(rng.integers(1, 501))
        off = rng.uniform(0.0, 1.0, (2, m - 1))
        diag = 2.0 + rng.uniform(0.01, 1.0, m)
        sys = TridiagonalSystem(-off[0], diag, off[1], rng.normal(size=m))
        x = solve_tridiagonal(sys)
        expected = dense_solve(tridiagonal_to_dense(sys), sys.rhs)
        assert np.linalg.norm(x - expected) <= 1e-11 * np.linalg.norm(expected)


@pytest.mark.parametrize("xi", [0.0, 0.7, 9.0])
def test_natural_moments_solve_the_normal_equations(xi, rng):
    n = 25
    grid = KnotGrid(random_knots(rng, n))
    z = rng.normal(size=n)
    spline = fit_natural(grid.knots, z, xi)
    rhs = natural_q_matrix(grid, xi).T @ z
    residual = natural_r_matrix(grid, xi) @ spline.moments[1:-1] - rhs
    assert np.max(np.abs(residual)) <= 1e-11 * (1 + np.max(np.abs(rhs)))
    assert spline.moments[0] == 0.0 and spline.moments[-1] == 0.0
    np.testing.assert_allclose(spline.eval_L(grid.knots[[0, -1]]), 0.0, atol=1e-9)


def best_time(function, repeats=3):
    timings = []
    for _ in range(repeats):
        started = time.perf_counter()
        function()
        timings.append(time.perf_counter() - started)
    return min(timings)


@pytest.mark.slow
def test_fit_scales_linearly():
    """A million uniform knots fit in under a second, ten times as long as 1e5.

    The ratio window is [7, 13] widened to 6.5 at the bottom: the fixed
    per-call cost weighs more on the smaller fit and pulls the ratio down.
    """

    def fit_uniform(n):
        knots = np.linspace(0.0, 1.0, n)
        return lambda: fit_clamped(knots, np.sin(25 * knots), 5.0, 25.0, 25.0)

    small = best_time(fit_uniform(100_000), repeats=5)
    large = best_time(fit_uniform(1_000_000), repeats=5)
    assert large < 1.0
    assert 6.5 <= large / small <= 13.0
