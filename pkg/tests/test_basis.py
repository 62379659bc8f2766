import numpy as np
import pytest

from lspline import Kernel
from lspline.Basis import (
    BasisQuad,
    Segment,
    basis_action,
    basis_derivs,
    basis_derivs2,
    basis_values,
)
from lspline.Errors import DomainError, NonFiniteInput


def quad(q: BasisQuad):
    return np.array([q.a1, q.b1, q.a2, q.b2], dtype=float)


def test_segment_requires_increasing_endpoints():
    with pytest.raises(DomainError):
        Segment(1.0, 1.0, 2.0)
    with pytest.raises(NonFiniteInput):
        Segment(0.0, np.inf, 2.0)
    assert Segment(0.5, 2.0, 1.0).width == 1.5


@pytest.mark.parametrize("xi", [0.0, 1e-9, 2.0, 40.0, 5000.0])
def test_cardinality_at_endpoints(xi):
    seg = Segment(0.0, 1.0, xi)
    np.testing.assert_allclose(quad(basis_values(seg, 0.0)), [0, 0, 1, 0], atol=1e-14)
    np.testing.assert_allclose(quad(basis_values(seg, 1.0)), [0, 0, 0, 1], atol=1e-14)


def test_cardinality_on_shifted_segments(rng):
    for _ in range(50):
        left = rng.uniform(-10, 10)
        seg = Segment(left, left + rng.uniform(0.01, 3), rng.uniform(0, 20))
        np.testing.assert_allclose(
            quad(basis_values(seg, seg.t_left)), [0, 0, 1, 0], atol=1e-14
        )
        np.testing.assert_allclose(
            quad(basis_values(seg, seg.t_right)), [0, 0, 0, 1], atol=1e-14
        )


def test_cubic_limit_midpoint():
    # A1 = (u³/6 − (u/h)·h³/6) / h at u = s = 1/2, h = 1
    values = basis_values(Segment(0.0, 1.0, 0.0), 0.5)
    np.testing.assert_allclose(quad(values), [-1 / 16, -1 / 16, 0.5, 0.5], rtol=1e-14)


def test_small_tension_matches_cubic_branch(rng):
    t = rng.uniform(-0.5, 1.5, 40)
    cubic = basis_values(Segment(0.0, 1.0, 0.0), t)
    nearly = basis_values(Segment(0.0, 1.0, 1e-10), t)
    for name in ("a1", "b1", "a2", "b2"):
        np.testing.assert_allclose(
            getattr(nearly, name), getattr(cubic, name), rtol=1e-9, atol=1e-15
        )


@pytest.mark.parametrize("xi", [1e-6, 0.5, 1.0, 3.0, 25.0])
def test_endpoint_derivative_identities(xi):
    h = 1.0
    seg = Segment(0.0, h, xi)
    left = basis_derivs(seg, 0.0)
    right = basis_derivs(seg, h)
    rho, sigma = Kernel.rho(xi, h), Kernel.sigma(xi, h)
    assert left.a1 == pytest.approx(-rho, rel=1e-10)
    assert left.b1 == pytest.approx(-sigma, rel=1e-10)
    assert right.a1 == pytest.approx(sigma, rel=1e-10)
    assert right.b1 == pytest.approx(rho, rel=1e-10)


def test_endpoint_derivative_identities_on_random_segments(rng):
    for _ in range(100):
        left = rng.uniform(-5, 5)
        h = rng.uniform(0.05, 2.0)
        xi = 10 ** rng.uniform(-4, 1.5)
        seg = Segment(left, left + h, xi)
        start = basis_derivs(seg, seg.t_left)
        end = basis_derivs(seg, seg.t_right)
        rho, sigma = Kernel.rho(xi, h), Kernel.sigma(xi, h)
        np.testing.assert_allclose([start.a1, start.b1], [-rho, -sigma], rtol=1e-9)
        np.testing.assert_allclose([end.a1, end.b1], [sigma, rho], rtol=1e-9)


def test_unit_segment_boundary_slope():
    seg = Segment(0.0, 1.0, 1.0)
    expected = (np.cosh(1) - np.sinh(1)) / (2 * np.sinh(1) ** 2)
    assert basis_derivs(seg, 0.0).b1 == pytest.approx(-expected, rel=1e-12)
    assert basis_derivs(seg, 1.0).a1 == pytest.approx(expected, rel=1e-12)


@pytest.mark.parametrize("xi", [0.0, 0.3, 2.0, 9.0])
def test_derivatives_agree_with_finite_differences(xi, rng):
    seg = Segment(0.0, 1.0, xi)
    step = 1e-6 * seg.width
    for t in rng.uniform(-0.2, 1.2, 20):
        fd1 = quad(basis_values(seg, t + step)) - quad(basis_values(seg, t - step))
        fd1 /= 2 * step
        fd2 = quad(basis_derivs(seg, t + step)) - quad(basis_derivs(seg, t - step))
        fd2 /= 2 * step
        first = quad(basis_derivs(seg, t))
        second = quad(basis_derivs2(seg, t))
        np.testing.assert_allclose(fd1, first, rtol=1e-7, atol=1e-7)
        np.testing.assert_allclose(fd2, second, rtol=1e-6, atol=1e-6 * (1 + xi * xi))


@pytest.mark.parametrize("xi", [0.0, 0.7, 4.0, 30.0])
def test_operator_maps_moment_functions_onto_value_functions(xi, rng):
    seg = Segment(0.0, 1.0, xi)
    t = rng.uniform(0.0, 1.0, 30)
    action = basis_action(seg, t)
    values = basis_values(seg, t)
    scale = 1 + xi * xi
    np.testing.assert_allclose(action.a1, values.a2, atol=1e-11 * scale)
    np.testing.assert_allclose(action.b1, values.b2, atol=1e-11 * scale)
    np.testing.assert_allclose(action.a2, 0.0, atol=1e-11 * scale)
    np.testing.assert_allclose(action.b2, 0.0, atol=1e-11 * scale)


def test_large_tension_is_overflow_free():
    seg = Segment(0.0, 1.0, 1e4)
    t = np.linspace(0.0, 1.0, 11)
    with np.errstate(over="raise", invalid="raise"):
        for basis in (basis_values, basis_derivs, basis_derivs2):
            assert np.all(np.isfinite(quad(basis(seg, t))))


def test_array_endpoints_broadcast():
    seg = Segment(np.array([0.0, 1.0]), np.array([1.0, 3.0]), 2.0)
    values = basis_values(seg, np.array([0.0, 3.0]))
    np.testing.assert_allclose(values.a2, [1.0, 0.0], atol=1e-15)
    np.testing.assert_allclose(values.b2, [0.0, 1.0], atol=1e-15)


def test_combine():
    q = BasisQuad(1.0, 2.0, 3.0, 4.0)
    assert q.combine(1.0, 10.0, 100.0, 1000.0) == 1.0 + 20.0 + 300.0 + 4000.0
