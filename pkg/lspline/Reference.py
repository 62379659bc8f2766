"""Independent oracles for the test suite.

Nothing here shares code with the kernel or the solver: dense systems go
through LAPACK's pivoted LU, cubic splines through scipy's CubicSpline and
kernel ground truth through mpmath at 60 significant digits.
"""
import warnings

import mpmath
import numpy as np
import scipy.linalg
from scipy.interpolate import CubicSpline

from .Errors import (
    DimensionMismatch,
    DomainError,
    InvalidOrder,
    SingularMatrix,
)

DIGITS = 60  #: Working precision of the extended-precision oracles.
PIVOT_FLOOR = 1e-300  #: Smallest admissible pivot of the dense solver.


def dense_solve(a, rhs) -> np.ndarray:
    """Solves a·x = rhs by Gaussian elimination with partial pivoting.

    Raises:
        DimensionMismatch: If a is not square or rhs does not match.
        SingularMatrix: If a pivot falls below PIVOT_FLOOR in magnitude.
    """
    a = np.asarray(a, dtype=float)
    rhs = np.asarray(rhs, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or rhs.shape[0] != a.shape[0]:
        raise DimensionMismatch(f"cannot solve {a.shape} against {rhs.shape}")
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", scipy.linalg.LinAlgWarning)
        lu, piv = scipy.linalg.lu_factor(a)
    if a.size and np.min(np.abs(np.diag(lu))) < PIVOT_FLOOR:
        raise SingularMatrix("matrix is singular to working precision")
    return scipy.linalg.lu_solve((lu, piv), rhs)


def tridiagonal_to_dense(sys) -> np.ndarray:
    """Embeds the three diagonals of a TridiagonalSystem in a dense matrix."""
    return np.diag(sys.diag) + np.diag(sys.sub, -1) + np.diag(sys.sup, 1)


def _knots(grid):
    return np.asarray(getattr(grid, "knots", grid), dtype=float)


def cubic_clamped_fit(grid, z, d1: float, d2: float) -> CubicSpline:
    """The classical clamped (complete) cubic spline through (knots, z)."""
    return CubicSpline(_knots(grid), z, bc_type=((1, d1), (1, d2)))


def cubic_natural_fit(grid, z) -> CubicSpline:
    """The classical natural cubic spline through (knots, z)."""
    return CubicSpline(_knots(grid), z, bc_type="natural")


def fd_derivative(f, t: float, order: int, h: float) -> float:
    """Central finite difference of f at t with step h, O(h²) accurate."""
    if h <= 0:
        raise DomainError(f"step must be positive, got {h}")
    if order == 1:
        return (f(t + h) - f(t - h)) / (2 * h)
    if order == 2:
        return (f(t + h) - 2 * f(t) + f(t - h)) / (h * h)
    raise InvalidOrder(f"finite differences support orders 1 and 2, got {order}")


def _exact(function):
    def wrapper(*args):
        with mpmath.workdps(DIGITS):
            return float(function(*(mpmath.mpf(float(arg)) for arg in args)))

    wrapper.__name__ = function.__name__
    wrapper.__doc__ = function.__doc__
    return wrapper


@_exact
def phi_exact(xi, t):
    """Φ_ξ(t) in extended precision."""
    if xi == 0:
        return t ** 3 / 6
    x = xi * t
    return (x * mpmath.cosh(x) - mpmath.sinh(x)) / (2 * xi ** 3)


@_exact
def phi_prime_exact(xi, t):
    """Φ'_ξ(t) in extended precision."""
    if xi == 0:
        return t ** 2 / 2
    return t * mpmath.sinh(xi * t) / (2 * xi)


@_exact
def phi_second_exact(xi, t):
    """Φ''_ξ(t) in extended precision."""
    if xi == 0:
        return t
    x = xi * t
    return (mpmath.sinh(x) + x * mpmath.cosh(x)) / (2 * xi)


@_exact
def psi_exact(xi, t):
    """ψ_ξ(t) in extended precision."""
    if xi == 0:
        return t
    return mpmath.sinh(xi * t) / xi


@_exact
def rho_exact(xi, h):
    """ρ(h) in extended precision."""
    if xi == 0:
        return h / 3
    x = xi * h
    return (mpmath.sinh(2 * x) - 2 * x) / (4 * xi * mpmath.sinh(x) ** 2)


@_exact
def sigma_exact(xi, h):
    """σ(h) in extended precision."""
    if xi == 0:
        return h / 6
    x = xi * h
    return (x * mpmath.cosh(x) - mpmath.sinh(x)) / (2 * xi * mpmath.sinh(x) ** 2)


@_exact
def xi_coth_exact(xi, h):
    """ξ·coth(ξh) in extended precision, 1/h at ξ = 0."""
    if xi == 0:
        return 1 / h
    return xi * mpmath.coth(xi * h)


@_exact
def xi_csch_exact(xi, h):
    """ξ / sinh(ξh) in extended precision, 1/h at ξ = 0."""
    if xi == 0:
        return 1 / h
    return xi * mpmath.csch(xi * h)


@_exact
def coth_exact(x):
    """coth(x) in extended precision."""
    return mpmath.coth(x)


@_exact
def csch_exact(x):
    """1 / sinh(x) in extended precision."""
    return mpmath.csch(x)


KERNEL_ORACLES = {
    "phi": phi_exact,
    "phi_prime": phi_prime_exact,
    "phi_second": phi_second_exact,
    "psi": psi_exact,
    "rho": rho_exact,
    "sigma": sigma_exact,
    "xi_coth": xi_coth_exact,
    "xi_csch": xi_csch_exact,
}  #: Extended-precision counterparts of the two-argument kernel functions.


def kernel_exact(name: str, xi: float, t: float) -> float:
    """Evaluates the extended-precision oracle of the named kernel function."""
    return KERNEL_ORACLES[name](xi, t)
