"""Scalar primitives of the operator L = d²/dt² − ξ².

Every function accepts a scalar or a numpy array for its abscissa and
returns the same shape (numpy scalars for scalar input). The tension ξ is a
plain non-negative float or a :class:`Tension`; ξ = 0 is the cubic limit.

Three evaluation regimes are used for the dimensionless argument x = ξ|t|:
a truncated Taylor series below ``threshold_small`` (the closed forms cancel
there), the closed forms in between, and e^{−x}-scaled forms above
``threshold_large`` (sinh overflows near x = 710).
"""
from dataclasses import dataclass
from enum import Enum
from math import isfinite

import numpy as np
from numpy.polynomial import polynomial

from .Errors import DomainError, NonFiniteInput

SMALL_ARGUMENT = 2.0 ** -4  #: Below this |ξh| the Taylor branch is used.
LARGE_ARGUMENT = 30.0  #: Above this |ξh| the exponentially scaled branch is used.

# exp(x) stays finite up to ~709.78
_EXP_SAFE = 700.0

# (x cosh x − sinh x) / x³ = Σ 2k x^(2k−2) / (2k+1)!, in powers of x²
_P_COEFFS = np.array(
    [1 / 3, 1 / 30, 1 / 840, 1 / 45360, 1 / 3991680, 1 / 518918400]
)
# (sinh y − y) / y³ = Σ y^(2k−2) / (2k+1)!, in powers of y²
_S_COEFFS = np.array(
    [1 / 6, 1 / 120, 1 / 5040, 1 / 362880, 1 / 39916800, 1 / 6227020800]
)


@dataclass(frozen=True)
class Tension:
    """The tension ξ of the operator L = d²/dt² − ξ².

    Units are reciprocal to the abscissa unit. ξ = 0 selects the cubic
    spline limit.
    """

    xi: float = 0.0  #: The non-negative, finite tension.

    def __post_init__(self):
        xi = float(self.xi)
        if not isfinite(xi):
            raise NonFiniteInput(f"tension must be finite, got {xi}")
        if xi < 0:
            raise DomainError(f"tension must be non-negative, got {xi}")
        object.__setattr__(self, "xi", xi)

    def __float__(self):
        return self.xi

    @classmethod
    def coerce(cls, value):
        """Returns value unchanged when it is a Tension, wraps it otherwise."""
        if isinstance(value, cls):
            return value
        return cls(value)


class Branch(Enum):
    """The evaluation regime chosen for a dimensionless argument."""

    SERIES_SMALL = "series_small"
    DIRECT = "direct"
    ASYMPTOTIC_LARGE = "asymptotic_large"


@dataclass(frozen=True)
class KernelRegime:
    """Thresholds splitting the argument axis into evaluation regimes."""

    threshold_small: float = SMALL_ARGUMENT  #: Upper end of the Taylor regime.
    threshold_large: float = LARGE_ARGUMENT  #: Lower end of the scaled regime.

    def __post_init__(self):
        if not 0 < self.threshold_small < self.threshold_large:
            raise DomainError(
                "regime thresholds must satisfy 0 < threshold_small < threshold_large"
            )

    def select(self, x: float) -> Branch:
        """Returns the branch used for the argument x (only |x| matters)."""
        x = abs(x)
        if x < self.threshold_small:
            return Branch.SERIES_SMALL
        if x > self.threshold_large:
            return Branch.ASYMPTOTIC_LARGE
        return Branch.DIRECT

    def conditions(self, x):
        """Boolean masks (series, asymptotic) in the layout np.piecewise expects."""
        x = np.abs(x)
        return [x < self.threshold_small, x > self.threshold_large]


DEFAULT_REGIME = KernelRegime()


def _tension(xi) -> float:
    return Tension.coerce(xi).xi


def _abscissa(t):
    t = np.asarray(t, dtype=float)
    if not np.all(np.isfinite(t)):
        raise NonFiniteInput("abscissa must be finite")
    return t


def _width(h, name="h"):
    h = _abscissa(h)
    if np.any(h <= 0):
        raise DomainError(f"{name} must be strictly positive")
    return h


def _expm1_ratio(z):
    # (1 − e^{−z}) / z for z ≥ 0, equal to 1 at z = 0
    z = np.asarray(z, dtype=float)
    safe = np.where(z > 0, z, 1.0)
    return np.where(z > 0, -np.expm1(-safe) / safe, 1.0)


def _unscale(scaled, x):
    # scaled · e^{x}; goes through logarithms where e^{x} alone would overflow
    with np.errstate(over="ignore", divide="ignore", invalid="ignore"):
        near = scaled * np.exp(np.minimum(x, _EXP_SAFE))
        far = np.sign(scaled) * np.exp(x + np.log(np.abs(scaled)))
    return np.where(x <= _EXP_SAFE, near, far)


def _p_scaled(x, regime=DEFAULT_REGIME):
    """(x cosh x − sinh x) / x³ · e^{−x} for x ≥ 0."""
    x = np.asarray(x, dtype=float)
    return np.piecewise(
        x,
        regime.conditions(x),
        [
            lambda v: polynomial.polyval(v * v, _P_COEFFS) * np.exp(-v),
            lambda v: ((v - 1) + (v + 1) * np.exp(-2 * v)) / (2 * v ** 3),
            lambda v: (v * np.cosh(v) - np.sinh(v)) / v ** 3 * np.exp(-v),
        ],
    )


def _rho_ratio(x, regime=DEFAULT_REGIME):
    """ρ(h) / h as a function of x = ξh."""
    x = np.asarray(x, dtype=float)

    def series(v):
        sinhc = np.where(v > 0, np.sinh(v) / np.where(v > 0, v, 1.0), 1.0)
        return 2 * polynomial.polyval(4 * v * v, _S_COEFFS) / sinhc ** 2

    def scaled(v):
        e2 = np.exp(-2 * v)
        return ((1 - e2 * e2) / 2 - 2 * v * e2) / (v * (1 - e2) ** 2)

    def direct(v):
        return (np.sinh(2 * v) - 2 * v) / (4 * v * np.sinh(v) ** 2)

    return np.piecewise(x, regime.conditions(x), [series, scaled, direct])


def _sigma_ratio(x, regime=DEFAULT_REGIME):
    """σ(h) / h as a function of x = ξh."""
    x = np.asarray(x, dtype=float)

    def series(v):
        sinhc = np.where(v > 0, np.sinh(v) / np.where(v > 0, v, 1.0), 1.0)
        return polynomial.polyval(v * v, _P_COEFFS) / (2 * sinhc ** 2)

    def scaled(v):
        e2 = np.exp(-2 * v)
        return np.exp(-v) * ((v - 1) + (v + 1) * e2) / (v * (1 - e2) ** 2)

    def direct(v):
        return (v * np.cosh(v) - np.sinh(v)) / (2 * v * np.sinh(v) ** 2)

    return np.piecewise(x, regime.conditions(x), [series, scaled, direct])


def phi_scaled(xi, t):
    """Φ_ξ(t) · e^{−ξ|t|}; finite for every finite t."""
    xi, t = _tension(xi), _abscissa(t)
    a = np.abs(t)
    return (np.sign(t) * a ** 3 / 2 * _p_scaled(xi * a))[()]


def phi(xi, t):
    """The kernel Φ_ξ(t) = (ξt cosh ξt − sinh ξt) / (2ξ³).

    Odd in t; equals t³/6 for ξ = 0.

    Args:
        xi: The tension ξ ≥ 0.
        t: The abscissa, scalar or array.

    Returns:
        Φ_ξ(t) with the shape of t.
    """
    xi, t = _tension(xi), _abscissa(t)
    return _unscale(phi_scaled(xi, t), xi * np.abs(t))[()]


def phi_prime_scaled(xi, t):
    """Φ'_ξ(t) · e^{−ξ|t|}."""
    xi, t = _tension(xi), _abscissa(t)
    return (t * t * _expm1_ratio(2 * xi * np.abs(t)) / 2)[()]


def phi_prime(xi, t):
    """The derivative Φ'_ξ(t) = t sinh(ξt) / (2ξ); even, t²/2 for ξ = 0."""
    xi, t = _tension(xi), _abscissa(t)
    return _unscale(phi_prime_scaled(xi, t), xi * np.abs(t))[()]


def phi_second_scaled(xi, t):
    """Φ''_ξ(t) · e^{−ξ|t|}."""
    xi, t = _tension(xi), _abscissa(t)
    x = xi * np.abs(t)
    return (t * (_expm1_ratio(2 * x) + (1 + np.exp(-2 * x)) / 2) / 2)[()]


def phi_second(xi, t):
    """The second derivative Φ''_ξ(t) = (sinh ξt + ξt cosh ξt) / (2ξ)."""
    xi, t = _tension(xi), _abscissa(t)
    return _unscale(phi_second_scaled(xi, t), xi * np.abs(t))[()]


def psi_scaled(xi, t):
    """ψ_ξ(t) · e^{−ξ|t|}."""
    xi, t = _tension(xi), _abscissa(t)
    return (t * _expm1_ratio(2 * xi * np.abs(t)))[()]


def psi(xi, t):
    """The kernel ψ_ξ(t) = sinh(ξt) / ξ = L_ξ Φ_ξ(t); odd, t for ξ = 0."""
    xi, t = _tension(xi), _abscissa(t)
    return _unscale(psi_scaled(xi, t), xi * np.abs(t))[()]


def rho(xi, h):
    """The diagonal weight ρ(h) = (sinh 2ξh − 2ξh) / (4ξ sinh² ξh).

    Strictly positive; h/3 for ξ = 0 and 1/(2ξ) asymptotically.

    Raises:
        DomainError: If some h ≤ 0.
    """
    xi, h = _tension(xi), _width(h)
    return (h * _rho_ratio(xi * h))[()]


def sigma(xi, h):
    """The off-diagonal weight σ(h) = (ξh cosh ξh − sinh ξh) / (2ξ sinh² ξh).

    Positive and below ρ(h)/2; h/6 for ξ = 0; decays like h·e^{−ξh}.

    Raises:
        DomainError: If some h ≤ 0.
    """
    xi, h = _tension(xi), _width(h)
    return (h * _sigma_ratio(xi * h))[()]


def coth_scaled(x):
    """cosh(x) / sinh(x) from e^{−x}-scaled terms, for x > 0."""
    x = _width(x, "x")
    return ((1 + np.exp(-2 * x)) / -np.expm1(-2 * x))[()]


def csch_scaled(x):
    """1 / sinh(x) from e^{−x}-scaled terms, for x > 0."""
    x = _width(x, "x")
    return (2 * np.exp(-x) / -np.expm1(-2 * x))[()]


def xi_coth(xi, h):
    """ξ coth(ξh), with the limit 1/h at ξ = 0."""
    xi, h = _tension(xi), _width(h)
    x = xi * h
    return ((1 + np.exp(-2 * x)) / (2 * h * _expm1_ratio(2 * x)))[()]


def xi_csch(xi, h):
    """ξ / sinh(ξh), with the limit 1/h at ξ = 0."""
    xi, h = _tension(xi), _width(h)
    x = xi * h
    return (np.exp(-x) / (h * _expm1_ratio(2 * x)))[()]


def sinh_ratio(xi, u, h):
    """sinh(ξu) / sinh(ξh) for h > 0 and any finite u; u/h at ξ = 0."""
    xi, u, h = _tension(xi), _abscissa(u), _width(h)
    a = np.abs(u)
    with np.errstate(over="ignore"):
        grow = np.exp(xi * (a - h))
    return (u * _expm1_ratio(2 * xi * a) / (h * _expm1_ratio(2 * xi * h)) * grow)[()]


def xi_cosh_ratio(xi, u, h):
    """ξ cosh(ξu) / sinh(ξh) for h > 0 and any finite u; 1/h at ξ = 0."""
    xi, u, h = _tension(xi), _abscissa(u), _width(h)
    a = np.abs(u)
    with np.errstate(over="ignore"):
        grow = np.exp(xi * (a - h))
    return ((1 + np.exp(-2 * xi * a)) / (2 * h * _expm1_ratio(2 * xi * h)) * grow)[()]
