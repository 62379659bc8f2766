"""The four basis functions of an L-spline segment and their derivatives.

On a segment [t_l, t_r] of width h, with u = t_r − t and s = t − t_l,

    A2(t) = sinh ξu / sinh ξh             B2(t) = sinh ξs / sinh ξh
    A1(t) = (Φ(u) − A2(t) Φ(h)) / ψ(h)    B1(t) = (Φ(s) − B2(t) Φ(h)) / ψ(h)

and an L-spline restricted to the segment is
γ_l A1 + γ_r B1 + g_l A2 + g_r B2. All quotients are formed from the
e^{−ξ|·|}-scaled kernels of :mod:`lspline.Kernel`, so nothing overflows
while ξh stays below ~1e4. Outside the segment the same closed forms are
used unchanged.
"""
from dataclasses import dataclass

import numpy as np

from . import Kernel
from .Errors import DomainError, NonFiniteInput
from .Kernel import Tension


@dataclass(frozen=True, eq=False)
class Segment:
    """A knot interval together with the tension of the spline living on it.

    The endpoints may be numpy arrays of equal shape, in which case the
    segment describes one interval per evaluation point.
    """

    t_left: float  #: The left knot.
    t_right: float  #: The right knot.
    xi: Tension = Tension()  #: The tension ξ of the operator.

    def __post_init__(self):
        t_left = np.asarray(self.t_left, dtype=float)
        t_right = np.asarray(self.t_right, dtype=float)
        if not (np.all(np.isfinite(t_left)) and np.all(np.isfinite(t_right))):
            raise NonFiniteInput("segment endpoints must be finite")
        if np.any(t_left >= t_right):
            raise DomainError("segment endpoints must satisfy t_left < t_right")
        object.__setattr__(self, "t_left", t_left[()])
        object.__setattr__(self, "t_right", t_right[()])
        object.__setattr__(self, "xi", Tension.coerce(self.xi))

    @property
    def width(self):
        """The segment width h = t_right − t_left."""
        return self.t_right - self.t_left


@dataclass(frozen=True, eq=False)
class BasisQuad:
    """Values (or derivatives) of A1, B1, A2, B2 at the same abscissa."""

    a1: float  #: A1, weight of the left moment γ_l.
    b1: float  #: B1, weight of the right moment γ_r.
    a2: float  #: A2, weight of the left value g_l.
    b2: float  #: B2, weight of the right value g_r.

    def combine(self, gamma_left, gamma_right, g_left, g_right):
        """Returns γ_l·a1 + γ_r·b1 + g_l·a2 + g_r·b2."""
        return (
            gamma_left * self.a1
            + gamma_right * self.b1
            + g_left * self.a2
            + g_right * self.b2
        )


def _frame(seg: Segment, t):
    t = np.asarray(t, dtype=float)
    if not np.all(np.isfinite(t)):
        raise NonFiniteInput("evaluation points must be finite")
    xi = seg.xi.xi
    h = seg.width
    u = seg.t_right - t
    s = t - seg.t_left
    with np.errstate(over="ignore"):
        grow_u = np.exp(xi * (np.abs(u) - h))
        grow_s = np.exp(xi * (np.abs(s) - h))
    return xi, h, u, s, grow_u, grow_s


def basis_values(seg: Segment, t) -> BasisQuad:
    """Evaluates A1, B1, A2, B2 at t.

    Args:
        seg: The segment the basis belongs to.
        t: The evaluation point(s); points outside the segment extrapolate.

    Returns:
        BasisQuad: The four basis values.
    """
    xi, h, u, s, grow_u, grow_s = _frame(seg, t)
    a2 = Kernel.sinh_ratio(xi, u, h)
    b2 = Kernel.sinh_ratio(xi, s, h)
    phi_h = Kernel.phi_scaled(xi, h)
    psi_h = Kernel.psi_scaled(xi, h)
    a1 = (Kernel.phi_scaled(xi, u) * grow_u - a2 * phi_h) / psi_h
    b1 = (Kernel.phi_scaled(xi, s) * grow_s - b2 * phi_h) / psi_h
    return BasisQuad(a1, b1, a2, b2)


def basis_derivs(seg: Segment, t) -> BasisQuad:
    """Analytic first derivatives of A1, B1, A2, B2 at t.

    At the endpoints these reduce to A1'(t_l) = −ρ(h), B1'(t_l) = −σ(h),
    A1'(t_r) = σ(h) and B1'(t_r) = ρ(h).
    """
    xi, h, u, s, grow_u, grow_s = _frame(seg, t)
    da2 = -Kernel.xi_cosh_ratio(xi, u, h)
    db2 = Kernel.xi_cosh_ratio(xi, s, h)
    phi_h = Kernel.phi_scaled(xi, h)
    psi_h = Kernel.psi_scaled(xi, h)
    # du/dt = −1, ds/dt = +1
    da1 = (-Kernel.phi_prime_scaled(xi, u) * grow_u - da2 * phi_h) / psi_h
    db1 = (Kernel.phi_prime_scaled(xi, s) * grow_s - db2 * phi_h) / psi_h
    return BasisQuad(da1, db1, da2, db2)


def basis_derivs2(seg: Segment, t) -> BasisQuad:
    """Analytic second derivatives of A1, B1, A2, B2 at t."""
    xi, h, u, s, grow_u, grow_s = _frame(seg, t)
    xi2 = xi * xi
    d2a2 = xi2 * Kernel.sinh_ratio(xi, u, h)
    d2b2 = xi2 * Kernel.sinh_ratio(xi, s, h)
    phi_h = Kernel.phi_scaled(xi, h)
    psi_h = Kernel.psi_scaled(xi, h)
    d2a1 = (Kernel.phi_second_scaled(xi, u) * grow_u - d2a2 * phi_h) / psi_h
    d2b1 = (Kernel.phi_second_scaled(xi, s) * grow_s - d2b2 * phi_h) / psi_h
    return BasisQuad(d2a1, d2b1, d2a2, d2b2)


def basis_action(seg: Segment, t) -> BasisQuad:
    """L_ξ applied to the four basis functions, i.e. derivs2 − ξ²·values.

    Analytically this is (A2, B2, 0, 0).
    """
    xi2 = seg.xi.xi ** 2
    values = basis_values(seg, t)
    second = basis_derivs2(seg, t)
    return BasisQuad(
        second.a1 - xi2 * values.a1,
        second.b1 - xi2 * values.b1,
        second.a2 - xi2 * values.a2,
        second.b2 - xi2 * values.b2,
    )
