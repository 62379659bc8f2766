"""Linear systems for the knot moments γ_j = L_ξ g(t_j).

Both boundary conditions lead to a symmetric tridiagonal system built from
the kernel weights ρ(h_j), σ(h_j) and the slopes ξ coth ξh_j, ξ / sinh ξh_j:

* clamped: n equations, first-derivative continuity at the interior knots
  plus the two end-derivative equations;
* natural: the n − 2 interior equations with γ_1 = γ_n = 0.

Rows are normalized so every diagonal entry is positive. For the clamped
system this flips the sign of the first boundary equation, after which its
interior rows coincide with the natural system.
"""
from dataclasses import dataclass, field
from typing import Union

import numpy as np
import scipy.sparse
import structlog

from . import Kernel
from .Errors import DimensionMismatch, DomainError, NonFiniteInput
from .Kernel import Tension

logger = structlog.getLogger(__name__)


def _frozen(values) -> np.ndarray:
    array = np.array(values, dtype=float)
    array.flags.writeable = False
    return array


@dataclass(frozen=True, eq=False)
class KnotGrid:
    """A strictly increasing knot sequence t_1 < ... < t_n."""

    knots: np.ndarray  #: The knots t_1, ..., t_n.
    widths: np.ndarray = field(init=False)  #: The segment widths h_j = t_{j+1} − t_j.

    def __post_init__(self):
        knots = _frozen(self.knots)
        if knots.ndim != 1 or knots.size < 2:
            raise DimensionMismatch("a knot grid needs at least two knots")
        if not np.all(np.isfinite(knots)):
            raise NonFiniteInput("knots must be finite")
        widths = _frozen(np.diff(knots))
        if np.any(widths <= 0):
            bad = int(np.argmax(widths <= 0)) + 2
            raise DomainError(f"knots must be strictly increasing (knot {bad})")
        object.__setattr__(self, "knots", knots)
        object.__setattr__(self, "widths", widths)

    def __len__(self):
        return self.knots.size

    @property
    def n(self) -> int:
        """The number of knots."""
        return self.knots.size

    @classmethod
    def uniform(cls, start: float, stop: float, n: int):
        """Creates n equally spaced knots from start to stop."""
        return cls(np.linspace(start, stop, n))

    def locate(self, t):
        """Returns the 0-based segment index of each point of t.

        Points equal to a knot resolve to the segment on its right, except
        the last knot which belongs to the last segment. Points outside
        [t_1, t_n] map to the terminal segments.
        """
        index = np.searchsorted(self.knots, t, side="right") - 1
        return np.clip(index, 0, self.n - 2)


@dataclass(frozen=True)
class Clamped:
    """Prescribed first derivatives g'(t_1) = d1 and g'(t_n) = d2."""

    d1: float  #: The derivative at the first knot.
    d2: float  #: The derivative at the last knot.

    def __post_init__(self):
        if not (np.isfinite(self.d1) and np.isfinite(self.d2)):
            raise NonFiniteInput("clamped end derivatives must be finite")
        object.__setattr__(self, "d1", float(self.d1))
        object.__setattr__(self, "d2", float(self.d2))


@dataclass(frozen=True)
class Natural:
    """L_ξ g(t_1) = L_ξ g(t_n) = 0."""


BoundaryCondition = Union[Clamped, Natural]


@dataclass(frozen=True, eq=False)
class TridiagonalSystem:
    """A tridiagonal system of size m.

    ``sub[i]`` is the entry (i+1, i) and ``sup[i]`` the entry (i, i+1).
    The arrays are read-only copies, so a system can be shared freely.
    """

    sub: np.ndarray  #: The sub-diagonal, length m − 1.
    diag: np.ndarray  #: The diagonal, length m.
    sup: np.ndarray  #: The super-diagonal, length m − 1.
    rhs: np.ndarray  #: The right-hand side, length m.

    def __post_init__(self):
        for name in ("sub", "diag", "sup", "rhs"):
            object.__setattr__(self, name, _frozen(getattr(self, name)))
        m = self.diag.size
        off = max(m - 1, 0)
        if self.rhs.size != m or self.sub.size != off or self.sup.size != off:
            raise DimensionMismatch(
                f"inconsistent diagonals: sub={self.sub.size}, diag={m}, "
                f"sup={self.sup.size}, rhs={self.rhs.size}"
            )

    @property
    def size(self) -> int:
        """The number of unknowns m."""
        return self.diag.size

    def with_rhs(self, rhs):
        """Returns the same matrix with another right-hand side."""
        return TridiagonalSystem(self.sub, self.diag, self.sup, rhs)

    def dominance_margins(self) -> np.ndarray:
        """|diag_i| − |sub_{i−1}| − |sup_i| for every row."""
        margins = np.abs(self.diag)
        margins[1:] -= np.abs(self.sub)
        margins[:-1] -= np.abs(self.sup)
        return margins

    def is_dominant(self) -> bool:
        """Checks strict row diagonal dominance."""
        return bool(np.all(self.dominance_margins() > 0))

    def matvec(self, x) -> np.ndarray:
        """Returns the product of the matrix with x."""
        x = np.asarray(x, dtype=float)
        if x.size != self.size:
            raise DimensionMismatch(f"expected {self.size} entries, got {x.size}")
        product = self.diag * x
        product[1:] += self.sub * x[:-1]
        product[:-1] += self.sup * x[1:]
        return product

    def to_sparse(self):
        """The matrix as a scipy.sparse CSR matrix."""
        if self.size == 0:
            return scipy.sparse.csr_matrix((0, 0))
        return scipy.sparse.diags(
            [self.sub, self.diag, self.sup],
            [-1, 0, 1],
            shape=(self.size, self.size),
            format="csr",
        )

    def to_dense(self) -> np.ndarray:
        """The matrix as a dense array."""
        return self.to_sparse().toarray()


def _values(grid: KnotGrid, g) -> np.ndarray:
    g = np.asarray(g, dtype=float)
    if g.ndim != 1 or g.size != grid.n:
        raise DimensionMismatch(f"expected {grid.n} data values, got {g.size}")
    if not np.all(np.isfinite(g)):
        raise NonFiniteInput("data values must be finite")
    return g


def _weights(grid: KnotGrid, xi: float):
    h = grid.widths
    return Kernel.rho(xi, h), Kernel.sigma(xi, h)


def _slopes(grid: KnotGrid, xi: float):
    h = grid.widths
    return Kernel.xi_coth(xi, h), Kernel.xi_csch(xi, h)


def _data_rhs(grid: KnotGrid, xi: float, g: np.ndarray) -> np.ndarray:
    # Row j collects −g_j (c_{j−1} + c_j) + q_{j−1} g_{j−1} + q_j g_{j+1},
    # with c = ξ coth ξh and q = ξ / sinh ξh of the adjacent segments.
    coth, csch = _slopes(grid, xi)
    rhs = np.zeros(grid.n)
    rhs[:-1] += csch * g[1:] - coth * g[:-1]
    rhs[1:] += csch * g[:-1] - coth * g[1:]
    return rhs


def _tridiagonal(rho: np.ndarray, sigma: np.ndarray):
    diag = np.zeros(rho.size + 1)
    diag[:-1] += rho
    diag[1:] += rho
    return sigma, diag, sigma


def assemble_clamped(grid: KnotGrid, xi, g, bc: Clamped) -> TridiagonalSystem:
    """Assembles the n×n system for the moments of a clamped L-spline.

    Row 1 is the negated equation γ_1 A1'(t_1) + γ_2 B1'(t_1) = ... + d1,
    i.e. ρ(h_1) γ_1 + σ(h_1) γ_2 = (q_1 g_2 − c_1 g_1) − d1; the interior
    rows are the natural-spline rows and row n reads
    σ(h_{n−1}) γ_{n−1} + ρ(h_{n−1}) γ_n
    = (q_{n−1} g_{n−1} − c_{n−1} g_n) + d2.

    Args:
        grid: The knots.
        xi: The tension.
        g: The data values at the knots.
        bc: The clamped end derivatives.

    Returns:
        TridiagonalSystem: A symmetric, strictly diagonally dominant system.

    Raises:
        DimensionMismatch: If g does not match the grid.
        NonFiniteInput: If g contains NaN or infinities.
    """
    if not isinstance(bc, Clamped):
        raise DomainError("assemble_clamped needs a Clamped boundary condition")
    xi = Tension.coerce(xi).xi
    g = _values(grid, g)
    sub, diag, sup = _tridiagonal(*_weights(grid, xi))
    rhs = _data_rhs(grid, xi, g)
    rhs[0] -= bc.d1
    rhs[-1] += bc.d2
    logger.debug("assembled clamped system", n=grid.n, xi=xi)
    return TridiagonalSystem(sub, diag, sup, rhs)


def assemble_natural(grid: KnotGrid, xi, g) -> TridiagonalSystem:
    """Assembles the (n−2)×(n−2) system Rγ = Qᵀg of a natural L-spline.

    For two knots the system is empty.
    """
    xi = Tension.coerce(xi).xi
    g = _values(grid, g)
    rho, sigma = _weights(grid, xi)
    sub, diag, sup = _tridiagonal(rho, sigma)
    rhs = _data_rhs(grid, xi, g)
    logger.debug("assembled natural system", n=grid.n, xi=xi)
    return TridiagonalSystem(sub[1:-1], diag[1:-1], sup[1:-1], rhs[1:-1])


def natural_q_matrix(grid: KnotGrid, xi):
    """The n×(n−2) matrix Q with Qᵀg the natural right-hand side."""
    xi = Tension.coerce(xi).xi
    coth, csch = _slopes(grid, xi)
    n = grid.n
    if n < 3:
        return scipy.sparse.csr_matrix((n, 0))
    return scipy.sparse.diags(
        [csch[:-1], -(coth[:-1] + coth[1:]), csch[1:]],
        [0, -1, -2],
        shape=(n, n - 2),
        format="csr",
    )


def natural_r_matrix(grid: KnotGrid, xi):
    """The (n−2)×(n−2) matrix R of the natural system."""
    return assemble_natural(grid, xi, np.zeros(grid.n)).to_sparse()


def clamped_q_matrix(grid: KnotGrid, xi):
    """The n×n matrix Q̃ of the clamped system, in normalized row signs.

    The clamped right-hand side equals Q̃g + (−d1, 0, ..., 0, d2).
    """
    xi = Tension.coerce(xi).xi
    coth, csch = _slopes(grid, xi)
    diag = np.zeros(grid.n)
    diag[:-1] -= coth
    diag[1:] -= coth
    return scipy.sparse.diags([csch, diag, csch], [-1, 0, 1], format="csr")
