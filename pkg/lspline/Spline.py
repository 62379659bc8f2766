"""Fitting and evaluation of interpolating L-splines."""
from dataclasses import dataclass, fields

import numpy as np
import pandas as pd
import structlog

from .Basis import Segment, basis_action, basis_derivs, basis_derivs2, basis_values
from .Errors import BadSpec, DimensionMismatch, DomainError, InvalidOrder
from .Kernel import Tension
from .Solver import solve_tridiagonal
from .System import (
    BoundaryCondition,
    Clamped,
    KnotGrid,
    Natural,
    assemble_clamped,
    assemble_natural,
)

logger = structlog.getLogger(__name__)

COLUMNS = ("t", "value", "d1", "d2")  #: Column names of a sampled spline.


@dataclass(frozen=True, eq=False)
class SampleTable:
    """A spline sampled at increasing abscissae."""

    t: np.ndarray  #: The sample abscissae, non-decreasing.
    value: np.ndarray  #: The spline values.
    deriv1: np.ndarray  #: The first derivatives.
    deriv2: np.ndarray  #: The second derivatives.

    def __post_init__(self):
        names = [column.name for column in fields(self)]
        columns = [np.asarray(getattr(self, name), dtype=float) for name in names]
        if len({column.size for column in columns}) != 1:
            raise BadSpec("sample columns must have equal lengths")
        if np.any(np.diff(columns[0]) < 0):
            raise BadSpec("sample abscissae must be non-decreasing")
        for name, column in zip(names, columns):
            object.__setattr__(self, name, column)

    def __len__(self):
        return self.t.size

    def to_frame(self) -> pd.DataFrame:
        """Returns the table as a DataFrame with columns t, value, d1, d2."""
        return pd.DataFrame(
            dict(zip(COLUMNS, (self.t, self.value, self.deriv1, self.deriv2)))
        )

    @classmethod
    def from_frame(cls, frame: pd.DataFrame):
        """Builds a table from a DataFrame with columns t, value, d1, d2."""
        return cls(*(frame[name].to_numpy(dtype=float) for name in COLUMNS))


@dataclass(frozen=True, eq=False)
class LSpline:
    """An interpolating L-spline of order four.

    On the segment [t_j, t_{j+1}] the spline is
    γ_j A1 + γ_{j+1} B1 + g_j A2 + g_{j+1} B2 (see :mod:`lspline.Basis`).
    Outside [t_1, t_n] the terminal segments are continued by the same
    closed form.
    """

    tension: Tension  #: The tension ξ.
    grid: KnotGrid  #: The knots.
    values: np.ndarray  #: The interpolated data g_1, ..., g_n.
    moments: np.ndarray  #: The moments γ_j = L_ξ g(t_j).
    bc: BoundaryCondition  #: The boundary condition the spline was fitted with.

    def __post_init__(self):
        object.__setattr__(self, "tension", Tension.coerce(self.tension))
        for name in ("values", "moments"):
            array = np.array(getattr(self, name), dtype=float)
            if array.shape != (self.grid.n,):
                raise DimensionMismatch(f"{name} must have {self.grid.n} entries")
            array.flags.writeable = False
            object.__setattr__(self, name, array)

    @property
    def xi(self) -> float:
        """The tension ξ as a float."""
        return self.tension.xi

    def __call__(self, t):
        return self.eval(t)

    def _on_segments(self, index, t, basis):
        knots = self.grid.knots
        seg = Segment(knots[index], knots[index + 1], self.tension)
        quad = basis(seg, t)
        return quad.combine(
            self.moments[index],
            self.moments[index + 1],
            self.values[index],
            self.values[index + 1],
        )

    def _evaluate(self, t, basis):
        t = np.asarray(t, dtype=float)
        return self._on_segments(self.grid.locate(t), t, basis)[()]

    def eval(self, t):
        """Evaluates the spline at t (scalar or array)."""
        return self._evaluate(t, basis_values)

    def eval_deriv(self, t, order: int = 1):
        """Evaluates the first or second derivative at t.

        Raises:
            InvalidOrder: If order is not 1 or 2.
        """
        if order == 1:
            return self._evaluate(t, basis_derivs)
        if order == 2:
            return self._evaluate(t, basis_derivs2)
        raise InvalidOrder(f"derivative order must be 1 or 2, got {order}")

    def eval_L(self, t):
        """Evaluates L_ξ g = g'' − ξ² g at t."""
        return self._evaluate(t, basis_action)

    def knot_jumps(self, order: int = 1) -> np.ndarray:
        """One-sided derivative differences g^(order)(t_j − 0) − g^(order)(t_j + 0).

        Returns:
            numpy.ndarray: The jumps at the n − 2 interior knots.
        """
        basis = {0: basis_values, 1: basis_derivs, 2: basis_derivs2}.get(order)
        if basis is None:
            raise InvalidOrder(f"jump order must be 0, 1 or 2, got {order}")
        inner = np.arange(1, self.grid.n - 1)
        t = self.grid.knots[inner]
        left = self._on_segments(inner - 1, t, basis)
        return left - self._on_segments(inner, t, basis)

    def sample(self, spec) -> SampleTable:
        """Samples the spline with its first two derivatives.

        Args:
            spec: Either a count ≥ 2 of equally spaced points spanning
                [t_1, t_n], or an explicit non-decreasing array of abscissae.

        Returns:
            SampleTable: The sampled columns.

        Raises:
            BadSpec: If the count is below 2 or the array is empty, not
                finite or not sorted.
        """
        if isinstance(spec, (int, np.integer)) and not isinstance(spec, bool):
            if spec < 2:
                raise BadSpec(f"sample count must be at least 2, got {spec}")
            t = np.linspace(self.grid.knots[0], self.grid.knots[-1], int(spec))
        else:
            t = np.asarray(spec, dtype=float)
            if t.ndim != 1 or t.size == 0:
                raise BadSpec("sample points must be a non-empty one-dimensional array")
            if not np.all(np.isfinite(t)):
                raise BadSpec("sample points must be finite")
            if np.any(np.diff(t) < 0):
                raise BadSpec("sample points must be sorted")
        return SampleTable(
            t, self.eval(t), self.eval_deriv(t, 1), self.eval_deriv(t, 2)
        )


def fit(grid: KnotGrid, z, xi, bc: BoundaryCondition) -> LSpline:
    """Fits the L-spline interpolating z at the knots of grid.

    Args:
        grid: The knots t_1 < ... < t_n.
        z: The data values at the knots.
        xi: The tension ξ ≥ 0.
        bc: Either ``Clamped(d1, d2)`` or ``Natural()``.

    Returns:
        LSpline: The fitted spline.
    """
    tension = Tension.coerce(xi)
    if isinstance(bc, Clamped):
        moments = solve_tridiagonal(assemble_clamped(grid, tension, z, bc))
    elif isinstance(bc, Natural):
        moments = np.zeros(grid.n)
        moments[1:-1] = solve_tridiagonal(assemble_natural(grid, tension, z))
    else:
        raise DomainError(f"unsupported boundary condition {bc!r}")
    logger.debug(
        "fitted spline", n=grid.n, xi=tension.xi, boundary=type(bc).__name__
    )
    return LSpline(tension, grid, z, moments, bc)


def fit_clamped(knots, z, xi, d1: float, d2: float) -> LSpline:
    """Shorthand for fit(KnotGrid(knots), z, xi, Clamped(d1, d2))."""
    return fit(KnotGrid(knots), z, xi, Clamped(d1, d2))


def fit_natural(knots, z, xi) -> LSpline:
    """Shorthand for fit(KnotGrid(knots), z, xi, Natural())."""
    return fit(KnotGrid(knots), z, xi, Natural())


def linear_interpolant(grid: KnotGrid, z, t):
    """The piecewise linear interpolant of (knots, z) evaluated at t."""
    return np.interp(t, grid.knots, z)
