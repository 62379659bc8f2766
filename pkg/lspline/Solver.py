"""Pivot-free O(m) solution of tridiagonal systems (Thomas algorithm).

Strict row diagonal dominance guarantees that every pivot of the forward
elimination stays away from zero, so no row exchanges are needed.
"""
import numpy as np
import structlog

from .Errors import DimensionMismatch, SingularSystem
from .System import TridiagonalSystem

PIVOT_FLOOR = 1e-300  #: Pivots of smaller magnitude are reported as singular.

logger = structlog.getLogger(__name__)


def solve_tridiagonal(sys: TridiagonalSystem, rhs=None, check: bool = None):
    """Solves sys·x = rhs by forward elimination and back substitution.

    The system is not modified; the elimination works on private scratch
    lists.

    Args:
        sys: The tridiagonal system.
        rhs: A right-hand side replacing ``sys.rhs``, if given.
        check: Whether to verify strict diagonal dominance first. Defaults
            to ``__debug__``, so the check is skipped under ``python -O``.

    Returns:
        numpy.ndarray: The solution x of length m.

    Raises:
        SingularSystem: If dominance is violated (when checked) or a pivot
            falls below PIVOT_FLOOR in magnitude.
    """
    if check is None:
        check = __debug__
    if rhs is None:
        rhs = sys.rhs
    rhs = np.asarray(rhs, dtype=float)
    m = sys.size
    if rhs.size != m:
        raise DimensionMismatch(f"expected a right-hand side of {m} entries")
    if check and not sys.is_dominant():
        row = int(np.argmin(sys.dominance_margins())) + 1
        raise SingularSystem(
            f"system is not strictly diagonally dominant (row {row})"
        )
    if m == 0:
        return np.zeros(0)

    # plain lists: indexing numpy arrays element-wise is several times slower
    sub = sys.sub.tolist()
    diag = sys.diag.tolist()
    sup = sys.sup.tolist()
    d = rhs.tolist()
    c = [0.0] * m

    pivot = diag[0]
    if abs(pivot) < PIVOT_FLOOR:
        raise SingularSystem("vanishing pivot in row 1")
    c[0] = sup[0] / pivot if m > 1 else 0.0
    d[0] = d[0] / pivot
    for i in range(1, m):
        pivot = diag[i] - sub[i - 1] * c[i - 1]
        if abs(pivot) < PIVOT_FLOOR:
            raise SingularSystem(f"vanishing pivot in row {i + 1}")
        if i < m - 1:
            c[i] = sup[i] / pivot
        d[i] = (d[i] - sub[i - 1] * d[i - 1]) / pivot

    for i in range(m - 2, -1, -1):
        d[i] -= c[i] * d[i + 1]

    logger.debug("solved tridiagonal system", size=m)
    return np.array(d)
