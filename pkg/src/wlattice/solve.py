"""One-sided max-mult and min-dual_mult equations.

``solve_max`` returns the greatest subsolution of ``A maxmul x = b``: the
adjoint erosion of ``b``.  When the equation has solutions this is the
greatest one; otherwise it is the optimal approximation from below in both
the l-infinity and l1 sense.  ``solve_min`` is the dual construction for
``A minmul y = b``: the least supersolution, approximating ``b`` from above.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import (WMatrix, WVector, maxmul, minmul, vec_adjoint_dilation,
                     vec_adjoint_erosion, _same_clodum)
from .errors import DimensionError


@dataclass(frozen=True)
class SolveReport:
    solution: WVector
    achieved: WVector
    exact: bool
    residual_linf: float
    residual_l1: float


def _residuals(c, achieved, b):
    """Norms of ``b - achieved`` (or its dual) over finite coordinates of ``b``.

    Returns ``(exact, linf, l1)``.  Coordinates where ``b`` is infinite
    contribute nothing when matched exactly and make the report inexact
    otherwise.
    """
    match = np.asarray(c.isclose(achieved, b))
    exact = bool(match.all())
    finite = np.isfinite(b)
    if finite.any():
        diff = np.abs(b[finite] - achieved[finite])
        diff = np.where(match[finite], 0.0, diff)
        diff = np.where(np.isfinite(diff), diff, np.inf)
        return exact, float(diff.max()), float(diff.sum())
    return exact, 0.0, 0.0


def _check(A, b):
    if not isinstance(A, WMatrix) or not isinstance(b, WVector):
        raise TypeError("expected a WMatrix and a WVector")
    _same_clodum(A, b)
    if A.rows != len(b):
        raise DimensionError(f"A is {A.rows}x{A.cols} but b has length {len(b)}")


def solve_max(A: WMatrix, b: WVector) -> SolveReport:
    """Greatest ``x`` with ``A maxmul x <= b``.

    >>> from wlattice import WMatrix, WVector
    >>> A = WMatrix([[4, -1], [2, float("-inf")]], "max-plus")
    >>> solve_max(A, WVector([3, 1], "max-plus")).solution.tolist()
    [-1.0, 4.0]
    """
    _check(A, b)
    x = vec_adjoint_erosion(A, b)
    achieved = maxmul(A, x)
    exact, linf, l1 = _residuals(A.clodum, achieved.data, b.data)
    return SolveReport(x, achieved, exact, linf, l1)


def solve_min(A: WMatrix, b: WVector) -> SolveReport:
    """Least ``y`` with ``A minmul y >= b``."""
    _check(A, b)
    y = vec_adjoint_dilation(A, b)
    achieved = minmul(A, y)
    exact, linf, l1 = _residuals(A.clodum, achieved.data, b.data)
    return SolveReport(y, achieved, exact, linf, l1)
