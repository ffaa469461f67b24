"""Reachability and observability through the greatest-subsolution solver."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import DimensionError, UnsupportedOperationError
from .linalg import WMatrix, WVector, maxmul, matrix_power
from .solve import SolveReport, solve_max
from .systems import SystemSpec


@dataclass(frozen=True)
class ControlReport(SolveReport):
    matrix: Optional[WMatrix] = None
    # reach only: does A^(k) x(0) v C_k u reproduce the target?
    target_reached_from_x0: Optional[bool] = None


def _const(sys: SystemSpec):
    if not sys.time_invariant:
        raise UnsupportedOperationError("reachability/observability need constant matrices")
    if sys.mode != "max":
        raise UnsupportedOperationError("only max systems are supported")


def controllability_matrix(sys: SystemSpec, k: int) -> WMatrix:
    """``[B, A B, ..., A^(k-1) B]``.

    Block ``j`` (from 0) multiplies ``u(k - j)``, so the control vector is
    ordered newest first: ``[u(k), u(k-1), ..., u(1)]``.
    """
    _const(sys)
    if k < 1:
        raise ValueError("k must be at least 1")
    blocks = []
    P = sys.B
    for _ in range(k):
        blocks.append(P.data)
        P = maxmul(sys.A, P)
    return WMatrix(np.hstack(blocks), sys.clodum, validate=False)


def observability_matrix(sys: SystemSpec, k: int) -> WMatrix:
    """Stack ``[C A; C A^(2); ...; C A^(k)]``."""
    _const(sys)
    if k < 1:
        raise ValueError("k must be at least 1")
    blocks = []
    P = sys.A
    for _ in range(k):
        blocks.append(maxmul(sys.C, P).data)
        P = maxmul(sys.A, P)
    return WMatrix(np.vstack(blocks), sys.clodum, validate=False)


def reach(sys: SystemSpec, k: int, target, x0=None) -> ControlReport:
    """Greatest ``k``-step control sequence ``u = [u(k), ..., u(1)]`` with
    ``C_k maxmul u <= target``; ``exact`` means weakly reachable.

    Inputs are assumed to dominate the initial state.  When ``x0`` is
    given, the report also says whether ``A^(k) x0 v C_k u`` equals the
    target.
    """
    Ck = controllability_matrix(sys, k)
    target = target if isinstance(target, WVector) else WVector(target, sys.clodum)
    if len(target) != sys.n:
        raise DimensionError(f"target has length {len(target)}, system has {sys.n} states")
    rep = solve_max(Ck, target)
    reached = None
    if x0 is not None:
        x0 = x0 if isinstance(x0, WVector) else WVector(x0, sys.clodum)
        free = maxmul(matrix_power(sys.A, k), x0)
        reached = (free | rep.achieved).isclose(target)
    return ControlReport(rep.solution, rep.achieved, rep.exact, rep.residual_linf,
                         rep.residual_l1, matrix=Ck, target_reached_from_x0=reached)


def observe(sys: SystemSpec, k: int, y_seq) -> ControlReport:
    """Greatest ``x(0)`` with ``O_k maxmul x(0) <= [y(1); ...; y(k)]``."""
    Ok = observability_matrix(sys, k)
    y_seq = y_seq if isinstance(y_seq, WVector) else WVector(np.ravel(y_seq), sys.clodum)
    if len(y_seq) != Ok.rows:
        raise DimensionError(f"observation stack needs {Ok.rows} values, got {len(y_seq)}")
    rep = solve_max(Ok, y_seq)
    return ControlReport(rep.solution, rep.achieved, rep.exact, rep.residual_linf,
                         rep.residual_l1, matrix=Ok)
