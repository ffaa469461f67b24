"""Principal eigenvalue, critical cycles and the metric matrix.

A square matrix ``A`` defines a weighted digraph with an arc ``i -> j`` of
weight ``a_ij`` whenever ``a_ij`` exceeds the least element.  The mean of a
cycle of length ``l`` and weight ``w`` (the ``mult`` of its arc weights) is
the ``mult``-root ``kth_root(w, l)``; the principal eigenvalue is the largest
such mean over elementary cycles.  The dual eigenvalue uses the graph of arcs
below the greatest element, ``dual_mult`` weights and the least mean.

Nodes are numbered from 0.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Optional

import numpy as np

from .clodum import Clodum
from .errors import DimensionError, UnsupportedOperationError
from .linalg import (WMatrix, WVector, adjoint_matrix, maxmul, matrix_powers,
                     minmul, scalar_times)

# above this size eigenvalues come from the power-trace formula instead of
# enumerating elementary cycles
ENUMERATION_LIMIT = 15


@dataclass(frozen=True)
class PrecedenceGraph:
    n: int
    arcs: tuple  # (i, j, weight)

    def successors(self, i):
        return [j for (a, j, _) in self.arcs if a == i]


@dataclass(frozen=True)
class SpectralReport:
    lam: float
    critical_cycle: tuple
    is_irreducible: bool
    metric_matrix: Optional[WMatrix]
    metric_converged: bool
    dual_lam: float
    dual_critical_cycle: tuple = field(default=())


def _square(A):
    if not isinstance(A, WMatrix) or not A.is_square():
        raise DimensionError("a square WMatrix is required")


def _adjacency(A: WMatrix, dual: bool):
    c = A.clodum
    return A.data < c.top if dual else A.data > c.bottom


def precedence_graph(A: WMatrix, dual: bool = False) -> PrecedenceGraph:
    _square(A)
    mask = _adjacency(A, dual)
    arcs = tuple((int(i), int(j), float(A.data[i, j])) for i, j in zip(*np.nonzero(mask)))
    return PrecedenceGraph(A.rows, arcs)


def _reach(adj, start):
    seen = {start}
    stack = [start]
    while stack:
        u = stack.pop()
        for v in np.flatnonzero(adj[u]):
            if v not in seen:
                seen.add(int(v))
                stack.append(int(v))
    return seen


def is_irreducible(A: WMatrix, dual: bool = False) -> bool:
    """Strong connectivity of the precedence graph (forward + backward sweep)."""
    _square(A)
    adj = _adjacency(A, dual)
    n = A.rows
    return len(_reach(adj, 0)) == n and len(_reach(adj.T, 0)) == n


def elementary_cycles(A: WMatrix, dual: bool = False) -> Iterator[tuple]:
    """Yield every elementary cycle once, as a node tuple starting at its
    smallest node, in lexicographic order of the tuples."""
    _square(A)
    adj = _adjacency(A, dual)
    n = A.rows
    succ = [np.flatnonzero(adj[i]).tolist() for i in range(n)]
    for s in range(n):
        path = [s]
        on_path = [False] * n
        on_path[s] = True
        # iterators over successors > s, one per path node
        stack = [iter([v for v in succ[s] if v > s])]
        if adj[s, s]:
            yield (s,)
        while stack:
            nxt = next(stack[-1], None)
            if nxt is None:
                stack.pop()
                on_path[path.pop()] = False
                continue
            if on_path[nxt]:
                continue
            path.append(nxt)
            on_path[nxt] = True
            if adj[nxt, s]:
                yield tuple(path)
            stack.append(iter([v for v in succ[nxt] if v > s]))


def cycle_weight(A: WMatrix, cycle, dual: bool = False) -> float:
    c = A.clodum
    op = c.dual_mult if dual else c.mult
    w = c.dual_unit if dual else c.unit
    for k, i in enumerate(cycle):
        j = cycle[(k + 1) % len(cycle)]
        w = op(w, A.data[i, j])
    return float(w)


def cycle_mean(A: WMatrix, cycle, dual: bool = False) -> float:
    c = A.clodum
    w = cycle_weight(A, cycle, dual)
    root = c.dual_kth_root if dual else c.kth_root
    return float(root(w, len(cycle)))


def _trace_formula(A: WMatrix, dual: bool) -> float:
    """Largest (least, if dual) mean via the diagonals of the matrix powers."""
    c = A.clodum
    n = A.rows
    powers = matrix_powers(A, n, dual=dual)
    best = c.top if dual else c.bottom
    for k in range(1, n + 1):
        diag = np.diag(powers[k].data)
        if dual:
            best = min(best, float(c.dual_kth_root(diag.min(), k)))
        else:
            best = max(best, float(c.kth_root(diag.max(), k)))
    return best


def _extreme_mean(A: WMatrix, dual: bool) -> float:
    c = A.clodum
    if A.rows > ENUMERATION_LIMIT:
        return _trace_formula(A, dual)
    means = [cycle_mean(A, cyc, dual) for cyc in elementary_cycles(A, dual)]
    if not means:
        return c.top if dual else c.bottom
    return min(means) if dual else max(means)


def _first_cycle_with_mean(A, lam, dual):
    c = A.clodum
    for cyc in elementary_cycles(A, dual):
        if c.isclose(cycle_mean(A, cyc, dual), lam):
            return cyc
    return ()


def cycle_mean_eigenvalue(A: WMatrix):
    """Return ``(lam, critical_cycle)``.

    ``lam`` is the maximum cycle mean (the least element when the graph is
    acyclic).  Among critical cycles the lexicographically smallest node
    sequence is returned.

    >>> from wlattice import WMatrix
    >>> inf = float("inf")
    >>> cycle_mean_eigenvalue(WMatrix([[-inf, 2], [4, -inf]], "max-plus"))
    (3.0, (0, 1))
    """
    _square(A)
    lam = _extreme_mean(A, dual=False)
    if lam == A.clodum.bottom and not any(True for _ in elementary_cycles(A)):
        return lam, ()
    return lam, _first_cycle_with_mean(A, lam, dual=False)


def principal_eigenvalue(A: WMatrix) -> float:
    return cycle_mean_eigenvalue(A)[0]


def critical_cycles(A: WMatrix, dual: bool = False) -> list:
    """All elementary cycles whose mean equals the (dual) principal eigenvalue."""
    _square(A)
    c = A.clodum
    cycles = list(elementary_cycles(A, dual))
    if not cycles:
        return []
    means = [cycle_mean(A, cyc, dual) for cyc in cycles]
    lam = min(means) if dual else max(means)
    return [cyc for cyc, m in zip(cycles, means) if c.isclose(m, lam)]


def dual_cycle_mean(A: WMatrix, return_cycle: bool = False):
    """Minimum cycle mean over the graph of arcs below the greatest element."""
    _square(A)
    lam = _extreme_mean(A, dual=True)
    if not return_cycle:
        return lam
    return lam, _first_cycle_with_mean(A, lam, dual=True)


def karp_max_cycle_mean(A: WMatrix) -> float:
    """Karp's maximum cycle mean for max-plus matrices with entries below +inf."""
    _square(A)
    if A.clodum.name != "max-plus":
        raise UnsupportedOperationError("Karp's algorithm applies to max-plus only")
    a = A.data
    if np.isposinf(a).any():
        raise UnsupportedOperationError("entries equal to +inf are not supported")
    n = A.rows
    D = np.full((n + 1, n), -np.inf)
    D[0] = 0.0
    for k in range(1, n + 1):
        D[k] = np.max(D[k - 1][:, None] + a, axis=0)
    best = -np.inf
    for v in range(n):
        if D[n, v] == -np.inf:
            continue
        worst = np.inf
        for k in range(n):
            if D[k, v] > -np.inf:
                worst = min(worst, (D[n, v] - D[k, v]) / (n - k))
        best = max(best, worst)
    return float(best)


def metric_matrix(A: WMatrix):
    """``(A v A^(2) v ... v A^(n), converged)``.

    The join is exact (it bounds every power of ``A``) precisely when the
    principal eigenvalue does not exceed the unit; ``converged`` reports
    that condition.  When it fails the partial join is still returned.
    """
    _square(A)
    c = A.clodum
    powers = matrix_powers(A, A.rows)
    gamma = powers[1].data
    for P in powers[2:]:
        gamma = np.maximum(gamma, P.data)
    lam = principal_eigenvalue(A)
    converged = bool(c.leq(lam, c.unit))
    return WMatrix(gamma, c, validate=False), converged


def eigen_check(A: WMatrix, v: WVector, lam: float) -> bool:
    """True iff ``A maxmul v == lam mult v`` and ``v`` is not all bottom."""
    c = A.clodum
    if A.cols != len(v) or A.rows != len(v):
        raise DimensionError("eigenvector length must match the matrix")
    if np.all(v.data == c.bottom):
        return False
    lhs = maxmul(A, v).data
    rhs = c.mult(lam, v.data)
    return bool(np.all(c.isclose(lhs, rhs)))


def dual_eigen_check(A: WMatrix, v: WVector, lam: float) -> bool:
    """True iff ``A minmul v == lam dual_mult v`` and ``v`` is not all top."""
    c = A.clodum
    if A.cols != len(v) or A.rows != len(v):
        raise DimensionError("eigenvector length must match the matrix")
    if np.all(v.data == c.top):
        return False
    lhs = minmul(A, v).data
    rhs = c.dual_mult(lam, v.data)
    return bool(np.all(c.isclose(lhs, rhs)))


def eigenvector_candidates(A: WMatrix) -> dict:
    """Columns of the metric matrix of ``conj(lam) mult A`` at critical nodes.

    Only defined over a clog with a finite principal eigenvalue.  Returns a
    mapping ``node -> WVector``.
    """
    c = A.clodum
    if not c.is_clog:
        raise UnsupportedOperationError("eigenvector construction needs a clog")
    lam, cyc = cycle_mean_eigenvalue(A)
    if not np.isfinite(lam) or lam in (c.bottom, c.top):
        raise UnsupportedOperationError("principal eigenvalue is not finite")
    normalized = scalar_times(c.conjugate(lam), A)
    gamma, _ = metric_matrix(normalized)
    return {i: gamma.column(i) for i in cyc}


def spectral_report(A: WMatrix) -> SpectralReport:
    lam, cyc = cycle_mean_eigenvalue(A)
    gamma, converged = metric_matrix(A)
    dual_lam, dual_cyc = dual_cycle_mean(A, return_cycle=True)
    return SpectralReport(
        lam=lam,
        critical_cycle=cyc,
        is_irreducible=is_irreducible(A),
        metric_matrix=gamma if converged else None,
        metric_converged=converged,
        dual_lam=dual_lam,
        dual_critical_cycle=dual_cyc,
    )


def adjoint_dual_lambda(A: WMatrix) -> float:
    """Dual eigenvalue of ``A`` computed through conjugation (clogs only)."""
    return float(A.clodum.conjugate(principal_eigenvalue(adjoint_matrix(A))))
