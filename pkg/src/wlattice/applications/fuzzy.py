"""Fuzzy Markov chains: max-t-norm powers of ``A = P^T``.

Over ``[0, 1]`` with ``min`` or the product as multiplication the powers
``A^(t)`` either settle (``A^(tau+1) = A^(tau)``) or cycle with a finite
period ``nu`` after ``tau`` steps.  Columns of the limit that ``A`` fixes
are stationary distributions of the chain.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..clodum import Clodum, make_clodum
from ..errors import ConfigurationError, DimensionError
from ..linalg import WMatrix, WVector, maxmul
from ..spectral import eigen_check, metric_matrix

_TNORMS = {"min": "max-min", "product": "product-tnorm"}


@dataclass(frozen=True, eq=False)
class FmcSpec:
    """Fuzzy transition relation ``P`` (``p_ij`` from state ``i`` to ``j``)."""

    P: np.ndarray
    tnorm: str = "min"

    def __post_init__(self):
        if self.tnorm not in _TNORMS:
            raise ConfigurationError(f"t-norm must be one of {sorted(_TNORMS)}")
        P = np.array(self.P, dtype=float)
        if P.ndim != 2 or P.shape[0] != P.shape[1]:
            raise DimensionError("transition matrix must be square")
        self.clodum.validate(P)
        P.setflags(write=False)
        object.__setattr__(self, "P", P)

    @classmethod
    def from_state_matrix(cls, A, tnorm: str = "min") -> "FmcSpec":
        """Build from the state-update matrix ``A`` directly."""
        return cls(np.asarray(A, dtype=float).T, tnorm)

    @property
    def clodum(self) -> Clodum:
        return make_clodum(_TNORMS[self.tnorm])

    @property
    def A(self) -> WMatrix:
        return WMatrix(self.P.T, self.clodum, validate=False)


@dataclass(frozen=True, eq=False)
class FmcReport:
    powers: list          # A^(1), ..., A^(tau + period)
    tau: int
    period: int
    stationary: list      # WVector columns fixed by A
    ergodic: bool
    metric: WMatrix
    unit_diagonal: bool
    limit: WMatrix = field(repr=False, default=None)


def fmc_analyze(f: FmcSpec, max_steps: int = None) -> FmcReport:
    """Power ``A`` until a repeat, then collect stationary columns.

    ``tau`` is the first ``t >= 1`` with ``A^(t + period) = A^(t)``.  Powers
    of a matrix over a finite value set must repeat, so the search always
    ends; ``max_steps`` only guards against pathological product-norm
    inputs whose value set keeps growing.
    """
    A = f.A
    c = A.clodum
    n = A.rows
    max_steps = max_steps or max(64, 4 * n * n)
    powers = [A]
    seen = {A.data.tobytes(): 1}
    tau = period = None
    for t in range(2, max_steps + 2):
        P = maxmul(A, powers[-1])
        powers.append(P)
        key = P.data.tobytes()
        if key in seen:
            tau = seen[key]
            period = t - tau
            break
        seen[key] = t
    if tau is None:
        raise ConfigurationError(f"powers did not repeat within {max_steps} steps")

    unit_diag = bool(np.all(np.diag(A.data) == c.unit))
    gamma, _ = metric_matrix(A)
    limit = powers[tau - 1]
    if unit_diag:
        # monotone powers must settle by step n
        An = powers[n - 1] if n <= len(powers) else limit
        if period != 1 or not gamma.isclose(An):
            raise AssertionError("unit-diagonal chain did not converge by step n")
    source = gamma if unit_diag else limit
    stationary = []
    if period == 1 or unit_diag:
        for j in range(n):
            col = source.column(j)
            if eigen_check(A, col, c.unit):
                stationary.append(col)
    cols = limit.data
    ergodic = period == 1 and bool(np.all(cols == cols[:, :1]))
    return FmcReport(powers, tau, period, stationary, ergodic, gamma, unit_diag, limit)
