"""Recursive max-sum / min-sum filters and their state-space form.

The filter::

    y(t) = max_i (a_i + y(t-i))  v  max_j (b_j + u(t-j))

(``min`` for ``mode="min"``) is run either directly or as a state-space
system whose state holds the last ``n`` outputs.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..clodum import Clodum, make_clodum
from ..errors import ConfigurationError, UnsupportedOperationError
from ..linalg import WMatrix
from ..systems import Signal, SystemSpec


@dataclass(frozen=True)
class FilterSpec:
    a: tuple            # feedback a_1..a_n
    b: tuple = (0.0,)   # feedforward b_0..b_m
    mode: str = "max"
    clodum: Clodum = None

    def __post_init__(self):
        c = self.clodum or make_clodum("max-plus")
        if isinstance(c, str):
            c = make_clodum(c)
        object.__setattr__(self, "clodum", c)
        object.__setattr__(self, "a", tuple(float(v) for v in self.a))
        object.__setattr__(self, "b", tuple(float(v) for v in self.b))
        if self.mode not in ("max", "min"):
            raise ConfigurationError("filter mode must be 'max' or 'min'")
        c.validate(list(self.a) + list(self.b))
        if not self.a or not self.b:
            raise ConfigurationError("a filter needs at least one a_i and one b_j")
        if all(v == self.null for v in self.a + self.b):
            raise ConfigurationError("all filter coefficients are null")

    @property
    def order(self) -> int:
        return len(self.a)

    @property
    def null(self) -> float:
        return self.clodum.bottom if self.mode == "max" else self.clodum.top


def companion_matrix(f: FilterSpec) -> WMatrix:
    """Shift matrix with ``[a_n, ..., a_1]`` as its last row."""
    c = f.clodum
    n = f.order
    unit = c.unit if f.mode == "max" else c.dual_unit
    A = np.full((n, n), f.null)
    for i in range(n - 1):
        A[i, i + 1] = unit
    A[-1, :] = f.a[::-1]
    return WMatrix(A, c, validate=False)


def filter_to_state_space(f: FilterSpec) -> SystemSpec:
    """State-space realization with state ``x_i(t) = y(t - n + i)``.

    ``B`` feeds ``b_0 u(t)`` into the newest state and ``C`` reads it out,
    so simulating the system reproduces :func:`run_filter` exactly.
    """
    if len(f.b) > 1:
        raise UnsupportedOperationError("state-space form needs b_1 = ... = b_m null (m = 0)")
    c = f.clodum
    n = f.order
    unit = c.unit if f.mode == "max" else c.dual_unit
    B = np.full((n, 1), f.null)
    B[-1, 0] = f.b[0]
    C = np.full((1, n), f.null)
    C[0, -1] = unit
    D = np.full((1, 1), f.null)
    return SystemSpec(companion_matrix(f), WMatrix(B, c), WMatrix(C, c), WMatrix(D, c), c, f.mode)


def run_filter(f: FilterSpec, u, T: int) -> Signal:
    """Direct recursion for ``t = 0..T`` from rest (null before ``t = 0``).

    ``u`` is a :class:`Signal` or a sequence of samples at ``t = 0, 1, ...``.
    """
    c = f.clodum
    if isinstance(u, Signal):
        uu = u.window(0, T)
    else:
        uu = np.full(T + 1, f.null)
        vals = np.asarray(u, dtype=float)[: T + 1]
        uu[: len(vals)] = vals
    op = c.mult if f.mode == "max" else c.dual_mult
    better = max if f.mode == "max" else min
    y = np.full(T + 1, f.null)
    for t in range(T + 1):
        acc = f.null
        for i, ai in enumerate(f.a, start=1):
            if t - i >= 0:
                acc = better(acc, float(op(ai, y[t - i])))
        for j, bj in enumerate(f.b):
            if t - j >= 0:
                acc = better(acc, float(op(bj, uu[t - j])))
        y[t] = acc
    return Signal(0, y, c, f.mode)


def filter_impulse_response(f: FilterSpec, T: int) -> Signal:
    return run_filter(f, Signal.impulse(f.clodum, f.mode), T)


def filter_eigenvalue(f: FilterSpec) -> float:
    """``max_k a_k / k`` (``min`` for min-sum filters), via the ``mult`` roots."""
    c = f.clodum
    if f.mode == "max":
        return max(float(c.kth_root(a, k)) for k, a in enumerate(f.a, start=1))
    return min(float(c.dual_kth_root(a, k)) for k, a in enumerate(f.a, start=1))
