"""Max-mult and min-dual_mult state-space systems.

A max system evolves as::

    x(t) = A(t) maxmul x(t-1)  v  B(t) maxmul u(t)
    y(t) = C(t) maxmul x(t)    v  D(t) maxmul u(t)

and a min system is the same recursion with ``minmul`` and ``min``.  The
input at ``t = 0`` is taken to be null, so ``x(0)`` is the effective initial
condition.  Any of ``A``..``D`` may be a callable ``t -> WMatrix`` for
time-varying systems.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from typing import Callable, Optional, Union

import numpy as np

from .clodum import Clodum, make_clodum
from .errors import ClodumMismatchError, DimensionError, UnsupportedOperationError
from .linalg import WMatrix, WVector, identity, maxmul, minmul, matrix_power
from . import spectral

MatrixProvider = Union[WMatrix, Callable[[int], WMatrix]]


@dataclass(frozen=True, eq=False)
class SystemSpec:
    A: MatrixProvider
    B: MatrixProvider
    C: MatrixProvider
    D: MatrixProvider
    clodum: Clodum
    mode: str = "max"

    def __post_init__(self):
        if isinstance(self.clodum, str):
            object.__setattr__(self, "clodum", make_clodum(self.clodum))
        if self.mode not in ("max", "min"):
            raise ValueError("mode must be 'max' or 'min'")
        shapes = {k: self._at(k, 1).shape for k in "ABCD"}
        n, p = shapes["B"]
        q = shapes["C"][0]
        if shapes["A"] != (n, n) or shapes["C"] != (q, n) or shapes["D"] != (q, p):
            raise DimensionError(f"incompatible system dimensions {shapes}")
        for k in "ABCD":
            if self._at(k, 1).clodum.name != self.clodum.name:
                raise ClodumMismatchError(f"matrix {k} is not over {self.clodum.name}")

    def _at(self, key, t):
        m = getattr(self, key)
        return m(t) if callable(m) else m

    def A_at(self, t):
        return self._at("A", t)

    def B_at(self, t):
        return self._at("B", t)

    def C_at(self, t):
        return self._at("C", t)

    def D_at(self, t):
        return self._at("D", t)

    @property
    def n(self):
        return self.A_at(1).rows

    @property
    def p(self):
        return self.B_at(1).cols

    @property
    def q(self):
        return self.C_at(1).rows

    @property
    def time_invariant(self) -> bool:
        return not any(callable(getattr(self, k)) for k in "ABCD")

    @property
    def null(self) -> float:
        return self.clodum.bottom if self.mode == "max" else self.clodum.top

    @property
    def dual(self) -> bool:
        return self.mode == "min"

    def mul(self, M, x):
        return minmul(M, x) if self.dual else maxmul(M, x)

    def acc(self, a, b):
        return np.minimum(a, b) if self.dual else np.maximum(a, b)


@dataclass(frozen=True, eq=False)
class Signal:
    """Finite-support discrete-time signal.

    Outside ``[start, start + len(samples))`` the value is the least element
    for ``mode="max"`` and the greatest for ``mode="min"``.
    """

    start: int
    samples: np.ndarray
    clodum: Clodum
    mode: str = "max"

    def __post_init__(self):
        if isinstance(self.clodum, str):
            object.__setattr__(self, "clodum", make_clodum(self.clodum))
        arr = np.array(self.samples, dtype=float).reshape(-1)
        self.clodum.validate(arr)
        arr.setflags(write=False)
        object.__setattr__(self, "samples", arr)
        object.__setattr__(self, "start", int(self.start))

    @property
    def null(self) -> float:
        return self.clodum.bottom if self.mode == "max" else self.clodum.top

    @property
    def stop(self) -> int:
        """One past the last sample time."""
        return self.start + len(self.samples)

    def __len__(self):
        return len(self.samples)

    def __call__(self, t: int) -> float:
        k = t - self.start
        if 0 <= k < len(self.samples):
            return float(self.samples[k])
        return self.null

    def window(self, t0: int, t1: int) -> np.ndarray:
        """Samples at times ``t0..t1`` inclusive."""
        return np.array([self(t) for t in range(t0, t1 + 1)])

    def support(self) -> list:
        return [self.start + k for k, v in enumerate(self.samples) if v != self.null]

    def isclose(self, other: "Signal") -> bool:
        lo, hi = min(self.start, other.start), max(self.stop, other.stop) - 1
        return bool(np.all(self.clodum.isclose(self.window(lo, hi), other.window(lo, hi))))

    @classmethod
    def impulse(cls, clodum, mode="max"):
        c = make_clodum(clodum) if isinstance(clodum, str) else clodum
        return cls(0, [c.unit if mode == "max" else c.dual_unit], c, mode)


@dataclass(frozen=True, eq=False)
class Trajectory:
    states: np.ndarray   # (T+1, n)
    outputs: np.ndarray  # (T+1, q)
    clodum: Clodum
    null_input: Optional[np.ndarray] = field(default=None, repr=False)
    null_state: Optional[np.ndarray] = field(default=None, repr=False)

    @property
    def T(self) -> int:
        return self.states.shape[0] - 1

    def state(self, t) -> WVector:
        return WVector(self.states[t], self.clodum, validate=False)

    def output(self, t) -> WVector:
        return WVector(self.outputs[t], self.clodum, validate=False)

    def isclose(self, other: "Trajectory") -> bool:
        c = self.clodum
        return (self.states.shape == other.states.shape
                and bool(np.all(c.isclose(self.states, other.states)))
                and bool(np.all(c.isclose(self.outputs, other.outputs))))

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        n, q = self.states.shape[1], self.outputs.shape[1]
        w.writerow(["t"] + [f"x{i + 1}" for i in range(n)] + [f"y{i + 1}" for i in range(q)])
        for t in range(self.T + 1):
            row = [str(t)] + [self.clodum.format(v) for v in self.states[t]]
            row += [self.clodum.format(v) for v in self.outputs[t]]
            w.writerow(row)
        return buf.getvalue()


def transition_matrix(sys: SystemSpec, t2: int, t1: int) -> WMatrix:
    """``A(t2) * ... * A(t1 + 1)``; the identity when ``t2 == t1``."""
    if t2 < t1:
        raise ValueError(f"transition matrix needs t2 >= t1, got {t2} < {t1}")
    if sys.time_invariant:
        return matrix_power(sys.A, t2 - t1, dual=sys.dual)
    Phi = identity(sys.clodum, sys.n, dual=sys.dual)
    for t in range(t1 + 1, t2 + 1):
        Phi = sys.mul(sys.A_at(t), Phi)
    return Phi


def _input_array(sys: SystemSpec, u, T: int) -> np.ndarray:
    """Normalize ``u`` to a ``(T+1, p)`` array whose row 0 is null."""
    p = sys.p
    if u is None:
        return np.full((T + 1, p), sys.null)
    if isinstance(u, Signal):
        if p != 1:
            raise DimensionError("a Signal input needs a single-input system")
        arr = u.window(0, T)[:, None]
    else:
        arr = np.array(u, dtype=float)
        if arr.ndim == 1:
            arr = arr[:, None]
    if arr.shape[1] != p:
        raise DimensionError(f"input has {arr.shape[1]} channels, system has {p}")
    if arr.shape[0] == T:
        arr = np.vstack([np.full((1, p), sys.null), arr])
    if arr.shape[0] != T + 1:
        raise DimensionError(f"input must cover t = 1..{T} (got {arr.shape[0]} rows)")
    if np.any(arr[0] != sys.null):
        raise ValueError("u(0) must be null; use x(0) as the initial condition")
    sys.clodum.validate(arr)
    return arr


def _initial_state(sys, x0):
    if x0 is None:
        return np.full(sys.n, sys.null)
    x = x0.data if isinstance(x0, WVector) else np.array(x0, dtype=float).reshape(-1)
    if x.shape != (sys.n,):
        raise DimensionError(f"x(0) has length {x.shape[0]}, system has {sys.n} states")
    sys.clodum.validate(x)
    return x


def _v(x, c):
    return WVector(x, c, validate=False)


def simulate(sys: SystemSpec, x0=None, u=None, T: int = 0) -> Trajectory:
    """Run the state recursion for ``t = 0..T``."""
    c = sys.clodum
    U = _input_array(sys, u, T)
    x = _initial_state(sys, x0)
    states = np.empty((T + 1, sys.n))
    outputs = np.empty((T + 1, sys.q))
    for t in range(T + 1):
        ut = _v(U[t], c)
        if t > 0:
            x = sys.acc(sys.mul(sys.A_at(t), _v(x, c)).data, sys.mul(sys.B_at(t), ut).data)
        states[t] = x
        outputs[t] = sys.acc(sys.mul(sys.C_at(t), _v(x, c)).data, sys.mul(sys.D_at(t), ut).data)
    return Trajectory(states, outputs, c)


def closed_form_response(sys: SystemSpec, x0=None, u=None, T: int = 0) -> Trajectory:
    """Evaluate the state and output responses through transition matrices.

    The trajectory carries the output split into its null-input part (due to
    ``x(0)`` alone) and null-state part (due to ``u`` alone); their join
    (meet for min systems) is the output.
    """
    c = sys.clodum
    U = _input_array(sys, u, T)
    x0 = _initial_state(sys, x0)
    states = np.empty((T + 1, sys.n))
    outputs = np.empty((T + 1, sys.q))
    y_ni = np.empty((T + 1, sys.q))
    y_ns = np.empty((T + 1, sys.q))
    for t in range(T + 1):
        Ct = sys.C_at(t)
        free = sys.mul(transition_matrix(sys, t, 0), _v(x0, c)).data
        forced = np.full(sys.n, sys.null)
        for k in range(t + 1):
            term = sys.mul(transition_matrix(sys, t, k), sys.mul(sys.B_at(k), _v(U[k], c)))
            forced = sys.acc(forced, term.data)
        states[t] = sys.acc(free, forced)
        y_ni[t] = sys.mul(Ct, _v(free, c)).data
        y_ns[t] = sys.acc(sys.mul(Ct, _v(forced, c)).data, sys.mul(sys.D_at(t), _v(U[t], c)).data)
        outputs[t] = sys.acc(y_ni[t], y_ns[t])
    return Trajectory(states, outputs, c, null_input=y_ni, null_state=y_ns)


def impulse_response(sys: SystemSpec, T: int):
    """Impulse response for ``t = 0..T`` of a constant-matrix system.

    ``h(0) = (C B) v D`` and ``h(t) = C A^(t) B``; for a min system the dual
    impulse response with ``minmul`` and ``min``.  Single-input
    single-output systems give a :class:`Signal`, others a ``(T+1, q, p)``
    array of impulse-response matrices.
    """
    if not sys.time_invariant:
        raise UnsupportedOperationError("impulse response needs constant matrices; use simulate")
    c = sys.clodum
    H = np.empty((T + 1, sys.q, sys.p))
    CB = sys.mul(sys.C, sys.B).data
    H[0] = sys.acc(CB, sys.D.data)
    P = sys.B
    for t in range(1, T + 1):
        P = sys.mul(sys.A, P)
        H[t] = sys.mul(sys.C, P).data
    if sys.p == 1 and sys.q == 1:
        return Signal(0, H[:, 0, 0], c, sys.mode)
    return H


def sup_convolve(f: Signal, g: Signal) -> Signal:
    """``(f (+) g)(t) = max_k f(k) mult g(t - k)``."""
    return _convolve(f, g, dual=False)


def inf_convolve(f: Signal, g: Signal) -> Signal:
    """``(f (-) g)(t) = min_k f(k) dual_mult g(t - k)``."""
    return _convolve(f, g, dual=True)


def _convolve(f, g, dual):
    if f.clodum.name != g.clodum.name:
        raise ClodumMismatchError("signals live in different cloda")
    c = f.clodum
    mode = "min" if dual else "max"
    op = c.dual_mult if dual else c.mult
    acc = np.minimum if dual else np.maximum
    null = c.top if dual else c.bottom
    out = np.full(len(f) + len(g) - 1, null)
    for i, fi in enumerate(f.samples):
        seg = slice(i, i + len(g))
        out[seg] = acc(out[seg], op(fi, g.samples))
    return Signal(f.start + g.start, out, c, mode)


# -- periodicity and stability --------------------------------------------

def seminorm(c: Clodum, a):
    """Absolute-value seminorm ``a v conj(a)``."""
    return c.join(a, c.conjugate(a))


def periodicity_start(h: np.ndarray, d: int, c: Clodum, growth: Optional[float] = None,
                      max_k0: Optional[int] = None) -> Optional[int]:
    """Smallest ``k0`` with ``h(k + d) == growth mult h(k)`` for every ``k >= k0``
    inside the sampled window, or None.

    ``growth`` defaults to the unit.  At least ``d`` verified pairs are
    required, so ``k0 <= len(h) - 2 d``.
    """
    h = np.asarray(h, dtype=float)
    g = c.unit if growth is None else growth
    N = len(h)
    if d < 1 or N < 2 * d:
        return None
    ok = np.asarray(c.isclose(h[d:], c.mult(g, h[:-d])))
    # ok[k] compares h(k + d) with g h(k); find the start of the trailing run
    bad = np.flatnonzero(~ok)
    k0 = 0 if len(bad) == 0 else int(bad[-1]) + 1
    limit = N - 2 * d if max_k0 is None else min(max_k0, N - 2 * d)
    return k0 if k0 <= limit else None


def detect_period(h, c: Clodum, max_period: int, growth_per_step: Optional[float] = None,
                  max_k0: Optional[int] = None):
    """Smallest ``(d, k0)`` with ``d <= max_period`` such that ``h`` is
    eventually periodic with period ``d`` (up to ``lam^d`` when
    ``growth_per_step`` is ``lam``)."""
    for d in range(1, max_period + 1):
        g = None if growth_per_step is None else c.power(growth_per_step, d)
        k0 = periodicity_start(h, d, c, g, max_k0)
        if k0 is not None:
            return d, k0
    return None


def diverges(values, block: int) -> bool:
    """Heuristic divergence witness: the block maxima of the second half of
    ``values`` increase strictly and without bound inside the window."""
    v = np.asarray(values, dtype=float)
    tail = v[len(v) // 2:]
    nblocks = len(tail) // block
    if nblocks < 3:
        return False
    maxima = [tail[i * block:(i + 1) * block].max() for i in range(nblocks)]
    if np.isinf(maxima[-1]) and maxima[-1] > 0:
        return True
    return all(b > a for a, b in zip(maxima, maxima[1:]))


@dataclass(frozen=True)
class StabilityReport:
    causal: bool
    bibo_upper: Optional[bool]
    bibo_lower: Optional[bool]
    absolutely_stable: Optional[bool]
    lam: float
    horizon: int
    m_h: float
    diverges: bool
    period: Optional[int] = None
    period_start: Optional[int] = None
    minimal_period: Optional[int] = None
    theorem_hypotheses: bool = False


def _has(sys, value):
    return any(np.any(sys._at(k, 1).data == value) for k in "ABCD")


def check_causal_stable(sys_or_h, horizon: Optional[int] = None,
                        start_time: Optional[int] = None) -> StabilityReport:
    """Causality and stability of a constant-matrix system or of an explicit
    impulse response.

    For a system, ``lam`` is the principal eigenvalue of ``A`` (the dual one
    for a min system).  Upper stability is inferred from ``lam <= unit``
    when no matrix holds the greatest element; otherwise it is judged from
    the impulse response sampled over ``horizon`` steps.  Absolute stability
    is decided by ``lam == unit`` only when ``A`` is irreducible over a clog,
    has a non-null diagonal entry and a unique critical cycle; otherwise it
    is left as None.  ``diverges`` is a finite-horizon witness, not a proof.
    """
    if isinstance(sys_or_h, Signal):
        return _stability_from_signal(sys_or_h)
    sys = sys_or_h
    if not sys.time_invariant:
        raise UnsupportedOperationError("stability analysis needs constant matrices")
    c = sys.clodum
    n = sys.n
    H = max(4 * n * n, 200) if horizon is None else horizon
    h = impulse_response(sys, H)
    if not isinstance(h, Signal):
        raise UnsupportedOperationError("stability analysis is single-input single-output")
    A = sys.A
    dual = sys.dual
    if dual:
        lam, cyc = spectral.dual_cycle_mean(A, return_cycle=True)
        unit = c.dual_unit
    else:
        lam, cyc = spectral.cycle_mean_eigenvalue(A)
        unit = c.unit
    samples = h.samples
    on_support = samples != h.null
    mu = np.asarray(seminorm(c, samples[on_support])) if c.self_conjugate else samples[on_support]
    m_h = float(mu.max()) if mu.size else c.bottom
    div = diverges(mu, max(n, 1)) if mu.size else False

    crit = spectral.critical_cycles(A, dual=dual) if n <= spectral.ENUMERATION_LIMIT else []
    diag_ok = bool(np.any(np.diag(A.data) != (c.top if dual else c.bottom)))
    finite_lam = lam not in (c.bottom, c.top)
    no_sentinel = not _has(sys, c.bottom if dual else c.top)
    hyp = (c.is_clog and spectral.is_irreducible(A, dual=dual) and diag_ok
           and len(crit) == 1 and finite_lam and no_sentinel)

    period = start = None
    if cyc:
        d = len(cyc)
        growth = c.dual_power(lam, d) if dual else c.power(lam, d)
        vals = samples
        if dual:
            start = _dual_periodicity_start(vals, d, c, growth, n * n)
        else:
            start = periodicity_start(vals, d, c, growth, max_k0=n * n)
        period = d if start is not None else None
    found = detect_period(samples, c, n, None, max_k0=n * n) if not dual else None
    minimal = found[0] if found else None

    if dual:
        lower = bool(no_sentinel and c.leq(unit, lam)) or (not div and samples.min() > c.bottom)
        upper = None
    else:
        bounded = bool(np.all(samples < c.top))
        if no_sentinel and c.leq(lam, unit):
            upper = True
        elif not bounded:
            upper = False
        else:
            # h is sampled over a finite window: unbounded growth is judged by
            # the upward divergence of h itself
            upper = not diverges(samples[on_support], max(n, 1)) if on_support.any() else True
        lower = None
    absolute = bool(c.isclose(lam, unit)) if hyp else None
    return StabilityReport(
        causal=True, bibo_upper=upper, bibo_lower=lower, absolutely_stable=absolute,
        lam=float(lam), horizon=H, m_h=m_h, diverges=div, period=period,
        period_start=start, minimal_period=minimal, theorem_hypotheses=hyp,
    )


def _dual_periodicity_start(h, d, c, growth, max_k0):
    h = np.asarray(h, dtype=float)
    N = len(h)
    if N < 2 * d:
        return None
    ok = np.asarray(c.isclose(h[d:], c.dual_mult(growth, h[:-d])))
    bad = np.flatnonzero(~ok)
    k0 = 0 if len(bad) == 0 else int(bad[-1]) + 1
    return k0 if k0 <= min(max_k0, N - 2 * d) else None


def _stability_from_signal(h: Signal) -> StabilityReport:
    c = h.clodum
    causal = h.start >= 0 or all(h(t) == h.null for t in range(h.start, 0))
    samples = h.samples
    on_support = samples != h.null
    mu = np.asarray(seminorm(c, samples[on_support])) if c.self_conjugate else samples[on_support]
    m_h = float(mu.max()) if mu.size else c.bottom
    if h.mode == "max":
        upper, lower = bool(np.all(samples < c.top)), None
    else:
        upper, lower = None, bool(np.all(samples > c.bottom))
    return StabilityReport(
        causal=bool(causal), bibo_upper=upper, bibo_lower=lower, absolutely_stable=None,
        lam=float("nan"), horizon=len(samples), m_h=m_h, diverges=False,
    )
