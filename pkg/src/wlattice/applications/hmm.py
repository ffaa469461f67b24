"""Viterbi decoding and controlled saliency dynamics as max-mult systems.

With transition probabilities ``a_ij`` (from ``i`` to ``j``), initial
probabilities ``pi_i`` and observation likelihoods ``p_i(t)``, the Viterbi
scores evolve as::

    x_i(0) = pi_i * p_i(0)
    x_i(t) = (max_j a_ji * x_j(t-1)) * p_i(t)

which is a time-varying max-product system with ``A(t) = [a_ji p_i(t)]``,
``C = [1, ..., 1]`` and no input.  The saliency model adds control inputs
``max_j b_ij * u_j(t)``.  ``*`` is the ``mult`` of the chosen clodum: the
product t-norm by default, ``min`` for the max-min clodum, or ``+`` on log
probabilities under max-plus.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..clodum import Clodum, make_clodum
from ..errors import CarrierError, DimensionError
from ..linalg import WMatrix, WVector
from ..systems import SystemSpec, Trajectory


@dataclass(frozen=True, eq=False)
class HmmSpec:
    trans: np.ndarray          # (n, n), trans[i, j] = a_ij
    initial: np.ndarray        # (n,)
    likelihoods: np.ndarray    # (T+1, n), likelihoods[t, i] = p_i(t)
    control: Optional[np.ndarray] = None   # (n, p), control[i, j] = b_ij
    inputs: Optional[np.ndarray] = None    # (T+1, p), inputs[t, j] = u_j(t)
    clodum: Clodum = None

    def __post_init__(self):
        c = self.clodum or make_clodum("product-tnorm")
        if isinstance(c, str):
            c = make_clodum(c)
        object.__setattr__(self, "clodum", c)
        for name in ("trans", "initial", "likelihoods", "control", "inputs"):
            v = getattr(self, name)
            if v is not None:
                v = np.array(v, dtype=float)
                try:
                    c.validate(v)
                except CarrierError as exc:
                    raise CarrierError(f"{name}: {exc}") from None
                v.setflags(write=False)
                object.__setattr__(self, name, v)
        n = self.trans.shape[0]
        if self.trans.shape != (n, n) or self.initial.shape != (n,):
            raise DimensionError("trans must be n x n and initial of length n")
        if self.likelihoods.ndim != 2 or self.likelihoods.shape[1] != n:
            raise DimensionError("likelihoods must be a (T+1) x n table")
        if (self.control is None) != (self.inputs is None):
            raise DimensionError("control matrix and input signals go together")
        if self.control is not None:
            p = self.control.shape[1]
            if self.control.shape[0] != n or self.inputs.shape != (self.likelihoods.shape[0], p):
                raise DimensionError("control must be n x p and inputs (T+1) x p")

    @property
    def n(self) -> int:
        return self.trans.shape[0]

    @property
    def horizon(self) -> int:
        return self.likelihoods.shape[0] - 1

    def transition_at(self, t: int) -> WMatrix:
        """``A(t)[i, j] = a_ji * p_i(t)``."""
        c = self.clodum
        return WMatrix(c.mult(self.trans.T, self.likelihoods[t][:, None]), c, validate=False)


@dataclass(frozen=True, eq=False)
class ViterbiResult:
    score: float
    path: tuple
    trajectory: Trajectory


def viterbi(h: HmmSpec, T: Optional[int] = None) -> ViterbiResult:
    """Best state sequence and its score; ties go to the smallest state index."""
    c = h.clodum
    T = h.horizon if T is None else T
    if T > h.horizon:
        raise DimensionError(f"likelihoods cover t = 0..{h.horizon}, asked for {T}")
    n = h.n
    x = np.empty((T + 1, n))
    back = np.zeros((T + 1, n), dtype=int)
    x[0] = c.mult(h.initial, h.likelihoods[0])
    for t in range(1, T + 1):
        # scores[i, j] = a_ji * x_j(t-1)
        scores = np.asarray(c.mult(h.trans.T, x[t - 1][None, :]))
        back[t] = np.argmax(scores, axis=1)
        best = scores[np.arange(n), back[t]]
        x[t] = c.mult(best, h.likelihoods[t])
    last = int(np.argmax(x[T]))
    path = [last]
    for t in range(T, 0, -1):
        path.append(int(back[t, path[-1]]))
    outputs = x.max(axis=1, keepdims=True)
    traj = Trajectory(x, outputs, c)
    return ViterbiResult(float(x[T, last]), tuple(path[::-1]), traj)


def viterbi_system(h: HmmSpec) -> tuple:
    """``(SystemSpec, x0)`` whose null-input output at ``T`` is the Viterbi score."""
    c = h.clodum
    n = h.n
    B = WMatrix(np.full((n, 1), c.bottom), c, validate=False)
    C = WMatrix(np.full((1, n), c.unit), c, validate=False)
    D = WMatrix(np.full((1, 1), c.bottom), c, validate=False)
    x0 = WVector(c.mult(h.initial, h.likelihoods[0]), c, validate=False)
    return SystemSpec(h.transition_at, B, C, D, c), x0


def _inputs_at(h: HmmSpec, t: int):
    if h.control is None:
        return None
    return h.inputs[t]


def controlled_saliency_step(h: HmmSpec, x_prev, t: int) -> WVector:
    """One step ``x_i(t) = (max_j a_ji x_j(t-1)) * p_i(t)  v  max_j b_ij u_j(t)``."""
    c = h.clodum
    if (c.bottom, c.top) != (0.0, 1.0):
        raise CarrierError(f"saliency states live in [0, 1]; {c.name} is not a t-norm clodum")
    xp = x_prev.data if isinstance(x_prev, WVector) else np.asarray(x_prev, dtype=float)
    if xp.shape != (h.n,):
        raise DimensionError(f"state must have length {h.n}")
    c.validate(xp)
    x = np.asarray(c.mult(h.trans.T, xp[None, :])).max(axis=1)
    x = np.asarray(c.mult(x, h.likelihoods[t]))
    u = _inputs_at(h, t)
    if u is not None:
        x = np.maximum(x, np.asarray(c.mult(h.control, u[None, :])).max(axis=1))
    return WVector(x, c, validate=False)


def saliency_output(h: HmmSpec, x, t: int, c_weights=None, d_weights=None,
                    fusion: str = "max") -> float:
    """Weighted fusion ``max_i c_i * x_i(t)  v  max_j d_j * u_j(t)``.

    ``fusion="min"`` replaces both maxima (and the join) with minima.
    Default weights: unit on every state, nothing from the inputs.
    """
    c = h.clodum
    xv = x.data if isinstance(x, WVector) else np.asarray(x, dtype=float)
    cw = np.full(h.n, c.unit) if c_weights is None else np.asarray(c_weights, dtype=float)
    terms = list(np.asarray(c.mult(cw, xv)).ravel())
    u = _inputs_at(h, t)
    if u is not None and d_weights is not None:
        terms += list(np.asarray(c.mult(np.asarray(d_weights, dtype=float), u)).ravel())
    if fusion == "max":
        return float(max(terms))
    if fusion == "min":
        return float(min(terms))
    raise ValueError("fusion must be 'max' or 'min'")


def run_saliency(h: HmmSpec, T: Optional[int] = None, x0=None) -> Trajectory:
    """Iterate :func:`controlled_saliency_step`; outputs are the unweighted
    max over states.  ``x0`` defaults to ``pi * p(0)``."""
    c = h.clodum
    T = h.horizon if T is None else T
    x = np.asarray(c.mult(h.initial, h.likelihoods[0])) if x0 is None else np.asarray(x0, float)
    states = [x]
    for t in range(1, T + 1):
        x = controlled_saliency_step(h, x, t).data
        states.append(x)
    S = np.vstack(states)
    return Trajectory(S, S.max(axis=1, keepdims=True), c)


def saliency_system(h: HmmSpec, c_weights=None, d_weights=None) -> SystemSpec:
    """Time-varying system ``A(t) = [a_ji p_i(t)]``, ``B = [b_ij]`` and the
    fusion weights as ``C`` and ``D``."""
    c = h.clodum
    n = h.n
    p = 1 if h.control is None else h.control.shape[1]
    B = np.full((n, p), c.bottom) if h.control is None else h.control
    C = np.full((1, n), c.unit) if c_weights is None else np.asarray(c_weights, float)[None, :]
    D = np.full((1, p), c.bottom) if d_weights is None else np.asarray(d_weights, float)[None, :]
    return SystemSpec(h.transition_at, WMatrix(B, c), WMatrix(C, c), WMatrix(D, c), c)
