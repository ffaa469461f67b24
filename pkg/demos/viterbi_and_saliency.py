"""Viterbi decoding as a max-product state-space system, then the same
recursion driven by a saliency control input."""

import numpy as np

import wlattice as wl
from wlattice.applications import HmmSpec, run_saliency, viterbi, viterbi_system

rng = np.random.default_rng(3)
P = rng.dirichlet(np.ones(3), size=3)
pi = np.array([0.5, 0.3, 0.2])
L = rng.uniform(0.05, 1, (7, 3))

h = HmmSpec(P, pi, L)
res = viterbi(h)
print("best path:", list(res.path), f"score {res.score:.4g}")

sys, x0 = viterbi_system(h)
sim = wl.simulate(sys, x0, None, 6)
print("state-space final max:", float(sim.states[-1].max()))

# a control that saturates state 2 at t = 3
U = np.zeros((7, 1))
U[3] = 1.0
hc = HmmSpec(P, pi, L, control=np.array([[0.0], [0.0], [1.0]]), inputs=U)
print("saliency states at t=3:", np.round(run_saliency(hc).states[3], 3).tolist())
