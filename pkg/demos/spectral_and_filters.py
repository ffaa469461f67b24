"""Principal eigenvalue of a max-plus recursive filter.

The eigenvalue of the companion matrix equals max_k a_k / k.  When it is
zero the impulse response settles into a periodic pattern; when it is
positive the response grows without bound.
"""

import math

import wlattice as wl
from wlattice.applications import FilterSpec, companion_matrix, filter_to_state_space

solid = [-math.sin(math.pi * (k - 1) / 10) / 10 for k in range(1, 11)] + [0.0]
dashed = [(abs(k - 6) - 5) / 50 for k in range(1, 11)] + [0.1]

for label, a in (("solid", solid), ("dashed", dashed)):
    f = FilterSpec(a)
    lam = wl.principal_eigenvalue(companion_matrix(f))
    print(f"{label}: lambda = {lam:.6g}, max a_k/k = {max(v / (k + 1) for k, v in enumerate(a)) + 0:.6g}")
    rep = wl.check_causal_stable(filter_to_state_space(f), horizon=200)
    print(f"  period {rep.period}, from t = {rep.period_start}, BIBO upper: {rep.bibo_upper}, diverges: {rep.diverges}")
    h = wl.impulse_response(filter_to_state_space(f), 60).samples
    print("  h(50..60) =", [round(float(v), 4) for v in h[50:61]])
