"""Greatest subsolutions of max-plus and max-min linear systems.

The same matrix is used in both algebras.  Over max-plus the right-hand
side is reachable and the greatest subsolution solves the system exactly.
Over max-min it is not reachable, and x_hat is the largest vector whose
image stays below b.
"""

import wlattice as wl

M = [[1, 0.4, 0], [0.3, 1, 0.5], [0.7, 0.2, 1]]
b = [0.8, 0.4, 0.9]

for name in ("max-plus", "max-min"):
    A = wl.matrix(M, name)
    rep = wl.solve_max(A, wl.vector(b, name))
    print(f"{name:9s} x_hat = {[round(v, 6) for v in rep.solution.tolist()]}")
    print(f"{'':9s} A x_hat = {rep.achieved.tolist()}  exact: {rep.exact}")

# least supersolution, the dual problem
A = wl.matrix(M, "max-plus")
rep = wl.solve_min(A, wl.vector(b, "max-plus"))
print("max-plus least supersolution:", [round(v, 6) for v in rep.solution.tolist()])
