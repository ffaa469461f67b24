"""Chamfer distance transform around an obstacle.

Sources are marked 0 and everything else starts at +inf.  Obstacle
cells stay at +inf, so the distances bend around the wall.
"""

import numpy as np

from wlattice.applications import GridField, distance_transform

shape = (8, 12)
wall = np.zeros(shape, dtype=bool)
wall[1:7, 6] = True
g = GridField.from_sets(shape, [(4, 1)], steps=(1.0, 1.4), obstacles=list(zip(*np.nonzero(wall))))
res = distance_transform(g)
print(f"passes used: {res.passes_used}, converged: {res.converged}")
for row in res.field:
    print(" ".join("  ##" if np.isinf(v) else f"{v:4.1f}" for v in row))
