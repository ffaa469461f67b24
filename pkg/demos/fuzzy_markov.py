"""Powers of a max-min fuzzy Markov chain and its stationary columns."""

from wlattice.applications import FmcSpec, fmc_analyze

A = [[1, 0.4, 0], [0.3, 1, 0.5], [0.7, 0.2, 1]]
rep = fmc_analyze(FmcSpec.from_state_matrix(A, "min"))
for t, P in enumerate(rep.powers, 1):
    print(f"A^({t}) =", P.tolist())
print(f"tau = {rep.tau}, period = {rep.period}, ergodic = {rep.ergodic}")
for v in rep.stationary:
    print("stationary:", v.tolist())
