import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import wlattice as wl
from wlattice.errors import DimensionError, UnsupportedOperationError
from wlattice.spectral import ENUMERATION_LIMIT, _trace_formula

from conftest import INF, NINF, arrays

mp = wl.make_clodum("max-plus")
mm = wl.make_clodum("max-min")


def brute_cycle_mean(A):
    """Max mean over all elementary cycles by permutations of node subsets."""
    n = A.shape[0]
    best = NINF
    for k in range(1, n + 1):
        for nodes in itertools.permutations(range(n), k):
            if nodes[0] != min(nodes):
                continue
            w = sum(A[nodes[i], nodes[(i + 1) % k]] for i in range(k))
            if w > NINF:
                best = max(best, w / k)
    return best


def test_small_example():
    A = wl.matrix([[1, 5], [1, 0]], mp)
    lam, cyc = wl.cycle_mean_eigenvalue(A)
    assert lam == 3.0 and cyc == (0, 1)


def test_identity_spectrum():
    I = wl.identity(mp, 3)
    lam, cyc = wl.cycle_mean_eigenvalue(I)
    assert lam == 0.0 and cyc == (0,)
    gamma, conv = wl.metric_matrix(I)
    assert conv and gamma == I
    assert wl.critical_cycles(I) == [(0,), (1,), (2,)]


def test_acyclic_matrix_has_bottom_eigenvalue():
    A = wl.matrix([[NINF, 1], [NINF, NINF]], mp)
    lam, cyc = wl.cycle_mean_eigenvalue(A)
    assert lam == NINF and cyc == ()
    assert not wl.is_irreducible(A)


def test_elementary_cycles_order():
    A = wl.matrix(np.zeros((3, 3)), mp)
    cycles = list(wl.elementary_cycles(A))
    assert cycles[0] == (0,)
    assert len(cycles) == 3 + 3 + 2   # loops, 2-cycles, two 3-cycles
    assert (0, 1, 2) in cycles and (0, 2, 1) in cycles


def test_tie_break_smallest_tuple():
    # a loop at node 2 and the 3-cycle (0, 1, 2) both have mean 0
    A = wl.matrix([[NINF, 0, NINF], [NINF, NINF, 0], [0, NINF, 0]], mp)
    assert wl.cycle_mean_eigenvalue(A) == (0.0, (0, 1, 2))
    assert len(wl.critical_cycles(A)) == 2


def test_karp_rejects_top():
    with pytest.raises(UnsupportedOperationError):
        wl.karp_max_cycle_mean(wl.matrix([[INF]], mp))
    with pytest.raises(UnsupportedOperationError):
        wl.karp_max_cycle_mean(wl.matrix([[0.5]], mm))


def test_non_square_rejected():
    with pytest.raises(DimensionError):
        wl.cycle_mean_eigenvalue(wl.matrix([[1, 2]], mp))


def _sparse_maxplus(rng, n, density=0.5):
    A = np.round(rng.uniform(-5, 5, (n, n)), 3)
    A[rng.random((n, n)) > density] = NINF
    return A


def test_enumeration_vs_karp_and_bruteforce():
    rng = np.random.default_rng(11)
    for _ in range(120):
        n = int(rng.integers(1, 6))
        A = _sparse_maxplus(rng, n)
        W = wl.matrix(A, mp)
        lam = wl.principal_eigenvalue(W)
        assert mp.isclose(lam, wl.karp_max_cycle_mean(W))
        assert mp.isclose(lam, brute_cycle_mean(A))


def test_trace_formula_large_n():
    rng = np.random.default_rng(5)
    n = ENUMERATION_LIMIT + 3
    A = wl.matrix(_sparse_maxplus(rng, n, 0.2), mp)
    assert math.isclose(wl.principal_eigenvalue(A), wl.karp_max_cycle_mean(A), abs_tol=1e-9)


def test_trace_formula_agrees_on_other_cloda():
    rng = np.random.default_rng(6)
    for _ in range(30):
        A = wl.matrix(np.round(rng.uniform(0, 1, (4, 4)), 2), mm)
        lam, _ = wl.cycle_mean_eigenvalue(A)
        assert mm.isclose(lam, _trace_formula(A, False))


def test_dual_cycle_mean():
    # dual graph uses arcs below the top; absent arcs are +inf
    A = wl.matrix([[INF, 2], [0, 5]], mp)
    assert wl.dual_cycle_mean(A) == 1.0
    assert wl.dual_cycle_mean(A, return_cycle=True) == (1.0, (0, 1))
    # the dual eigenvalue of A is the conjugate of the principal one of A*
    B = wl.matrix([[1, -2], [3, 0.5]], mp)
    assert wl.dual_cycle_mean(B) == pytest.approx(-wl.principal_eigenvalue(wl.adjoint_matrix(B)))


def test_fmc_eigenvector():
    A = wl.matrix([[1, 0.4, 0], [0.3, 1, 0.5], [0.7, 0.2, 1]], mm)
    assert wl.eigen_check(A, wl.vector([1, 0.5, 0.7], mm), 1.0)
    gamma, conv = wl.metric_matrix(A)
    assert conv
    assert gamma.isclose(wl.matrix([[1, 0.4, 0.4], [0.5, 1, 0.5], [0.7, 0.4, 1]], mm))


def test_eigen_check_rejects_bottom_vector():
    A = wl.matrix([[0, 1], [1, 0]], mp)
    assert not wl.eigen_check(A, wl.vector([NINF, NINF], mp), 1.0)
    assert wl.dual_eigen_check(A, wl.vector([0, 0], mp), 0.0)


def test_diagonal_matrix_unit_eigenvector():
    A = wl.matrix([[2, NINF, NINF], [NINF, 5, NINF], [NINF, NINF, 1]], mp)
    lam, cyc = wl.cycle_mean_eigenvalue(A)
    assert lam == 5 and cyc == (1,)
    e = np.full(3, NINF)
    e[1] = 0
    assert wl.eigen_check(A, wl.vector(e, mp), lam)


def test_eigenvector_candidates_random():
    rng = np.random.default_rng(2)
    for _ in range(100):
        n = int(rng.integers(2, 6))
        A = wl.matrix(np.round(rng.uniform(-4, 4, (n, n)), 2), mp)
        lam, cyc = wl.cycle_mean_eigenvalue(A)
        cands = wl.eigenvector_candidates(A)
        assert set(cands) == set(cyc)
        for v in cands.values():
            assert wl.eigen_check(A, v, lam)


def test_eigenvector_candidates_need_clog():
    with pytest.raises(UnsupportedOperationError):
        wl.eigenvector_candidates(wl.matrix([[0.5]], mm))


def test_power_bound_when_lambda_nonpositive():
    rng = np.random.default_rng(8)
    done = 0
    while done < 50:
        A = wl.matrix(np.round(rng.uniform(-6, 2, (4, 4)), 2), mp)
        if wl.principal_eigenvalue(A) > 0:
            continue
        gamma, conv = wl.metric_matrix(A)
        assert conv
        P = A
        for _ in range(16):
            assert P <= gamma
            P = wl.maxmul(A, P)
        done += 1


def test_irreducible_gamma_entries_above_bottom():
    A = wl.matrix([[-1, NINF, -2], [-3, NINF, NINF], [NINF, 0, -1]], mp)
    assert wl.is_irreducible(A)
    gamma, conv = wl.metric_matrix(A)
    assert conv and np.all(gamma.data > NINF)


@settings(max_examples=200)
@given(arrays("max-plus", (3, 3), sentinels=False))
def test_metric_matrix_theorem_both_directions(A):
    # finite entries: the power join stays finite and bounds every power
    # iff lambda <= 0
    W = wl.matrix(A, mp)
    lam = wl.principal_eigenvalue(W)
    gamma, conv = wl.metric_matrix(W)
    assert conv == (lam <= 0)
    P = W
    if lam <= 0:
        for _ in range(12):
            assert P <= gamma
            P = wl.maxmul(W, P)
    else:
        # some power eventually rises above the join
        spread = float(np.max(A) - np.min(A))
        limit = 3 * (int(2 * 3 * spread / lam) + 2) * 3
        for _ in range(limit):
            if not P <= gamma:
                break
            P = wl.maxmul(W, P)
        else:
            pytest.fail("powers stayed below the join despite lambda > 0")


def test_spectral_report_fields():
    rep = wl.spectral_report(wl.matrix([[0, -1], [-1, 0]], mp))
    assert rep.lam == 0 and rep.is_irreducible and rep.metric_converged
    assert rep.critical_cycle == (0,)
