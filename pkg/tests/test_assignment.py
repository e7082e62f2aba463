import random
from fractions import Fraction
from itertools import combinations, permutations

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import matrices, random_matrix, random_symmetric, rationals, symmetric_matrices
from troprank.assignment import (
    NotSquareError,
    batch_singular,
    enumerate_minimizing,
    hungarian,
    integer_array,
    is_sym_singular,
    is_trop_singular,
    minimizing_for,
    sym_monomial,
    tropdet,
)
from troprank.constructions import builtin
from troprank.core import NotSymmetricError, SubIndex, TropMatrix, permute, submatrix, subindices


def brute(M: TropMatrix):
    """Independent oracle: every permutation, plain sums."""
    n = M.rows
    totals = {p: sum(M.entries[i][p[i]] for i in range(n)) for p in permutations(range(n))}
    best = min(totals.values())
    return best, [tuple(j + 1 for j in p) for p, t in sorted(totals.items()) if t == best]


def test_one_by_one():
    assert tropdet(TropMatrix.from_rows([["7/2"]])) == (Fraction(7, 2), (1,))


def test_diag_ones_value():
    assert tropdet(builtin("diag_ones3"))[0] == 0


def test_shitov6_against_full_scan():
    A = builtin("shitov6")
    value, wits = brute(A)
    res = enumerate_minimizing(A)
    assert res.value == value
    assert list(res.witnesses) == wits


def test_witness_examples():
    assert enumerate_minimizing(builtin("q3")).witnesses == ((1, 2, 3), (2, 1, 3))
    assert len(enumerate_minimizing(builtin("r3")).witnesses) == 3
    assert len(enumerate_minimizing(TropMatrix.zeros(3)).witnesses) == 6


def test_singularity_examples():
    assert is_trop_singular(builtin("diag_ones3"))
    assert not is_trop_singular(TropMatrix.from_rows([[0, 1], [1, 0]]))
    A = builtin("shitov6")
    assert all(is_trop_singular(submatrix(A, s)) for s in subindices(6, 6, 5))


def test_sym_singularity_examples():
    D = builtin("diag_ones3")
    assert not is_sym_singular(D, D.full_index())
    assert enumerate_minimizing(D).sym_witnesses == (((1, 2), (1, 3), (2, 3)),)
    Z = TropMatrix.zeros(2, symmetric=True)
    assert is_sym_singular(Z, Z.full_index())
    F = builtin("fano7_sym")
    s = SubIndex((2, 3, 4, 5), (2, 3, 4, 5))
    assert is_trop_singular(submatrix(F, s)) and is_sym_singular(F, s)
    with pytest.raises(NotSymmetricError):
        is_sym_singular(builtin("fano7"), s)


def test_non_square_rejected():
    with pytest.raises(NotSquareError):
        tropdet(TropMatrix.zeros(2, 3))
    with pytest.raises(NotSquareError):
        is_trop_singular(TropMatrix.zeros(3, 2))


@given(matrices(max_rows=6, square=True, elements=st.integers(0, 3)))
def test_oracle_equivalence(M):
    value, wits = brute(M)
    tight = enumerate_minimizing(M, cap=None)
    scan = enumerate_minimizing(M, cap=None, method="scan")
    assert tight.value == scan.value == value
    assert list(tight.witnesses) == list(scan.witnesses) == wits
    assert is_trop_singular(M) == (len(wits) >= 2)


def test_oracle_equivalence_random_suite():
    rng = random.Random(11)
    for _ in range(300):
        n = rng.randint(1, 6)
        M = random_matrix(rng, n, n)
        value, wits = brute(M)
        res = enumerate_minimizing(M, cap=None)
        assert (res.value, list(res.witnesses)) == (value, wits)


@given(matrices(max_rows=6, square=True, elements=rationals))
def test_complementary_slackness(M):
    cost = [list(r) for r in M.entries]
    value, assign, u, v = hungarian(cost)
    n = M.rows
    assert all(u[i] + v[j] <= cost[i][j] for i in range(n) for j in range(n))
    assert sum(u) + sum(v) == value
    for w in enumerate_minimizing(M, cap=None).witnesses:
        assert all(cost[i][w[i] - 1] == u[i] + v[w[i] - 1] for i in range(n))


@given(matrices(max_rows=5, square=True), st.data())
def test_permutation_invariance(M, data):
    n = M.rows
    rp = data.draw(st.permutations(range(1, n + 1)))
    cp = data.draw(st.permutations(range(1, n + 1)))
    P = permute(M, rp, cp)
    base = enumerate_minimizing(M, cap=None)
    moved = enumerate_minimizing(P, cap=None)
    assert moved.value == base.value
    # new row k is old row rp[k-1]; new column l is old column cp[l-1]
    conj = sorted(tuple(cp.index(w[rp[k] - 1]) + 1 for k in range(n)) for w in base.witnesses)
    assert list(moved.witnesses) == conj


@given(symmetric_matrices(max_size=5), st.data())
def test_quotient_soundness(S, data):
    r = data.draw(st.integers(1, S.rows))
    rows = tuple(sorted(data.draw(st.sets(st.integers(1, S.rows), min_size=r, max_size=r))))
    cols = tuple(sorted(data.draw(st.sets(st.integers(1, S.rows), min_size=r, max_size=r))))
    s = SubIndex(rows, cols)
    if is_sym_singular(S, s):
        assert is_trop_singular(submatrix(S, s))
    res = minimizing_for(S, s, cap=None)
    expected = sorted({sym_monomial(w, s) for w in brute(submatrix(S, s))[1]})
    assert list(res.sym_witnesses) == expected
    assert is_sym_singular(S, s) == (len(expected) >= 2)


def test_quotient_converse_fails():
    D = builtin("diag_ones3")
    assert is_trop_singular(D) and not is_sym_singular(D, D.full_index())


def test_cap_truncation():
    Z = TropMatrix.zeros(4)
    res = enumerate_minimizing(Z, cap=5)
    assert res.truncated and len(res.witnesses) == 5
    full = enumerate_minimizing(Z, cap=None)
    assert not full.truncated and len(full.witnesses) == 24
    assert res.witnesses == full.witnesses[:5]
    assert not enumerate_minimizing(Z, cap=24).truncated
    scan = enumerate_minimizing(Z, cap=5, method="scan")
    assert scan.truncated and scan.witnesses == res.witnesses
    with pytest.raises(ValueError):
        enumerate_minimizing(Z, cap=1)


def test_witnesses_lexicographic():
    for name in ("q3", "r3", "diag_ones3", "shitov6"):
        w = enumerate_minimizing(builtin(name)).witnesses
        assert list(w) == sorted(w)


@pytest.mark.parametrize("symmetric", [False, True])
def test_batch_kernel_matches_single_checks(symmetric):
    rng = random.Random(5 + symmetric)
    for _ in range(40):
        n = rng.randint(2, 6)
        A = random_symmetric(rng, n) if symmetric else random_matrix(rng, n, rng.randint(2, 6))
        ints = integer_array(A)
        for r in range(1, min(A.shape) + 1):
            colsets = np.array(list(combinations(range(A.cols), r)), dtype=np.intp)
            for rows in combinations(range(A.rows), r):
                got = batch_singular(ints, rows, colsets, symmetric)
                for k, cs in enumerate(colsets):
                    s = SubIndex(tuple(i + 1 for i in rows), tuple(int(j) + 1 for j in cs))
                    want = is_sym_singular(A, s) if symmetric else is_trop_singular(submatrix(A, s))
                    assert got[k] == want, (A, s)


def test_batch_kernel_fractional_entries():
    A = TropMatrix.from_rows([["1/2", "1/3"], ["1/3", "1/6"]])
    ints = integer_array(A)
    # 1/2 + 1/6 == 1/3 + 1/3
    assert batch_singular(ints, (0, 1), np.array([[0, 1]]))[0]
