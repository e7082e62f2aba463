import pytest

from troprank.constructions import builtin
from troprank.core import SubIndex, TropMatrix
from troprank.theory import (
    NoClaim,
    Verdict,
    find_nonsingular_submatrix,
    is_basis_standard,
    is_basis_symmetric,
    prevariety_lower_bound_standard,
    prevariety_lower_bound_symmetric,
    variety_dim_standard,
    variety_dim_symmetric,
)
from troprank.assignment import is_trop_singular
from troprank.core import NotSymmetricError, submatrix


def test_variety_dims():
    assert variety_dim_standard(6, 6, 5) == 32
    assert variety_dim_standard(7, 7, 4) == 33
    assert variety_dim_standard(4, 9, 1) == 0
    assert variety_dim_symmetric(6, 5) == 18
    assert variety_dim_symmetric(7, 5) == 22
    assert variety_dim_symmetric(9, 1) == 0
    with pytest.raises(ValueError):
        variety_dim_standard(3, 3, 4)
    with pytest.raises(ValueError):
        variety_dim_symmetric(3, 0)


def test_symmetric_formula_by_hand():
    # rank < r symmetric n x n: choose an (r-1)-dim column space, then a symmetric form on it
    for n in range(1, 15):
        for r in range(1, n + 1):
            k = r - 1
            assert variety_dim_symmetric(n, r) == k * (n - k) + k * (k + 1) // 2


def test_increment_identities():
    for m in range(1, 14):
        for n in range(1, 14):
            for r in range(1, min(m, n) + 1):
                assert variety_dim_standard(m + 1, n, r) - variety_dim_standard(m, n, r) == r - 1
                assert variety_dim_standard(m, n + 1, r) - variety_dim_standard(m, n, r) == r - 1
                assert variety_dim_standard(m + 1, n + 1, r + 1) - variety_dim_standard(m, n, r) == m + n + 1
    for n in range(1, 14):
        for r in range(1, n + 1):
            assert variety_dim_symmetric(n + 1, r) - variety_dim_symmetric(n, r) == r - 1
            assert variety_dim_symmetric(n + 1, r + 1) - variety_dim_symmetric(n, r) == n + 1


@pytest.mark.parametrize(
    "args, verdict",
    [((7, 7, 4), Verdict.NO), ((100, 3, 3), Verdict.YES), ((6, 8, 4), Verdict.YES), ((5, 5, 3), Verdict.YES), ((9, 9, 6), Verdict.NO)],
)
def test_basis_standard(args, verdict):
    assert is_basis_standard(*args).value is verdict


@pytest.mark.parametrize(
    "args, verdict",
    [((13, 4), Verdict.NO), ((8, 4), Verdict.UNKNOWN), ((9, 9), Verdict.YES), ((5, 1), Verdict.YES), ((7, 5), Verdict.NO), ((4, 4), Verdict.YES)],
)
def test_basis_symmetric(args, verdict):
    assert is_basis_symmetric(*args).value is verdict


@pytest.mark.parametrize(
    "m, n, r, bound, dim",
    [(6, 6, 5, 33, 32), (7, 7, 4, 34, 33), (7, 7, 5, 41, 40), (8, 8, 6, 33 + 13 + 5 + 5, 55), (7, 9, 4, 34 + 3 + 3, 39)],
)
def test_standard_chains(m, n, r, bound, dim):
    rep = prevariety_lower_bound_standard(m, n, r)
    assert (rep.prevariety_lower_bound, rep.variety_dim) == (bound, dim)
    assert rep.strict
    assert rep.path[0].kind == "base"
    assert sum(mv.increment for mv in rep.path) == bound


@pytest.mark.parametrize("n, r, bound, dim", [(7, 5, 23, 22), (7, 6, 26, 25), (8, 5, 27, 26)])
def test_symmetric_chains(n, r, bound, dim):
    rep = prevariety_lower_bound_symmetric(n, r)
    assert (rep.prevariety_lower_bound, rep.variety_dim, rep.strict) == (bound, dim, True)


def test_chain_order_is_diagonal_then_rows_then_columns():
    kinds = [mv.kind for mv in prevariety_lower_bound_standard(9, 11, 6).path]
    assert kinds == ["base", "diagonal"] + ["add row"] * 2 + ["add column"] * 4


def test_refusals():
    with pytest.raises(NoClaim):
        prevariety_lower_bound_standard(5, 5, 3)
    with pytest.raises(NoClaim):
        prevariety_lower_bound_standard(6, 8, 4)
    with pytest.raises(NoClaim):
        prevariety_lower_bound_symmetric(6, 6)
    with pytest.raises(NoClaim):
        prevariety_lower_bound_symmetric(13, 4)


def test_gap_claimed_exactly_in_non_basis_regime():
    for m in range(1, 13):
        for n in range(1, 13):
            for r in range(1, min(m, n) + 1):
                if is_basis_standard(m, n, r).value is Verdict.NO:
                    assert prevariety_lower_bound_standard(m, n, r).strict
                else:
                    with pytest.raises(NoClaim):
                        prevariety_lower_bound_standard(m, n, r)
    for n in range(1, 13):
        for r in range(1, n + 1):
            if 4 < r < n:
                assert prevariety_lower_bound_symmetric(n, r).strict
            else:
                with pytest.raises(NoClaim):
                    prevariety_lower_bound_symmetric(n, r)


def test_report_serialization():
    rep = prevariety_lower_bound_standard(7, 7, 5)
    js = rep.to_json()
    assert js["params"] == {"m": 7, "n": 7, "r": 5} and js["strict"]
    assert "40 < 41" in rep.to_text()
    assert prevariety_lower_bound_symmetric(7, 5).to_json()["kind"] == "symmetric"


def test_find_nonsingular_submatrix():
    A = builtin("shitov6_sym_v2")
    s = find_nonsingular_submatrix(A, 4)
    assert s is not None and not is_trop_singular(submatrix(A, s))
    assert find_nonsingular_submatrix(TropMatrix.zeros(4, symmetric=True), 2) is None
    assert find_nonsingular_submatrix(builtin("diag_ones3"), 2) == SubIndex((1, 2), (1, 2))
    with pytest.raises(NotSymmetricError):
        find_nonsingular_submatrix(builtin("fano7"), 2)
