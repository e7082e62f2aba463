"""Registry of checkable claims and the randomized construction suite behind ``verify-paper``."""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable

from . import theory
from .assignment import enumerate_minimizing, is_trop_singular, sym_monomial, tropdet
from .cells import cell_dimension, minor_equations, cell_from_system
from .constructions import (
    SingularInput,
    append_combination_col,
    append_combination_row,
    border_PM,
    builtin,
    check_separating,
    fano7_sym_from_fano7,
    fano13_from_blocks,
    lemma1_coefficients,
    shitov6_sym_from_shitov6,
    sym_append,
    sym_border_PM,
)
from .core import SubIndex, TropMatrix, submatrix
from .rank import (
    STANDARD,
    SYMMETRIC,
    in_prevariety,
    rank_oracle,
    symmetric_tropical_rank,
    tropical_rank,
)
from .tropoly import in_hypersurface, membership_via_minors, parse_poly

PAPER, DERIVED, TRIVIAL = "PAPER", "DERIVED", "TRIVIAL"


@dataclass(frozen=True)
class Claim:
    claim_id: str
    description: str
    tag: str
    expected: Any
    compute: Callable[[], Any]


@dataclass(frozen=True)
class ClaimReport:
    claim_id: str
    description: str
    tag: str
    expected: Any
    computed: Any
    passed: bool
    elapsed: float

    def to_json(self, timings: bool = False) -> dict:
        out = {
            "id": self.claim_id,
            "description": self.description,
            "tag": self.tag,
            "expected": self.expected,
            "computed": self.computed,
            "pass": self.passed,
        }
        if timings:
            out["elapsed_s"] = round(self.elapsed, 3)
        return out

    def to_text(self, timings: bool = False) -> str:
        mark = "PASS" if self.passed else "FAIL"
        t = f" ({self.elapsed:.2f}s)" if timings else ""
        return f"{mark} {self.claim_id:<22} [{self.tag}] {self.description}: expected {self.expected!r}, computed {self.computed!r}{t}"


def run_claim(claim: Claim) -> ClaimReport:
    start = time.perf_counter()
    computed = claim.compute()
    elapsed = time.perf_counter() - start
    return ClaimReport(claim.claim_id, claim.description, claim.tag, claim.expected, computed, computed == claim.expected, elapsed)


# --- randomized construction suite ---------------------------------------------


def _random_matrix(rng: random.Random, m: int, n: int) -> TropMatrix:
    return TropMatrix.from_rows([[rng.randint(0, 4) for _ in range(n)] for _ in range(m)])


def _random_symmetric(rng: random.Random, n: int) -> TropMatrix:
    a = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            a[i][j] = a[j][i] = rng.randint(0, 4)
    return TropMatrix.from_rows(a, symmetric=True)


def _random_coeffs(rng: random.Random, n: int) -> dict[int, Fraction]:
    keys = rng.sample(range(1, n + 1), rng.randint(1, n))
    return {k: Fraction(rng.randint(-6, 6), rng.choice((1, 2))) for k in keys}


SUITE_CHECKS = (
    "separating_coefficients_feasible",
    "append_col_keeps_rank",
    "append_row_keeps_rank",
    "border_raises_rank",
    "sym_append_keeps_rank",
    "sym_border_raises_rank",
    "rank_equals_oracle",
    "sym_rank_equals_oracle",
    "rank_le_sym_rank",
    "minors_match_prevariety",
)


def property_suite(count: int = 500, seed: int = 20240601, max_size: int = 5) -> dict[str, int]:
    """Failures per check over ``count`` random matrices and ``count`` symmetric ones (entries in 0..4)."""
    rng = random.Random(seed)
    failures = dict.fromkeys(SUITE_CHECKS, 0)
    for _ in range(count):
        m, n = rng.randint(1, max_size), rng.randint(1, max_size)
        A = _random_matrix(rng, m, n)
        r = rank_oracle(A)
        failures["rank_equals_oracle"] += tropical_rank(A).rank != r
        failures["append_col_keeps_rank"] += rank_oracle(append_combination_col(A, _random_coeffs(rng, n))) != r
        failures["append_row_keeps_rank"] += rank_oracle(append_combination_row(A, _random_coeffs(rng, m))) != r
        failures["border_raises_rank"] += rank_oracle(border_PM(A)) != r + 1
        for k in range(1, min(m, n) + 1):
            failures["minors_match_prevariety"] += membership_via_minors(A, k) != in_prevariety(A, k)

        sq = _random_matrix(rng, m, m)
        _, sigma = tropdet(sq)
        try:
            coeffs = lemma1_coefficients(sq, sigma)
            ok = not is_trop_singular(sq) and check_separating(sq, sigma, coeffs)
        except SingularInput:
            ok = is_trop_singular(sq)
        failures["separating_coefficients_feasible"] += not ok

        S = _random_symmetric(rng, rng.randint(1, max_size))
        sr = rank_oracle(S, SYMMETRIC)
        failures["sym_rank_equals_oracle"] += symmetric_tropical_rank(S).rank != sr
        failures["rank_le_sym_rank"] += not tropical_rank(S).rank <= sr
        failures["sym_append_keeps_rank"] += rank_oracle(sym_append(S, _random_coeffs(rng, S.rows)), SYMMETRIC) != sr
        failures["sym_border_raises_rank"] += rank_oracle(sym_border_PM(S), SYMMETRIC) != sr + 1
        for k in range(1, S.rows + 1):
            failures["minors_match_prevariety"] += membership_via_minors(S, k, SYMMETRIC) != in_prevariety(S, k, SYMMETRIC)
    return failures


# --- claims ---------------------------------------------------------------


def _gap_sweep_standard(limit: int = 12) -> int:
    bad = 0
    for m in range(1, limit + 1):
        for n in range(1, limit + 1):
            for r in range(1, min(m, n) + 1):
                if theory.is_basis_standard(m, n, r).value is theory.Verdict.NO:
                    bad += not theory.prevariety_lower_bound_standard(m, n, r).strict
    return bad


def _gap_sweep_symmetric(limit: int = 12) -> int:
    bad = 0
    for n in range(1, limit + 1):
        for r in range(5, n):
            bad += not theory.prevariety_lower_bound_symmetric(n, r).strict
    return bad


def _lines_joint(a: Fraction) -> bool:
    f = parse_poly("X (+) Y (+) 0")
    g = parse_poly("1*X (+) 1*Y (+) 0")
    pt = {"X": a, "Y": a}
    return in_hypersurface(f, pt) and in_hypersurface(g, pt)


def _sym_monomials_diag_ones() -> list[str]:
    res = enumerate_minimizing(builtin("diag_ones3"))
    return ["*".join(f"X{i}{j}" for i, j in mono) for mono in res.sym_witnesses]


def _rank_of(name: str, mode: str = STANDARD) -> int:
    A = builtin(name)
    return (symmetric_tropical_rank(A) if mode == SYMMETRIC else tropical_rank(A)).rank


def _cell(name: str, r: int, mode: str) -> int:
    return cell_dimension(builtin(name), r, mode).dimension


def _suite_total() -> int:
    return sum(property_suite().values())


CLAIMS: tuple[Claim, ...] = (
    Claim("c01-fano7-rank", "tropical rank of the Fano cocircuit matrix", PAPER, 3, lambda: _rank_of("fano7")),
    Claim("c02-fano7_sym-rank", "standard tropical rank of symmetric Fano", PAPER, 3, lambda: _rank_of("fano7_sym")),
    Claim("c02-fano7_sym-symrank", "symmetric tropical rank of symmetric Fano", PAPER, 4, lambda: _rank_of("fano7_sym", SYMMETRIC)),
    Claim("c03-fano13_sym-symrank", "symmetric tropical rank of the 13x13 block matrix", PAPER, 3, lambda: _rank_of("fano13_sym", SYMMETRIC)),
    Claim("c04-shitov6-rank", "tropical rank of the 6x6 counterexample", PAPER, 4, lambda: _rank_of("shitov6")),
    Claim("c04-shitov6_sym-symrank", "symmetric tropical rank of symmetric 6x6 counterexample", PAPER, 4, lambda: _rank_of("shitov6_sym", SYMMETRIC)),
    Claim("c05-celldim-6x6-r5", "cell dimension, shitov6_sym_v2, 5x5 minors, ambient 36", PAPER, 33, lambda: _cell("shitov6_sym_v2", 5, STANDARD)),
    Claim("c06-celldim-fano-r4", "cell dimension, fano7_sym, 4x4 minors, ambient 49", PAPER, 34, lambda: _cell("fano7_sym", 4, STANDARD)),
    Claim("c07-celldim-6x6-sym-r5", "symmetric cell dimension, shitov6_sym_v2, 5x5 minors, ambient 21", PAPER, 19, lambda: _cell("shitov6_sym_v2", 5, SYMMETRIC)),
    Claim("c08-vardim-6-6-5", "dim of 6x6 matrices of rank < 5", PAPER, 32, lambda: theory.variety_dim_standard(6, 6, 5)),
    Claim("c08-vardim-7-7-4", "dim of 7x7 matrices of rank < 4", PAPER, 33, lambda: theory.variety_dim_standard(7, 7, 4)),
    Claim("c08-vardim-sym-6-5", "dim of 6x6 symmetric matrices of rank < 5", PAPER, 18, lambda: theory.variety_dim_symmetric(6, 5)),
    Claim("c09-gap-sweep-standard", "non-strict gaps over m,n <= 12 in the non-basis regime", PAPER, 0, _gap_sweep_standard),
    Claim("c09-gap-sweep-symmetric", "non-strict gaps over n <= 12, 4 < r < n", PAPER, 0, _gap_sweep_symmetric),
    Claim("c10-Q-equations", "canonical equations from Q", PAPER, 1, lambda: len(minor_equations(builtin("q3"), 3).equations)),
    Claim("c10-R-equations", "independent equations from R", PAPER, 2, lambda: cell_from_system(minor_equations(builtin("r3"), 3)).system_rank),
    Claim("c11-property-suite", "failures in the randomized construction suite (500 + 500 matrices)", DERIVED, 0, _suite_total),
    Claim("c12-line-in", "X (+) Y (+) 0 contains (1,0)", PAPER, True, lambda: in_hypersurface(parse_poly("X (+) Y (+) 0"), {"X": 1, "Y": 0})),
    Claim("c12-line-out", "X (+) Y (+) 0 contains (-1,0)", PAPER, False, lambda: in_hypersurface(parse_poly("X (+) Y (+) 0"), {"X": -1, "Y": 0})),
    Claim(
        "c12-two-lines",
        "(a,a) on both tropical lines for a in -3, -1, -1/2, 0",
        PAPER,
        [True, True, False, False],
        lambda: [_lines_joint(Fraction(a)) for a in ("-3", "-1", "-1/2", "0")],
    ),
    Claim(
        "c13-zeros-celldim",
        "cell dimension of all-zeros 2x2, 3x3, 3x4 at r=2",
        TRIVIAL,
        [3, 5, 6],
        lambda: [cell_dimension(TropMatrix.zeros(m, n), 2).dimension for m, n in ((2, 2), (3, 3), (3, 4))],
    ),
    Claim("x01-fano7_sym-permutation", "fano7 rows permuted by (27)(36)(45) equal fano7_sym", PAPER, True, lambda: fano7_sym_from_fano7().entries == builtin("fano7_sym").entries),
    Claim("x02-shitov6_sym-permutation", "shitov6 rearranged by (16)(25)(34) and (135)(246) equals shitov6_sym", PAPER, True, lambda: shitov6_sym_from_shitov6().entries == builtin("shitov6_sym").entries),
    Claim("x03-fano13-blocks", "13x13 matrix equals its block assembly from fano7_sym", PAPER, True, lambda: fano13_from_blocks().entries == builtin("fano13_sym").entries),
    Claim("x04-diag-ones-singular", "diag-ones 3x3 is tropically singular", PAPER, True, lambda: is_trop_singular(builtin("diag_ones3"))),
    Claim("x04-diag-ones-monomial", "unique minimizing symmetric monomial of diag-ones 3x3", PAPER, ["X12*X13*X23"], _sym_monomials_diag_ones),
    Claim(
        "x05-fano-principal-2345",
        "principal {2,3,4,5} submatrix of fano7_sym is tropically singular",
        PAPER,
        True,
        lambda: is_trop_singular(submatrix(builtin("fano7_sym"), SubIndex((2, 3, 4, 5), (2, 3, 4, 5)))),
    ),
    Claim(
        "x06-nonsingular-4x4-witness",
        "shitov6_sym_v2 has a tropically nonsingular 4x4 submatrix",
        DERIVED,
        True,
        lambda: theory.find_nonsingular_submatrix(builtin("shitov6_sym_v2"), 4) is not None,
    ),
    Claim("x07-gap-6-6-5", "prevariety bound vs variety dim at (6,6,5)", PAPER, [33, 32], lambda: _bound(6, 6, 5)),
    Claim("x07-gap-7-7-4", "prevariety bound vs variety dim at (7,7,4)", PAPER, [34, 33], lambda: _bound(7, 7, 4)),
    Claim("x08-gap-sym-7-5", "symmetric bound vs variety dim at (7,5)", DERIVED, [23, 22], lambda: _sbound(7, 5)),
    Claim("x09-symmetric-minor-3x3", "monomials in the symmetric 3x3 determinant", PAPER, 5, lambda: _sym_minor_len()),
)


def _bound(m: int, n: int, r: int) -> list[int]:
    rep = theory.prevariety_lower_bound_standard(m, n, r)
    return [rep.prevariety_lower_bound, rep.variety_dim]


def _sbound(n: int, r: int) -> list[int]:
    rep = theory.prevariety_lower_bound_symmetric(n, r)
    return [rep.prevariety_lower_bound, rep.variety_dim]


def _sym_minor_len() -> int:
    from .tropoly import generate_minors

    return len(next(generate_minors(3, 3, 3, SYMMETRIC))[1])


def select(ids: list[str] | None) -> list[Claim]:
    """Claims whose id equals or starts with one of ``ids`` (all when empty)."""
    if not ids:
        return list(CLAIMS)
    chosen = [c for c in CLAIMS if any(c.claim_id == i or c.claim_id.startswith(i) for i in ids)]
    unknown = [i for i in ids if not any(c.claim_id == i or c.claim_id.startswith(i) for c in CLAIMS)]
    if unknown:
        raise KeyError(f"unknown claim ids: {', '.join(unknown)}")
    return chosen


def notes() -> list[str]:
    """Context printed alongside the claims: values for the other 6x6 symmetric variant."""
    alt = builtin("shitov6_sym")
    std = cell_dimension(alt, 5, STANDARD).dimension
    sym = cell_dimension(alt, 5, SYMMETRIC).dimension
    return [
        "two 6x6 symmetric variants exist (entry (1,5) = 1 or 2); the cell claims use shitov6_sym_v2",
        f"shitov6_sym (entry (1,5) = 1): standard cell dimension {std}, symmetric cell dimension {sym}",
    ]
