"""Tropical rank, symmetric tropical rank and determinantal prevariety membership.

The rank of ``A`` is the largest ``r`` for which some ``r x r`` submatrix is
nonsingular.  Nonsingularity is monotone under taking submatrices (expanding
a nonsingular matrix along its unique optimal permutation leaves nonsingular
minors), so the search ascends ``r`` and stops at the first size whose
submatrices are all singular.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations
from typing import Iterable, Iterator

import numpy as np

from .assignment import BATCH_MAX_SIZE, batch_singular, integer_array, is_sym_singular, is_trop_singular
from .core import SubIndex, TropMatrix, require_symmetric, submatrix

STANDARD = "standard"
SYMMETRIC = "symmetric"
MODES = (STANDARD, SYMMETRIC)


@dataclass(frozen=True)
class RankResult:
    rank: int
    witness: SubIndex
    mode: str

    def to_json(self) -> dict:
        return {"rank": self.rank, "mode": self.mode, "witness": self.witness.to_json()}


def _check_mode(A: TropMatrix, mode: str) -> None:
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    if mode == SYMMETRIC:
        require_symmetric(A)


def is_singular(A: TropMatrix, s: SubIndex, mode: str = STANDARD) -> bool:
    """Singularity of one square selection under ``mode``."""
    if mode == SYMMETRIC:
        return is_sym_singular(A, s)
    return is_trop_singular(submatrix(A, s))


class _Scanner:
    """Lexicographic scan of r x r selections, optionally fanned out over threads."""

    def __init__(self, A: TropMatrix, mode: str, threads: int | None = None):
        self.A = A
        self.mode = mode
        self.threads = max(1, threads or 1)
        self._ints = integer_array(A)

    def _rowset_mask(self, rows: tuple[int, ...], colsets: list[tuple[int, ...]], col_arr: np.ndarray) -> np.ndarray:
        r = len(rows)
        if r <= BATCH_MAX_SIZE:
            rows0 = [i - 1 for i in rows]
            return ~batch_singular(self._ints, rows0, col_arr, self.mode == SYMMETRIC)
        return np.array([not is_singular(self.A, SubIndex(rows, cols), self.mode) for cols in colsets])

    def nonsingular(self, r: int, rowsets: Iterable[tuple[int, ...]] | None = None) -> Iterator[SubIndex]:
        """Nonsingular selections, in lexicographic order of the given row sets."""
        colsets = list(combinations(range(1, self.A.cols + 1), r))
        col_arr = np.array(colsets, dtype=np.intp).reshape(-1, r) - 1
        if rowsets is None:
            rowsets = combinations(range(1, self.A.rows + 1), r)
        rowsets = iter(rowsets)
        if self.threads == 1:
            for rows in rowsets:
                mask = self._rowset_mask(rows, colsets, col_arr)
                for k in np.flatnonzero(mask):
                    yield SubIndex(rows, colsets[k])
            return
        block = self.threads * 4
        with ThreadPoolExecutor(self.threads) as pool:
            while True:
                batch = [rows for _, rows in zip(range(block), rowsets)]
                if not batch:
                    return
                masks = pool.map(lambda rows: self._rowset_mask(rows, colsets, col_arr), batch)
                for rows, mask in zip(batch, masks):
                    for k in np.flatnonzero(mask):
                        yield SubIndex(rows, colsets[k])

    def first(self, r: int) -> SubIndex | None:
        return next(self.nonsingular(r), None)

    def extends(self, r: int, seed: SubIndex) -> SubIndex | None:
        """A nonsingular r x r selection containing ``seed``, if a cheap search finds one."""
        extra_rows = [i for i in range(1, self.A.rows + 1) if i not in seed.rows]
        extra_cols = [j for j in range(1, self.A.cols + 1) if j not in seed.cols]
        need = r - seed.size
        for add_r in combinations(extra_rows, need):
            rows = tuple(sorted(seed.rows + add_r))
            for add_c in combinations(extra_cols, need):
                s = SubIndex(rows, tuple(sorted(seed.cols + add_c)))
                if not is_singular(self.A, s, self.mode):
                    return s
        return None


def _rank(A: TropMatrix, mode: str, threads: int | None) -> RankResult:
    _check_mode(A, mode)
    scanner = _Scanner(A, mode, threads)
    top = min(A.rows, A.cols)
    witness = SubIndex((1,), (1,))  # 1 x 1 minors never tie
    lex_first = True
    r = 1
    while r < top:
        found = scanner.extends(r + 1, witness)
        lex = False
        if found is None:
            found = scanner.first(r + 1)
            lex = True
        if found is None:
            break
        witness, lex_first, r = found, lex, r + 1
    if not lex_first:
        witness = scanner.first(r)
        assert witness is not None
    return RankResult(r, witness, mode)


def tropical_rank(A: TropMatrix, threads: int | None = None) -> RankResult:
    """Largest r with a tropically nonsingular r x r submatrix, plus the lexicographically first witness."""
    return _rank(A, STANDARD, threads)


def symmetric_tropical_rank(A: TropMatrix, threads: int | None = None) -> RankResult:
    """As :func:`tropical_rank`, with symmetric singularity over all (not only principal) submatrices."""
    return _rank(A, SYMMETRIC, threads)


def rank(A: TropMatrix, mode: str = STANDARD, threads: int | None = None) -> RankResult:
    return _rank(A, mode, threads)


def nonsingular_submatrix(A: TropMatrix, r: int, mode: str = STANDARD, threads: int | None = None) -> SubIndex | None:
    """Lexicographically first r x r selection that is nonsingular under ``mode``."""
    _check_mode(A, mode)
    if not 1 <= r <= min(A.rows, A.cols):
        raise ValueError(f"r must lie in 1..{min(A.rows, A.cols)}")
    return _Scanner(A, mode, threads).first(r)


def in_prevariety(A: TropMatrix, r: int, mode: str = STANDARD, threads: int | None = None) -> bool:
    """True iff every r x r submatrix is singular under ``mode``."""
    return nonsingular_submatrix(A, r, mode, threads) is None


def default_threads() -> int:
    return os.cpu_count() or 1


# --- independent oracle --------------------------------------------------

ORACLE_LIMIT = 6


def rank_oracle(A: TropMatrix, mode: str = STANDARD) -> int:
    """Rank by brute force: every submatrix, every permutation, no shared solver code."""
    if min(A.rows, A.cols) > ORACLE_LIMIT:
        raise ValueError(f"oracle limited to min(dims) <= {ORACLE_LIMIT}")
    _check_mode(A, mode)
    a = A.entries
    best_rank = 0
    for r in range(1, min(A.rows, A.cols) + 1):
        perms = list(permutations(range(r)))
        hit = False
        for rows in combinations(range(A.rows), r):
            for cols in combinations(range(A.cols), r):
                totals: dict[Fraction, set] = {}
                for p in perms:
                    t = sum((a[rows[k]][cols[p[k]]] for k in range(r)), Fraction(0))
                    if mode == SYMMETRIC:
                        key = tuple(sorted(tuple(sorted((rows[k], cols[p[k]]))) for k in range(r)))
                    else:
                        key = p
                    totals.setdefault(t, set()).add(key)
                if len(totals[min(totals)]) == 1:
                    hit = True
                    break
            if hit:
                break
        if not hit:
            break
        best_rank = r
    return best_rank
