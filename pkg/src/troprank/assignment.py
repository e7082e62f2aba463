"""Tropical determinants as exact optimal assignments.

The determinant is found with a shortest-augmenting-path Hungarian solver
over :class:`~fractions.Fraction` potentials.  Every optimal permutation is a
perfect matching of the tight subgraph (zero reduced cost under the final
duals), so all of them are enumerated there.

Bijections are tuples of 1-based column images: ``(2, 3, 1)`` sends row 1 to
column 2, row 2 to column 3 and row 3 to column 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations
from typing import Iterator, Sequence

import numpy as np

from .core import SubIndex, TropMatrix, check_subindex, integer_scaled, require_symmetric, submatrix

Bijection = tuple[int, ...]
SymMonomial = tuple[tuple[int, int], ...]

DEFAULT_CAP = 10_000
SCAN_LIMIT = 8


class NotSquareError(ValueError):
    pass


class TruncatedEnumeration(RuntimeError):
    """Raised when a caller needs every minimizing bijection but the cap was hit."""


@dataclass(frozen=True)
class DetResult:
    value: Fraction
    witnesses: tuple[Bijection, ...]
    sym_witnesses: tuple[SymMonomial, ...]
    truncated: bool = False
    row_duals: tuple[Fraction, ...] = field(default=(), repr=False)
    col_duals: tuple[Fraction, ...] = field(default=(), repr=False)

    @property
    def is_singular(self) -> bool:
        return len(self.witnesses) >= 2

    @property
    def is_sym_singular(self) -> bool:
        return len(self.sym_witnesses) >= 2


def _square(M: TropMatrix) -> list[list[Fraction]]:
    if not M.is_square:
        raise NotSquareError(f"expected a square matrix, got {M.rows}x{M.cols}")
    return [list(row) for row in M.entries]


def hungarian(cost: Sequence[Sequence[Fraction]]) -> tuple[Fraction, list[int], list[Fraction], list[Fraction]]:
    """Min-cost perfect assignment with exact duals.

    Returns ``(value, assign, u, v)`` with 0-based ``assign[i]`` the column of
    row ``i``; ``u[i] + v[j] <= cost[i][j]`` everywhere, with equality on the
    assignment.
    """
    n = len(cost)
    inf = math.inf
    u = [Fraction(0)] * (n + 1)
    v = [Fraction(0)] * (n + 1)
    match = [0] * (n + 1)  # match[j] = row (1-based) owning column j
    way = [0] * (n + 1)
    for i in range(1, n + 1):
        match[0] = i
        j0 = 0
        minv: list = [inf] * (n + 1)
        used = [False] * (n + 1)
        while True:
            used[j0] = True
            i0 = match[j0]
            delta: object = inf
            j1 = 0
            row = cost[i0 - 1]
            ui0 = u[i0]
            for j in range(1, n + 1):
                if not used[j]:
                    cur = row[j - 1] - ui0 - v[j]
                    if cur < minv[j]:
                        minv[j] = cur
                        way[j] = j0
                    if minv[j] < delta:
                        delta = minv[j]
                        j1 = j
            for j in range(n + 1):
                if used[j]:
                    u[match[j]] += delta
                    v[j] -= delta
                else:
                    minv[j] -= delta
            j0 = j1
            if match[j0] == 0:
                break
        while j0:
            j1 = way[j0]
            match[j0] = match[j1]
            j0 = j1
    assign = [0] * n
    for j in range(1, n + 1):
        assign[match[j] - 1] = j - 1
    value = sum((cost[i][assign[i]] for i in range(n)), Fraction(0))
    return value, assign, u[1:], v[1:]


def _has_perfect_matching(adj: list[list[int]], rows: range, free_cols: set[int]) -> bool:
    owner: dict[int, int] = {}

    def augment(i: int, seen: set[int]) -> bool:
        for j in adj[i]:
            if j in free_cols and j not in seen:
                seen.add(j)
                if j not in owner or augment(owner[j], seen):
                    owner[j] = i
                    return True
        return False

    return all(augment(i, set()) for i in rows)


def tight_matchings(cost: Sequence[Sequence[Fraction]], u: Sequence[Fraction], v: Sequence[Fraction]) -> Iterator[tuple[int, ...]]:
    """Perfect matchings of the zero-reduced-cost subgraph, lexicographic, 0-based."""
    n = len(cost)
    adj = [[j for j in range(n) if cost[i][j] - u[i] - v[j] == 0] for i in range(n)]
    chosen: list[int] = []
    free = set(range(n))

    def extend(i: int) -> Iterator[tuple[int, ...]]:
        if i == n:
            yield tuple(chosen)
            return
        for j in adj[i]:
            if j not in free:
                continue
            free.discard(j)
            # prune branches whose remaining rows cannot be matched
            if _has_perfect_matching(adj, range(i + 1, n), free):
                chosen.append(j)
                yield from extend(i + 1)
                chosen.pop()
            free.add(j)

    yield from extend(0)


def scan_minimizing(M: TropMatrix) -> tuple[Fraction, list[Bijection]]:
    """Factorial scan over all permutations: value and every minimizer, lexicographic."""
    cost = _square(M)
    n = len(cost)
    best: Fraction | None = None
    found: list[Bijection] = []
    for perm in permutations(range(n)):
        total = sum((cost[i][perm[i]] for i in range(n)), Fraction(0))
        if best is None or total < best:
            best, found = total, [perm]
        elif total == best:
            found.append(perm)
    assert best is not None
    return best, [tuple(j + 1 for j in p) for p in found]


def sym_monomial(bij: Bijection, labels: SubIndex | None = None) -> SymMonomial:
    """Multiset of unordered parent-index pairs used by ``bij``."""
    n = len(bij)
    rows = labels.rows if labels is not None else tuple(range(1, n + 1))
    cols = labels.cols if labels is not None else tuple(range(1, n + 1))
    pairs = []
    for i, j in enumerate(bij):
        a, b = rows[i], cols[j - 1]
        pairs.append((a, b) if a <= b else (b, a))
    return tuple(sorted(pairs))


def tropdet(M: TropMatrix) -> tuple[Fraction, Bijection]:
    """Tropical determinant and one bijection attaining it."""
    cost = _square(M)
    value, assign, _, _ = hungarian(cost)
    return value, tuple(j + 1 for j in assign)


def enumerate_minimizing(
    M: TropMatrix,
    cap: int | None = DEFAULT_CAP,
    method: str = "tight",
    labels: SubIndex | None = None,
) -> DetResult:
    """All bijections attaining the tropical determinant (up to ``cap``).

    ``method`` is ``"tight"`` (duals + tight-subgraph enumeration) or
    ``"scan"`` (factorial scan, sizes <= 8).  ``labels`` names the parent
    indices used when forming symmetric monomials.
    """
    cost = _square(M)
    if cap is not None and cap < 2:
        raise ValueError("cap must be at least 2")
    n = len(cost)
    value, assign, u, v = hungarian(cost)
    if method == "tight":
        witnesses: list[Bijection] = []
        truncated = False
        for perm in tight_matchings(cost, u, v):
            if cap is not None and len(witnesses) == cap:
                truncated = True
                break
            witnesses.append(tuple(j + 1 for j in perm))
    elif method == "scan":
        if n > SCAN_LIMIT:
            raise ValueError(f"factorial scan is limited to size {SCAN_LIMIT}")
        scan_value, witnesses = scan_minimizing(M)
        assert scan_value == value
        truncated = cap is not None and len(witnesses) > cap
        witnesses = witnesses[:cap] if cap is not None else witnesses
    else:
        raise ValueError(f"unknown method {method!r}")
    sym = sorted({sym_monomial(w, labels) for w in witnesses})
    return DetResult(value, tuple(witnesses), tuple(sym), truncated, tuple(u), tuple(v))


def is_trop_singular(M: TropMatrix) -> bool:
    """True iff at least two bijections attain the tropical determinant."""
    cost = _square(M)
    _, _, u, v = hungarian(cost)
    it = tight_matchings(cost, u, v)
    next(it)
    return next(it, None) is not None


def is_sym_singular(parent: TropMatrix, s: SubIndex) -> bool:
    """True iff the selected submatrix has two distinct minimizing monomials under X_ij = X_ji."""
    require_symmetric(parent)
    if not s.is_square:
        raise NotSquareError("selection must be square")
    check_subindex(parent, s)
    cost = [[parent.entries[i - 1][j - 1] for j in s.cols] for i in s.rows]
    _, _, u, v = hungarian(cost)
    first: SymMonomial | None = None
    for perm in tight_matchings(cost, u, v):
        mono = sym_monomial(tuple(j + 1 for j in perm), s)
        if first is None:
            first = mono
        elif mono != first:
            return True
    return False


def minimizing_for(parent: TropMatrix, s: SubIndex, cap: int | None = DEFAULT_CAP) -> DetResult:
    """``enumerate_minimizing`` on a selection, with symmetric monomials in parent indices."""
    return enumerate_minimizing(submatrix(parent, s), cap=cap, labels=s)


# --- vectorized batch kernel ---------------------------------------------

BATCH_MAX_SIZE = 7
_PERM_CACHE: dict[int, np.ndarray] = {}


def _perm_table(r: int) -> np.ndarray:
    if r not in _PERM_CACHE:
        _PERM_CACHE[r] = np.array(list(permutations(range(r))), dtype=np.intp).reshape(-1, r)
    return _PERM_CACHE[r]


def integer_array(A: TropMatrix) -> np.ndarray:
    """Common-denominator integer image of ``A`` as int64 (object dtype if it would overflow)."""
    data = integer_scaled(A)
    bound = max(abs(x) for row in data for x in row) * max(A.rows, A.cols)
    dtype = np.int64 if bound < 2**62 else object
    return np.array(data, dtype=dtype)


def batch_singular(
    A: np.ndarray,
    rows: Sequence[int],
    colsets: np.ndarray,
    symmetric: bool = False,
) -> np.ndarray:
    """Singularity of the submatrices ``rows x colsets[k]`` of an integer matrix.

    ``rows`` and ``colsets`` are 0-based; returns a boolean array, one entry
    per colset.  In symmetric mode two minimizers count as distinct only when
    their multisets of unordered index pairs differ.
    """
    r = len(rows)
    perms = _perm_table(r)
    n = A.shape[1]
    rows = np.asarray(rows, dtype=np.intp)
    out = np.empty(len(colsets), dtype=bool)
    chunk = max(1, 2_000_000 // (len(perms) * r))
    k_idx = np.arange(r)[None, :]
    for start in range(0, len(colsets), chunk):
        cs = colsets[start:start + chunk]
        # cols_by_perm[c, p, k] = column hit by row k under permutation p
        cols_by_perm = cs[:, perms]
        vals = A[rows[k_idx], cols_by_perm].sum(axis=-1)
        best = vals.min(axis=1)
        tie = vals == best[:, None]
        many = tie.sum(axis=1) >= 2
        if not symmetric:
            out[start:start + len(cs)] = many
            continue
        res = np.zeros(len(cs), dtype=bool)
        idx = np.nonzero(many)[0]
        if len(idx):
            cbp = cols_by_perm[idx]
            rr = np.broadcast_to(rows[None, None, :], cbp.shape)
            keys = np.sort(np.minimum(rr, cbp) * n + np.maximum(rr, cbp), axis=-1)
            t = tie[idx]
            first = np.argmax(t, axis=1)
            ref = keys[np.arange(len(idx)), first]
            differs = np.any(keys != ref[:, None, :], axis=-1) & t
            res[idx] = differs.any(axis=1)
        out[start:start + len(cs)] = res
    return out
