"""Matrix constructions that preserve or raise (symmetric) tropical rank, and the built-in catalog."""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping

from .assignment import Bijection, NotSquareError, tropdet
from .core import Number, TropMatrix, cycles_to_perm, permute, require_symmetric, to_rational

Coefficients = Mapping[int, Fraction]


class SingularInput(ValueError):
    """The matrix has no strictly separating coefficients: it is tropically singular."""


# --- separating coefficients -------------------------------------------


def _min_cycle_mean(n: int, edges: list[tuple[int, int, Fraction]]) -> Fraction | None:
    """Karp's minimum mean cycle over nodes 0..n-1; None if the graph is acyclic."""
    inf = None
    # d[k][v]: min weight of a k-edge walk ending at v, starting anywhere
    d = [[Fraction(0)] * n]
    for k in range(1, n + 1):
        row: list = [inf] * n
        for a, b, w in edges:
            if d[k - 1][a] is not None:
                cand = d[k - 1][a] + w
                if row[b] is None or cand < row[b]:
                    row[b] = cand
        d.append(row)
    best: Fraction | None = None
    for v in range(n):
        if d[n][v] is None:
            continue
        worst = None
        for k in range(n):
            if d[k][v] is None:
                continue
            mean = (d[n][v] - d[k][v]) / (n - k)
            if worst is None or mean > worst:
                worst = mean
        if worst is not None and (best is None or worst < best):
            best = worst
    return best


def _bellman_ford(n: int, edges: list[tuple[int, int, Fraction]]) -> list[Fraction]:
    dist = [Fraction(0)] * n
    for _ in range(n + 1):
        changed = False
        for a, b, w in edges:
            if dist[a] + w < dist[b]:
                dist[b] = dist[a] + w
                changed = True
        if not changed:
            return dist
    raise AssertionError("negative cycle in a system certified feasible")


def lemma1_coefficients(M: TropMatrix, sigma: Bijection | None = None) -> dict[int, Fraction]:
    """Column coefficients ``c`` with ``c[sigma(i)] + a[i][sigma(i)] < c[j] + a[i][j]`` for all ``j != sigma(i)``.

    The constraints ``c[sigma(i)] - c[j] <= a[i][j] - a[i][sigma(i)] - eps``
    form a difference system on the columns.  It is solvable for some
    ``eps > 0`` exactly when every cycle of the constraint graph has positive
    weight, i.e. its minimum cycle mean ``mu`` is positive; ``eps = mu / 2``
    is used and potentials come from Bellman-Ford.  Keys are 1-based columns.
    """
    if not M.is_square:
        raise NotSquareError("expected a square matrix")
    n = M.rows
    a = M.entries
    if sigma is None:
        _, sigma = tropdet(M)
    sig = [j - 1 for j in sigma]
    if sorted(sig) != list(range(n)):
        raise ValueError(f"not a bijection: {sigma}")
    base = [(j, sig[i], a[i][j] - a[i][sig[i]]) for i in range(n) for j in range(n) if j != sig[i]]
    if n == 1:
        return {1: Fraction(0)}
    mu = _min_cycle_mean(n, base)
    if mu is not None and mu < 0:
        raise ValueError("sigma does not realize the tropical determinant")
    if mu is not None and mu == 0:
        raise SingularInput("matrix is tropically singular; no strict separating coefficients exist")
    eps = mu / 2 if mu is not None else Fraction(1)
    edges = [(j, t, w - eps) for j, t, w in base]
    c = _bellman_ford(n, edges)
    coeffs = {j + 1: c[j] for j in range(n)}
    assert check_separating(M, sigma, coeffs)
    return coeffs


def check_separating(M: TropMatrix, sigma: Bijection, coeffs: Coefficients) -> bool:
    """Direct substitution: strict inequality off the matching, equality on it."""
    n = M.rows
    for i in range(n):
        s = sigma[i]
        lhs = coeffs[s] + M.entries[i][s - 1]
        for j in range(1, n + 1):
            if j != s and not lhs < coeffs[j] + M.entries[i][j - 1]:
                return False
    return True


# --- appending combinations ----------------------------------------------


def _coeffs(coeffs: Mapping[int, Number], bound: int, what: str) -> dict[int, Fraction]:
    if not coeffs:
        raise ValueError("coefficient domain must be nonempty")
    out = {int(k): to_rational(c) for k, c in coeffs.items()}
    bad = [k for k in out if not 1 <= k <= bound]
    if bad:
        raise IndexError(f"{what} indices out of range: {bad}")
    return out


def append_combination_col(A: TropMatrix, coeffs: Mapping[int, Number]) -> TropMatrix:
    """Append the column ``min_k (c_k + A[:, k])``."""
    c = _coeffs(coeffs, A.cols, "column")
    data = tuple(row + (min(c[k] + row[k - 1] for k in c),) for row in A.entries)
    return TropMatrix(data)


def append_combination_row(A: TropMatrix, coeffs: Mapping[int, Number]) -> TropMatrix:
    """Append the row ``min_k (c_k + A[k, :])``."""
    c = _coeffs(coeffs, A.rows, "row")
    new = tuple(min(c[k] + A.entries[k - 1][j] for k in c) for j in range(A.cols))
    return TropMatrix(A.entries + (new,))


def sym_append(A: TropMatrix, coeffs: Mapping[int, Number]) -> TropMatrix:
    """Append a combination column, then the same combination of the extended rows."""
    require_symmetric(A)
    wide = append_combination_col(A, coeffs)
    return append_combination_row(wide, coeffs).as_symmetric()


# --- P/M border -----------------------------------------------------------


def border_PM(A: TropMatrix, P: Number | None = None, M: Number | None = None) -> TropMatrix:
    """Border ``A`` with a row and column of ``P`` and corner ``M``.

    Defaults are ``max(A) + 1`` and ``min(A) - 1``; explicit values must be
    strictly above / below every entry.
    """
    hi, lo = A.max_entry(), A.min_entry()
    p = hi + 1 if P is None else to_rational(P)
    m = lo - 1 if M is None else to_rational(M)
    if not p > hi:
        raise ValueError("P must exceed every entry")
    if not m < lo:
        raise ValueError("M must be below every entry")
    data = tuple(row + (p,) for row in A.entries) + ((p,) * A.cols + (m,),)
    return TropMatrix(data, A.symmetric)


def sym_border_PM(A: TropMatrix, P: Number | None = None, M: Number | None = None) -> TropMatrix:
    require_symmetric(A)
    return border_PM(A, P, M)


# --- catalog -------------------------------------------------------------

FANO7 = (
    (1, 1, 0, 1, 0, 0, 0),
    (0, 1, 1, 0, 1, 0, 0),
    (0, 0, 1, 1, 0, 1, 0),
    (0, 0, 0, 1, 1, 0, 1),
    (1, 0, 0, 0, 1, 1, 0),
    (0, 1, 0, 0, 0, 1, 1),
    (1, 0, 1, 0, 0, 0, 1),
)

FANO7_SYM = (
    (1, 1, 0, 1, 0, 0, 0),
    (1, 0, 1, 0, 0, 0, 1),
    (0, 1, 0, 0, 0, 1, 1),
    (1, 0, 0, 0, 1, 1, 0),
    (0, 0, 0, 1, 1, 0, 1),
    (0, 0, 1, 1, 0, 1, 0),
    (0, 1, 1, 0, 1, 0, 0),
)

FANO13_SYM = (
    (0, 0, 0, 0, 0, 0, 1, 1, 0, 1, 0, 0, 0),
    (0, 0, 0, 0, 0, 0, 1, 0, 1, 0, 0, 0, 1),
    (0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 1, 1),
    (0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 1, 1, 0),
    (0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 0, 1),
    (0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 0, 1, 0),
    (1, 1, 0, 1, 0, 0, 0, 1, 1, 0, 1, 0, 0),
    (1, 0, 1, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0),
    (0, 1, 0, 0, 0, 1, 1, 0, 0, 0, 0, 0, 0),
    (1, 0, 0, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0),
    (0, 0, 0, 1, 1, 0, 1, 0, 0, 0, 0, 0, 0),
    (0, 0, 1, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0),
    (0, 1, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0),
)

SHITOV6 = (
    (0, 0, 4, 4, 4, 4),
    (0, 0, 2, 4, 1, 4),
    (4, 4, 0, 0, 4, 4),
    (2, 4, 0, 0, 2, 4),
    (4, 4, 4, 4, 0, 0),
    (2, 4, 1, 4, 0, 0),
)

SHITOV6_SYM = (
    (0, 0, 2, 4, 1, 4),
    (0, 0, 4, 4, 4, 4),
    (2, 4, 2, 4, 0, 0),
    (4, 4, 4, 4, 0, 0),
    (1, 4, 0, 0, 2, 4),
    (4, 4, 0, 0, 4, 4),
)

# the variant displayed with the 5 x 5 minor equations; differs at (1,5)/(5,1)
SHITOV6_SYM_V2 = (
    (0, 0, 2, 4, 2, 4),
    (0, 0, 4, 4, 4, 4),
    (2, 4, 2, 4, 0, 0),
    (4, 4, 4, 4, 0, 0),
    (2, 4, 0, 0, 2, 4),
    (4, 4, 0, 0, 4, 4),
)

Q3 = ((0, 0, 1), (0, 0, 1), (1, 1, 0))
R3 = ((0, 0, 0), (0, 1, 0), (0, 0, 1))
DIAG_ONES3 = ((1, 0, 0), (0, 1, 0), (0, 0, 1))

_CATALOG = {
    "fano7": (FANO7, False),
    "fano7_sym": (FANO7_SYM, True),
    "fano13_sym": (FANO13_SYM, True),
    "shitov6": (SHITOV6, False),
    "shitov6_sym": (SHITOV6_SYM, True),
    "shitov6_sym_v2": (SHITOV6_SYM_V2, True),
    "q3": (Q3, False),
    "r3": (R3, False),
    "diag_ones3": (DIAG_ONES3, True),
}

BUILTIN_NAMES = tuple(_CATALOG)


def builtin(name: str) -> TropMatrix:
    try:
        rows, sym = _CATALOG[name]
    except KeyError:
        raise KeyError(f"unknown builtin {name!r}; choose from {', '.join(BUILTIN_NAMES)}") from None
    return TropMatrix.from_rows(rows, symmetric=sym)


def fano7_sym_from_fano7() -> TropMatrix:
    """fano7 with rows permuted by (27)(36)(45)."""
    return permute(builtin("fano7"), cycles_to_perm([(2, 7), (3, 6), (4, 5)], 7))


def shitov6_sym_from_shitov6() -> TropMatrix:
    """shitov6 rearranged by the cycles (16)(25)(34) and (135)(246).

    The reversal (16)(25)(34) acts on the rows and (135)(246) on the columns,
    with new column j taken from old column pi^-1(j); this is the only
    row/column rearrangement of shitov6 that yields the symmetric display.
    """
    rows = cycles_to_perm([(1, 6), (2, 5), (3, 4)], 6)
    pi = cycles_to_perm([(1, 3, 5), (2, 4, 6)], 6)
    cols = [pi.index(j) + 1 for j in range(1, 7)]
    return permute(builtin("shitov6"), rows, cols)


def fano13_from_blocks() -> TropMatrix:
    """Zeros with fano7_sym in the upper-right and lower-left 7 x 7 corners (sharing entry (7,7))."""
    f = FANO7_SYM
    data = [[0] * 13 for _ in range(13)]
    for i in range(7):
        for j in range(7):
            data[i][j + 6] = f[i][j]
            data[i + 6][j] = f[j][i]
    return TropMatrix.from_rows(data)


separating_coefficients = lemma1_coefficients
