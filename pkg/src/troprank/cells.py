"""Linear equations cut out by the minimizing monomials of all r x r submatrices.

A matrix in the determinantal prevariety keeps every minimizing monomial of
every r x r submatrix along the affine span given by equating those
monomials' linear forms.  The dimension of that span is a lower bound for
the prevariety's dimension near the matrix.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import Sequence

from .assignment import DEFAULT_CAP, minimizing_for
from .core import SubIndex, TropMatrix, subindices
from .rank import MODES, STANDARD, SYMMETRIC, _check_mode

Var = tuple[int, int]
Equation = tuple[tuple[Var, int], ...]


class NonsingularSubmatrix(ValueError):
    """An r x r submatrix has a unique minimizer, so the matrix is not in the prevariety."""

    def __init__(self, where: SubIndex, mode: str):
        super().__init__(f"{where} is nonsingular ({mode})")
        self.where = where


class EnumerationCapHit(RuntimeError):
    pass


@dataclass(frozen=True)
class EquationSystem:
    ambient_dim: int
    equations: tuple[Equation, ...]
    mode: str = STANDARD
    shape: tuple[int, int] = (0, 0)

    def to_json(self) -> dict:
        return {
            "ambient_dim": self.ambient_dim,
            "mode": self.mode,
            "equations": [[{"var": list(v), "coeff": c} for v, c in eq] for eq in self.equations],
        }

    def to_text(self) -> str:
        return "\n".join(format_equation(eq) for eq in self.equations)

    def variables(self) -> list[Var]:
        """Coordinate order of the ambient space: row-major, upper triangle in symmetric mode."""
        m, n = self.shape
        if self.mode == SYMMETRIC:
            return [(i, j) for i in range(1, m + 1) for j in range(i, n + 1)]
        return [(i, j) for i in range(1, m + 1) for j in range(1, n + 1)]

    def coefficient_rows(self) -> list[list[int]]:
        col = {v: k for k, v in enumerate(self.variables())}
        rows = []
        for eq in self.equations:
            row = [0] * len(col)
            for v, c in eq:
                row[col[v]] = c
            rows.append(row)
        return rows


@dataclass(frozen=True)
class CellResult:
    dimension: int
    system_rank: int
    equation_count: int
    ambient_dim: int

    def to_json(self) -> dict:
        return {
            "dimension": self.dimension,
            "system_rank": self.system_rank,
            "equation_count": self.equation_count,
            "ambient_dim": self.ambient_dim,
        }


def _var(i: int, j: int, mode: str) -> Var:
    return (min(i, j), max(i, j)) if mode == SYMMETRIC else (i, j)


def canonical(form: dict[Var, int]) -> Equation | None:
    """Sorted, primitive, leading coefficient positive; None for the trivial equation."""
    terms = sorted((v, c) for v, c in form.items() if c)
    if not terms:
        return None
    g = 0
    for _, c in terms:
        g = math.gcd(g, c)
    sign = 1 if terms[0][1] > 0 else -1
    return tuple((v, sign * c // g) for v, c in terms)


def format_equation(eq: Equation) -> str:
    """Render ``sum c x = sum c' x`` with positive terms on the left."""

    def side(terms: list[tuple[Var, int]]) -> str:
        parts = [("" if c == 1 else str(c)) + f"x_{{{i},{j}}}" for (i, j), c in terms]
        return " + ".join(parts) if parts else "0"

    left = [(v, c) for v, c in eq if c > 0]
    right = [(v, -c) for v, c in eq if c < 0]
    return f"{side(left)} = {side(right)}"


def _linear_form(A_sel: SubIndex, bij: Sequence[int], mode: str) -> Counter:
    form: Counter = Counter()
    for k, j in enumerate(bij):
        form[_var(A_sel.rows[k], A_sel.cols[j - 1], mode)] += 1
    return form


def _submatrix_equations(A: TropMatrix, s: SubIndex, mode: str, cap: int | None) -> list[Equation]:
    res = minimizing_for(A, s, cap=cap)
    if res.truncated:
        raise EnumerationCapHit(f"{s}: more than {cap} minimizing bijections; raise the cap")
    if mode == SYMMETRIC:
        forms = [Counter(m) for m in res.sym_witnesses]
    else:
        forms = [_linear_form(s, w, mode) for w in res.witnesses]
    if len(forms) < 2:
        raise NonsingularSubmatrix(s, mode)
    first = forms[0]
    out = []
    for other in forms[1:]:
        diff = dict(first)
        for v, c in other.items():
            diff[v] = diff.get(v, 0) - c
        eq = canonical(diff)
        if eq is not None:
            out.append(eq)
    return out


def minor_equations(A: TropMatrix, r: int, mode: str = STANDARD, cap: int | None = DEFAULT_CAP) -> EquationSystem:
    """Equations equating the minimizing monomials of every r x r submatrix (deduplicated, sorted)."""
    _check_mode(A, mode)
    if not 1 <= r <= min(A.rows, A.cols):
        raise ValueError(f"r must lie in 1..{min(A.rows, A.cols)}")
    eqs: set[Equation] = set()
    for s in subindices(A.rows, A.cols, r):
        eqs.update(_submatrix_equations(A, s, mode, cap))
    if mode == SYMMETRIC:
        ambient = A.rows * (A.rows + 1) // 2
    else:
        ambient = A.rows * A.cols
    return EquationSystem(ambient, tuple(sorted(eqs)), mode, A.shape)


def bareiss_rank(rows: Sequence[Sequence[int]]) -> int:
    """Rank of an integer matrix by fraction-free (Bareiss) elimination."""
    M = [list(r) for r in rows if any(r)]
    if not M:
        return 0
    ncols = len(M[0])
    rank = 0
    prev = 1
    for c in range(ncols):
        pivot = next((i for i in range(rank, len(M)) if M[i][c]), None)
        if pivot is None:
            continue
        M[rank], M[pivot] = M[pivot], M[rank]
        p = M[rank][c]
        for i in range(rank + 1, len(M)):
            a = M[i][c]
            row_i, row_p = M[i], M[rank]
            # exact division is guaranteed by Sylvester's identity
            M[i] = [(p * row_i[k] - a * row_p[k]) // prev if k > c else 0 for k in range(ncols)]
        prev = p
        rank += 1
        if rank == len(M):
            break
    return rank


def cell_dimension(A: TropMatrix, r: int, mode: str = STANDARD, cap: int | None = DEFAULT_CAP) -> CellResult:
    """Dimension of the linear cell through ``A`` cut out by its r x r minimizing monomials."""
    return cell_from_system(minor_equations(A, r, mode, cap))


def cell_from_system(system: EquationSystem) -> CellResult:
    rk = bareiss_rank(system.coefficient_rows())
    return CellResult(system.ambient_dim - rk, rk, len(system.equations), system.ambient_dim)


def satisfies(A: TropMatrix, system: EquationSystem) -> bool:
    """True iff the entries of ``A`` solve every equation of ``system``."""
    return all(sum(c * A.entries[i - 1][j - 1] for (i, j), c in eq) == 0 for eq in system.equations)


__all__ = [
    "CellResult",
    "EnumerationCapHit",
    "EquationSystem",
    "MODES",
    "NonsingularSubmatrix",
    "bareiss_rank",
    "canonical",
    "cell_dimension",
    "cell_from_system",
    "format_equation",
    "minor_equations",
    "satisfies",
]
