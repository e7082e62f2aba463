"""Dimension formulas, tropical-basis verdicts and dimension-gap bookkeeping."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from .core import SubIndex, TropMatrix, require_symmetric
from .rank import STANDARD, nonsingular_submatrix


class Verdict(str, Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class BasisVerdict:
    value: Verdict
    citation: str


class NoClaim(ValueError):
    """The parameters lie outside the regime where a dimension gap is asserted."""


# base cases: computed cell dimensions of explicit matrices
STANDARD_BASES = {(6, 6, 5): 33, (7, 7, 4): 34}
SYMMETRIC_BASE = ((6, 5), 19)


@dataclass(frozen=True)
class Move:
    src: tuple[int, ...]
    dst: tuple[int, ...]
    increment: int
    kind: str


@dataclass(frozen=True)
class GapReport:
    params: tuple[int, ...]
    variety_dim: int
    prevariety_lower_bound: int
    path: tuple[Move, ...] = field(default=())
    symmetric: bool = False

    @property
    def strict(self) -> bool:
        return self.prevariety_lower_bound > self.variety_dim

    def to_json(self) -> dict:
        keys = ("n", "r") if self.symmetric else ("m", "n", "r")
        return {
            "kind": "symmetric" if self.symmetric else "standard",
            "params": dict(zip(keys, self.params)),
            "variety_dim": self.variety_dim,
            "prevariety_lower_bound": self.prevariety_lower_bound,
            "strict": self.strict,
            "path": [
                {"from": list(mv.src), "to": list(mv.dst), "increment": mv.increment, "step": mv.kind}
                for mv in self.path
            ],
        }

    def to_text(self) -> str:
        name = "S" if self.symmetric else "T"
        sub = ",".join(map(str, self.params))
        lines = [f"{'move':<28}{'step':<12}{'+dim':>6}{'bound':>8}"]
        bound = None
        for mv in self.path:
            if mv.kind == "base":
                bound = mv.increment
                lines.append(f"{'base ' + _fmt(mv.dst):<28}{'cell':<12}{'':>6}{bound:>8}")
            else:
                bound += mv.increment
                lines.append(f"{_fmt(mv.src) + ' -> ' + _fmt(mv.dst):<28}{mv.kind:<12}{mv.increment:>6}{bound:>8}")
        rel = "<" if self.strict else ">="
        lines.append(f"dim(trop variety {name}~_{sub}) = {self.variety_dim} {rel} {self.prevariety_lower_bound} <= dim({name}_{sub})")
        return "\n".join(lines)


def _fmt(t: tuple[int, ...]) -> str:
    return "(" + ",".join(map(str, t)) + ")"


def _check_r(r: int, top: int) -> None:
    if not 1 <= r <= top:
        raise ValueError(f"r must lie in 1..{top}, got {r}")


def variety_dim_standard(m: int, n: int, r: int) -> int:
    """Dimension of the m x n matrices of rank < r."""
    _check_r(r, min(m, n))
    return (m + n - r + 1) * (r - 1)


def variety_dim_symmetric(n: int, r: int) -> int:
    """Dimension of the n x n symmetric matrices of rank < r."""
    _check_r(r, n)
    num = 2 * n * r - 2 * n + 3 * r - r * r - 2
    assert num % 2 == 0
    return num // 2


def is_basis_standard(m: int, n: int, r: int) -> BasisVerdict:
    _check_r(r, min(m, n))
    k = min(m, n)
    if r == k:
        return BasisVerdict(Verdict.YES, "r = min(m,n)")
    if r <= 3:
        return BasisVerdict(Verdict.YES, "r <= 3")
    if r == 4 and k <= 6:
        return BasisVerdict(Verdict.YES, "r = 4 and min(m,n) <= 6")
    return BasisVerdict(Verdict.NO, "no clause of the classification holds")


def is_basis_symmetric(n: int, r: int) -> BasisVerdict:
    _check_r(r, n)
    if r == 1:
        # 1 x 1 minors are single variables; not addressed by the classification
        return BasisVerdict(Verdict.YES, "r = 1 (convention)")
    if r in (2, 3):
        return BasisVerdict(Verdict.YES, f"r = {r}")
    if r == n:
        return BasisVerdict(Verdict.YES, "r = n")
    if 4 < r < n:
        return BasisVerdict(Verdict.NO, "4 < r < n")
    if r == 4 and n > 12:
        return BasisVerdict(Verdict.NO, "r = 4 and n > 12")
    return BasisVerdict(Verdict.UNKNOWN, "r = 4 and 4 < n <= 12 is open")


def prevariety_lower_bound_standard(m: int, n: int, r: int) -> GapReport:
    """Lower bound on dim T_{m,n,r} by a canonical chain from a computed base case.

    The chain starts at (6,6,5) for r >= 5 or at (7,7,4) for r = 4, applies
    diagonal moves (p,q,s) -> (p+1,q+1,s+1) worth p+q+1 until s = r, then adds
    rows (worth r-1 each) and finally columns (worth r-1 each).
    """
    if is_basis_standard(m, n, r).value is not Verdict.NO:
        raise NoClaim(f"the {r}x{r} minors of a {m}x{n} matrix form a tropical basis; no gap is claimed")
    base = (6, 6, 5) if r >= 5 else (7, 7, 4)
    bound = STANDARD_BASES[base]
    path = [Move(base, base, bound, "base")]
    p, q, s = base
    while s < r:
        nxt = (p + 1, q + 1, s + 1)
        path.append(Move((p, q, s), nxt, p + q + 1, "diagonal"))
        bound += p + q + 1
        p, q, s = nxt
    while p < m:
        path.append(Move((p, q, s), (p + 1, q, s), s - 1, "add row"))
        bound += s - 1
        p += 1
    while q < n:
        path.append(Move((p, q, s), (p, q + 1, s), s - 1, "add column"))
        bound += s - 1
        q += 1
    assert (p, q, s) == (m, n, r)
    return GapReport((m, n, r), variety_dim_standard(m, n, r), bound, tuple(path))


def prevariety_lower_bound_symmetric(n: int, r: int) -> GapReport:
    """Lower bound on dim S_{n,r} for 4 < r < n, chained from the (6,5) base case.

    Diagonal moves (p,s) -> (p+1,s+1) are worth p+1, size moves are worth r-1.
    """
    if not 4 < r < n:
        raise NoClaim("a symmetric dimension gap is only established for 4 < r < n")
    base, bound = SYMMETRIC_BASE
    path = [Move(base, base, bound, "base")]
    p, s = base
    while s < r:
        path.append(Move((p, s), (p + 1, s + 1), p + 1, "diagonal"))
        bound += p + 1
        p, s = p + 1, s + 1
    while p < n:
        path.append(Move((p, s), (p + 1, s), s - 1, "add index"))
        bound += s - 1
        p += 1
    assert (p, s) == (n, r)
    return GapReport((n, r), variety_dim_symmetric(n, r), bound, tuple(path), symmetric=True)


def find_nonsingular_submatrix(A: TropMatrix, k: int) -> SubIndex | None:
    """Lexicographically first k x k tropically nonsingular submatrix of a symmetric matrix."""
    require_symmetric(A)
    return nonsingular_submatrix(A, k, STANDARD)
