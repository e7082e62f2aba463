"""Tropical polynomials, hypersurface membership and determinantal minors.

Text grammar::

    poly     := monomial ("(+)" monomial)*
    monomial := factor ("*"? factor)*
    factor   := rational | variable ("^" integer)?
    variable := letter (letter | digit | "_")* ("{" int ("," int)* "}")?

``(+)`` is tropical addition (min), ``*`` or juxtaposition is tropical
multiplication (+), and numeric factors add into the coefficient, so
``2*X*Y (+) 1*X^3`` is ``min(2 + x + y, 1 + 3x)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations
from typing import Iterator, Mapping

from .core import SubIndex, TropMatrix, format_rational, require_symmetric
from .rank import STANDARD, SYMMETRIC, MODES

Exponents = tuple[tuple[str, int], ...]


class PolySyntaxError(ValueError):
    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} at position {pos}")
        self.pos = pos


@dataclass(frozen=True)
class TropPoly:
    monomials: tuple[tuple[Fraction, Exponents], ...]

    def __post_init__(self) -> None:
        merged: dict[Exponents, Fraction] = {}
        for coeff, exps in self.monomials:
            key = _normalize(exps)
            c = Fraction(coeff)
            merged[key] = min(merged[key], c) if key in merged else c
        if not merged:
            raise ValueError("a tropical polynomial needs at least one monomial")
        object.__setattr__(self, "monomials", tuple((c, e) for e, c in merged.items()))

    def variables(self) -> set[str]:
        return {v for _, exps in self.monomials for v, _ in exps}

    def __len__(self) -> int:
        return len(self.monomials)

    def __str__(self) -> str:
        return " (+) ".join(format_monomial(c, e) for c, e in self.monomials)


def _normalize(exps) -> Exponents:
    acc: dict[str, int] = {}
    for v, k in (exps.items() if isinstance(exps, Mapping) else exps):
        if k < 0:
            raise ValueError("exponents must be nonnegative")
        acc[v] = acc.get(v, 0) + k
    return tuple(sorted((v, k) for v, k in acc.items() if k))


def format_monomial(coeff: Fraction, exps: Exponents) -> str:
    factors = [v if k == 1 else f"{v}^{k}" for v, k in exps]
    if coeff != 0 or not factors:
        factors.insert(0, format_rational(coeff))
    return "*".join(factors)


_TOKEN = re.compile(
    r"""\s*(?:
        (?P<plus>\(\+\))
      | (?P<num>[+-]?(?:\d+/\d+|\d*\.\d+|\d+\.?))
      | (?P<var>[A-Za-z][A-Za-z0-9_]*(?:\{\d+(?:,\d+)*\})?)
      | (?P<pow>\^)
      | (?P<times>\*)
    )""",
    re.VERBOSE,
)


def parse_poly(text: str) -> TropPoly:
    """Parse the ASCII grammar in the module docstring."""
    tokens: list[tuple[str, str, int]] = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            start = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise PolySyntaxError(f"unexpected character {text[start]!r}", start)
        kind = m.lastgroup
        start = m.start(kind)
        tokens.append((kind, m.group(kind), start))
        pos = m.end()
    tokens.append(("end", "", len(text)))

    monomials = []
    k = 0

    def expect_factor() -> None:
        kind, _, at = tokens[k]
        if kind not in ("num", "var"):
            raise PolySyntaxError("expected a number or variable", at)

    while True:
        coeff = Fraction(0)
        exps: list[tuple[str, int]] = []
        expect_factor()
        while True:
            kind, val, at = tokens[k]
            if kind == "num":
                coeff += Fraction(val)
                k += 1
            elif kind == "var":
                k += 1
                power = 1
                if tokens[k][0] == "pow":
                    k += 1
                    pkind, pval, pat = tokens[k]
                    if pkind != "num" or not re.fullmatch(r"\d+", pval):
                        raise PolySyntaxError("exponent must be a nonnegative integer", pat)
                    power = int(pval)
                    k += 1
                exps.append((val, power))
            else:
                raise PolySyntaxError("expected a number or variable", at)
            kind = tokens[k][0]
            if kind == "times":
                k += 1
                expect_factor()
            elif kind not in ("num", "var"):
                break
        monomials.append((coeff, tuple(exps)))
        kind, _, at = tokens[k]
        if kind == "end":
            break
        if kind != "plus":
            raise PolySyntaxError("expected '(+)' between monomials", at)
        k += 1
    return TropPoly(tuple(monomials))


def evaluate(F: TropPoly, point: Mapping[str, Fraction]) -> tuple[Fraction, frozenset[int]]:
    """Value of ``F`` at ``point`` and the indices of all monomials attaining it."""
    missing = F.variables() - point.keys()
    if missing:
        raise KeyError(f"no value bound for {', '.join(sorted(missing))}")
    vals = [c + sum((k * Fraction(point[v]) for v, k in e), Fraction(0)) for c, e in F.monomials]
    best = min(vals)
    return best, frozenset(i for i, x in enumerate(vals) if x == best)


# ``eval`` mirrors the operation name; ``evaluate`` avoids shadowing the builtin inside this module
eval = evaluate  # noqa: A001


def in_hypersurface(F: TropPoly, point: Mapping[str, Fraction]) -> bool:
    """True iff at least two monomials are minimal at ``point``."""
    return len(evaluate(F, point)[1]) >= 2


def var_name(i: int, j: int) -> str:
    return f"X_{{{i},{j}}}"


def generate_minors(m: int, n: int, r: int, mode: str = STANDARD) -> Iterator[tuple[SubIndex, TropPoly]]:
    """Lazily yield each r x r minor of an indeterminate matrix, lexicographic by (rows, cols)."""
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    if not 1 <= r <= min(m, n):
        raise ValueError(f"r must lie in 1..{min(m, n)}")
    if mode == SYMMETRIC and m != n:
        raise ValueError("symmetric minors need a square matrix")
    perms = list(permutations(range(r)))
    colsets = list(combinations(range(1, n + 1), r))
    for rows in combinations(range(1, m + 1), r):
        for cols in colsets:
            monos = []
            for p in perms:
                exps = []
                for k in range(r):
                    i, j = rows[k], cols[p[k]]
                    if mode == SYMMETRIC and i > j:
                        i, j = j, i
                    exps.append((var_name(i, j), 1))
                monos.append((Fraction(0), tuple(exps)))
            yield SubIndex(rows, cols), TropPoly(tuple(monos))


def matrix_point(A: TropMatrix, mode: str = STANDARD) -> dict[str, Fraction]:
    if mode == SYMMETRIC:
        return {var_name(i, j): A[i, j] for i in range(1, A.rows + 1) for j in range(i, A.cols + 1)}
    return {var_name(i, j): A[i, j] for i in range(1, A.rows + 1) for j in range(1, A.cols + 1)}


def first_failing_minor(A: TropMatrix, r: int, mode: str = STANDARD) -> SubIndex | None:
    """First minor (lexicographic) whose hypersurface misses ``A``; None if ``A`` lies on all of them."""
    if mode == SYMMETRIC:
        require_symmetric(A)
    point = matrix_point(A, mode)
    for where, F in generate_minors(A.rows, A.cols, r, mode):
        if not in_hypersurface(F, point):
            return where
    return None


def membership_via_minors(A: TropMatrix, r: int, mode: str = STANDARD) -> bool:
    """Prevariety membership by evaluating every r x r minor polynomial at ``A``."""
    return first_failing_minor(A, r, mode) is None
