"""Exact scalars, matrices and index bookkeeping shared by every module.

All user-facing indices are 1-based. Scalars are :class:`fractions.Fraction`,
so ties between tropical products are decided exactly.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Iterator, Sequence, Union

Rational = Fraction
Number = Union[int, Fraction, str]


class MatrixFormatError(ValueError):
    """Malformed matrix text or JSON."""


class NotSymmetricError(ValueError):
    """A symmetric matrix was required."""


_RATIONAL_RE = re.compile(r"^[+-]?(\d+(/\d+)?|\d*\.\d+|\d+\.\d*)$")


def to_rational(x: Number) -> Fraction:
    """Convert an int, Fraction or numeric token (``p``, ``p/q``, ``1.25``) exactly."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not matrix entries")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        token = x.strip()
        if not _RATIONAL_RE.match(token):
            raise MatrixFormatError(f"not a rational number: {x!r}")
        try:
            return Fraction(token)
        except ZeroDivisionError as exc:
            raise MatrixFormatError(f"zero denominator: {x!r}") from exc
    if isinstance(x, float):
        # floats only enter through JSON; take the decimal spelling, not the binary value
        return Fraction(repr(x))
    raise TypeError(f"cannot convert {type(x).__name__} to a rational")


def format_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class SubIndex:
    """Row and column selections, 1-based and strictly increasing."""

    rows: tuple[int, ...]
    cols: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "rows", tuple(int(i) for i in self.rows))
        object.__setattr__(self, "cols", tuple(int(j) for j in self.cols))
        for name, idx in (("rows", self.rows), ("cols", self.cols)):
            if any(b <= a for a, b in zip(idx, idx[1:])):
                raise ValueError(f"{name} must be strictly increasing: {idx}")
            if idx and idx[0] < 1:
                raise ValueError(f"{name} are 1-based: {idx}")

    @property
    def size(self) -> int:
        return len(self.rows)

    @property
    def is_square(self) -> bool:
        return len(self.rows) == len(self.cols)

    def sort_key(self) -> tuple:
        return (self.rows, self.cols)

    def __str__(self) -> str:
        return "rows {%s} cols {%s}" % (
            ",".join(map(str, self.rows)),
            ",".join(map(str, self.cols)),
        )

    def to_json(self) -> dict:
        return {"rows": list(self.rows), "cols": list(self.cols)}


@dataclass(frozen=True)
class TropMatrix:
    """Dense matrix of rationals with an explicit symmetry marker."""

    entries: tuple[tuple[Fraction, ...], ...]
    symmetric: bool = False

    def __post_init__(self) -> None:
        rows = tuple(tuple(to_rational(x) for x in row) for row in self.entries)
        if not rows or not rows[0]:
            raise MatrixFormatError("matrix must have at least one row and column")
        width = len(rows[0])
        if any(len(row) != width for row in rows):
            raise MatrixFormatError("ragged rows")
        object.__setattr__(self, "entries", rows)
        if self.symmetric and not _is_symmetric(rows):
            raise NotSymmetricError("symmetric marker set on asymmetric data")

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[Number]], symmetric: bool = False) -> "TropMatrix":
        return cls(tuple(tuple(row) for row in rows), symmetric)

    @classmethod
    def zeros(cls, m: int, n: int | None = None, symmetric: bool = False) -> "TropMatrix":
        n = m if n is None else n
        return cls(tuple((Fraction(0),) * n for _ in range(m)), symmetric)

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0])

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        """1-based entry access: ``A[i, j]``."""
        i, j = ij
        if not (1 <= i <= self.rows and 1 <= j <= self.cols):
            raise IndexError(f"entry ({i},{j}) outside {self.rows}x{self.cols}")
        return self.entries[i - 1][j - 1]

    def is_symmetric_data(self) -> bool:
        return _is_symmetric(self.entries)

    def as_symmetric(self) -> "TropMatrix":
        """Set the symmetry marker (validated)."""
        return TropMatrix(self.entries, True)

    def as_general(self) -> "TropMatrix":
        return TropMatrix(self.entries, False)

    def transpose(self) -> "TropMatrix":
        return TropMatrix(tuple(zip(*self.entries)), self.symmetric)

    def min_entry(self) -> Fraction:
        return min(min(row) for row in self.entries)

    def max_entry(self) -> Fraction:
        return max(max(row) for row in self.entries)

    def full_index(self) -> SubIndex:
        return SubIndex(tuple(range(1, self.rows + 1)), tuple(range(1, self.cols + 1)))

    def tolist(self) -> list[list[Fraction]]:
        return [list(row) for row in self.entries]

    def __str__(self) -> str:
        return serialize_matrix(self)


def _is_symmetric(rows: Sequence[Sequence[Fraction]]) -> bool:
    n = len(rows)
    if any(len(row) != n for row in rows):
        return False
    return all(rows[i][j] == rows[j][i] for i in range(n) for j in range(i + 1, n))


def require_symmetric(A: TropMatrix) -> None:
    if not A.symmetric:
        raise NotSymmetricError("operation requires a matrix carrying the symmetric marker")


def check_subindex(A: TropMatrix, s: SubIndex) -> None:
    if any(i > A.rows for i in s.rows) or any(j > A.cols for j in s.cols):
        raise IndexError(f"{s} out of range for {A.rows}x{A.cols} matrix")


def submatrix(A: TropMatrix, s: SubIndex) -> TropMatrix:
    """Selected rows/columns of ``A``; the symmetric marker survives only for principal selections."""
    check_subindex(A, s)
    data = tuple(tuple(A.entries[i - 1][j - 1] for j in s.cols) for i in s.rows)
    return TropMatrix(data, A.symmetric and s.rows == s.cols)


def compose(outer: SubIndex, inner: SubIndex) -> SubIndex:
    """Index of ``submatrix(submatrix(A, outer), inner)`` relative to ``A``."""
    if any(i > len(outer.rows) for i in inner.rows) or any(j > len(outer.cols) for j in inner.cols):
        raise IndexError(f"{inner} out of range for selection {outer}")
    return SubIndex(
        tuple(outer.rows[i - 1] for i in inner.rows),
        tuple(outer.cols[j - 1] for j in inner.cols),
    )


def subindices(m: int, n: int, r: int) -> Iterator[SubIndex]:
    """All r x r selections of an m x n matrix, lexicographic by (rows, cols)."""
    colsets = list(combinations(range(1, n + 1), r))
    for rows in combinations(range(1, m + 1), r):
        for cols in colsets:
            yield SubIndex(rows, cols)


def scale_row(A: TropMatrix, i: int, c: Number) -> TropMatrix:
    """Tropically multiply row ``i`` by ``c``."""
    c = to_rational(c)
    if not 1 <= i <= A.rows:
        raise IndexError(f"row {i} out of range")
    data = tuple(
        tuple(x + c for x in row) if k == i - 1 else row for k, row in enumerate(A.entries)
    )
    return TropMatrix(data, False)


def scale_col(A: TropMatrix, j: int, c: Number) -> TropMatrix:
    """Tropically multiply column ``j`` by ``c``."""
    c = to_rational(c)
    if not 1 <= j <= A.cols:
        raise IndexError(f"column {j} out of range")
    data = tuple(tuple(x + c if k == j - 1 else x for k, x in enumerate(row)) for row in A.entries)
    return TropMatrix(data, False)


def sym_scale(A: TropMatrix, i: int, c: Number) -> TropMatrix:
    """Scale row ``i`` and column ``i`` together; keeps symmetry."""
    require_symmetric(A)
    c = to_rational(c)
    if not 1 <= i <= A.rows:
        raise IndexError(f"index {i} out of range")
    k = i - 1
    data = tuple(
        tuple(x + (c if r == k else 0) + (c if s == k else 0) for s, x in enumerate(row))
        for r, row in enumerate(A.entries)
    )
    return TropMatrix(data, True)


def permute(A: TropMatrix, row_perm: Sequence[int] | None = None, col_perm: Sequence[int] | None = None) -> TropMatrix:
    """Reorder rows/columns: new row ``k`` is old row ``row_perm[k-1]`` (1-based)."""
    rp = list(row_perm) if row_perm is not None else list(range(1, A.rows + 1))
    cp = list(col_perm) if col_perm is not None else list(range(1, A.cols + 1))
    if sorted(rp) != list(range(1, A.rows + 1)) or sorted(cp) != list(range(1, A.cols + 1)):
        raise ValueError("not a permutation")
    data = tuple(tuple(A.entries[i - 1][j - 1] for j in cp) for i in rp)
    keep = A.symmetric and rp == cp
    return TropMatrix(data, keep)


def cycles_to_perm(cycles: Iterable[Sequence[int]], n: int) -> list[int]:
    """Image list of a permutation given in disjoint cycle notation (1-based)."""
    image = list(range(1, n + 1))
    for cyc in cycles:
        for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
            image[a - 1] = b
    return image


def integer_scaled(A: TropMatrix) -> list[list[int]]:
    """Entries multiplied by the common denominator; ties and argmins are unchanged."""
    den = 1
    for row in A.entries:
        for x in row:
            den = den * x.denominator // math.gcd(den, x.denominator)
    return [[int(x * den) for x in row] for row in A.entries]


# --- text / JSON formats -------------------------------------------------


def parse_matrix(text: str) -> TropMatrix:
    """Parse either the ``m n [symmetric]`` text format or the JSON format."""
    stripped = text.strip()
    if stripped.startswith("{"):
        return _parse_json(stripped)
    lines = [ln.split("#", 1)[0].strip() for ln in stripped.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise MatrixFormatError("empty input")
    header = lines[0].split()
    if len(header) not in (2, 3) or (len(header) == 3 and header[2].lower() != "symmetric"):
        raise MatrixFormatError(f"bad header line: {lines[0]!r}")
    try:
        m, n = int(header[0]), int(header[1])
    except ValueError as exc:
        raise MatrixFormatError(f"bad header line: {lines[0]!r}") from exc
    if m < 1 or n < 1:
        raise MatrixFormatError("dimensions must be positive")
    body = lines[1:]
    if len(body) != m:
        raise MatrixFormatError(f"expected {m} rows, found {len(body)}")
    rows = []
    for k, line in enumerate(body, start=1):
        tokens = line.split()
        if len(tokens) != n:
            raise MatrixFormatError(f"row {k}: expected {n} entries, found {len(tokens)}")
        rows.append(tuple(to_rational(t) for t in tokens))
    return TropMatrix(tuple(rows), len(header) == 3)


def _parse_json(text: str) -> TropMatrix:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MatrixFormatError(f"invalid JSON: {exc}") from exc
    try:
        m, n = int(obj["rows"]), int(obj["cols"])
        entries = obj["entries"]
    except (KeyError, TypeError, ValueError) as exc:
        raise MatrixFormatError("JSON matrix needs rows, cols and entries") from exc
    if len(entries) != m or any(len(row) != n for row in entries):
        raise MatrixFormatError("entries do not match the declared shape")
    rows = tuple(tuple(to_rational(x) for x in row) for row in entries)
    return TropMatrix(rows, bool(obj.get("symmetric", False)))


def serialize_matrix(A: TropMatrix) -> str:
    head = f"{A.rows} {A.cols}" + (" symmetric" if A.symmetric else "")
    body = [" ".join(format_rational(x) for x in row) for row in A.entries]
    return "\n".join([head, *body]) + "\n"


def matrix_to_json(A: TropMatrix) -> dict:
    return {
        "rows": A.rows,
        "cols": A.cols,
        "symmetric": A.symmetric,
        "entries": [[format_rational(x) for x in row] for row in A.entries],
    }
