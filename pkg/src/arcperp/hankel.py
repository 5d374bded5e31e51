"""Structured symbolic matrices, Wronskians, and minor spans.

Four matrix families are built here:

* ``hankel_matrix(n, h, k)`` -- h rows, n(k+1) columns; the entry in row r of
  the offset-c block is x_j^(r+c) for each family j;
* ``triangular_matrix(n, h)`` -- horizontal concatenation over families of the
  order-(h+1) upper triangle with x^(h-i) on the i-th superdiagonal;
* ``scaled_matrix(n, h)`` -- same shape with x^(i)/i! on the i-th
  superdiagonal (x on the main diagonal);
* ``scaled_augmented_matrix(n, h)`` -- scaled_matrix(n, h) with an identity
  block appended, realizing the substitution of 1 for an extra family.

Determinants use cofactor expansion memoized on (row, column) subsets, so the
exponentially many minors of one matrix share their subproblems.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from .linalg import MonomialIndex, Span
from .ring import ONE, ZERO, Monomial, Polynomial, x


@dataclass(frozen=True)
class SymbolicMatrix:
    """A rectangular array of polynomials."""

    entries: tuple[tuple[Polynomial, ...], ...]

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    def entry(self, r: int, c: int) -> Polynomial:
        return self.entries[r][c]

    @classmethod
    def from_rows(cls, rows) -> "SymbolicMatrix":
        return cls(tuple(tuple(row) for row in rows))


def hankel_matrix(n: int, h: int, k: int) -> SymbolicMatrix:
    """The h x n(k+1) block of shifted derivatives: entry (r, c*n+j-1) = x_j^(r+c)."""
    if n < 1 or h < 0 or k < 0:
        raise ValueError("hankel_matrix needs n >= 1, h >= 0, k >= 0")
    rows = []
    for r in range(h):
        row = []
        for c in range(k + 1):
            for j in range(1, n + 1):
                row.append(Polynomial.from_variable(x(j, r + c)))
        rows.append(row)
    return SymbolicMatrix.from_rows(rows)


def _triangle(family: int, h: int, entry_for_diag) -> list[list[Polynomial]]:
    block = []
    for r in range(h + 1):
        row = []
        for c in range(h + 1):
            row.append(entry_for_diag(family, c - r) if c >= r else ZERO)
        block.append(row)
    return block


def triangular_matrix(n: int, h: int) -> SymbolicMatrix:
    """Concatenated upper triangles with x_j^(h-i) on the i-th superdiagonal."""
    if n < 1 or h < 0:
        raise ValueError("triangular_matrix needs n >= 1, h >= 0")
    blocks = [
        _triangle(j, h, lambda fam, i: Polynomial.from_variable(x(fam, h - i)))
        for j in range(1, n + 1)
    ]
    return _hconcat(blocks)


def _scaled_entry(family: int, i: int) -> Polynomial:
    return Polynomial.from_monomial(
        Monomial.of(x(family, i)), Fraction(1, math.factorial(i))
    )


def scaled_matrix(n: int, h: int) -> SymbolicMatrix:
    """Concatenated upper triangles with x_j^(i)/i! on the i-th superdiagonal."""
    if n < 1 or h < 0:
        raise ValueError("scaled_matrix needs n >= 1, h >= 0")
    blocks = [_triangle(j, h, _scaled_entry) for j in range(1, n + 1)]
    return _hconcat(blocks)


def scaled_augmented_matrix(n: int, h: int) -> SymbolicMatrix:
    """scaled_matrix(n, h) with the (h+1)-dimensional identity block appended."""
    base = scaled_matrix(n, h)
    rows = []
    for r in range(h + 1):
        identity_row = [ONE if c == r else ZERO for c in range(h + 1)]
        rows.append(list(base.entries[r]) + identity_row)
    return SymbolicMatrix.from_rows(rows)


def _hconcat(blocks: list[list[list[Polynomial]]]) -> SymbolicMatrix:
    rows = []
    for r in range(len(blocks[0])):
        row: list[Polynomial] = []
        for block in blocks:
            row.extend(block[r])
        rows.append(row)
    return SymbolicMatrix.from_rows(rows)


MATRIX_FAMILIES = {
    "H": hankel_matrix,
    "T": triangular_matrix,
    "S": scaled_matrix,
    "S1": scaled_augmented_matrix,
}


def build_matrix(family: str, n: int, h: int, k: int | None = None) -> SymbolicMatrix:
    """Build a structured matrix by family tag: H, T, S, or S1."""
    if family == "H":
        if k is None:
            raise ValueError("the H family needs the offset bound k")
        return hankel_matrix(n, h, k)
    try:
        builder = MATRIX_FAMILIES[family]
    except KeyError:
        raise ValueError(f"unknown matrix family {family!r}") from None
    return builder(n, h)


# -- determinants and minors --------------------------------------------------

_DetMemo = dict[tuple[tuple[int, ...], tuple[int, ...]], Polynomial]


def _det_recursive(
    m: SymbolicMatrix,
    rows: tuple[int, ...],
    cols: tuple[int, ...],
    memo: _DetMemo,
) -> Polynomial:
    if not rows:
        return ONE
    key = (rows, cols)
    cached = memo.get(key)
    if cached is not None:
        return cached
    r = rows[0]
    rest_rows = rows[1:]
    acc = ZERO
    for pos, c in enumerate(cols):
        e = m.entry(r, c)
        if e.is_zero:
            continue
        sub = _det_recursive(m, rest_rows, cols[:pos] + cols[pos + 1 :], memo)
        if sub.is_zero:
            continue
        term = e * sub
        acc = acc - term if pos % 2 else acc + term
    memo[key] = acc
    return acc


def determinant(m: SymbolicMatrix) -> Polynomial:
    """Exact symbolic determinant of a square matrix."""
    if m.rows != m.cols:
        raise ValueError(f"determinant of a {m.rows}x{m.cols} matrix")
    return _det_recursive(m, tuple(range(m.rows)), tuple(range(m.cols)), {})


def minor(
    m: SymbolicMatrix,
    rows: tuple[int, ...] | list[int],
    cols: tuple[int, ...] | list[int],
    _memo: _DetMemo | None = None,
) -> Polynomial:
    """Determinant of the selected square submatrix; the empty minor is 1."""
    rows = tuple(rows)
    cols = tuple(cols)
    if len(rows) != len(cols):
        raise ValueError("minor needs equally many rows and columns")
    if any(r < 0 or r >= m.rows for r in rows) or any(c < 0 or c >= m.cols for c in cols):
        raise ValueError("minor selector out of bounds")
    if list(rows) != sorted(set(rows)) or list(cols) != sorted(set(cols)):
        raise ValueError("minor selectors must be strictly increasing")
    return _det_recursive(m, rows, cols, {} if _memo is None else _memo)


def wronskian(fs: list[Polynomial]) -> Polynomial:
    """Determinant of the matrix whose i-th row is the i-th derivative of fs."""
    if not fs:
        return ONE
    rows = [list(fs)]
    for _ in range(len(fs) - 1):
        rows.append([f.derivative() for f in rows[-1]])
    return determinant(SymbolicMatrix.from_rows(rows))


def iter_minors(m: SymbolicMatrix, sizes):
    """Yield (size, rows, cols, value) by size, then lexicographic (rows, cols)."""
    memo: _DetMemo = {}
    for size in sorted(sizes):
        if size < 0 or size > min(m.rows, m.cols):
            continue
        for rows in itertools.combinations(range(m.rows), size):
            for cols in itertools.combinations(range(m.cols), size):
                yield size, rows, cols, _det_recursive(m, rows, cols, memo)


class GradedSpan:
    """A degree-indexed family of spans with a total dimension."""

    def __init__(self, spans: dict[int, Span]):
        self.spans = dict(sorted(spans.items()))

    def degrees(self) -> list[int]:
        return list(self.spans)

    def span(self, degree: int) -> Span:
        got = self.spans.get(degree)
        if got is None:
            return Span(MonomialIndex(()), [])
        return got

    def dimension(self, degree: int) -> int:
        return self.span(degree).dimension

    @property
    def graded_dimensions(self) -> dict[int, int]:
        return {d: s.dimension for d, s in self.spans.items()}

    @property
    def total_dimension(self) -> int:
        return sum(s.dimension for s in self.spans.values())

    def basis_polynomials(self) -> list[Polynomial]:
        out: list[Polynomial] = []
        for d in self.degrees():
            out.extend(self.spans[d].basis_polynomials())
        return out


def minor_span(
    m: SymbolicMatrix, sizes, degree_filter: int | None = None
) -> GradedSpan:
    """Reduced span of all minors of the given sizes, grouped by degree.

    Size 0 contributes the constant 1.  Zero minors are discarded before the
    reduction.
    """
    by_degree: dict[int, list[Polynomial]] = {}
    for _, _, _, value in iter_minors(m, sizes):
        if value.is_zero:
            continue
        d = value.homogeneous_degree()
        if d is None:
            d = value.total_degree()
        if degree_filter is not None and d != degree_filter:
            continue
        by_degree.setdefault(d, []).append(value)
    spans = {d: Span.from_polynomials(polys) for d, polys in by_degree.items()}
    return GradedSpan(spans)
