"""Exact rational linear algebra over monomial-indexed coefficient matrices.

Rank queries run fraction-free Bareiss elimination on integer-cleared rows,
which bounds intermediate entry growth; reduced row-echelon form is finished
with plain rational Gauss-Jordan on the (small) surviving echelon rows.
Pivoting is always the first nonzero entry in column order, so every result
is deterministic.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from .ring import Monomial, Polynomial, differential_variables


class MonomialIndex:
    """An ordered ambient basis of monomials with a position lookup.

    Monomials are kept in descending monomial order (the global graded-lex
    order), so coefficient matrices built against the index are reproducible.
    """

    def __init__(self, monomials: Iterable[Monomial]):
        ordered = sorted(set(monomials), reverse=True)
        self.monomials: tuple[Monomial, ...] = tuple(ordered)
        self.position: dict[Monomial, int] = {m: i for i, m in enumerate(ordered)}

    @classmethod
    def graded(cls, n: int, degree: int, max_order: int) -> "MonomialIndex":
        """All degree-d monomials in the variables x_i^(j), i <= n, j <= max_order."""
        variables = differential_variables(n, max_order)
        monomials = []
        for combo in itertools.combinations_with_replacement(variables, degree):
            counts: dict = {}
            for v in combo:
                counts[v] = counts.get(v, 0) + 1
            monomials.append(Monomial(counts.items()))
        return cls(monomials)

    @classmethod
    def spanning(cls, polys: Iterable[Polynomial]) -> "MonomialIndex":
        """The union of the supports of the given polynomials."""
        seen = set()
        for p in polys:
            seen.update(p.terms)
        return cls(seen)

    def __len__(self) -> int:
        return len(self.monomials)

    def __iter__(self):
        return iter(self.monomials)

    def __getitem__(self, i: int) -> Monomial:
        return self.monomials[i]

    def __contains__(self, m: Monomial) -> bool:
        return m in self.position

    def __eq__(self, other: object) -> bool:
        return isinstance(other, MonomialIndex) and self.monomials == other.monomials

    def __hash__(self) -> int:
        return hash(self.monomials)


class RationalMatrix:
    """A dense matrix of exact rationals."""

    def __init__(self, entries: Sequence[Sequence[Fraction]], cols: int | None = None):
        self.entries: list[list[Fraction]] = [
            [Fraction(e) for e in row] for row in entries
        ]
        self.rows = len(self.entries)
        if self.rows:
            self.cols = len(self.entries[0])
            if any(len(row) != self.cols for row in self.entries):
                raise ValueError("ragged matrix")
            if cols is not None and cols != self.cols:
                raise ValueError("explicit column count disagrees with rows")
        else:
            self.cols = cols or 0

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls(
            [[Fraction(1) if i == j else Fraction(0) for j in range(n)] for i in range(n)]
        )

    @classmethod
    def zero(cls, rows: int, cols: int) -> "RationalMatrix":
        return cls([[Fraction(0)] * cols for _ in range(rows)], cols=cols)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, RationalMatrix)
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def multiply_vector(self, v: Sequence[Fraction]) -> list[Fraction]:
        if len(v) != self.cols:
            raise ValueError("dimension mismatch")
        return [sum((row[j] * v[j] for j in range(self.cols)), Fraction(0)) for row in self.entries]

    def rank(self) -> int:
        return len(_bareiss_echelon(_integer_rows(self.entries), self.cols)[1])

    def row_reduce(self) -> "RationalMatrix":
        """The unique reduced row-echelon form, zero rows dropped."""
        reduced = _rref_rows(self.entries, self.cols)
        return RationalMatrix(reduced, cols=self.cols)

    def kernel_basis(self) -> list[tuple[Fraction, ...]]:
        """A basis of the right nullspace, one vector per free column."""
        reduced = _rref_rows(self.entries, self.cols)
        pivots = [_first_nonzero(row) for row in reduced]
        pivot_set = set(pivots)
        basis: list[tuple[Fraction, ...]] = []
        for free in range(self.cols):
            if free in pivot_set:
                continue
            vec = [Fraction(0)] * self.cols
            vec[free] = Fraction(1)
            for row, piv in zip(reduced, pivots):
                vec[piv] = -row[free]
            basis.append(tuple(vec))
        return basis


def _first_nonzero(row: Sequence) -> int:
    for j, e in enumerate(row):
        if e != 0:
            return j
    return -1


def _integer_rows(entries: Sequence[Sequence[Fraction]]) -> list[list[int]]:
    out = []
    for row in entries:
        lcm = 1
        for e in row:
            d = e.denominator
            lcm = lcm * d // gcd(lcm, d)
        out.append([int(e * lcm) for e in row])
    return out


def _bareiss_echelon(
    rows: list[list[int]], cols: int
) -> tuple[list[list[int]], list[int]]:
    """Fraction-free forward elimination; returns echelon rows and pivot columns."""
    work = [row for row in rows if any(row)]
    pivots: list[int] = []
    prev = 1
    r = 0
    for c in range(cols):
        pivot_row = None
        for i in range(r, len(work)):
            if work[i][c] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        work[r], work[pivot_row] = work[pivot_row], work[r]
        piv = work[r][c]
        for i in range(r + 1, len(work)):
            if not any(work[i][c:]):
                continue
            factor = work[i][c]
            row_i = work[i]
            row_r = work[r]
            for j in range(c, cols):
                row_i[j] = (piv * row_i[j] - factor * row_r[j]) // prev
        prev = piv
        pivots.append(c)
        r += 1
        if r == len(work):
            break
    echelon = [row for row in work[: len(pivots)]]
    return echelon, pivots


def _rref_rows(entries: Sequence[Sequence[Fraction]], cols: int) -> list[list[Fraction]]:
    echelon, pivots = _bareiss_echelon(_integer_rows(entries), cols)
    rows = [[Fraction(e) for e in row] for row in echelon]
    # Gauss-Jordan back-substitution on the small echelon basis.
    for i in range(len(rows) - 1, -1, -1):
        piv = pivots[i]
        inv = rows[i][piv]
        rows[i] = [e / inv for e in rows[i]]
        for k in range(i):
            factor = rows[k][piv]
            if factor != 0:
                rows[k] = [a - factor * b for a, b in zip(rows[k], rows[i])]
    return rows


def coeff_matrix(polys: Sequence[Polynomial], index: MonomialIndex) -> RationalMatrix:
    """Row r, column c holds the coefficient of index[c] in polys[r]."""
    rows = []
    for p in polys:
        row = [Fraction(0)] * len(index)
        for m, c in p.terms.items():
            pos = index.position.get(m)
            if pos is None:
                raise ValueError(f"monomial {m} outside the ambient index")
            row[pos] = c
        rows.append(row)
    return RationalMatrix(rows, cols=len(index))


class Span:
    """A finite-dimensional subspace of polynomials in reduced echelon form.

    The basis rows are the unique RREF of the input coefficient rows against
    the ambient index, so two spans over compatible indexes are equal exactly
    when their basis polynomials coincide.
    """

    def __init__(self, index: MonomialIndex, basis_rows: Sequence[Sequence[Fraction]]):
        self.index = index
        self.basis = [list(map(Fraction, row)) for row in basis_rows]

    @classmethod
    def from_polynomials(
        cls, polys: Iterable[Polynomial], index: MonomialIndex | None = None
    ) -> "Span":
        polys = [p for p in polys if not p.is_zero]
        if index is None:
            index = MonomialIndex.spanning(polys)
        groups = _bihomogeneous_groups(polys)
        if groups is None:
            basis = coeff_matrix(polys, index).row_reduce().entries
        else:
            rows = []
            for key in sorted(groups):
                block = groups[key]
                block_index = MonomialIndex.spanning(block)
                block_rref = coeff_matrix(block, block_index).row_reduce()
                for row in block_rref.entries:
                    full = [Fraction(0)] * len(index)
                    for j, value in enumerate(row):
                        if value != 0:
                            pos = index.position.get(block_index[j])
                            if pos is None:
                                raise ValueError(
                                    f"monomial {block_index[j]} outside the ambient index"
                                )
                            full[pos] = value
                    rows.append(full)
            rows.sort(key=_first_nonzero)
            basis = rows
        return cls(index, basis)

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def basis_polynomials(self) -> tuple[Polynomial, ...]:
        out = []
        for row in self.basis:
            terms = {
                self.index[j]: value for j, value in enumerate(row) if value != 0
            }
            out.append(Polynomial(terms))
        return tuple(out)

    def reduce(self, p: Polynomial) -> Polynomial:
        """The remainder of p after elimination against the basis rows."""
        remainder = p
        for b in self.basis_polynomials():
            lead = b.monomials()[0]
            c = remainder.coeff(lead)
            if c != 0:
                remainder = remainder - c * b
        return remainder

    def contains(self, p: Polynomial) -> bool:
        return self.reduce(p).is_zero

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Span) and self.basis_polynomials() == other.basis_polynomials()


def _bihomogeneous_groups(
    polys: Sequence[Polynomial],
) -> dict[tuple[int, int], list[Polynomial]] | None:
    """Group by (degree, weight) when every input is homogeneous in both.

    Monomials of distinct (degree, weight) classes are distinct, so the blocks
    have disjoint column supports and the blockwise RREFs assemble into the
    global RREF.  Returns None when the decomposition does not apply.
    """
    groups: dict[tuple[int, int], list[Polynomial]] = {}
    for p in polys:
        d = p.homogeneous_degree()
        w = p.homogeneous_weight()
        if d is None or w is None:
            return None
        groups.setdefault((d, w), []).append(p)
    return groups


def span_equal(a: Span, b: Span) -> bool:
    """Exact subspace equality via the unique reduced bases."""
    return a.basis_polynomials() == b.basis_polynomials()
