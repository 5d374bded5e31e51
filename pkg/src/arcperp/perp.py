"""Graded inverse systems of the arc ideal, truncations, and cross-checks.

``perp_graded_basis`` computes, by exact kernel extraction, the space of
degree-d polynomials in derivative orders <= H annihilated by every arc
generator.  Annihilation by the degree-2 generators alone characterizes the
space: a monomial multiple m*g acts as m acting after g, so the generator
constraints propagate to the whole ideal.

The other entry points certify, on concrete instances, that this kernel
description agrees with the independently computed Wronskian/Hankel-minor
spans, that restricting high orders to zero realizes the truncated inverse
systems, and that the scaled-triangle minor spaces are exactly the
differentially homogeneous polynomials.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction

from .arcgen import arc_generators_up_to
from .hankel import GradedSpan, hankel_matrix, minor, minor_span, triangular_matrix
from .linalg import MonomialIndex, RationalMatrix, Span, span_equal
from .pairing import apply_pairing, directional_derivative
from .ring import E, Monomial, Polynomial, al, x, xi, y


def perp_graded_basis(n: int, degree: int, max_order: int) -> Span:
    """Basis of the degree-d, order <= H part of the inverse system.

    Solves, per weight class, the linear system "g applied to P vanishes"
    over all generators with t-power <= 2*max_order; generators beyond that
    bound act as zero on the ambient space.  Weight classes never interact:
    a weight-l generator maps weight-w candidates into weight-(w-l) monomials.
    """
    if degree < 0 or max_order < 0 or n < 1:
        raise ValueError("perp_graded_basis needs n >= 1, degree >= 0, max_order >= 0")
    ambient = MonomialIndex.graded(n, degree, max_order)
    generators = arc_generators_up_to(n, 2 * max_order)
    by_weight: dict[int, list[Monomial]] = {}
    for m in ambient:
        by_weight.setdefault(m.weight(), []).append(m)
    kernel_polys: list[Polynomial] = []
    for _, monomials in sorted(by_weight.items()):
        kernel_polys.extend(_weight_block_kernel(monomials, generators))
    return Span.from_polynomials(kernel_polys, ambient)


def _weight_block_kernel(
    monomials: list[Monomial], generators: list[Polynomial]
) -> list[Polynomial]:
    columns = {m: c for c, m in enumerate(monomials)}
    rows: list[list[Fraction]] = []
    row_of_output: dict[tuple[int, Monomial], int] = {}
    for gi, g in enumerate(generators):
        for c, m in enumerate(monomials):
            image = apply_pairing(g, Polynomial.from_monomial(m))
            for out_m, coeff in image.terms.items():
                key = (gi, out_m)
                r = row_of_output.get(key)
                if r is None:
                    r = len(rows)
                    row_of_output[key] = r
                    rows.append([Fraction(0)] * len(monomials))
                rows[r][c] = coeff
    if not rows:
        return [Polynomial.from_monomial(m) for m in monomials]
    matrix = RationalMatrix(rows, cols=len(monomials))
    basis = []
    for vec in matrix.kernel_basis():
        basis.append(
            Polynomial({m: vec[columns[m]] for m in monomials if vec[columns[m]] != 0})
        )
    return basis


def truncated_perp_basis(n: int, h: int) -> GradedSpan:
    """Graded span of all minors of the triangular family, sizes 0..h+1."""
    return minor_span(triangular_matrix(n, h), range(h + 2))


def restriction_span(n: int, h: int, degree: int, max_order: int) -> Span:
    """Span of the order->h restrictions of the degree-d inverse-system basis."""
    basis = perp_graded_basis(n, degree, max_order).basis_polynomials()
    restricted = [p.restrict_above(h) for p in basis]
    ambient = MonomialIndex.graded(n, degree, h)
    return Span.from_polynomials([p for p in restricted if not p.is_zero], ambient)


# -- span equality of the kernel and minor descriptions -----------------------


def hankel_minor_intersection_span(n: int, degree: int, max_order: int) -> Span:
    """Span of the degree-d variable Wronskians, intersected with orders <= H.

    The Wronskian of d distinct derivative variables is exactly the maximal
    minor of the d-row Hankel block picking those columns, so the span is
    enumerated as maximal minors.  Each one is weight-homogeneous with weight
    d(d-1)/2 + sum of the chosen column offsets; minors of weight above d*H
    cannot meet the order <= H subspace, and every admissible one uses
    offsets at most d*H - d(d-1)/2.  The block with that offset bound is
    therefore an exact finite certificate, no stabilization needed.
    """
    if degree == 0:
        one = Polynomial.constant(1)
        return Span.from_polynomials([one], MonomialIndex([Monomial.one()]))
    base_weight = degree * (degree - 1) // 2
    max_offset = max(degree * max_order - base_weight, 0)
    matrix = hankel_matrix(n, degree, max_offset)
    by_weight: dict[int, list[Polynomial]] = {}
    rows = tuple(range(degree))
    memo: dict = {}
    for cols in itertools.combinations(range(matrix.cols), degree):
        offsets = sum(c // n for c in cols)
        weight = base_weight + offsets
        if weight > degree * max_order:
            continue
        value = minor(matrix, rows, cols, _memo=memo)
        if not value.is_zero:
            by_weight.setdefault(weight, []).append(value)
    pieces: list[Polynomial] = []
    for _, polys in sorted(by_weight.items()):
        pieces.extend(_intersect_with_order_bound(polys, max_order))
    ambient = MonomialIndex.graded(n, degree, max_order)
    return Span.from_polynomials(pieces, ambient)


def _intersect_with_order_bound(polys: list[Polynomial], max_order: int) -> list[Polynomial]:
    """Basis of span(polys) intersected with the span of order <= H monomials."""
    span = Span.from_polynomials(polys)
    if span.dimension == 0:
        return []
    basis = span.basis_polynomials()
    bad = [m for m in span.index if m.max_order() > max_order]
    if not bad:
        return list(basis)
    bad_pos = {m: i for i, m in enumerate(bad)}
    rows = []
    for b in basis:
        row = [Fraction(0)] * len(bad)
        for m, c in b.terms.items():
            i = bad_pos.get(m)
            if i is not None:
                row[i] = c
        rows.append(row)
    # combinations of basis rows with zero coordinates on every bad monomial
    matrix = RationalMatrix(
        [[rows[r][c] for r in range(len(basis))] for c in range(len(bad))],
        cols=len(basis),
    )
    out = []
    for vec in matrix.kernel_basis():
        combo = Polynomial.zero()
        for coeff, b in zip(vec, basis):
            if coeff != 0:
                combo = combo + coeff * b
        if not combo.is_zero:
            out.append(combo)
    return out


def minor_span_matches_kernel(n: int, degree: int, max_order: int) -> bool:
    """Do the kernel and Hankel-minor descriptions of the graded piece agree?

    The two sides are computed by independent code paths: exact kernel
    extraction from the generator constraints, versus symbolic determinants
    of the Hankel block intersected with the order bound.
    """
    kernel_side = perp_graded_basis(n, degree, max_order)
    minor_side = hankel_minor_intersection_span(n, degree, max_order)
    return span_equal(kernel_side, minor_side)


# -- elimination / truncation certificate -------------------------------------


def stabilized_restriction_span(
    n: int, h: int, degree: int, start_order: int | None = None, max_steps: int = 8
) -> tuple[Span, int]:
    """Restriction span with the order bound raised until two steps agree.

    Returns the stabilized span and the order at which it stabilized.  Raises
    ``RuntimeError`` when no stabilization happens within ``max_steps``
    increments (which would leave the certificate incomplete).
    """
    order = max(start_order if start_order is not None else h + degree, h)
    current = restriction_span(n, h, degree, order)
    for _ in range(max_steps):
        nxt = restriction_span(n, h, degree, order + 1)
        if span_equal(current, nxt):
            return nxt, order + 1
        current = nxt
        order += 1
    raise RuntimeError(
        f"restriction span did not stabilize for n={n}, h={h}, degree={degree}"
    )


def truncation_matches_restriction(n: int, h: int) -> bool:
    """Does restricting the inverse system reproduce the triangular minor span?

    Checks, for every degree d <= h+1, that the stabilized restriction span
    equals the degree-d part of the triangular minor span.  Degrees above h+1
    cannot occur: the triangular family has h+1 rows, which bounds minor size.
    """
    truncated = truncated_perp_basis(n, h)
    for degree in range(h + 2):
        restricted, _ = stabilized_restriction_span(n, h, degree)
        if not span_equal(restricted, truncated.span(degree)):
            return False
    return True


# -- pointwise certificates on single polynomials ------------------------------


def vanishes_on_exponential_sums(p: Polynomial, d: int) -> bool:
    """Is p identically zero on every sum of d exponential trajectories?

    Substitutes x_i^(j) -> sum_{m<=d} al_{m,i} * xi_m^j * E_m and tests
    whether the result vanishes identically in the auxiliaries.
    """
    mapping = {}
    for m_var in _diff_variables_of(p):
        total = Polynomial.zero()
        for m in range(1, d + 1):
            total = total + Polynomial.from_monomial(
                Monomial(((al(m, m_var.i), 1), (xi(m), m_var.j), (E(m), 1)))
            )
        mapping[m_var] = total
    return p.substitute(mapping).is_zero


def linear_in_exponential_shift(p: Polynomial) -> bool:
    """Is p(x + exponential shift) linear in the exponential marker?

    Substitutes x_i^(j) -> x_i^(j) + al_{1,i} * xi_1^j * E_1 and requires the
    result to have degree <= 1 in E_1 with the degree-1 coefficient equal to
    the exponential-direction derivative of p.
    """
    marker = E(1)
    mapping = {}
    for v in _diff_variables_of(p):
        shift = Polynomial.from_monomial(
            Monomial(((al(1, v.i), 1), (xi(1), v.j), (marker, 1)))
        )
        mapping[v] = Polynomial.from_variable(v) + shift
    shifted = p.substitute(mapping)
    if shifted.degree_in(marker) > 1:
        return False
    return shifted.coefficient_of_power(marker, 1) == directional_derivative(p)


def is_differentially_homogeneous(p: Polynomial, d: int) -> bool:
    """Does replacing x by y*x under Leibniz multiply p by y^d?"""
    mapping = {}
    for v in _diff_variables_of(p):
        total = Polynomial.zero()
        for k in range(v.j + 1):
            total = total + Polynomial.from_monomial(
                Monomial(((y(k), 1), (x(v.i, v.j - k), 1))), math.comb(v.j, k)
            )
        mapping[v] = total
    expected = Polynomial.from_monomial(Monomial.of(y(0), d)) * p
    return p.substitute(mapping) == expected


def _diff_variables_of(p: Polynomial):
    seen = set()
    for m in p.terms:
        for v, _ in m.pairs:
            if v.kind == "x":
                seen.add(v)
    return sorted(seen)


def scaled_of_triangular_map(p: Polynomial, h: int) -> Polynomial:
    """The substitution x^(i) -> x^(h-i)/(h-i)! that carries the triangular
    minor space onto the scaled one."""
    mapping = {}
    for v in _diff_variables_of(p):
        if v.j > h:
            raise ValueError(f"variable {v.token()} has order above h={h}")
        mapping[v] = Polynomial.from_monomial(
            Monomial.of(x(v.i, h - v.j)), Fraction(1, math.factorial(h - v.j))
        )
    return p.substitute(mapping)
