import itertools

import pytest

from arcperp.arcgen import arc_generators_up_to
from arcperp.hankel import (
    SymbolicMatrix,
    build_matrix,
    determinant,
    hankel_matrix,
    iter_minors,
    minor,
    minor_span,
    scaled_augmented_matrix,
    scaled_matrix,
    triangular_matrix,
    wronskian,
)
from arcperp.linalg import Span, span_equal
from arcperp.pairing import annihilates, double_derivative_vanishes
from arcperp.ring import Polynomial, parse, x

from oracles import naive_determinant

P = parse


def grid(m: SymbolicMatrix) -> list[list[str]]:
    return [[str(e) for e in row] for row in m.entries]


class TestBuilders:
    def test_triangular_1_1(self):
        assert grid(triangular_matrix(1, 1)) == [["x1_1", "x1_0"], ["0", "x1_1"]]

    def test_hankel_1_2_2(self):
        assert grid(hankel_matrix(1, 2, 2)) == [
            ["x1_0", "x1_1", "x1_2"],
            ["x1_1", "x1_2", "x1_3"],
        ]

    def test_hankel_column_blocks_interleave_families(self):
        m = hankel_matrix(2, 1, 1)
        assert grid(m) == [["x1_0", "x2_0", "x1_1", "x2_1"]]

    def test_scaled_1_2(self):
        assert grid(scaled_matrix(1, 2)) == [
            ["x1_0", "x1_1", "1/2*x1_2"],
            ["0", "x1_0", "x1_1"],
            ["0", "0", "x1_0"],
        ]

    def test_augmented_appends_identity(self):
        assert grid(scaled_augmented_matrix(1, 1)) == [
            ["x1_0", "x1_1", "1", "0"],
            ["0", "x1_0", "0", "1"],
        ]

    def test_triangular_shape(self):
        m = triangular_matrix(2, 2)
        assert (m.rows, m.cols) == (3, 6)

    def test_build_matrix_dispatch(self):
        assert grid(build_matrix("T", 1, 1)) == grid(triangular_matrix(1, 1))
        assert grid(build_matrix("H", 1, 2, 2)) == grid(hankel_matrix(1, 2, 2))
        with pytest.raises(ValueError):
            build_matrix("H", 1, 2)  # k required
        with pytest.raises(ValueError):
            build_matrix("Q", 1, 1)


class TestWronskian:
    def test_two_variables(self):
        assert wronskian([P("x1_0"), P("x1_1")]) == P("x1_0*x1_2 - x1_1^2")

    def test_single(self):
        assert wronskian([P("x1_0")]) == P("x1_0")

    def test_repeated_entry_vanishes(self):
        assert wronskian([P("x1_0"), P("x1_0")]).is_zero

    def test_empty_list(self):
        assert wronskian([]) == Polynomial.constant(1)

    def test_transposition_flips_sign(self):
        fs = [P("x1_0"), P("x1_1"), P("x2_0")]
        swapped = [fs[1], fs[0], fs[2]]
        assert wronskian(fs) == -wronskian(swapped)

    def test_general_entries_match_oracle(self):
        fs = [P("x1_0 + x1_1"), P("x1_0^2")]
        rows = [fs, [f.derivative() for f in fs]]
        assert wronskian(fs) == naive_determinant(rows)


class TestMinorsAndDeterminant:
    def test_triangular_full_minor(self):
        assert minor(triangular_matrix(1, 1), (0, 1), (0, 1)) == P("x1_1^2")

    def test_hankel_minor(self):
        assert minor(hankel_matrix(1, 2, 2), (0, 1), (0, 2)) == P(
            "x1_0*x1_3 - x1_1*x1_2"
        )

    def test_hankel_minor_is_wronskian(self):
        assert minor(hankel_matrix(1, 2, 2), (0, 1), (0, 2)) == wronskian(
            [P("x1_0"), P("x1_2")]
        )

    def test_size_zero(self):
        assert minor(hankel_matrix(1, 2, 2), (), ()) == Polynomial.constant(1)

    def test_selector_validation(self):
        m = hankel_matrix(1, 2, 2)
        with pytest.raises(ValueError):
            minor(m, (0,), (0, 1))
        with pytest.raises(ValueError):
            minor(m, (1, 0), (0, 1))
        with pytest.raises(ValueError):
            minor(m, (0, 5), (0, 1))

    def test_determinant_identity(self):
        ident = SymbolicMatrix.from_rows(
            [[Polynomial.constant(1 if i == j else 0) for j in range(3)] for i in range(3)]
        )
        assert determinant(ident) == Polynomial.constant(1)

    def test_determinant_single_entry(self):
        m = SymbolicMatrix.from_rows([[P("x1_0 + 2")]])
        assert determinant(m) == P("x1_0 + 2")

    def test_determinant_2x2(self):
        m = SymbolicMatrix.from_rows([[P("x1_0"), P("x1_1")], [P("x1_1"), P("x1_2")]])
        assert determinant(m) == P("x1_0*x1_2 - x1_1^2")

    def test_determinant_matches_oracle(self):
        m = hankel_matrix(2, 3, 1)
        rows = [list(r) for r in m.entries[:3]]
        square = [row[:3] for row in rows]
        assert determinant(SymbolicMatrix.from_rows(square)) == naive_determinant(square)

    def test_non_square_determinant_rejected(self):
        with pytest.raises(ValueError):
            determinant(hankel_matrix(1, 2, 2))


class TestMinorSpan:
    def test_triangular_1_1(self):
        gs = minor_span(triangular_matrix(1, 1), {0, 1, 2})
        assert gs.total_dimension == 4
        assert [str(p) for p in gs.basis_polynomials()] == [
            "1",
            "x1_0",
            "x1_1",
            "x1_1^2",
        ]

    def test_triangular_1_2_graded(self):
        gs = minor_span(triangular_matrix(1, 2), {0, 1, 2, 3})
        assert gs.graded_dimensions == {0: 1, 1: 3, 2: 3, 3: 1}
        assert gs.total_dimension == 8

    def test_triangular_2_0(self):
        gs = minor_span(triangular_matrix(2, 0), {0, 1})
        assert gs.total_dimension == 3
        assert [str(p) for p in gs.basis_polynomials()] == ["1", "x1_0", "x2_0"]

    def test_degree_filter(self):
        gs = minor_span(triangular_matrix(1, 2), range(4), degree_filter=2)
        assert gs.degrees() == [2]
        assert gs.total_dimension == 3

    def test_enumeration_order(self):
        listing = list(iter_minors(triangular_matrix(1, 1), range(3)))
        keys = [(size, rows, cols) for size, rows, cols, _ in listing]
        assert keys == sorted(keys)


class TestStructuralInvariants:
    @pytest.mark.parametrize("n,h,k", [(1, 2, 2), (2, 2, 1)])
    def test_minors_annihilated_and_d2(self, n, h, k):
        gens = arc_generators_up_to(n, 2 * (h + k))
        for _, _, _, value in iter_minors(hankel_matrix(n, h, k), range(h + 1)):
            if value.is_zero:
                continue
            assert all(annihilates(g, value) for g in gens)
            assert double_derivative_vanishes(value)

    @pytest.mark.parametrize("n,h,k", [(1, 2, 1), (2, 2, 1), (1, 3, 1)])
    def test_derivative_of_maximal_minor_stays_in_family(self, n, h, k):
        # the derivative of each maximal minor lies in the span of maximal
        # minors of the widened matrix: adjoining it must not raise the rank
        wider = [
            value
            for _, _, _, value in iter_minors(hankel_matrix(n, h, k + 1), [h])
            if not value.is_zero
        ]
        wide_span = Span.from_polynomials(wider)
        for _, _, _, value in iter_minors(hankel_matrix(n, h, k), [h]):
            if value.is_zero:
                continue
            assert wide_span.contains(value.derivative())

    @pytest.mark.parametrize("n,d,J", [(1, 2, 2), (1, 3, 2), (2, 2, 2), (2, 3, 1)])
    def test_wronskians_are_the_maximal_minors(self, n, d, J):
        # size-d Wronskians of variables of order <= J coincide, as a span,
        # with the maximal minors of the d-row block with offsets <= J
        variables = [
            Polynomial.from_variable(x(i, j))
            for i in range(1, n + 1)
            for j in range(J + 1)
        ]
        wronskians = [
            w
            for subset in itertools.combinations(variables, d)
            if not (w := wronskian(list(subset))).is_zero
        ]
        minors = [
            value
            for _, _, _, value in iter_minors(hankel_matrix(n, d, J), [d])
            if not value.is_zero
        ]
        assert span_equal(
            Span.from_polynomials(wronskians), Span.from_polynomials(minors)
        )
