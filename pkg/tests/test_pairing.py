import pytest

from arcperp.arcgen import arc_generators_up_to
from arcperp.pairing import (
    OrderOverflowError,
    annihilates,
    apply_pairing,
    directional_derivative,
    double_derivative_vanishes,
)
from arcperp.ring import Polynomial, al, parse, x, xi

from oracles import diff_wrt, pairing_oracle

P = parse
WRONSKIAN_2 = "x1_0*x1_2 - x1_1^2"


class TestApplyPairing:
    def test_power_rule(self):
        assert apply_pairing(P("x1_0^2"), P("x1_0^3")) == P("6*x1_0")

    def test_generator_kills_wronskian(self):
        # both mixed second partials expanded by the oracle agree
        f, p = P("2*x1_0*x1_2 + x1_1^2"), P(WRONSKIAN_2)
        assert pairing_oracle(f, p).is_zero
        assert apply_pairing(f, p).is_zero

    def test_disjoint_variables(self):
        assert apply_pairing(P("x1_1"), P("x1_0")).is_zero

    def test_matches_oracle(self):
        pairs = [
            ("x1_0*x1_1", "x1_0^2*x1_1^3"),
            ("x1_0^2 + x2_0", "x1_0^2*x2_0 - x2_0^2"),
            ("x1_2", WRONSKIAN_2),
        ]
        for f_text, p_text in pairs:
            f, p = P(f_text), P(p_text)
            assert apply_pairing(f, p) == pairing_oracle(f, p)

    def test_composition_on_example(self):
        f, g, p = P("x1_0"), P("x1_1"), P("x1_0^2*x1_1^2")
        assert apply_pairing(f * g, p) == apply_pairing(f, apply_pairing(g, p))

    def test_auxiliaries_ride_along(self):
        # an auxiliary factor in the operator multiplies through, untouched
        assert apply_pairing(P("xi1*x1_0"), P("x1_0^2")) == P("2*xi1*x1_0")
        # auxiliaries in the target are never differentiated away
        assert apply_pairing(P("x1_0"), P("xi1*x1_0")) == P("xi1")


class TestAnnihilates:
    def test_degree_drop(self):
        assert annihilates(P("x1_0^2"), P("x1_0"))

    def test_wronskian_in_perp(self):
        assert annihilates(P("2*x1_0*x1_2 + x1_1^2"), P(WRONSKIAN_2))

    def test_nonzero_constant(self):
        f, p = P("2*x1_0*x1_2 + x1_1^2"), P("x1_1^2")
        value = pairing_oracle(f, p)
        assert value == Polynomial.constant(2)
        assert apply_pairing(f, p) == value
        assert not annihilates(f, p)


class TestDirectionalDerivative:
    def test_linear(self):
        assert directional_derivative(P("x1_0"), max_order=0) == P("al1_1")

    def test_square(self):
        assert directional_derivative(P("x1_0^2"), max_order=0) == P("2*al1_1*x1_0")

    def test_wronskian_frozen(self):
        # term-by-term partials: al * (x'' - 2 xi x' + xi^2 x)
        expected = P("al1_1*x1_2 - 2*al1_1*xi1*x1_1 + al1_1*xi1^2*x1_0")
        assert directional_derivative(P(WRONSKIAN_2), max_order=2) == expected

    def test_default_truncation_matches_explicit(self):
        p = P(WRONSKIAN_2)
        assert directional_derivative(p) == directional_derivative(p, max_order=2)

    def test_order_overflow(self):
        with pytest.raises(OrderOverflowError):
            directional_derivative(P("x1_3"), max_order=2)

    def test_two_families(self):
        out = directional_derivative(P("x1_0*x2_0"))
        assert out == P("al1_1*x2_0 + al1_2*x1_0")


class TestDoubleDerivative:
    def test_wronskian_vanishes(self):
        assert double_derivative_vanishes(P(WRONSKIAN_2))

    def test_square_does_not(self):
        p = P("x1_0^2")
        assert directional_derivative(directional_derivative(p)) == P("2*al1_1^2")
        assert not double_derivative_vanishes(p)

    def test_degree_one_vanishes(self):
        assert double_derivative_vanishes(P("x1_0"))

    @pytest.mark.parametrize("n,degree,order", [(1, 2, 2), (2, 2, 1)])
    def test_equivalent_to_generator_annihilation(self, n, degree, order):
        # vanishing double derivative must coincide with annihilation by all
        # generators of t-power <= 2 * maxorder
        import random

        from arcperp.linalg import MonomialIndex

        rng = random.Random(7)
        gens = arc_generators_up_to(n, 2 * order)
        index = MonomialIndex.graded(n, degree, order)
        samples = [Polynomial.from_monomial(m) for m in index]
        samples.append(
            P(WRONSKIAN_2) if n == 1 else P("x1_0*x2_1 - x1_1*x2_0")
        )
        for _ in range(25):
            a, b = rng.choice(index.monomials), rng.choice(index.monomials)
            samples.append(
                Polynomial.from_monomial(a, rng.randint(-3, 3))
                + Polynomial.from_monomial(b, rng.randint(-3, 3))
            )
        hits = 0
        for p in samples:
            if p.is_zero:
                continue
            d2 = double_derivative_vanishes(p)
            killed = all(annihilates(g, p) for g in gens)
            assert d2 == killed
            hits += d2
        assert hits > 0  # the equivalence was exercised on both outcomes


class TestCoefficientExtraction:
    @pytest.mark.parametrize(
        "p_text,n",
        [
            ("x1_0*x1_2 - x1_1^2", 1),
            ("x1_0^2*x1_1", 1),
            ("x1_0*x2_1 - 3*x2_0^2", 2),
        ],
    )
    def test_double_derivative_coefficients_are_generator_images(self, p_text, n):
        # coefficient of al_i*al_j*xi^l in the double derivative is
        # C * sum_s d^2 p / dx_i^(s) dx_j^(l-s), with C = 1 if i = j else 2
        p = P(p_text)
        dd = directional_derivative(directional_derivative(p))
        h = p.max_order()
        for i in range(1, n + 1):
            for j in range(i, n + 1):
                for ell in range(2 * h + 1):
                    if i == j:
                        coeff = dd.coefficient_of_power(al(1, i), 2)
                        scale = 1
                    else:
                        coeff = dd.coefficient_of_power(al(1, i), 1).coefficient_of_power(
                            al(1, j), 1
                        )
                        scale = 2
                    coeff = coeff.coefficient_of_power(xi(1), ell)
                    expected = Polynomial.zero()
                    for s in range(ell + 1):
                        if s > h or ell - s > h:
                            continue
                        expected = expected + diff_wrt(diff_wrt(p, x(i, s)), x(j, ell - s))
                    assert coeff == scale * expected
