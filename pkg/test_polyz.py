#!/usr/bin/env python3
"""
🧪 Unit tests for exact integer polynomials

Covers ring arithmetic, content/primitive splitting, resultants, the
root-sum polynomial, reversal, square-free parts and factorization over Z.
"""

import random

import pytest
import sympy as sp

from core.exceptions import DegreeCapExceeded, PolynomialError
from core.polyz import (
    IntPolynomial,
    X,
    content_primitive,
    factor,
    is_irreducible,
    recip_poly,
    resultant,
    squarefree_part,
    sum_poly,
)


def P(*coeffs):
    """Low-to-high shorthand."""
    return IntPolynomial.from_coeffs(coeffs)


class TestArithmetic:

    def test_product_of_linear_factors(self):
        assert P(-2, 1) * P(-3, 1) == P(6, -5, 1)

    def test_adding_zero_is_identity(self):
        p = P(-2, 0, 1)
        assert p + IntPolynomial(()) == p

    def test_square(self):
        assert P(-2, 0, 1) * P(-2, 0, 1) == P(4, 0, -4, 0, 1)

    def test_trailing_zeros_are_stripped(self):
        p = P(1, 2, 0, 0)
        assert p.coeffs == (1, 2)
        assert p.degree == 1

    def test_zero_polynomial(self):
        zero = P()
        assert zero.is_zero
        assert zero.degree == -1
        with pytest.raises(PolynomialError):
            zero.leading_coefficient

    def test_evaluate_and_derivative(self):
        p = P(-1, -1, 1)
        assert p.evaluate(2) == 1
        assert p.derivative() == P(-1, 2)
        assert p.evaluate_complex((0, 1)) == (-2, -1)

    def test_text_round_trip_formats(self):
        assert IntPolynomial.from_text("[-1,-1,1]") == P(-1, -1, 1)
        assert IntPolynomial.from_text("x**2 - x - 1") == P(-1, -1, 1)
        assert P(-1, -1, 1).to_text() == "[-1, -1, 1]"

    def test_big_coefficients_serialize_as_strings(self):
        big = 2 ** 100
        p = P(-big, 1)
        assert p.to_json() == [str(-big), 1]
        assert IntPolynomial.from_json(p.to_json()) == p

    def test_float_coefficients_rejected(self):
        with pytest.raises(PolynomialError):
            IntPolynomial.from_json([1.5, 1])

    def test_non_integer_expression_rejected(self):
        with pytest.raises(PolynomialError):
            IntPolynomial.from_text("x/2 + 1")


class TestContentPrimitive:

    def test_common_factor(self):
        assert content_primitive(P(-4, 0, 6)) == (2, P(-2, 0, 3))

    def test_sign_moves_into_content(self):
        c, q = content_primitive(P(1, -1))
        assert q == P(-1, 1)
        assert c == -1
        assert P(1, -1) == IntPolynomial.constant(c) * q

    def test_already_primitive(self):
        assert content_primitive(P(-2, 0, 1)) == (1, P(-2, 0, 1))

    def test_zero_is_an_error(self):
        with pytest.raises(PolynomialError):
            content_primitive(P())


class TestResultant:

    def test_linear_convention(self):
        assert resultant(P(-2, 1), P(-3, 1)) == -1

    def test_quadratics(self):
        assert resultant(P(-2, 0, 1), P(-3, 0, 1)) == 1

    def test_shared_roots_vanish(self):
        p = P(-1, -1, 1)
        assert resultant(p, p) == 0

    def test_zero_input_rejected(self):
        with pytest.raises(PolynomialError):
            resultant(P(), P(1, 1))

    def test_vanishes_exactly_on_common_factors(self):
        rng = random.Random(11)
        for _ in range(25):
            p = P(*[rng.randint(-5, 5) for _ in range(rng.randint(2, 6))] + [1])
            q = P(*[rng.randint(-5, 5) for _ in range(rng.randint(2, 6))] + [1])
            shared = {f for f, _ in factor(p)} & {f for f, _ in factor(q)}
            assert (resultant(p, q) == 0) == bool(shared)


class TestSumPoly:

    def test_sqrt2_plus_sqrt2(self):
        assert sum_poly(P(-2, 0, 1), P(-2, 0, 1)) == P(0, 0, -8, 0, 1)

    def test_one_plus_one(self):
        assert sum_poly(P(-1, 1), P(-1, 1)) == P(-2, 1)

    def test_sqrt2_plus_sqrt3(self):
        assert sum_poly(P(-2, 0, 1), P(-3, 0, 1)) == P(1, 0, -10, 0, 1)

    def test_degree_is_product(self):
        s = sum_poly(P(-1, -1, 1), P(-2, 0, 0, 1))
        assert s.degree == 6
        assert s.is_normalized

    def test_vanishes_at_root_sums(self):
        # phi + cbrt(2) is a root
        s = sum_poly(P(-1, -1, 1), P(-2, 0, 0, 1)).to_sympy()
        value = (1 + sp.sqrt(5)) / 2 + sp.root(2, 3)
        assert abs(sp.N(s.as_expr().subs(X, value), 50)) < sp.Float('1e-40')

    def test_constant_rejected(self):
        with pytest.raises(PolynomialError):
            sum_poly(P(3), P(-2, 0, 1))


class TestRecipPoly:

    def test_golden_ratio(self):
        assert recip_poly(P(-1, -1, 1)) == P(-1, 1, 1)

    def test_linear(self):
        assert recip_poly(P(-2, 1)) == P(-1, 2)

    def test_sign_normalized(self):
        assert recip_poly(P(-2, 0, 1)) == P(-1, 0, 2)

    def test_involution(self):
        for p in (P(-1, -1, 1), P(3, -7, 0, 2), P(-5, 1, 4)):
            prim = content_primitive(p)[1]
            assert recip_poly(recip_poly(prim)) == prim

    def test_zero_constant_term_rejected(self):
        with pytest.raises(PolynomialError):
            recip_poly(P(0, -2, 1))


class TestSquarefreeAndFactor:

    def test_squarefree_drops_repeated_root(self):
        assert squarefree_part(P(0, 0, -8, 0, 1)) == P(0, -8, 0, 1)

    def test_squarefree_noop(self):
        assert squarefree_part(P(-2, 0, 1)) == P(-2, 0, 1)

    def test_squarefree_of_cube(self):
        assert squarefree_part(P(-1, 3, -3, 1)) == P(-1, 1)

    def test_factor_with_multiplicity(self):
        assert factor(P(0, 0, -8, 0, 1)) == [(P(0, 1), 2), (P(-8, 0, 1), 1)]

    def test_irreducible_quartic(self):
        assert factor(P(1, 0, -10, 0, 1)) == [(P(1, 0, -10, 0, 1), 1)]
        assert is_irreducible(P(1, 0, -10, 0, 1))

    def test_difference_of_squares(self):
        assert factor(P(-1, 0, 1)) == [(P(-1, 1), 1), (P(1, 1), 1)]

    def test_product_recovers_primitive_part(self):
        p = P(12, -8, -6, 4, 2)
        rebuilt = IntPolynomial.constant(1)
        for f, k in factor(p):
            for _ in range(k):
                rebuilt = rebuilt * f
        assert rebuilt == content_primitive(p)[1]

    def test_degree_cap(self):
        with pytest.raises(DegreeCapExceeded) as info:
            factor(P(*([1] * 26)), cap=24)
        assert info.value.exit_code == 4

    def test_constants_have_no_factors(self):
        assert factor(P(7)) == []
