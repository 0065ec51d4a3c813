#!/usr/bin/env python3
"""
🧪 Unit tests for exact algebraic numbers
"""

from fractions import Fraction

import pytest

from core import algnum
from core.exceptions import PolynomialError, RootSelectionError
from core.polyz import IntPolynomial
from core.roots import ComplexDisk


def P(*coeffs):
    return IntPolynomial.from_coeffs(coeffs)


def disk(re, rad, im=0):
    return ComplexDisk(Fraction(re), Fraction(im), Fraction(rad))


@pytest.fixture
def sqrt2():
    return algnum.make(P(-2, 0, 1), disk("1.4", "0.1"))


@pytest.fixture
def sqrt3():
    return algnum.make(P(-3, 0, 1), disk("1.7", "0.1"))


@pytest.fixture
def phi():
    return algnum.make(P(-1, -1, 1), disk("1.6", "0.1"))


class TestMake:

    def test_sqrt_two(self, sqrt2):
        assert sqrt2.minpoly == P(-2, 0, 1)
        assert sqrt2.degree == 2
        assert sqrt2.is_algebraic_integer

    def test_rational_is_not_an_integer(self):
        a = algnum.make(P(-3, 2), disk("1.5", "0.1"))
        assert a.degree == 1
        assert a.rational_value == Fraction(3, 2)
        assert not a.is_algebraic_integer

    def test_minpoly_extracted_from_reducible_input(self):
        a = algnum.make(P(0, 0, -8, 0, 1), disk("2.8", "0.1"))
        assert a.minpoly == P(-8, 0, 1)

    def test_region_with_two_roots(self):
        with pytest.raises(RootSelectionError):
            algnum.make(P(-2, 0, 1), disk(0, 2))

    def test_region_with_no_root(self):
        with pytest.raises(RootSelectionError):
            algnum.make(P(-2, 0, 1), disk(5, "0.1"))

    def test_constant_rejected(self):
        with pytest.raises(PolynomialError):
            algnum.make(P(3), disk(0, 1))


class TestSelectors:

    def test_prefers_positive_real(self):
        a = algnum.select_max_modulus(P(-2, 0, 1))
        assert a.iso.re > 0

    def test_tie_on_rational_roots(self):
        a = algnum.select_max_modulus(P(-65536, 0, 1))
        assert a.is_rational and a.rational_value == 256

    def test_upper_half_plane_when_no_real_root(self):
        a = algnum.select_max_modulus(P(1, 0, 1))
        assert a.iso.im > 0

    def test_unique_largest_modulus(self):
        a = algnum.select_max_modulus(P(-1, -2, 1))
        assert a.iso.re > 2

    def test_parse_with_disk_selector(self):
        a = algnum.parse({'minpoly': [-1, -2, 1]}, {'re': '-2/5', 'im': '0', 'rad': '1/10'})
        assert a.iso.re < 0

    def test_parse_with_root(self):
        a = algnum.parse({'minpoly': ["-2", 0, 1], 'root': {'re': '-7/5', 'rad': '1/10'}})
        assert a.iso.re < 0

    def test_unknown_selector(self):
        with pytest.raises(PolynomialError):
            algnum.parse({'minpoly': [-2, 0, 1]}, 'smallest')


class TestAdd:

    def test_sqrt2_plus_sqrt3(self, sqrt2, sqrt3):
        s = algnum.add(sqrt2, sqrt3)
        assert s.minpoly == P(1, 0, -10, 0, 1)
        assert s.degree == 4 == sqrt2.degree * sqrt3.degree

    def test_cancellation_gives_zero(self, sqrt2):
        s = algnum.add(sqrt2, algnum.negate(sqrt2))
        assert s.is_zero
        assert s.degree == 1

    def test_doubling_drops_degree(self, sqrt2):
        s = algnum.add(sqrt2, sqrt2)
        assert s.minpoly == P(-8, 0, 1)
        assert s.iso.re > 0

    def test_commutative(self, sqrt2, phi):
        assert algnum.equals(algnum.add(sqrt2, phi), algnum.add(phi, sqrt2))

    def test_rationals_stay_exact(self):
        s = algnum.add(algnum.from_rational(Fraction(1, 2)), algnum.from_rational(Fraction(1, 4)))
        assert s.rational_value == Fraction(3, 4)

    def test_sum_all_folds_from_zero(self, sqrt2):
        assert algnum.sum_all([]).is_zero
        assert algnum.equals(algnum.sum_all([sqrt2]), sqrt2)


class TestReciprocalAndNegate:

    def test_golden_ratio_reciprocal(self, phi):
        inv = algnum.reciprocal(phi)
        assert inv.minpoly == P(-1, 1, 1)
        assert abs(inv.iso.re - Fraction(618034, 10 ** 6)) <= inv.iso.rad + Fraction(1, 10 ** 5)

    def test_reciprocal_of_two(self):
        inv = algnum.reciprocal(algnum.from_rational(2))
        assert inv.minpoly == P(-1, 2)
        assert inv.rational_value == Fraction(1, 2)

    def test_involution(self, sqrt2):
        assert algnum.equals(algnum.reciprocal(algnum.reciprocal(sqrt2)), sqrt2)

    def test_zero_has_no_reciprocal(self):
        with pytest.raises(PolynomialError):
            algnum.reciprocal(algnum.from_rational(0))

    def test_negate_keeps_even_minpoly(self, sqrt2):
        neg = algnum.negate(sqrt2)
        assert neg.minpoly == sqrt2.minpoly
        assert not algnum.equals(neg, sqrt2)

    def test_negate_odd_minpoly(self):
        a = algnum.select_max_modulus(P(-2, 0, 0, 1))
        assert algnum.negate(a).minpoly == P(2, 0, 0, 1)


class TestEnclosure:

    def test_tight_enclosure(self, phi):
        tol = Fraction(1, 10 ** 30)
        d = algnum.enclosure(phi, tol)
        assert d.rad <= tol
        assert abs(d.re - Fraction(1618033988749894848, 10 ** 18)) < Fraction(1, 10 ** 17)

    def test_conjugates_count(self, sqrt2):
        assert len(algnum.conjugates(sqrt2)) == 2

    def test_json_form(self, sqrt2):
        data = sqrt2.to_dict()
        assert data['minpoly'] == [-2, 0, 1]
        assert algnum.equals(algnum.parse(data), sqrt2)


class TestRendering:

    def test_rational(self):
        assert str(algnum.from_rational(Fraction(3, 4))) == "3/4"

    def test_irrational(self, sqrt2):
        assert "1.414" in str(sqrt2)

    def test_huge_irrational(self):
        a = algnum.select_max_modulus(P(-(2 ** 4096 + 1), 0, 1))
        text = str(a)
        assert "e+616" in text
        assert text.endswith("+0.0i")
