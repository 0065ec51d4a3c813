#!/usr/bin/env python3
"""
🧪 Unit tests for heights, houses and separation bounds
"""

from fractions import Fraction

import pytest

from core import algnum
from core.exceptions import ConjugatePairError, EqualNumbersError, NotAlgebraicIntegerError
from core.heights import (
    PisotSalemKind,
    check_house_chain,
    classify_pisot_salem,
    distance_enclosure,
    height_report,
    house,
    liouville_gap,
    mahler,
    sum_degree_bound,
    sum_height_bound,
    weil_height,
)
from core.magnitude import MagnitudeBound
from core.polyz import IntPolynomial

NARROW = Fraction(1, 10 ** 20)


def P(*coeffs):
    return IntPolynomial.from_coeffs(coeffs)


def root_of(*coeffs):
    return algnum.select_max_modulus(P(*coeffs))


def dth_root(a, d):
    return root_of(*([-a] + [0] * (d - 1) + [1]))


@pytest.fixture
def sqrt2():
    return dth_root(2, 2)


@pytest.fixture
def phi():
    return root_of(-1, -1, 1)


class TestMahlerAndHeight:

    @pytest.mark.parametrize("d", [2, 3, 5])
    @pytest.mark.parametrize("a", [2, 10, 97])
    def test_dth_root_measure_is_the_radicand(self, a, d):
        m = mahler(dth_root(a, d))
        assert m.contains(a)
        assert m.width <= NARROW

    def test_golden_ratio(self, phi):
        m = mahler(phi)
        assert m.overlaps(MagnitudeBound.from_bounds(Fraction(16180339887, 10 ** 10), Fraction(16180339888, 10 ** 10)))

    def test_rational(self):
        m = mahler(algnum.from_rational(Fraction(3, 2)))
        assert m.contains(3)

    def test_sqrt2_height(self, sqrt2):
        h = weil_height(sqrt2)
        assert h.overlaps(MagnitudeBound.power_of_two(Fraction(1, 2)))

    def test_integer_height(self):
        assert weil_height(algnum.from_rational(7)).contains(7)

    def test_zero_has_height_one(self):
        zero = algnum.from_rational(0)
        assert mahler(zero) == MagnitudeBound.one()
        assert weil_height(zero) == MagnitudeBound.one()

    def test_height_times_degree_is_log_measure(self, phi):
        m, h = mahler(phi), weil_height(phi)
        assert h.log2_lo * 2 <= m.log2_hi
        assert m.log2_lo <= h.log2_hi * 2

    def test_reciprocal_preserves_height(self, phi):
        assert weil_height(algnum.reciprocal(phi)).overlaps(weil_height(phi))


class TestHouse:

    def test_dth_root(self):
        h = house(dth_root(10, 3))
        assert h.overlaps(MagnitudeBound.exact(10) ** Fraction(1, 3))

    @pytest.mark.parametrize("coeffs", [(-1, -1, 1), (-1, -1, 0, 1)])
    def test_pisot_equality_case(self, coeffs):
        a = root_of(*coeffs)
        m, top = mahler(a), house(a)
        assert m.overlaps(top)
        assert m.width <= NARROW and top.width <= NARROW

    def test_unit_circle(self):
        assert house(root_of(1, 0, 1)).contains(1)


class TestHouseChain:

    def test_sqrt2_left_tight(self, sqrt2):
        report = check_house_chain(sqrt2)
        assert report.holds
        assert report.left_tight
        assert not report.right_tight

    def test_phi_right_tight(self, phi):
        report = check_house_chain(phi)
        assert report.holds
        assert report.right_tight
        assert not report.left_tight

    def test_integer_both_tight(self):
        report = check_house_chain(algnum.from_rational(5))
        assert report.holds and report.left_tight and report.right_tight

    def test_non_integer_rejected(self):
        with pytest.raises(NotAlgebraicIntegerError):
            check_house_chain(algnum.from_rational(Fraction(3, 2)))


class TestLiouvilleGap:

    def test_sqrt2_vs_three_halves(self, sqrt2):
        b = algnum.from_rational(Fraction(3, 2))
        gap = liouville_gap(sqrt2, b)
        assert gap.contains(Fraction(1, 72))
        assert gap.certainly_le(distance_enclosure(sqrt2, b))

    def test_sqrt2_vs_one(self, sqrt2):
        gap = liouville_gap(sqrt2, algnum.from_rational(1))
        assert gap.contains(Fraction(1, 8))

    def test_phi_vs_two(self, phi):
        b = algnum.from_rational(2)
        assert liouville_gap(phi, b).certainly_le(distance_enclosure(phi, b))

    def test_equal_numbers(self, sqrt2):
        with pytest.raises(EqualNumbersError):
            liouville_gap(sqrt2, dth_root(2, 2))

    def test_conjugates(self, sqrt2):
        with pytest.raises(ConjugatePairError):
            liouville_gap(sqrt2, algnum.negate(sqrt2))


class TestSumBounds:

    def test_sqrt2_sqrt3(self, sqrt2):
        sqrt3 = dth_root(3, 2)
        bound = sum_height_bound([sqrt2, sqrt3])
        assert bound.overlaps(MagnitudeBound.from_bounds(Fraction(97979, 10 ** 4), Fraction(97980, 10 ** 4)))
        assert sum_degree_bound([sqrt2, sqrt3]) == 4
        exact = weil_height(algnum.add(sqrt2, sqrt3))
        assert exact.overlaps(MagnitudeBound.from_bounds(Fraction(17737, 10 ** 4), Fraction(17738, 10 ** 4)))
        assert exact.certainly_le(bound)

    def test_single_integer(self):
        assert sum_height_bound([algnum.from_rational(7)]).contains(14)

    def test_cancelling_pair(self, sqrt2):
        terms = [sqrt2, algnum.negate(sqrt2)]
        assert sum_degree_bound(terms) == 4
        assert algnum.sum_all(terms).degree == 1


class TestPisotSalem:

    def test_golden_ratio_is_pisot(self, phi):
        assert classify_pisot_salem(phi) is PisotSalemKind.PISOT

    def test_lehmer_number_is_salem(self):
        lehmer = root_of(1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1)
        assert classify_pisot_salem(lehmer) is PisotSalemKind.SALEM

    def test_sqrt2_is_neither(self, sqrt2):
        assert classify_pisot_salem(sqrt2) is PisotSalemKind.NEITHER

    def test_report(self, phi):
        report = height_report(phi).to_dict()
        assert report['degree'] == 2
        assert report['algebraic_integer'] is True
        assert report['pisot_salem'] == "pisot"
        assert report['width'] is not None
