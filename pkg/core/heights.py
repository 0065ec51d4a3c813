"""
📐 Heights, Houses and Separation Bounds
=======================================

Rigorous enclosures of the Mahler measure M(a) = |lc| * prod max(1, |a_i|),
the absolute Weil height H(a) = M(a)^(1/deg a) and the house (largest
conjugate modulus), plus the classical facts the certification engine leans
on:

- M^(1/d) <= house <= M for algebraic integers
- H(a) = H(1/a)
- H(b_1 + ... + b_n) <= 2^n * prod H(b_i), deg <= prod deg
- |a - b| >= 1 / (2^(deg a * deg b) * M(a)^deg b * M(b)^deg a) for a != b
"""

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence

from core.algnum import AlgebraicNumber, conjugates, enclosure, equals
from core.exceptions import ConjugatePairError, EqualNumbersError, NotAlgebraicIntegerError
from core.magnitude import MagnitudeBound, decimal_string, product
from core.roots import modulus

logger = logging.getLogger(__name__)

# refinement used by distance_enclosure: 2^-16, 2^-64, ...
_DISTANCE_EXPONENTS = (16, 64, 256, 1024, 4096)


def conjugate_moduli(a: AlgebraicNumber, tol: Optional[Fraction] = None) -> List[MagnitudeBound]:
    return [modulus(d) for d in conjugates(a, tol)]


def mahler(a: AlgebraicNumber, tol: Optional[Fraction] = None) -> MagnitudeBound:
    """Enclosure of the Mahler measure (M(0) = 1)."""
    lc = MagnitudeBound.exact(abs(a.minpoly.leading_coefficient))
    return lc * product(m.clamp_at_one() for m in conjugate_moduli(a, tol))


def weil_height(a: AlgebraicNumber, tol: Optional[Fraction] = None) -> MagnitudeBound:
    """Enclosure of the absolute Weil height M(a)^(1/deg a)."""
    return mahler(a, tol).root(a.degree)


def house(a: AlgebraicNumber, tol: Optional[Fraction] = None) -> MagnitudeBound:
    """Enclosure of the largest modulus among the conjugates of a."""
    result = MagnitudeBound.zero()
    for m in conjugate_moduli(a, tol):
        result = result.maximum(m)
    return result


@dataclass
class HouseChainReport:
    """Outcome of checking M^(1/d) <= house <= M on enclosures."""
    holds: bool
    left_tight: bool
    right_tight: bool
    height: MagnitudeBound
    house: MagnitudeBound
    mahler: MagnitudeBound

    @property
    def width(self) -> Optional[Fraction]:
        widths = [b.width for b in (self.height, self.house, self.mahler)]
        return None if None in widths else max(widths)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'holds': self.holds,
            'left_tight': self.left_tight,
            'right_tight': self.right_tight,
            'height': self.height.to_dict(),
            'house': self.house.to_dict(),
            'mahler': self.mahler.to_dict(),
        }


def check_house_chain(a: AlgebraicNumber, tol: Optional[Fraction] = None) -> HouseChainReport:
    """
    Check M(a)^(1/d) <= house(a) <= M(a) for an algebraic integer.

    The chain holds unless an enclosure strictly refutes one of the two
    non-strict comparisons; a side is reported tight when its two
    enclosures overlap.
    """
    if not a.is_algebraic_integer:
        raise NotAlgebraicIntegerError(f"{a} is not an algebraic integer")
    m = mahler(a, tol)
    h = m.root(a.degree)
    top = house(a, tol)
    holds = not h.certainly_gt(top) and not top.certainly_gt(m)
    if not holds:
        logger.warning(f"⚠️ house chain refuted for {a.minpoly}")
    return HouseChainReport(
        holds=holds,
        left_tight=h.overlaps(top),
        right_tight=top.overlaps(m),
        height=h,
        house=top,
        mahler=m,
    )


def distance_enclosure(a: AlgebraicNumber, b: AlgebraicNumber) -> MagnitudeBound:
    """
    Enclosure of |a - b|, refining both disks until it stays away from zero.

    Numbers that are equal keep a zero lower bound at every refinement.
    """
    dist = modulus(a.iso - b.iso)
    for e in _DISTANCE_EXPONENTS:
        if dist.log2_lo is not None:
            break
        tol = Fraction(1, 2 ** e)
        dist = modulus(enclosure(a, tol) - enclosure(b, tol))
    return dist


def liouville_gap(a: AlgebraicNumber, b: AlgebraicNumber) -> MagnitudeBound:
    """
    Enclosure of 1 / (2^(da*db) * M(a)^db * M(b)^da), a lower bound for |a - b|.

    Only the lower endpoint is safe to use as a distance bound.
    """
    if a.minpoly == b.minpoly:
        if equals(a, b):
            raise EqualNumbersError("separation bound of a number from itself")
        raise ConjugatePairError("separation bound requested for two conjugates")
    da, db = a.degree, b.degree
    denominator = (
        MagnitudeBound.power_of_two(da * db)
        * (mahler(a) ** db)
        * (mahler(b) ** da)
    )
    return denominator.reciprocal()


def sum_height_bound(terms: Sequence[AlgebraicNumber]) -> MagnitudeBound:
    """Upper-bound enclosure 2^n * prod H(b_i) for H(b_1 + ... + b_n)."""
    bound = MagnitudeBound.power_of_two(len(terms))
    for t in terms:
        bound = bound * weil_height(t)
    return bound


def sum_degree_bound(terms: Sequence[AlgebraicNumber]) -> int:
    bound = 1
    for t in terms:
        bound *= t.degree
    return bound


class PisotSalemKind(Enum):
    PISOT = "pisot"
    SALEM = "salem"
    NEITHER = "neither"
    INCONCLUSIVE = "inconclusive"


def classify_pisot_salem(a: AlgebraicNumber) -> PisotSalemKind:
    """
    Pisot: real algebraic integer > 1 whose other conjugates lie strictly
    inside the unit circle. Salem: real algebraic integer > 1 of degree >= 4
    with a self-reciprocal minimal polynomial and no other conjugate certainly
    off the unit circle.
    """
    if not a.is_algebraic_integer or a.iso.im != 0:
        return PisotSalemKind.NEITHER
    own = modulus(a.iso)
    if not own.certainly_gt(MagnitudeBound.one()):
        return PisotSalemKind.NEITHER if own.certainly_le(MagnitudeBound.one()) else PisotSalemKind.INCONCLUSIVE

    fresh = conjugates(a)
    # the fresh disk holding a is the only one that can meet its isolating disk
    mine = [d for d in fresh if a.iso.intersects(d)]
    if len(mine) != 1:
        return PisotSalemKind.INCONCLUSIVE
    moduli = [modulus(d) for d in fresh if d != mine[0]]
    if all(m.certainly_lt(MagnitudeBound.one()) for m in moduli):
        return PisotSalemKind.PISOT
    if a.degree >= 4 and a.minpoly.is_palindromic:
        # 1/a is the only conjugate inside the disk; the rest must sit on |z| = 1
        inverse = own.reciprocal()
        rest = [m for m in moduli if not m.overlaps(inverse)]
        if all(m.overlaps(MagnitudeBound.one()) for m in rest):
            return PisotSalemKind.SALEM
    if any(m.certainly_gt(MagnitudeBound.one()) for m in moduli):
        return PisotSalemKind.NEITHER
    return PisotSalemKind.INCONCLUSIVE


@dataclass
class HeightReport:
    """Everything the CLI prints about one number."""
    degree: int
    is_algebraic_integer: bool
    mahler: MagnitudeBound
    height: MagnitudeBound
    house: MagnitudeBound
    pisot_salem: PisotSalemKind

    @property
    def width(self) -> Optional[Fraction]:
        widths = [b.width for b in (self.mahler, self.height, self.house)]
        return None if None in widths else max(widths)

    def to_dict(self) -> Dict[str, Any]:
        width = self.width
        return {
            'degree': self.degree,
            'algebraic_integer': self.is_algebraic_integer,
            'mahler': self.mahler.to_dict(),
            'weil_height': self.height.to_dict(),
            'house': self.house.to_dict(),
            'width': None if width is None else decimal_string(width, upward=True),
            'pisot_salem': self.pisot_salem.value,
        }


def height_report(a: AlgebraicNumber, tol: Optional[Fraction] = None) -> HeightReport:
    m = mahler(a, tol)
    return HeightReport(
        degree=a.degree,
        is_algebraic_integer=a.is_algebraic_integer,
        mahler=m,
        height=m.root(a.degree),
        house=house(a, tol),
        pisot_salem=classify_pisot_salem(a),
    )
