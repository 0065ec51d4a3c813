"""
🧩 Exact Algebraic Numbers
=========================

An algebraic number is the pair (minimal polynomial, isolating disk). Field
operations are exact: sums go through resultants and factorization, the
reciprocal reverses the minimal polynomial, and the designated root of the
result is re-selected by shrinking disk enclosures until exactly one
candidate root survives.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, Iterable, List, Optional, Tuple, Union

from core.exceptions import CertificationError, PolynomialError, RootSelectionError
from core.polyz import IntPolynomial, factor, normalize, recip_poly, squarefree_part, sum_poly
from core.roots import ComplexDisk, isolate_roots, modulus, refine

logger = logging.getLogger(__name__)

MAX_MODULUS_SELECTOR = "max-modulus-preferring-positive-real"

# Tolerances tried when selecting a root: 2^-8, 2^-32, 2^-128, ...
_SELECTION_EXPONENTS = (8, 32, 128, 512, 2048, 8192)


@dataclass(frozen=True)
class AlgebraicNumber:
    """
    A root of an irreducible, normalized integer polynomial, pinned down by
    a disk that contains no other root of it.
    """
    minpoly: IntPolynomial
    iso: ComplexDisk

    @property
    def degree(self) -> int:
        return self.minpoly.degree

    @property
    def is_algebraic_integer(self) -> bool:
        return self.minpoly.is_monic

    @property
    def is_zero(self) -> bool:
        return self.minpoly.coeffs == (0, 1)

    @property
    def is_rational(self) -> bool:
        return self.degree == 1

    @property
    def rational_value(self) -> Fraction:
        if not self.is_rational:
            raise ValueError("not a rational number")
        return Fraction(-self.minpoly.coeffs[0], self.minpoly.coeffs[1])

    def to_dict(self) -> Dict[str, Any]:
        return {'minpoly': self.minpoly.to_json(), 'root': self.iso.to_dict()}

    def __str__(self) -> str:
        if self.is_rational:
            return str(self.rational_value)
        return f"root of {self.minpoly} near {self.iso.approx()}"


def from_rational(q: Union[int, Fraction]) -> AlgebraicNumber:
    q = Fraction(q)
    return AlgebraicNumber(IntPolynomial.linear(q), ComplexDisk(q, 0, 0))


def _tolerances(start: Optional[Fraction] = None) -> List[Fraction]:
    tols = [Fraction(1, 2 ** e) for e in _SELECTION_EXPONENTS]
    if start is not None:
        tols = [t for t in tols if t < start] or [start / 2]
    return tols


def _select_in_region(factors: List[IntPolynomial], region: ComplexDisk) -> Tuple[IntPolynomial, ComplexDisk]:
    """
    The unique (factor, root disk) whose root lies in ``region``.

    A root certainly lies in the region when its isolating disk is contained
    in it, and possibly lies there when the disks meet.
    """
    for tol in _tolerances():
        certain, possible = [], []
        for f in factors:
            for d in isolate_roots(f, tol, relative=True):
                if region.contains_disk(d):
                    certain.append((f, d))
                if region.intersects(d):
                    possible.append((f, d))
        if len(certain) > 1:
            raise RootSelectionError(f"region {region.to_dict()} holds {len(certain)} roots")
        if not possible:
            raise RootSelectionError(f"region {region.to_dict()} holds no root")
        if len(possible) == 1 and certain:
            return certain[0]
    raise RootSelectionError(f"region {region.to_dict()} is ambiguous at every tolerance")


def make(p: IntPolynomial, region: ComplexDisk) -> AlgebraicNumber:
    """
    The unique root of p inside ``region``, with its minimal polynomial.

    p is factored over Z (under the degree cap); the minimal polynomial is the
    irreducible factor that owns the selected root.
    """
    if p.is_zero or p.degree < 1:
        raise PolynomialError("an algebraic number needs a non-constant polynomial")
    factors = [f for f, _ in factor(squarefree_part(p))]
    minpoly, disk = _select_in_region(factors, region)
    return AlgebraicNumber(minpoly, disk)


def select_max_modulus(p: IntPolynomial) -> AlgebraicNumber:
    """
    The root of p of largest modulus; among roots that might share that
    modulus prefer the positive real one, then the one in the upper half plane.
    """
    if p.is_zero or p.degree < 1:
        raise PolynomialError("an algebraic number needs a non-constant polynomial")
    factors = [f for f, _ in factor(squarefree_part(p))]
    for tol in _tolerances():
        roots = [(f, d) for f in factors for d in isolate_roots(f, tol, relative=True)]
        moduli = [modulus(d) for _, d in roots]
        best_lo = max(moduli, key=lambda m: m.log2_lo if m.log2_lo is not None else Fraction(-10 ** 9))
        top = [r for r, m in zip(roots, moduli) if not m.certainly_lt(best_lo)]
        if len(top) == 1:
            return AlgebraicNumber(*top[0])
        # A disk centered on the real axis isolates a real root: its conjugate lies in it too.
        positive_real = [(f, d) for f, d in top if d.im == 0 and d.re > d.rad]
        if len(positive_real) == 1:
            return AlgebraicNumber(*positive_real[0])
        upper = [(f, d) for f, d in top if d.im > d.rad]
        if not positive_real and len(upper) == 1:
            return AlgebraicNumber(*upper[0])
    raise RootSelectionError(f"no unique root of maximal modulus for {p}")


def enclosure(a: AlgebraicNumber, tol: Union[Fraction, int]) -> ComplexDisk:
    """A disk of radius <= tol containing a."""
    return refine(a.minpoly, a.iso, Fraction(tol))


def conjugates(a: AlgebraicNumber, tol: Optional[Fraction] = None) -> List[ComplexDisk]:
    """Isolating disks of all roots of the minimal polynomial (relative tolerance)."""
    return isolate_roots(a.minpoly, tol, relative=True)


def negate(a: AlgebraicNumber) -> AlgebraicNumber:
    return AlgebraicNumber(normalize(a.minpoly.negate_variable()), a.iso.negate())


def reciprocal(a: AlgebraicNumber) -> AlgebraicNumber:
    """1/a; the inverted disk isolates the reciprocal root of recip_poly."""
    if a.is_zero:
        raise PolynomialError("zero has no reciprocal")
    iso = a.iso
    for tol in _tolerances(iso.rad):
        if iso.excludes_zero():
            break
        iso = enclosure(a, tol)
    if not iso.excludes_zero():
        raise CertificationError(f"could not separate {a} from zero")
    return AlgebraicNumber(recip_poly(a.minpoly), iso.reciprocal())


def add(a: AlgebraicNumber, b: AlgebraicNumber) -> AlgebraicNumber:
    """
    Exact a + b: factor Res_y(p(y), q(x - y)) and keep the factor with the
    single root that meets the enclosure of a + b.
    """
    if a.is_zero:
        return b
    if b.is_zero:
        return a
    if a.is_rational and b.is_rational:
        return from_rational(a.rational_value + b.rational_value)

    factors = [f for f, _ in factor(sum_poly(a.minpoly, b.minpoly))]
    for tol in _tolerances():
        region = enclosure(a, tol) + enclosure(b, tol)
        hits = [
            (f, d)
            for f in factors
            for d in isolate_roots(f, tol, relative=True)
            if region.intersects(d)
        ]
        if len(hits) == 1:
            logger.debug(f"sum selected factor {hits[0][0]} at tolerance {tol}")
            return AlgebraicNumber(*hits[0])
        if not hits:
            raise RootSelectionError("no root of the sum polynomial meets the sum enclosure")
    raise RootSelectionError("sum root stays ambiguous at every tolerance")


def sum_all(numbers: Iterable[AlgebraicNumber]) -> AlgebraicNumber:
    """Left fold of add; the empty sum is 0."""
    result = from_rational(0)
    for x in numbers:
        result = add(result, x)
    return result


def equals(a: AlgebraicNumber, b: AlgebraicNumber) -> bool:
    """Same minimal polynomial and the same root of it."""
    if a.minpoly != b.minpoly:
        return False
    if a.is_rational:
        return True
    try:
        _, da = _select_in_region([a.minpoly], a.iso)
        _, db = _select_in_region([b.minpoly], b.iso)
    except RootSelectionError as e:
        raise CertificationError(f"cannot compare {a} and {b}: {e}") from e
    return da == db


def parse(data: Dict[str, Any], selector: Union[str, Dict[str, Any]] = MAX_MODULUS_SELECTOR) -> AlgebraicNumber:
    """
    Build a number from its JSON form: {"minpoly": [...], "root": {...}} or
    {"minpoly": [...]} with a selector. A selector is either the name of a
    selection rule or a disk in the same form as "root".
    """
    if 'minpoly' not in data:
        raise PolynomialError("algebraic number needs a 'minpoly'")
    p = IntPolynomial.from_json(data['minpoly'])
    selector = data.get('root', data.get('selector', selector))
    if isinstance(selector, dict):
        try:
            region = ComplexDisk.from_dict(selector)
        except ValueError as e:
            raise PolynomialError(str(e)) from e
        return make(p, region)
    if selector != MAX_MODULUS_SELECTOR:
        raise PolynomialError(f"unknown root selector '{selector}'")
    return select_max_modulus(p)