"""
🎯 Certified Complex Root Isolation
==================================

Approximates all roots of a square-free integer polynomial with mpmath's
Durand-Kerner solver (``mpmath.polyroots``), then certifies the result
exactly: the Weierstrass corrections W_i = p(z_i) / (lc * prod_{j!=i}(z_i - z_j))
give inclusion disks D(z_i, n*|W_i|). When those disks are pairwise
disjoint, each contains exactly one root.

Failures at one precision are retried along a doubling precision ladder
driven by tenacity.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Tuple

import mpmath
from tenacity import Retrying, before_log, retry_if_exception_type, stop_after_attempt

from core.exceptions import CertificationError, NotSquarefreeError, PolynomialError, RootSelectionError
from core.magnitude import MagnitudeBound, mpf_to_fraction, round_up, sqrt_bounds
from core.polyz import GaussianRational, IntPolynomial, gcd
from utils.config import get_config

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ComplexDisk:
    """Closed disk {z : |z - (re + i*im)| <= rad} with rational data."""
    re: Fraction
    im: Fraction
    rad: Fraction

    def __post_init__(self):
        for name in ('re', 'im', 'rad'):
            object.__setattr__(self, name, Fraction(getattr(self, name)))
        if self.rad < 0:
            raise ValueError("disk radius must be nonnegative")

    @property
    def center(self) -> GaussianRational:
        return self.re, self.im

    @property
    def is_point(self) -> bool:
        return self.rad == 0

    def center_abs2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def contains_point(self, z: GaussianRational) -> bool:
        dr, di = z[0] - self.re, z[1] - self.im
        return dr * dr + di * di <= self.rad * self.rad

    def intersects(self, other: 'ComplexDisk') -> bool:
        dr, di = self.re - other.re, self.im - other.im
        reach = self.rad + other.rad
        return dr * dr + di * di <= reach * reach

    def contains_disk(self, other: 'ComplexDisk') -> bool:
        slack = self.rad - other.rad
        if slack < 0:
            return False
        dr, di = self.re - other.re, self.im - other.im
        return dr * dr + di * di <= slack * slack

    def excludes_zero(self) -> bool:
        return self.center_abs2() > self.rad * self.rad

    # exact disk images under the field operations used by algnum

    def negate(self) -> 'ComplexDisk':
        return ComplexDisk(-self.re, -self.im, self.rad)

    def conjugate(self) -> 'ComplexDisk':
        return ComplexDisk(self.re, -self.im, self.rad)

    def __add__(self, other: 'ComplexDisk') -> 'ComplexDisk':
        return ComplexDisk(self.re + other.re, self.im + other.im, self.rad + other.rad)

    def __sub__(self, other: 'ComplexDisk') -> 'ComplexDisk':
        return ComplexDisk(self.re - other.re, self.im - other.im, self.rad + other.rad)

    def reciprocal(self) -> 'ComplexDisk':
        """Image of the disk under z -> 1/z (a disk again when 0 is outside)."""
        if not self.excludes_zero():
            raise CertificationError("disk meets zero; refine before inverting")
        denom = self.center_abs2() - self.rad * self.rad
        return ComplexDisk(self.re / denom, -self.im / denom, self.rad / denom)

    def to_dict(self) -> Dict[str, str]:
        return {'re': str(self.re), 'im': str(self.im), 'rad': str(self.rad)}

    @classmethod
    def from_dict(cls, data: Dict[str, str]) -> 'ComplexDisk':
        try:
            return cls(Fraction(str(data['re'])), Fraction(str(data.get('im', 0))), Fraction(str(data['rad'])))
        except (KeyError, ValueError, ZeroDivisionError) as e:
            raise ValueError(f"bad disk {data!r}: {e}") from e

    def approx(self, digits: int = 12) -> str:
        """Center as a short decimal string, for logs and reports only."""
        with mpmath.workprec(64):
            re = mpmath.mpf(self.re.numerator) / self.re.denominator
            im = mpmath.mpf(self.im.numerator) / self.im.denominator
            sign = "-" if im < 0 else "+"
            return f"{mpmath.nstr(re, digits)}{sign}{mpmath.nstr(abs(im), digits)}i"


def modulus(d: ComplexDisk) -> MagnitudeBound:
    """Rigorous enclosure of |z| for z in d."""
    abs2 = d.center_abs2()
    if abs2 == 0:
        return MagnitudeBound.zero() if d.rad == 0 else MagnitudeBound.from_bounds(0, d.rad)
    c_lo, c_hi = sqrt_bounds(abs2)
    if d.rad == 0 and c_lo == c_hi:
        return MagnitudeBound.exact(c_lo)
    return MagnitudeBound.from_bounds(max(Fraction(0), c_lo - d.rad), c_hi + d.rad)


def compare_moduli(a: ComplexDisk, b: ComplexDisk) -> Optional[int]:
    """Sign of |za| - |zb| when the disks decide it, else None."""
    if a.rad == 0 and b.rad == 0:
        diff = a.center_abs2() - b.center_abs2()
        return (diff > 0) - (diff < 0)
    ma, mb = modulus(a), modulus(b)
    if ma.certainly_lt(mb):
        return -1
    if mb.certainly_lt(ma):
        return 1
    return None


# ============================================================================
# Precision ladder
# ============================================================================

def precision_ladder(steps: Optional[int] = None) -> Retrying:
    """Retry a certification step on CertificationError, reraising the last failure."""
    cfg = get_config().precision
    return Retrying(
        stop=stop_after_attempt(steps or cfg.ladder_steps),
        retry=retry_if_exception_type(CertificationError),
        before=before_log(logger, logging.DEBUG),
        reraise=True,
    )


def ladder_bits(attempt_number: int) -> int:
    return get_config().precision.ladder_start_bits << (attempt_number - 1)


# ============================================================================
# Isolation
# ============================================================================

def _cmul(a: GaussianRational, b: GaussianRational) -> GaussianRational:
    return a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0]


def _abs2(a: GaussianRational) -> Fraction:
    return a[0] * a[0] + a[1] * a[1]


def _approximate_roots(p: IntPolynomial, bits: int) -> List[GaussianRational]:
    coeffs = list(reversed(p.coeffs))
    with mpmath.workprec(bits):
        try:
            approx = mpmath.polyroots(coeffs, maxsteps=50 + 4 * bits, extraprec=bits)
        except mpmath.mp.NoConvergence as e:
            raise CertificationError(f"polyroots did not converge at {bits} bits") from e
        return [(mpf_to_fraction(mpmath.re(z)._mpf_), mpf_to_fraction(mpmath.im(z)._mpf_)) for z in approx]


def _weierstrass_disks(p: IntPolynomial, centers: List[GaussianRational]) -> List[ComplexDisk]:
    n = p.degree
    lc = Fraction(p.leading_coefficient)
    disks = []
    for i, zi in enumerate(centers):
        denom = (lc, Fraction(0))
        for j, zj in enumerate(centers):
            if i != j:
                denom = _cmul(denom, (zi[0] - zj[0], zi[1] - zj[1]))
        denom_abs2 = _abs2(denom)
        if denom_abs2 == 0:
            raise CertificationError("coincident root approximations")
        w_abs2 = _abs2(p.evaluate_complex(zi)) / denom_abs2
        radius = n * sqrt_bounds(w_abs2)[1]
        disks.append(ComplexDisk(zi[0], zi[1], round_up(radius) if radius.denominator != 1 else radius))
    return disks


def _radius_ok(d: ComplexDisk, tol: Fraction, relative: bool) -> bool:
    if d.rad <= tol:
        return True
    # relative to max(1, |c|) so roots near zero still get absolute accuracy
    return relative and d.rad * d.rad <= tol * tol * d.center_abs2()


def _snap_to_real_axis(disks: List[ComplexDisk]) -> List[ComplexDisk]:
    """
    Re-center disks that straddle the real axis onto it.

    A real-centered disk that meets no other inclusion disk holds exactly one
    root, and that root equals its own conjugate, so it is real.
    """
    snapped = list(disks)
    for i, d in enumerate(disks):
        if d.im == 0 or abs(d.im) > d.rad:
            continue
        wider = ComplexDisk(d.re, 0, d.rad + abs(d.im))
        if not any(wider.intersects(e) for j, e in enumerate(snapped) if j != i):
            snapped[i] = wider
    return snapped


def _isolate_at(p: IntPolynomial, tol: Fraction, relative: bool, bits: int) -> List[ComplexDisk]:
    disks = _weierstrass_disks(p, _approximate_roots(p, bits))
    for i in range(len(disks)):
        for j in range(i + 1, len(disks)):
            if disks[i].intersects(disks[j]):
                raise CertificationError(f"inclusion disks {i} and {j} overlap at {bits} bits")
    disks = _snap_to_real_axis(disks)
    loose = [d for d in disks if not _radius_ok(d, tol, relative)]
    if loose:
        raise CertificationError(f"{len(loose)} disk(s) wider than tolerance at {bits} bits")
    return disks


def _disk_order(d: ComplexDisk) -> Tuple[Fraction, Fraction]:
    return d.re, d.im


@lru_cache(maxsize=1024)
def _isolate_cached(p: IntPolynomial, tol: Fraction, relative: bool) -> Tuple[ComplexDisk, ...]:
    if p.degree == 1:
        return (ComplexDisk(Fraction(-p.coeffs[0], p.coeffs[1]), 0, 0),)

    for attempt in precision_ladder():
        with attempt:
            bits = ladder_bits(attempt.retry_state.attempt_number)
            disks = _isolate_at(p, tol, relative, bits)
    logger.debug(f"isolated {p.degree} roots of {p} at {bits} bits")
    return tuple(sorted(disks, key=_disk_order))


def isolate_roots(p: IntPolynomial, tol: Optional[Fraction] = None, relative: bool = False) -> List[ComplexDisk]:
    """
    Certified isolating disks for all complex roots of a square-free p.

    Every disk contains exactly one root, disks are pairwise disjoint and
    each radius is <= tol (or <= tol * |center| when ``relative``). The
    output order is deterministic: by real part, then imaginary part.
    """
    if p.is_zero:
        raise PolynomialError("cannot isolate roots of the zero polynomial")
    if p.degree < 1:
        return []
    if tol is None:
        tol = get_config().precision.root_tolerance
    tol = Fraction(tol)
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    if gcd(p, p.derivative()).degree > 0:
        raise NotSquarefreeError(f"{p} has repeated roots")
    return list(_isolate_cached(p, tol, relative))


def refine(p: IntPolynomial, d: ComplexDisk, tol: Fraction) -> ComplexDisk:
    """
    Shrink an isolating disk of p to radius <= tol.

    The returned disk lies inside d and isolates the same root.
    """
    tol = Fraction(tol)
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    if d.rad <= tol:
        return d

    step_tol = min(tol, d.rad / 4)
    for _ in range(get_config().precision.ladder_steps * 4):
        inside = [c for c in isolate_roots(p, step_tol) if d.contains_disk(c)]
        if len(inside) > 1:
            raise RootSelectionError(f"disk {d.to_dict()} is not isolating for {p}")
        if inside:
            return inside[0]
        step_tol /= 2 ** 16
    raise RootSelectionError(f"no refinement of {d.to_dict()} found for {p}")


def disk_may_contain_root(p: IntPolynomial, d: ComplexDisk) -> bool:
    """
    Interval evaluation of p over d contains zero.

    Uses the Taylor expansion at the center:
    |p(z) - p(c)| <= sum_{k>=1} |p^(k)(c) / k!| * rad^k.
    """
    value = p.evaluate_complex(d.center)
    value_abs = sqrt_bounds(_abs2(value))[0]
    spread = Fraction(0)
    deriv, factorial = p, 1
    for k in range(1, p.degree + 1):
        deriv = deriv.derivative()
        factorial *= k
        coeff_abs = sqrt_bounds(_abs2(deriv.evaluate_complex(d.center)))[1] / factorial
        spread += coeff_abs * d.rad ** k
    return value_abs <= spread

