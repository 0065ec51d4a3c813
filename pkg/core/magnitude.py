"""
📏 Rigorous Magnitude Bounds
===========================

Heights, houses and tail bounds of the sequences we certify run to numbers
like 2^(4^50), so every positive quantity is carried as an outward-rounded
enclosure of its base-2 logarithm with dyadic rational endpoints.

Transcendental steps (log, exp, sqrt) go through mpmath's interval context
``mpmath.iv``, which rounds outward; endpoints are read back as exact
``Fraction`` values with ``mpmath.libmp.to_rational``.
"""

import contextlib
import logging
import math
from dataclasses import dataclass
from decimal import Decimal, localcontext, ROUND_CEILING, ROUND_FLOOR
from fractions import Fraction
from typing import Dict, Iterable, Iterator, Optional, Tuple, Union

import mpmath
from mpmath import iv, libmp

from core.exceptions import CertificationError
from utils.config import get_config

logger = logging.getLogger(__name__)

Rational = Union[int, Fraction]

NEG_INF = "-inf"


# ============================================================================
# Interval plumbing
# ============================================================================

@contextlib.contextmanager
def interval_precision(bits: Optional[int] = None) -> Iterator[int]:
    """Run mpmath.iv at the configured working precision."""
    if bits is None:
        bits = get_config().precision.working_precision_bits
    saved = iv.prec
    iv.prec = bits
    try:
        yield bits
    finally:
        iv.prec = saved


def to_interval(q: Rational):
    """Outward-rounded iv enclosure of an exact rational."""
    q = Fraction(q)
    x = iv.mpf(q.numerator)
    if q.denominator != 1:
        x = x / iv.mpf(q.denominator)
    return x


def mpf_to_fraction(raw) -> Fraction:
    """Exact value of a raw mpf tuple as a Fraction of Python ints."""
    # mpmath's integer type is gmpy2.mpz when gmpy2 is installed
    num, den = libmp.to_rational(raw)
    return Fraction(int(num), int(den))


def interval_endpoints(x) -> Tuple[Fraction, Fraction]:
    """Exact endpoints of an mpmath interval."""
    lo, hi = x._mpi_
    for raw in (lo, hi):
        if raw in (libmp.finf, libmp.fninf, libmp.fnan):
            raise CertificationError("interval computation produced a non-finite endpoint")
    return mpf_to_fraction(lo), mpf_to_fraction(hi)


def round_down(q: Fraction, bits: Optional[int] = None) -> Fraction:
    """Largest dyadic with `bits` significant bits that is <= q."""
    if bits is None:
        bits = get_config().precision.working_precision_bits
    return mpf_to_fraction(libmp.from_rational(q.numerator, q.denominator, bits, libmp.round_floor))


def round_up(q: Fraction, bits: Optional[int] = None) -> Fraction:
    """Smallest dyadic with `bits` significant bits that is >= q."""
    if bits is None:
        bits = get_config().precision.working_precision_bits
    return mpf_to_fraction(libmp.from_rational(q.numerator, q.denominator, bits, libmp.round_ceiling))


def _is_power_of_two(n: int) -> bool:
    return n > 0 and n & (n - 1) == 0


def log2_bounds(q: Rational) -> Tuple[Fraction, Fraction]:
    """Enclosure of log2(q) for a positive rational; exact for powers of two."""
    q = Fraction(q)
    if q <= 0:
        raise ValueError(f"log2 of non-positive value {q}")
    if _is_power_of_two(q.numerator) and _is_power_of_two(q.denominator):
        e = Fraction(q.numerator.bit_length() - q.denominator.bit_length())
        return e, e
    with interval_precision():
        y = iv.log(to_interval(q)) / iv.log(2)
        return interval_endpoints(y)


def sqrt_bounds(q: Rational) -> Tuple[Fraction, Fraction]:
    """Enclosure of sqrt(q) for q >= 0; exact for rational squares."""
    q = Fraction(q)
    if q < 0:
        raise ValueError(f"sqrt of negative value {q}")
    num, den = q.numerator, q.denominator
    n_root = _isqrt_exact(num)
    d_root = _isqrt_exact(den)
    if n_root is not None and d_root is not None:
        exact = Fraction(n_root, d_root)
        return exact, exact
    with interval_precision():
        return interval_endpoints(iv.sqrt(to_interval(q)))


def _isqrt_exact(n: int) -> Optional[int]:
    r = math.isqrt(n)
    return r if r * r == n else None


def exp2_bounds(t: Rational) -> Tuple[Fraction, Fraction]:
    """Enclosure of 2^t."""
    t = Fraction(t)
    if t.denominator == 1:
        v = Fraction(2) ** int(t)
        return v, v
    with interval_precision():
        return interval_endpoints(iv.exp(to_interval(t) * iv.log(2)))


def _log2_sum(a: Fraction, b: Fraction, upward: bool) -> Fraction:
    """Rounded log2(2^a + 2^b)."""
    big, small = (a, b) if a >= b else (b, a)
    t = small - big
    if t == 0:
        return big + 1
    with interval_precision():
        ln2 = iv.log(2)
        y = iv.log(1 + iv.exp(to_interval(t) * ln2)) / ln2
        lo, hi = interval_endpoints(y)
    return big + (hi if upward else lo)


def decimal_string(q: Fraction, digits: Optional[int] = None, upward: bool = True) -> str:
    """Directed-rounded decimal rendering of an exact rational."""
    if q.denominator == 1:
        return str(int(q.numerator))
    if digits is None:
        digits = get_config().output.decimal_digits
    with localcontext() as ctx:
        ctx.prec = digits
        ctx.rounding = ROUND_CEILING if upward else ROUND_FLOOR
        return str(Decimal(int(q.numerator)) / Decimal(int(q.denominator)))


def parse_rational(text: Union[str, int, Fraction]) -> Fraction:
    """Parse '3', '-7/2', '1.25e3' into an exact rational."""
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError) as e:
        raise ValueError(f"not a rational number: {text!r}") from e


# ============================================================================
# MagnitudeBound
# ============================================================================

@dataclass(frozen=True)
class MagnitudeBound:
    """
    Enclosure [lo, hi] of a nonnegative real, stored as log2 endpoints.

    ``log2_lo is None`` means the lower bound is 0. ``log2_hi is None`` means
    the quantity is exactly 0 (then ``log2_lo`` is None as well).
    """
    log2_lo: Optional[Fraction]
    log2_hi: Optional[Fraction]

    def __post_init__(self):
        lo = None if self.log2_lo is None else Fraction(self.log2_lo)
        hi = None if self.log2_hi is None else Fraction(self.log2_hi)
        if hi is None and lo is not None:
            raise ValueError("a zero magnitude cannot have a positive lower bound")
        if lo is not None and lo > hi:
            raise ValueError(f"empty enclosure: log2 in [{lo}, {hi}]")
        object.__setattr__(self, 'log2_lo', lo)
        object.__setattr__(self, 'log2_hi', hi)

    # -- construction --------------------------------------------------

    @classmethod
    def zero(cls) -> 'MagnitudeBound':
        return cls(None, None)

    @classmethod
    def one(cls) -> 'MagnitudeBound':
        return cls(Fraction(0), Fraction(0))

    @classmethod
    def power_of_two(cls, exponent: Rational) -> 'MagnitudeBound':
        return cls(Fraction(exponent), Fraction(exponent))

    @classmethod
    def from_log2(cls, lo: Rational, hi: Rational) -> 'MagnitudeBound':
        return cls(Fraction(lo), Fraction(hi))

    @classmethod
    def exact(cls, value: Rational) -> 'MagnitudeBound':
        value = Fraction(value)
        if value < 0:
            raise ValueError("magnitudes are nonnegative; pass abs(value)")
        if value == 0:
            return cls.zero()
        return cls(*log2_bounds(value))

    @classmethod
    def from_bounds(cls, lo: Rational, hi: Rational) -> 'MagnitudeBound':
        """Enclosure of a quantity known to lie in [lo, hi], 0 <= lo <= hi."""
        lo, hi = Fraction(lo), Fraction(hi)
        if lo < 0 or hi < lo:
            raise ValueError(f"bad magnitude range [{lo}, {hi}]")
        if hi == 0:
            return cls.zero()
        log_hi = log2_bounds(hi)[1]
        log_lo = log2_bounds(lo)[0] if lo > 0 else None
        return cls(log_lo, log_hi)

    @classmethod
    def from_dict(cls, data: Dict[str, str]) -> 'MagnitudeBound':
        def parse(v):
            return None if v == NEG_INF else parse_rational(v)
        return cls(parse(data['log2_lower']), parse(data['log2_upper']))

    # -- properties ----------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return self.log2_hi is None

    @property
    def is_exact(self) -> bool:
        return self.log2_lo == self.log2_hi

    @property
    def width(self) -> Optional[Fraction]:
        """Width of the log2 enclosure (None when the lower bound is 0)."""
        if self.is_zero:
            return Fraction(0)
        if self.log2_lo is None:
            return None
        return self.log2_hi - self.log2_lo

    def log2_upper(self) -> Fraction:
        if self.log2_hi is None:
            raise CertificationError("log2 upper bound of an exact zero")
        return self.log2_hi

    def log2_lower(self) -> Fraction:
        if self.log2_lo is None:
            raise CertificationError("magnitude is not bounded away from zero")
        return self.log2_lo

    # -- arithmetic ----------------------------------------------------

    def __mul__(self, other: 'MagnitudeBound') -> 'MagnitudeBound':
        if self.is_zero or other.is_zero:
            return MagnitudeBound.zero()
        lo = None if self.log2_lo is None or other.log2_lo is None else self.log2_lo + other.log2_lo
        return MagnitudeBound(lo, self.log2_hi + other.log2_hi)

    def reciprocal(self) -> 'MagnitudeBound':
        return MagnitudeBound(-self.log2_upper(), -self.log2_lower())

    def __truediv__(self, other: 'MagnitudeBound') -> 'MagnitudeBound':
        return self * other.reciprocal()

    def __pow__(self, exponent: Rational) -> 'MagnitudeBound':
        """Real power; the result is snapped outward to working precision."""
        r = Fraction(exponent)
        if r == 0:
            return MagnitudeBound.one()
        if self.is_zero:
            if r < 0:
                raise ZeroDivisionError("negative power of zero")
            return self
        if r < 0:
            return (self ** -r).reciprocal()
        lo = None if self.log2_lo is None else self.log2_lo * r
        hi = self.log2_hi * r
        return MagnitudeBound(
            None if lo is None else round_down(lo) if lo.denominator != 1 else lo,
            round_up(hi) if hi.denominator != 1 else hi,
        )

    def root(self, d: int) -> 'MagnitudeBound':
        return self ** Fraction(1, d)

    def __add__(self, other: 'MagnitudeBound') -> 'MagnitudeBound':
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        hi = _log2_sum(self.log2_hi, other.log2_hi, upward=True)
        if self.log2_lo is None:
            lo = other.log2_lo
        elif other.log2_lo is None:
            lo = self.log2_lo
        else:
            lo = _log2_sum(self.log2_lo, other.log2_lo, upward=False)
        return MagnitudeBound(lo, hi)

    def maximum(self, other: 'MagnitudeBound') -> 'MagnitudeBound':
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        if self.log2_lo is None:
            lo = other.log2_lo
        elif other.log2_lo is None:
            lo = self.log2_lo
        else:
            lo = max(self.log2_lo, other.log2_lo)
        return MagnitudeBound(lo, max(self.log2_hi, other.log2_hi))

    def clamp_at_one(self) -> 'MagnitudeBound':
        """Enclosure of max(1, x)."""
        return self.maximum(MagnitudeBound.one())

    # -- comparisons ---------------------------------------------------

    def certainly_lt(self, other: 'MagnitudeBound') -> bool:
        if other.log2_lo is None:
            return False
        if self.is_zero:
            return True
        return self.log2_hi < other.log2_lo

    def certainly_le(self, other: 'MagnitudeBound') -> bool:
        if self.is_zero:
            return True
        if other.log2_lo is None:
            return False
        return self.log2_hi <= other.log2_lo

    def certainly_gt(self, other: 'MagnitudeBound') -> bool:
        return other.certainly_lt(self)

    def overlaps(self, other: 'MagnitudeBound') -> bool:
        """True unless one enclosure lies strictly below the other."""
        return not (self.certainly_lt(other) or other.certainly_lt(self))

    def contains(self, value: Rational) -> bool:
        """Consistent with the exact value (up to the rounding of log2(value))."""
        return self.overlaps(MagnitudeBound.exact(abs(Fraction(value))))

    # -- rendering -----------------------------------------------------

    def to_dict(self, digits: Optional[int] = None) -> Dict[str, str]:
        return {
            'log2_lower': NEG_INF if self.log2_lo is None else decimal_string(self.log2_lo, digits, upward=False),
            'log2_upper': NEG_INF if self.log2_hi is None else decimal_string(self.log2_hi, digits, upward=True),
        }

    def approx(self, digits: int = 12) -> str:
        """Human-readable midpoint value, for logs and text tables only."""
        if self.is_zero:
            return "0"
        mid = self.log2_hi if self.log2_lo is None else (self.log2_lo + self.log2_hi) / 2
        with mpmath.workprec(64):
            value = mpmath.mpf(2) ** (mpmath.mpf(mid.numerator) / mid.denominator)
            return mpmath.nstr(value, digits)

    def __str__(self) -> str:
        lo = NEG_INF if self.log2_lo is None else decimal_string(self.log2_lo, 12, upward=False)
        hi = NEG_INF if self.log2_hi is None else decimal_string(self.log2_hi, 12, upward=True)
        return f"2^[{lo}, {hi}]"


def product(bounds: Iterable[MagnitudeBound]) -> MagnitudeBound:
    result = MagnitudeBound.one()
    for b in bounds:
        result = result * b
    return result


def total(bounds: Iterable[MagnitudeBound]) -> MagnitudeBound:
    result = MagnitudeBound.zero()
    for b in bounds:
        result = result + b
    return result
