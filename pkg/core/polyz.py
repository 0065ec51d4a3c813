"""
🔢 Exact Integer Polynomials
===========================

IntPolynomial is an immutable univariate polynomial over Z. Algebra that is
more than coefficient bookkeeping (resultants, factorization over Z, gcds,
square-free parts) is delegated to sympy's dense ZZ polynomial engine.

Conventions:
- coefficients are stored low-to-high, trailing zeros stripped
- the zero polynomial has no coefficients and degree -1
- "normalized" means primitive with a positive leading coefficient
"""

import json
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

import sympy as sp

from core.exceptions import DegreeCapExceeded, PolynomialError
from utils.config import get_config

logger = logging.getLogger(__name__)

X = sp.Symbol('x')
_Y = sp.Symbol('_y')

GaussianRational = Tuple[Fraction, Fraction]


@dataclass(frozen=True)
class IntPolynomial:
    """Polynomial with integer coefficients, low-to-high."""
    coeffs: Tuple[int, ...]

    def __post_init__(self):
        coeffs = [int(c) for c in self.coeffs]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, 'coeffs', tuple(coeffs))

    # ------------------------------------------------------------------
    # Construction and conversion
    # ------------------------------------------------------------------

    @classmethod
    def from_coeffs(cls, coeffs: Sequence[int]) -> 'IntPolynomial':
        return cls(tuple(coeffs))

    @classmethod
    def constant(cls, c: int) -> 'IntPolynomial':
        return cls((c,))

    @classmethod
    def linear(cls, root: Union[int, Fraction]) -> 'IntPolynomial':
        """Normalized minimal polynomial of a rational number."""
        root = Fraction(root)
        return cls((-root.numerator, root.denominator))

    @classmethod
    def from_sympy(cls, poly: sp.Poly) -> 'IntPolynomial':
        if poly.is_zero:
            return cls(())
        return cls(tuple(int(c) for c in reversed(poly.all_coeffs())))

    def to_sympy(self, gen: sp.Symbol = X) -> sp.Poly:
        if self.is_zero:
            return sp.Poly(0, gen, domain='ZZ')
        return sp.Poly(list(reversed(self.coeffs)), gen, domain='ZZ')

    @classmethod
    def from_text(cls, text: str) -> 'IntPolynomial':
        """Parse a JSON list of integers (low-to-high) or a sympy expression in x."""
        text = text.strip()
        if text.startswith('['):
            try:
                values = json.loads(text)
            except json.JSONDecodeError as e:
                raise PolynomialError(f"bad coefficient list: {e}") from e
            return cls.from_json(values)
        try:
            poly = sp.Poly(sp.sympify(text), X)
        except (sp.SympifyError, sp.PolynomialError) as e:
            raise PolynomialError(f"cannot parse polynomial '{text}': {e}") from e
        if not all(c.is_Integer for c in poly.all_coeffs()):
            raise PolynomialError(f"polynomial '{text}' does not have integer coefficients")
        return cls.from_sympy(poly.set_domain('ZZ'))

    @classmethod
    def from_json(cls, values: Sequence[Union[int, str]]) -> 'IntPolynomial':
        """Coefficients as ints or decimal strings (arbitrarily large), low-to-high."""
        if any(isinstance(v, (bool, float)) for v in values):
            raise PolynomialError("coefficients must be integers, not floats or booleans")
        try:
            return cls(tuple(int(v) for v in values))
        except (TypeError, ValueError) as e:
            raise PolynomialError(f"coefficients must be integers: {e}") from e

    def to_json(self) -> List[Union[int, str]]:
        # keep JSON readers that parse numbers as doubles honest
        return [c if abs(c) < 2 ** 53 else str(c) for c in self.coeffs]

    def to_text(self) -> str:
        return json.dumps(self.to_json())

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        return sp.sstr(self.to_sympy().as_expr())

    # ------------------------------------------------------------------
    # Properties
    # ------------------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading_coefficient(self) -> int:
        if self.is_zero:
            raise PolynomialError("the zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    @property
    def constant_term(self) -> int:
        return self.coeffs[0] if self.coeffs else 0

    @property
    def is_monic(self) -> bool:
        return not self.is_zero and self.coeffs[-1] == 1

    @property
    def is_normalized(self) -> bool:
        return not self.is_zero and self.coeffs[-1] > 0 and self.to_sympy().content() == 1

    @property
    def is_palindromic(self) -> bool:
        """Self-reciprocal: coefficients read the same in both directions."""
        return not self.is_zero and self.coeffs == tuple(reversed(self.coeffs))

    # ------------------------------------------------------------------
    # Arithmetic
    # ------------------------------------------------------------------

    def __add__(self, other: 'IntPolynomial') -> 'IntPolynomial':
        return IntPolynomial.from_sympy(self.to_sympy() + other.to_sympy())

    def __sub__(self, other: 'IntPolynomial') -> 'IntPolynomial':
        return IntPolynomial.from_sympy(self.to_sympy() - other.to_sympy())

    def __mul__(self, other: 'IntPolynomial') -> 'IntPolynomial':
        return IntPolynomial.from_sympy(self.to_sympy() * other.to_sympy())

    def __neg__(self) -> 'IntPolynomial':
        return IntPolynomial(tuple(-c for c in self.coeffs))

    def derivative(self) -> 'IntPolynomial':
        return IntPolynomial.from_sympy(self.to_sympy().diff(X))

    def negate_variable(self) -> 'IntPolynomial':
        """p(-x)."""
        return IntPolynomial(tuple(c if k % 2 == 0 else -c for k, c in enumerate(self.coeffs)))

    def evaluate(self, x: Union[int, Fraction]) -> Fraction:
        """Exact value at a rational point."""
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def evaluate_complex(self, z: GaussianRational) -> GaussianRational:
        """Exact value at a Gaussian rational point (re, im)."""
        zr, zi = z
        re, im = Fraction(0), Fraction(0)
        for c in reversed(self.coeffs):
            re, im = re * zr - im * zi + c, re * zi + im * zr
        return re, im


def content_primitive(p: IntPolynomial) -> Tuple[int, IntPolynomial]:
    """
    Split p = c * q with q primitive and lc(q) > 0.

    The content carries the sign, so content_primitive(-x + 1) == (-1, x - 1).
    """
    if p.is_zero:
        raise PolynomialError("content of the zero polynomial is undefined")
    content, prim = p.to_sympy().primitive()
    content = int(content)
    q = IntPolynomial.from_sympy(prim)
    if q.leading_coefficient < 0:
        content, q = -content, -q
    return content, q


def normalize(p: IntPolynomial) -> IntPolynomial:
    return content_primitive(p)[1]


def resultant(p: IntPolynomial, q: IntPolynomial) -> int:
    """Res(p, q) via sympy's subresultant machinery over ZZ."""
    if p.is_zero or q.is_zero:
        raise PolynomialError("resultant with the zero polynomial")
    return int(p.to_sympy().resultant(q.to_sympy()))


def gcd(p: IntPolynomial, q: IntPolynomial) -> IntPolynomial:
    g = IntPolynomial.from_sympy(p.to_sympy().gcd(q.to_sympy()))
    return normalize(g) if not g.is_zero else g


def sum_poly(p: IntPolynomial, q: IntPolynomial) -> IntPolynomial:
    """
    Normalized Res_y(p(y), q(x - y)).

    Its roots are all alpha + beta with p(alpha) = 0 and q(beta) = 0, so
    deg sum_poly(p, q) = deg p * deg q.
    """
    if p.degree < 1 or q.degree < 1:
        raise PolynomialError("sum_poly needs two non-constant polynomials")
    p_y = sp.Poly(p.to_sympy(_Y).as_expr(), _Y, X, domain='ZZ')
    q_shifted = sp.Poly(q.to_sympy(X).as_expr().subs(X, X - _Y), _Y, X, domain='ZZ')
    # eliminating the first generator leaves a polynomial in x
    s = IntPolynomial.from_sympy(p_y.resultant(q_shifted))
    logger.debug(f"sum_poly: degree {p.degree} x {q.degree} -> {s.degree}")
    return normalize(s)


def recip_poly(p: IntPolynomial) -> IntPolynomial:
    """Normalized x^deg(p) * p(1/x); requires p(0) != 0."""
    if p.is_zero or p.constant_term == 0:
        raise PolynomialError("reciprocal polynomial needs a nonzero constant term")
    return normalize(IntPolynomial(tuple(reversed(p.coeffs))))


def squarefree_part(p: IntPolynomial) -> IntPolynomial:
    if p.is_zero:
        raise PolynomialError("square-free part of the zero polynomial")
    if p.degree == 0:
        return IntPolynomial.constant(1)
    return normalize(IntPolynomial.from_sympy(p.to_sympy().sqf_part()))


def factor(p: IntPolynomial, cap: Optional[int] = None) -> List[Tuple[IntPolynomial, int]]:
    """
    Complete factorization over Z into normalized irreducible factors.

    Returns (factor, multiplicity) pairs sorted by (degree, coefficients).
    Constants are dropped. Raises DegreeCapExceeded when deg p > cap.
    """
    if p.is_zero:
        raise PolynomialError("cannot factor the zero polynomial")
    if cap is None:
        cap = get_config().algebra.factor_degree_cap
    if p.degree > cap:
        raise DegreeCapExceeded(p.degree, cap, "factorization input")
    if p.degree == 0:
        return []

    _, factors = p.to_sympy().factor_list()
    result = [(normalize(IntPolynomial.from_sympy(f)), int(k)) for f, k in factors]
    result.sort(key=lambda fk: (fk[0].degree, fk[0].coeffs, fk[1]))
    return result


def is_irreducible(p: IntPolynomial, cap: Optional[int] = None) -> bool:
    """True when p is (up to content) a single irreducible factor of multiplicity one."""
    factors = factor(p, cap)
    return len(factors) == 1 and factors[0][1] == 1 and factors[0][0].degree == p.degree
