"""
📜 Sequence Specifications
=========================

JSON description of a sequence a_1, a_2, ... of algebraic numbers and the
tail assumptions declared about it, parsed with pydantic and materialized
into a prefix of exact AlgebraicNumber terms.

Families:
- ``integer``: rational integers, listed or given by a formula in ``n``
- ``dth_root``: the selected root of x^d - a_n for integer radicands a_n
- ``explicit``: minimal polynomial per term plus a root disk or selector
"""

import json
import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import cached_property
from pathlib import Path
from typing import Any, Dict, List, Literal, Optional, Tuple, Union

import sympy as sp
from pydantic import BaseModel, Field, ValidationError, field_validator

from core import algnum
from core.algnum import AlgebraicNumber, MAX_MODULUS_SELECTOR
from core.exceptions import PolynomialError, SpecFormatError, TailcertError
from core.heights import house, weil_height
from core.magnitude import MagnitudeBound, parse_rational
from core.roots import ComplexDisk, modulus
from utils.config import get_config

logger = logging.getLogger(__name__)

N = sp.Symbol('n', integer=True, positive=True)


# ============================================================================
# Wire format
# ============================================================================

class TailAssumptionModel(BaseModel):
    """One declared tail assumption."""
    kind: Literal["polynomial_floor", "geometric_floor", "exponential_floor"]
    params: Dict[str, Union[int, float, str]] = Field(default_factory=dict, description="epsilon, ratio, from_index")


class SequenceSpecModel(BaseModel):
    """Sequence specification as read from disk."""
    family: Literal["integer", "dth_root", "explicit"]
    terms: List[Any] = Field(default_factory=list, description="explicit prefix terms")
    formula: Optional[str] = Field(None, description="sympy expression in n (integer and dth_root families)")
    count: Optional[int] = Field(None, description="number of terms generated from the formula")
    d: Optional[int] = Field(None, description="root degree (dth_root) or degree bound")
    selector: Union[str, Dict[str, Any]] = Field(MAX_MODULUS_SELECTOR, description="selection rule name or a root disk")
    tail: Union[TailAssumptionModel, List[TailAssumptionModel], None] = None
    pisot_salem: bool = False

    @field_validator('d')
    @classmethod
    def _positive_d(cls, v):
        if v is not None and v < 1:
            raise ValueError("d must be >= 1")
        return v

    @field_validator('count')
    @classmethod
    def _nonnegative_count(cls, v):
        if v is not None and v < 0:
            raise ValueError("count must be >= 0")
        return v


# ============================================================================
# Domain types
# ============================================================================

class TailKind(Enum):
    POLYNOMIAL_FLOOR = "polynomial_floor"
    GEOMETRIC_FLOOR = "geometric_floor"
    EXPONENTIAL_FLOOR = "exponential_floor"


@dataclass(frozen=True)
class TailAssumption:
    """
    Declared growth of |a_n| beyond the prefix.

    polynomial_floor: |a_n| >= n^(1+epsilon); geometric_floor: |a_{n+1}| >= ratio*|a_n|;
    exponential_floor: |a_n| >= 2^n. Each holds for n >= from_index.
    """
    kind: TailKind
    epsilon: Optional[Fraction] = None
    ratio: Optional[Fraction] = None
    from_index: int = 1

    def to_dict(self) -> Dict[str, Any]:
        params: Dict[str, Any] = {'from_index': self.from_index}
        if self.epsilon is not None:
            params['epsilon'] = str(self.epsilon)
        if self.ratio is not None:
            params['ratio'] = str(self.ratio)
        return {'kind': self.kind.value, 'params': params}

    @classmethod
    def from_model(cls, model: TailAssumptionModel) -> 'TailAssumption':
        kind = TailKind(model.kind)
        params = dict(model.params)
        try:
            from_index = int(params.pop('from_index', 1))
            epsilon = parse_rational(params.pop('epsilon')) if 'epsilon' in params else None
            ratio = parse_rational(params.pop('ratio')) if 'ratio' in params else None
        except ValueError as e:
            raise SpecFormatError(f"bad tail parameter: {e}") from e
        if params:
            raise SpecFormatError(f"unknown tail parameters {sorted(params)}")
        if from_index < 1:
            raise SpecFormatError("from_index must be >= 1")
        if kind is TailKind.POLYNOMIAL_FLOOR and (epsilon is None or epsilon <= 0):
            raise SpecFormatError("polynomial_floor needs epsilon > 0")
        if kind is TailKind.GEOMETRIC_FLOOR and (ratio is None or ratio <= 1):
            raise SpecFormatError("geometric_floor needs ratio > 1")
        return cls(kind, epsilon=epsilon, ratio=ratio, from_index=from_index)


class SequenceFamily(Enum):
    INTEGER = "integer"
    DTH_ROOT = "dth_root"
    EXPLICIT = "explicit"


@dataclass(frozen=True)
class SequenceSpec:
    family: SequenceFamily
    raw_terms: Tuple[Any, ...]
    tail_assumptions: Tuple[TailAssumption, ...] = ()
    d: Optional[int] = None
    selector: Union[str, Dict[str, Any]] = MAX_MODULUS_SELECTOR
    pisot_salem: bool = False

    @property
    def prefix_length(self) -> int:
        return len(self.raw_terms)

    def assumption(self, kind: TailKind) -> Optional[TailAssumption]:
        """The first declared assumption of a kind."""
        for a in self.tail_assumptions:
            if a.kind is kind:
                return a
        return None


@dataclass
class SequenceTerm:
    """One materialized a_n with lazily computed bounds."""
    index: int
    value: AlgebraicNumber
    tol: Optional[Fraction] = None

    @property
    def degree(self) -> int:
        return self.value.degree

    @cached_property
    def modulus(self) -> MagnitudeBound:
        """|a_n| from its own isolating disk, tightened to the root tolerance."""
        return modulus(self.disk)

    @cached_property
    def house(self) -> MagnitudeBound:
        return house(self.value, self.tol)

    @cached_property
    def height(self) -> MagnitudeBound:
        return weil_height(self.value, self.tol)

    @cached_property
    def disk(self) -> ComplexDisk:
        if self.value.iso.is_point:
            return self.value.iso
        return algnum.enclosure(self.value, self._abs_tol(self.value.iso))

    def _abs_tol(self, disk: ComplexDisk) -> Fraction:
        rel = self.tol or get_config().precision.root_tolerance
        scale = max(Fraction(1), abs(disk.re) + abs(disk.im))
        return rel * scale

    def refined(self, factor: int = 2) -> 'SequenceTerm':
        """Same term with the tolerance raised to the given power."""
        rel = self.tol or get_config().precision.root_tolerance
        return SequenceTerm(self.index, self.value, rel ** factor)


@dataclass
class Prefix:
    """Materialized a_1..a_L together with the spec it came from."""
    spec: SequenceSpec
    terms: List[SequenceTerm] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.terms)

    def term(self, n: int) -> SequenceTerm:
        """1-based access."""
        if n < 1 or n > len(self.terms):
            raise IndexError(f"term {n} is outside the prefix 1..{len(self.terms)}")
        return self.terms[n - 1]


# ============================================================================
# Parsing and materialization
# ============================================================================

def _expand_formula(model: SequenceSpecModel) -> List[Any]:
    if model.terms:
        raise SpecFormatError("give either 'terms' or 'formula', not both")
    if model.count is None:
        raise SpecFormatError("'formula' needs 'count'")
    try:
        expr = sp.sympify(model.formula, locals={'n': N})
    except (sp.SympifyError, TypeError) as e:
        raise SpecFormatError(f"cannot parse formula '{model.formula}': {e}") from e
    return [expr.subs(N, k) for k in range(1, model.count + 1)]


def parse_spec(data: Dict[str, Any]) -> SequenceSpec:
    """Validate a JSON-decoded spec; every failure is a SpecFormatError."""
    try:
        model = SequenceSpecModel.model_validate(data)
    except ValidationError as e:
        raise SpecFormatError(f"invalid sequence spec: {e}") from e

    raw = _expand_formula(model) if model.formula is not None else list(model.terms)
    if not raw:
        raise SpecFormatError("the sequence prefix is empty")

    family = SequenceFamily(model.family)
    if family is SequenceFamily.DTH_ROOT and model.d is None:
        raise SpecFormatError("dth_root family needs 'd'")
    if family is SequenceFamily.EXPLICIT and model.formula is not None:
        raise SpecFormatError("explicit family takes 'terms' only")

    tails = model.tail if isinstance(model.tail, list) else ([model.tail] if model.tail else [])
    return SequenceSpec(
        family=family,
        raw_terms=tuple(raw),
        tail_assumptions=tuple(TailAssumption.from_model(t) for t in tails),
        d=model.d,
        selector=model.selector,
        pisot_salem=model.pisot_salem,
    )


def load_spec(path: Union[str, Path]) -> SequenceSpec:
    try:
        with open(path, 'r') as f:
            data = json.load(f)
    except FileNotFoundError as e:
        raise SpecFormatError(f"spec file not found: {path}") from e
    except json.JSONDecodeError as e:
        raise SpecFormatError(f"spec file is not valid JSON: {e}") from e
    return parse_spec(data)


def _to_integer(raw: Any, index: int) -> int:
    if isinstance(raw, bool):
        raise SpecFormatError(f"term {index}: booleans are not integers")
    if isinstance(raw, int):
        return raw
    try:
        value = sp.sympify(raw) if isinstance(raw, str) else raw
    except sp.SympifyError as e:
        raise SpecFormatError(f"term {index}: cannot parse {raw!r}") from e
    if not getattr(value, 'is_Integer', False):
        raise SpecFormatError(f"term {index}: {raw!r} is not an integer")
    return int(value)


def _materialize_term(spec: SequenceSpec, raw: Any, index: int) -> AlgebraicNumber:
    if spec.family is SequenceFamily.INTEGER:
        return algnum.from_rational(_to_integer(raw, index))

    if spec.family is SequenceFamily.DTH_ROOT:
        radicand = _to_integer(raw, index)
        coeffs = [-radicand] + [0] * (spec.d - 1) + [1]
        try:
            return algnum.parse({'minpoly': coeffs}, spec.selector)
        except PolynomialError as e:
            raise SpecFormatError(f"term {index}: {e}") from e

    if not isinstance(raw, dict):
        raise SpecFormatError(f"term {index}: explicit terms are objects with 'minpoly'")
    try:
        return algnum.parse(raw, spec.selector)
    except PolynomialError as e:
        raise SpecFormatError(f"term {index}: {e}") from e


def materialize(spec: SequenceSpec) -> Prefix:
    """Build every prefix term as an exact algebraic number."""
    prefix = Prefix(spec)
    for index, raw in enumerate(spec.raw_terms, start=1):
        try:
            value = _materialize_term(spec, raw, index)
        except TailcertError:
            raise
        except (TypeError, ValueError) as e:
            raise SpecFormatError(f"term {index}: {e}") from e
        prefix.terms.append(SequenceTerm(index, value))
    logger.info(f"📜 Materialized {len(prefix)} terms of a {spec.family.value} sequence")
    return prefix
