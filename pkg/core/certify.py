"""
🏁 Growth Hypotheses and Non-Degree Certificates
===============================================

Given a prefix a_1..a_L of algebraic integers and declared tail assumptions,
this module

1. checks the growth-theorem hypotheses on the prefix (three-valued: pass,
   fail, inconclusive after one refinement round),
2. computes the growth exponents log2 house(a_n) / (D^n * prod_{i<n}(d^i + d)),
3. bounds the tail sum_{n>N} 1/|a_n| with one of three estimators, and
4. searches for a witness N with

       log2 tail(N) + D * d^N * ((N + 1) + log2 Hmax + sum_{n<=N} log2 house(a_n)) < 0,

   which certifies that the series sum 1/a_n is not an algebraic number of
   degree <= D and height <= Hmax (conditional on the declared tail).

All magnitudes are MagnitudeBound enclosures in log2 space, so exponents
like D * d^N never overflow.
"""

import hashlib
import json
import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any, Callable, Dict, List, Optional, Sequence, Union

from mpmath import iv
from pydantic import BaseModel, Field, ValidationError

from core import algnum
from core.algnum import AlgebraicNumber
from core.exceptions import (
    AssumptionNotVerified,
    DegreeCapExceeded,
    HypothesisViolation,
    SpecFormatError,
)
from core.heights import sum_degree_bound, sum_height_bound, weil_height
from core.magnitude import (
    MagnitudeBound,
    decimal_string,
    interval_endpoints,
    interval_precision,
    log2_bounds,
    parse_rational,
    round_down,
    round_up,
    to_interval,
    total,
)
from core.roots import compare_moduli
from core.sequences import Prefix, SequenceTerm, TailAssumption, TailKind
from utils.config import get_config

logger = logging.getLogger(__name__)


# ============================================================================
# Hypothesis checks
# ============================================================================

class CheckStatus(Enum):
    PASS = "pass"
    FAIL = "fail"
    INCONCLUSIVE = "inconclusive"


INTEGRALITY = "algebraic integer of bounded degree"
MODULUS_IS_HOUSE = "modulus equals house"
INCREASING = "strictly increasing modulus"
GROWTH_FLOOR = "polynomial growth floor"
HALF_PLANE = "positive real or imaginary part"


@dataclass
class HypothesisResult:
    name: str
    status: CheckStatus
    index: Optional[int] = None
    detail: str = ""

    def to_dict(self) -> Dict[str, Any]:
        return {'name': self.name, 'status': self.status.value, 'index': self.index, 'detail': self.detail}


@dataclass
class HypothesisReport:
    """Outcome of every hypothesis on the prefix."""
    results: List[HypothesisResult]
    epsilon: Fraction
    degree_bound: int
    max_degree: int
    growth_from: Optional[int]

    @property
    def passed(self) -> bool:
        return all(r.status is CheckStatus.PASS for r in self.results)

    @property
    def degree_attained(self) -> bool:
        return self.max_degree == self.degree_bound

    def first_problem(self) -> Optional[HypothesisResult]:
        failures = [r for r in self.results if r.status is CheckStatus.FAIL]
        undecided = [r for r in self.results if r.status is CheckStatus.INCONCLUSIVE]
        return (failures or undecided or [None])[0]

    def require(self):
        """Raise HypothesisViolation for the first failed (or undecided) hypothesis."""
        problem = self.first_problem()
        if problem is not None:
            detail = problem.detail if problem.status is CheckStatus.FAIL else f"inconclusive: {problem.detail}"
            raise HypothesisViolation(problem.name, problem.index, detail)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'checks': [r.to_dict() for r in self.results],
            'epsilon': str(self.epsilon),
            'degree_bound': self.degree_bound,
            'max_degree': self.max_degree,
            'degree_attained': self.degree_attained,
            'growth_from': self.growth_from,
            'passed': self.passed,
        }

    def digest(self) -> str:
        payload = json.dumps(self.to_dict(), sort_keys=True).encode()
        return hashlib.sha256(payload).hexdigest()


def _decided(check: Callable[..., Optional[bool]], *terms: SequenceTerm) -> Optional[bool]:
    """Evaluate a three-valued check, with one refinement round when undecided."""
    verdict = check(*terms)
    if verdict is None:
        verdict = check(*(t.refined() for t in terms))
    return verdict


def _increasing(earlier: SequenceTerm, later: SequenceTerm) -> Optional[bool]:
    sign = compare_moduli(later.disk, earlier.disk)
    return None if sign is None else sign > 0


def _in_half_plane(term: SequenceTerm) -> Optional[bool]:
    d = term.disk
    if d.re > d.rad or d.im > d.rad:
        return True
    if d.re + d.rad <= 0 and d.im + d.rad <= 0:
        return False
    return None


def _growth_check(epsilon: Fraction) -> Callable[[SequenceTerm], Optional[bool]]:
    power = 1 + epsilon

    def check(term: SequenceTerm) -> Optional[bool]:
        n = term.index
        target_lo, target_hi = (x * power for x in log2_bounds(n))
        m = term.modulus
        if m.log2_lo is not None and m.log2_lo >= target_hi:
            return True
        if m.log2_hi is None or m.log2_hi < target_lo:
            return False
        if term.disk.is_point:
            # exact: |a|^(2q) >= n^(2p) with 1 + epsilon = p/q
            abs2 = term.disk.center_abs2()
            return abs2 ** power.denominator >= Fraction(n) ** (2 * power.numerator)
        return None

    return check


def hypothesis_check(prefix: Prefix, epsilon: Union[Fraction, int], d: int) -> HypothesisReport:
    """
    Check the five growth-theorem hypotheses on every prefix term.

    A declared polynomial_floor is required from its from_index. Without
    one the floor only has to hold on a terminal run of the prefix; the
    report records the first index of that run as growth_from.
    """
    epsilon = Fraction(epsilon)
    if epsilon <= 0 or d < 1:
        raise SpecFormatError("epsilon must be > 0 and d >= 1")
    terms = prefix.terms
    results: List[HypothesisResult] = []

    # (i) integrality and degree
    status = HypothesisResult(INTEGRALITY, CheckStatus.PASS)
    for t in terms:
        if not t.value.is_algebraic_integer:
            status = HypothesisResult(INTEGRALITY, CheckStatus.FAIL, t.index, "not an algebraic integer")
            break
        if t.degree > d:
            status = HypothesisResult(INTEGRALITY, CheckStatus.FAIL, t.index, f"degree {t.degree} > {d}")
            break
    results.append(status)
    max_degree = max(t.degree for t in terms)

    # (ii) no conjugate certainly larger than the designated root
    status = HypothesisResult(MODULUS_IS_HOUSE, CheckStatus.PASS)
    for t in terms:
        if t.modulus.certainly_lt(t.house):
            status = HypothesisResult(MODULUS_IS_HOUSE, CheckStatus.FAIL, t.index, "a conjugate has larger modulus")
            break
    results.append(status)

    # (iii) strictly increasing modulus
    results.append(_pairwise(INCREASING, terms, _increasing))

    # (iv) growth floor
    check = _growth_check(epsilon)
    verdicts = {t.index: _decided(check, t) for t in terms}
    growth_from = None
    for t in reversed(terms):
        if verdicts[t.index] is not True:
            break
        growth_from = t.index
    floor = prefix.spec.assumption(TailKind.POLYNOMIAL_FLOOR)
    if floor is not None:
        results.append(_floor_from(verdicts, terms, floor.from_index, epsilon))
    else:
        results.append(_floor_eventually(verdicts, terms, growth_from, epsilon))

    # (v) positive real or imaginary part
    status = HypothesisResult(HALF_PLANE, CheckStatus.PASS)
    for t in terms:
        verdict = _decided(_in_half_plane, t)
        if verdict is False:
            status = HypothesisResult(HALF_PLANE, CheckStatus.FAIL, t.index, "Re(a_n) <= 0 and Im(a_n) <= 0")
            break
        if verdict is None and status.status is CheckStatus.PASS:
            status = HypothesisResult(HALF_PLANE, CheckStatus.INCONCLUSIVE, t.index, "disk straddles an axis")
    results.append(status)

    report = HypothesisReport(results, epsilon, d, max_degree, growth_from)
    for r in results:
        if r.status is not CheckStatus.PASS:
            logger.warning(f"⚠️ Hypothesis '{r.name}' {r.status.value} at n={r.index}: {r.detail}")
    return report


def _floor_from(verdicts: Dict[int, Optional[bool]], terms: List[SequenceTerm],
                start: int, epsilon: Fraction) -> HypothesisResult:
    """Declared floor: every term from ``start`` on must satisfy it."""
    status = HypothesisResult(GROWTH_FLOOR, CheckStatus.PASS)
    for t in terms:
        if t.index < start:
            continue
        if verdicts[t.index] is False:
            return HypothesisResult(GROWTH_FLOOR, CheckStatus.FAIL, t.index, f"|a_n| < n^{1 + epsilon}")
        if verdicts[t.index] is None and status.status is CheckStatus.PASS:
            status = HypothesisResult(GROWTH_FLOOR, CheckStatus.INCONCLUSIVE, t.index, "enclosure too wide")
    return status


def _floor_eventually(verdicts: Dict[int, Optional[bool]], terms: List[SequenceTerm],
                      growth_from: Optional[int], epsilon: Fraction) -> HypothesisResult:
    """
    Undeclared floor: it only has to hold for n large, so a terminal run of
    passing terms suffices. Refuted only when the last term fails; the
    reported index is the first failure after the last passing term.
    """
    if growth_from is not None:
        detail = "" if growth_from == 1 else f"holds from n={growth_from}"
        return HypothesisResult(GROWTH_FLOOR, CheckStatus.PASS, detail=detail)
    last = terms[-1]
    if verdicts[last.index] is None:
        return HypothesisResult(GROWTH_FLOOR, CheckStatus.INCONCLUSIVE, last.index, "enclosure too wide")
    passing = [t.index for t in terms if verdicts[t.index] is True]
    after = passing[-1] if passing else 0
    index = next(t.index for t in terms if t.index > after and verdicts[t.index] is False)
    return HypothesisResult(GROWTH_FLOOR, CheckStatus.FAIL, index, f"|a_n| < n^{1 + epsilon}")


def _pairwise(name: str, terms: List[SequenceTerm], check) -> HypothesisResult:
    status = HypothesisResult(name, CheckStatus.PASS)
    for earlier, later in zip(terms, terms[1:]):
        verdict = _decided(check, earlier, later)
        if verdict is False:
            return HypothesisResult(name, CheckStatus.FAIL, later.index, f"|a_{later.index}| <= |a_{earlier.index}|")
        if verdict is None and status.status is CheckStatus.PASS:
            status = HypothesisResult(name, CheckStatus.INCONCLUSIVE, later.index, "moduli not separated")
    return status


# ============================================================================
# Growth exponents and jump scan
# ============================================================================

def growth_denominator(n: int, D: int, d: int) -> int:
    """D^n * prod_{i=1}^{n-1} (d^i + d), exactly."""
    if n < 1:
        raise ValueError("n must be >= 1")
    result = D ** n
    for i in range(1, n):
        result *= d ** i + d
    return result


@dataclass
class GrowthRow:
    index: int
    degree: int
    house: MagnitudeBound
    denominator: int
    exponent: MagnitudeBound
    jump: bool = False

    def to_dict(self) -> Dict[str, Any]:
        t = self.exponent
        return {
            'n': self.index,
            'degree': self.degree,
            'house': self.house.to_dict(),
            'denominator': str(self.denominator),
            't_lower': None if t.log2_lo is None else decimal_string(t.log2_lo, upward=False),
            't_upper': decimal_string(t.log2_upper(), upward=True),
            'lemma7_jump': self.jump,
        }


@dataclass
class GrowthReport:
    D: int
    d: int
    rows: List[GrowthRow] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        return {'D': self.D, 'd': self.d, 'rows': [r.to_dict() for r in self.rows]}


def growth_exponents(prefix: Prefix, D: int, d: int) -> GrowthReport:
    """
    Per-term exponent t_n = log2 house(a_n) / denominator, rounded outward.

    The exponent is stored as a MagnitudeBound whose log2 endpoints are the
    bounds on t_n, so 2^(t_n) can be fed to the jump scan directly. Row n is
    flagged when the jump condition holds for k = n - 1.
    """
    if D < 1 or d < 1:
        raise SpecFormatError("D and d must be >= 1")
    report = GrowthReport(D, d)
    for t in prefix.terms:
        den = growth_denominator(t.index, D, d)
        h = t.house
        lo = None if h.log2_lo is None else h.log2_lo / den
        hi = h.log2_upper() / den
        exponent = MagnitudeBound(
            None if lo is None else (lo if lo.denominator == 1 else round_down(lo)),
            hi if hi.denominator == 1 else round_up(hi),
        )
        report.rows.append(GrowthRow(t.index, t.degree, h, den, exponent))
    if len(report.rows) >= 2:
        for k in lemma7_scan([r.exponent for r in report.rows]):
            report.rows[k].jump = True
    return report


def lemma7_scan(values: Sequence[Union[int, Fraction, MagnitudeBound]]) -> List[int]:
    """
    All k (1-based) with value_{k+1} > (1 + 1/k^2) * max_{n<=k} value_n.

    Exact for rational inputs; for enclosures a k is reported only when the
    comparison is certain.
    """
    if len(values) < 2:
        raise ValueError("the jump scan needs at least two values")
    if all(not isinstance(v, MagnitudeBound) for v in values):
        exact = [Fraction(v) for v in values]
        hits, running = [], exact[0]
        for k in range(1, len(exact)):
            if exact[k] > (1 + Fraction(1, k * k)) * running:
                hits.append(k)
            running = max(running, exact[k])
        return hits

    bounds = [v if isinstance(v, MagnitudeBound) else MagnitudeBound.exact(v) for v in values]
    hits, running = [], bounds[0]
    for k in range(1, len(bounds)):
        if (MagnitudeBound.exact(1 + Fraction(1, k * k)) * running).certainly_lt(bounds[k]):
            hits.append(k)
        running = running.maximum(bounds[k])
    return hits


# ============================================================================
# Tail estimators
# ============================================================================

class TailEstimator(Enum):
    POLYNOMIAL = "polynomial"
    RATIO = "ratio"
    LOG = "log"


def polynomial_tail_bound(a_k: MagnitudeBound, epsilon: Union[Fraction, int]) -> MagnitudeBound:
    """(2 + 1/eps) / a_k^(eps/(1+eps)); its upper end bounds sum_{n>=k} 1/a_n."""
    epsilon = Fraction(epsilon)
    return MagnitudeBound.exact(2 + 1 / epsilon) / (a_k ** (epsilon / (1 + epsilon)))


def ratio_tail_bound(a_next: MagnitudeBound, ratio: Union[Fraction, int]) -> MagnitudeBound:
    """(rho / (rho - 1)) / a_{k+1}; bounds sum_{n>k} 1/a_n under geometric growth."""
    ratio = Fraction(ratio)
    return MagnitudeBound.exact(ratio / (ratio - 1)) / a_next


def log_tail_bound(a_next: MagnitudeBound) -> MagnitudeBound:
    """
    (log2 a_{k+1} + 1 + 1/ln 2) / a_{k+1}.

    Terms up to 2^(k+1)-ish are bounded by the largest summand times their
    count; the rest by sum 2^-n.
    """
    with interval_precision():
        numerator = to_interval(a_next.log2_upper()) + 1 + 1 / iv.log(2)
        lo, hi = interval_endpoints(numerator)
    if lo <= 0:
        raise AssumptionNotVerified("log estimator needs a_{k+1} >= 2")
    return MagnitudeBound.from_bounds(lo, hi) / a_next


def _require_assumption(prefix: Prefix, kind: TailKind) -> TailAssumption:
    assumption = prefix.spec.assumption(kind)
    if assumption is None:
        raise AssumptionNotVerified(f"no {kind.value} tail assumption declared")
    return assumption


def _check_range(prefix: Prefix, first: int):
    if first > len(prefix):
        raise AssumptionNotVerified(f"term {first} lies beyond the prefix of length {len(prefix)}")


def tail_bound_polynomial(prefix: Prefix, k: int, epsilon: Optional[Union[Fraction, int]] = None) -> MagnitudeBound:
    """Bound sum_{n>=k} 1/|a_n| from the declared polynomial floor."""
    if k < 1:
        raise ValueError("k must be >= 1")
    assumption = _require_assumption(prefix, TailKind.POLYNOMIAL_FLOOR)
    epsilon = assumption.epsilon if epsilon is None else Fraction(epsilon)
    if epsilon > assumption.epsilon:
        raise AssumptionNotVerified(f"declared floor epsilon={assumption.epsilon} is weaker than {epsilon}")
    if k < assumption.from_index:
        raise AssumptionNotVerified(f"polynomial floor only declared from n={assumption.from_index}")
    _check_range(prefix, k)

    check = _growth_check(epsilon)
    tail = prefix.terms[k - 1:]
    for t in tail:
        if _decided(check, t) is not True:
            raise AssumptionNotVerified(f"|a_{t.index}| >= n^(1+eps) not verified")
    for earlier, later in zip(tail, tail[1:]):
        if _decided(_increasing, earlier, later) is not True:
            raise AssumptionNotVerified(f"|a_n| not increasing at n={later.index}")
    return polynomial_tail_bound(prefix.term(k).modulus, epsilon)


def tail_bound_ratio(prefix: Prefix, k: int, ratio: Optional[Union[Fraction, int]] = None) -> MagnitudeBound:
    """Bound sum_{n>k} 1/|a_n| when |a_{n+1}| >= ratio * |a_n| beyond k."""
    if k < 0:
        raise ValueError("k must be >= 0")
    assumption = _require_assumption(prefix, TailKind.GEOMETRIC_FLOOR)
    ratio = assumption.ratio if ratio is None else Fraction(ratio)
    if ratio > assumption.ratio or ratio <= 1:
        raise AssumptionNotVerified(f"ratio {ratio} not covered by the declared {assumption.ratio}")
    if k + 1 < assumption.from_index:
        raise AssumptionNotVerified(f"geometric floor only declared from n={assumption.from_index}")
    _check_range(prefix, k + 1)

    rho = MagnitudeBound.exact(ratio)
    tail = prefix.terms[k:]
    for earlier, later in zip(tail, tail[1:]):
        if not (rho * earlier.modulus).certainly_le(later.modulus):
            refined_e, refined_l = earlier.refined(), later.refined()
            if not (rho * refined_e.modulus).certainly_le(refined_l.modulus):
                raise AssumptionNotVerified(f"|a_{later.index}| >= {ratio}*|a_{earlier.index}| not verified")
    return ratio_tail_bound(prefix.term(k + 1).modulus, ratio)


def tail_bound_log(prefix: Prefix, k: int) -> MagnitudeBound:
    """Bound sum_{n>k} 1/|a_n| when |a_n| >= 2^n beyond k."""
    if k < 0:
        raise ValueError("k must be >= 0")
    assumption = _require_assumption(prefix, TailKind.EXPONENTIAL_FLOOR)
    if k + 1 < assumption.from_index:
        raise AssumptionNotVerified(f"exponential floor only declared from n={assumption.from_index}")
    _check_range(prefix, k + 1)

    for t in prefix.terms[k:]:
        m = t.modulus
        if m.log2_lo is None or m.log2_lo < t.index:
            m = t.refined().modulus
            if m.log2_lo is None or m.log2_lo < t.index:
                raise AssumptionNotVerified(f"|a_{t.index}| >= 2^{t.index} not verified")
    return log_tail_bound(prefix.term(k + 1).modulus)


def power_tail_enclosure(k: int, s: Union[Fraction, int], cutoff: Optional[int] = None) -> MagnitudeBound:
    """
    Enclosure of sum_{n>=k} n^(-s) for s > 1.

    Terms up to the cutoff are summed in interval arithmetic; the remainder
    lies between the integrals of x^(-s) from cutoff+1 and from cutoff.
    """
    s = Fraction(s)
    if s <= 1 or k < 1:
        raise ValueError("need s > 1 and k >= 1")
    cutoff = max(cutoff or k + 64, k)
    with interval_precision():
        S = to_interval(s)
        partial = iv.mpf(0)
        for n in range(k, cutoff + 1):
            partial += iv.exp(-S * iv.log(n))
        rem_hi = iv.exp((1 - S) * iv.log(cutoff)) / (S - 1)
        rem_lo = iv.exp((1 - S) * iv.log(cutoff + 1)) / (S - 1)
        lo = interval_endpoints(partial + rem_lo)[0]
        hi = interval_endpoints(partial + rem_hi)[1]
    return MagnitudeBound.from_bounds(lo, hi)


def prefix_tail_sum(prefix: Prefix, k: int) -> MagnitudeBound:
    """Enclosure of sum_{n=k+1}^{L} 1/|a_n| over the materialized prefix."""
    return total(t.modulus.reciprocal() for t in prefix.terms[k:])


def estimator_bound(prefix: Prefix, estimator: TailEstimator, N: int) -> MagnitudeBound:
    """Tail bound for sum_{n>N} with the estimator's own index convention."""
    if estimator is TailEstimator.POLYNOMIAL:
        return tail_bound_polynomial(prefix, N + 1)
    if estimator is TailEstimator.RATIO:
        return tail_bound_ratio(prefix, N)
    return tail_bound_log(prefix, N)


# ============================================================================
# Critical estimate and certificate search
# ============================================================================

@dataclass
class CriticalBound:
    """The pieces of one critical-estimate evaluation, all log2 upper bounds."""
    N: int
    estimator: TailEstimator
    tail_log2_upper: Fraction
    hmax_log2_upper: Fraction
    term_log2_uppers: List[Fraction]
    exponent: int

    @property
    def lhs_log2_upper(self) -> Fraction:
        inner = (self.N + 1) + self.hmax_log2_upper + sum(self.term_log2_uppers, Fraction(0))
        return self.tail_log2_upper + self.exponent * inner


def _critical(
    prefix: Prefix,
    N: int,
    D: int,
    d_cap: int,
    hmax: MagnitudeBound,
    estimator: TailEstimator,
    pisot_salem: bool = False,
    exponent: Optional[int] = None,
) -> CriticalBound:
    if N < 1:
        raise ValueError("N must be >= 1")
    if D < 1 or d_cap < 1:
        raise ValueError("D and d_cap must be >= 1")
    _check_range(prefix, N + 1)
    tail = estimator_bound(prefix, estimator, N)
    if pisot_salem:
        terms = [t.height.log2_upper() for t in prefix.terms[:N]]
    else:
        terms = [t.house.log2_upper() for t in prefix.terms[:N]]
    return CriticalBound(
        N=N,
        estimator=estimator,
        tail_log2_upper=tail.log2_upper(),
        hmax_log2_upper=hmax.log2_upper(),
        term_log2_uppers=terms,
        exponent=D * d_cap ** N if exponent is None else exponent,
    )


def critical_lhs_upper(
    prefix: Prefix,
    N: int,
    D: int,
    d_cap: int,
    hmax: MagnitudeBound,
    estimator: Union[TailEstimator, str],
    pisot_salem: bool = False,
) -> Fraction:
    """
    Rigorous upper bound on log2 of tail(N) * (2^(N+1) * Hmax * prod_{n<=N} house(a_n))^(D * d_cap^N).

    In Pisot/Salem mode the product runs over the Weil heights of the terms.
    """
    return _critical(prefix, N, D, d_cap, hmax, TailEstimator(estimator), pisot_salem).lhs_log2_upper


STANDING_CONDITIONS = (
    "each declared tail assumption holds for every term beyond the prefix",
    "gamma_N differs from gamma for every N (implied by the half-plane hypothesis)",
    "gamma_N is never a conjugate of gamma",
)


@dataclass
class Certificate:
    """Witness that sum 1/a_n is not algebraic of degree <= D with height <= Hmax."""
    D: int
    d: int
    hmax: MagnitudeBound
    witness_N: int
    tail_estimator: TailEstimator
    lhs_log2_upper: Fraction
    bound: CriticalBound
    assumptions: List[TailAssumption]
    hypothesis_digest: str
    pisot_salem: bool = False

    def to_dict(self) -> Dict[str, Any]:
        return {
            'D': self.D,
            'd': self.d,
            'hmax': self.hmax.to_dict(),
            'witness_N': self.witness_N,
            'tail_estimator': self.tail_estimator.value,
            'lhs_log2_upper': decimal_string(self.lhs_log2_upper, upward=True),
            'pisot_salem': self.pisot_salem,
            'inputs': {
                'tail_log2_upper': decimal_string(self.bound.tail_log2_upper, upward=True),
                'hmax_log2_upper': decimal_string(self.bound.hmax_log2_upper, upward=True),
                'term_log2_uppers': [decimal_string(x, upward=True) for x in self.bound.term_log2_uppers],
                'exponent': str(self.bound.exponent),
            },
            'assumptions': {
                'tail': [a.to_dict() for a in self.assumptions],
                'hypothesis_digest': self.hypothesis_digest,
                'conditions': list(STANDING_CONDITIONS),
            },
        }


class CertificateInputsModel(BaseModel):
    tail_log2_upper: str
    hmax_log2_upper: str
    term_log2_uppers: List[str]
    exponent: str


class CertificateModel(BaseModel):
    """Wire form of a certificate, validated before an independent recheck."""
    D: int = Field(..., ge=1)
    d: int = Field(..., ge=1)
    witness_N: int = Field(..., ge=1)
    tail_estimator: str
    lhs_log2_upper: str
    inputs: CertificateInputsModel


def recheck_certificate(data: Dict[str, Any]) -> Fraction:
    """
    Recompute the critical bound from a certificate's echoed inputs alone.

    Returns the recomputed log2 upper bound; the certificate stands when it
    is negative. The echoed decimals are rounded up, so the recomputation is
    never smaller than the true bound.
    """
    try:
        cert = CertificateModel.model_validate(data)
        inputs = cert.inputs
        terms = [parse_rational(x) for x in inputs.term_log2_uppers]
        exponent = int(inputs.exponent)
        tail = parse_rational(inputs.tail_log2_upper)
        hmax = parse_rational(inputs.hmax_log2_upper)
    except (ValidationError, ValueError) as e:
        raise SpecFormatError(f"malformed certificate: {e}") from e
    if len(terms) != cert.witness_N:
        raise SpecFormatError("certificate must echo one term bound per n <= N")
    inner = (cert.witness_N + 1) + hmax + sum(terms, Fraction(0))
    return tail + exponent * inner


@dataclass
class SearchRow:
    """What the search saw at one N."""
    N: int
    bounds: Dict[str, Fraction] = field(default_factory=dict)
    skipped: Dict[str, str] = field(default_factory=dict)
    exact_degree_log2_upper: Optional[Fraction] = None

    @property
    def best(self) -> Optional[Fraction]:
        return min(self.bounds.values()) if self.bounds else None

    def to_dict(self) -> Dict[str, Any]:
        return {
            'N': self.N,
            'best_log2_upper': None if self.best is None else decimal_string(self.best, upward=True),
            'bounds': {k: decimal_string(v, upward=True) for k, v in self.bounds.items()},
            'skipped': dict(self.skipped),
            'exact_degree_log2_upper': (
                None if self.exact_degree_log2_upper is None
                else decimal_string(self.exact_degree_log2_upper, upward=True)
            ),
        }


@dataclass
class SearchFailure:
    """No witness in the scanned range; the per-N rows say how close it came."""
    D: int
    d: int
    rows: List[SearchRow]
    notes: List[str] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'certificate': None,
            'D': self.D,
            'd': self.d,
            'rows': [r.to_dict() for r in self.rows],
            'notes': list(self.notes),
        }


def find_certificate(
    prefix: Prefix,
    D: int,
    d_cap: int,
    hmax: MagnitudeBound,
    N_range: Sequence[int],
    estimators: Sequence[Union[TailEstimator, str]],
    pisot_salem: bool = False,
    epsilon: Optional[Union[Fraction, int]] = None,
) -> Union[Certificate, SearchFailure]:
    """
    Scan N in order and, for each N, the estimators in the given order;
    return the first certificate with a negative critical bound.

    Hypotheses are checked first (raising HypothesisViolation). Estimators
    whose assumption is missing or not verified on the prefix are skipped
    and reported in the failure rows.
    """
    N_values = list(N_range)
    if not N_values:
        raise ValueError("empty N range")
    estimators = [TailEstimator(e) for e in estimators]
    if not estimators:
        raise ValueError("no tail estimator requested")

    if epsilon is None:
        floor = prefix.spec.assumption(TailKind.POLYNOMIAL_FLOOR)
        epsilon = floor.epsilon if floor is not None else Fraction(1)
    report = hypothesis_check(prefix, epsilon, d_cap)
    report.require()

    rows: List[SearchRow] = []
    notes: List[str] = []
    for N in N_values:
        if N < 1:
            raise ValueError("N must be >= 1")
        if N + 1 > len(prefix):
            notes.append(f"prefix of length {len(prefix)} exhausted at N={N}")
            break
        row = SearchRow(N)
        for estimator in estimators:
            try:
                bound = _critical(prefix, N, D, d_cap, hmax, estimator, pisot_salem)
            except AssumptionNotVerified as e:
                row.skipped[estimator.value] = str(e)
                continue
            lhs = bound.lhs_log2_upper
            row.bounds[estimator.value] = lhs
            logger.debug(f"N={N} {estimator.value}: log2 LHS <= {decimal_string(lhs, 12)}")
            if lhs < 0:
                logger.info(f"✅ Certificate found at N={N} with the {estimator.value} estimator")
                return Certificate(
                    D=D,
                    d=d_cap,
                    hmax=hmax,
                    witness_N=N,
                    tail_estimator=estimator,
                    lhs_log2_upper=lhs,
                    bound=bound,
                    assumptions=list(prefix.spec.tail_assumptions),
                    hypothesis_digest=report.digest(),
                    pisot_salem=pisot_salem,
                )
        if row.bounds:
            best = min(row.bounds, key=row.bounds.get)
            exact_exponent = D * sum_degree_bound([t.value for t in prefix.terms[:N]])
            diagnostic = _critical(prefix, N, D, d_cap, hmax, TailEstimator(best), pisot_salem, exact_exponent)
            row.exact_degree_log2_upper = diagnostic.lhs_log2_upper
        rows.append(row)

    if d_cap == 1 and D == 1:
        notes.append(
            "with d = D = 1 the direct search can miss cases that the classical "
            "integer-sequence argument (limsup a_n^(1/2^(n-1)) = infinity) still covers"
        )
    logger.info(f"❌ No certificate for N in {N_values[0]}..{N_values[-1]}")
    return SearchFailure(D, d_cap, rows, notes)


# ============================================================================
# Exact partial sums
# ============================================================================

@dataclass
class PartialSumReport:
    """Exact gamma_N = sum_{n<=N} 1/a_n next to the generic height/degree bounds."""
    N: int
    value: AlgebraicNumber
    degree_bound: int
    height: MagnitudeBound
    height_bound: MagnitudeBound

    @property
    def degree_consistent(self) -> bool:
        return self.value.degree <= self.degree_bound

    @property
    def height_consistent(self) -> bool:
        return not self.height.certainly_gt(self.height_bound)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'N': self.N,
            'value': str(self.value),
            'minpoly': self.value.minpoly.to_json(),
            'root': self.value.iso.to_dict(),
            'degree': self.value.degree,
            'degree_bound': self.degree_bound,
            'degree_consistent': self.degree_consistent,
            'weil_height': self.height.to_dict(),
            'height_bound': self.height_bound.to_dict(),
            'height_consistent': self.height_consistent,
        }


def partial_sum_exact(prefix: Prefix, N: int) -> AlgebraicNumber:
    """gamma_N by folded exact addition of reciprocals."""
    if N < 1 or N > len(prefix):
        raise ValueError(f"N must lie in 1..{len(prefix)}")
    values = [t.value for t in prefix.terms[:N]]
    cap = get_config().algebra.factor_degree_cap
    bound = sum_degree_bound(values)
    if bound > cap:
        raise DegreeCapExceeded(bound, cap, "partial sum")
    return algnum.sum_all(algnum.reciprocal(v) for v in values)


def partial_sum_report(prefix: Prefix, N: int) -> PartialSumReport:
    gamma = partial_sum_exact(prefix, N)
    reciprocals = [algnum.reciprocal(t.value) for t in prefix.terms[:N]]
    return PartialSumReport(
        N=N,
        value=gamma,
        degree_bound=sum_degree_bound(reciprocals),
        height=weil_height(gamma),
        height_bound=sum_height_bound(reciprocals),
    )
