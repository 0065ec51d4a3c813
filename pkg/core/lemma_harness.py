"""
🧪 Seeded Lemma Verification Harness
===================================

Re-checks the height facts the certification engine depends on against
randomly drawn irreducible polynomials:

- house chain: M^(1/d) <= house <= M for algebraic integers
- reciprocal height: H(a) = H(1/a), and reversing twice is the identity
- sum height: H(a + b) <= 4 * H(a) * H(b), deg(a + b) <= deg a * deg b
- separation: |a - b| >= the Liouville gap for non-conjugate a, b
- polynomial tail: sum_{n>=k} n^-(1+eps) < (2 + 1/eps) / k^eps

Every failing trial is kept as a counterexample with its polynomials, so a
run with a given seed can be replayed exactly.
"""

import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Dict, List, Optional

from core import algnum
from core.algnum import AlgebraicNumber
from core.exceptions import TailcertError
from core.heights import check_house_chain, distance_enclosure, liouville_gap, weil_height
from core.certify import polynomial_tail_bound, power_tail_enclosure
from core.magnitude import MagnitudeBound
from core.polyz import IntPolynomial, factor, recip_poly
from core.roots import isolate_roots
from utils.config import get_config

logger = logging.getLogger(__name__)

TAIL_EPSILONS = (Fraction(1), Fraction(1, 2))
TAIL_K_MAX = 100


@dataclass
class SuiteResult:
    name: str
    trials: int = 0
    passed: int = 0
    counterexamples: List[Dict[str, Any]] = field(default_factory=list)

    @property
    def failed(self) -> int:
        return self.trials - self.passed

    def to_dict(self) -> Dict[str, Any]:
        return {
            'name': self.name,
            'trials': self.trials,
            'passed': self.passed,
            'failed': self.failed,
            'counterexamples': self.counterexamples,
        }


@dataclass
class HarnessSummary:
    seed: int
    suites: List[SuiteResult]
    warnings: List[str] = field(default_factory=list)

    @property
    def all_passed(self) -> bool:
        return all(s.failed == 0 for s in self.suites)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'seed': self.seed,
            'all_passed': self.all_passed,
            'suites': [s.to_dict() for s in self.suites],
            'warnings': list(self.warnings),
        }


def random_irreducible(rng: random.Random, max_degree: int, box: int, monic: bool = False) -> IntPolynomial:
    """Draw until an irreducible polynomial with nonzero constant term turns up."""
    while True:
        degree = rng.randint(1, max_degree)
        lead = 1 if monic else rng.randint(1, box)
        coeffs = [rng.randint(-box, box) for _ in range(degree)] + [lead]
        if coeffs[0] == 0:
            continue
        p = IntPolynomial.from_coeffs(coeffs)
        factors = factor(p)
        if len(factors) == 1 and factors[0][1] == 1 and factors[0][0].degree == degree:
            return factors[0][0]


def random_number(rng: random.Random, max_degree: int, box: int, monic: bool = False) -> AlgebraicNumber:
    p = random_irreducible(rng, max_degree, box, monic)
    disks = isolate_roots(p, relative=True)
    return AlgebraicNumber(p, disks[rng.randrange(len(disks))])


class LemmaHarness:
    """Runs every suite with one seeded random source."""

    def __init__(self, trials: Optional[int] = None, seed: Optional[int] = None,
                 max_degree: Optional[int] = None, box: Optional[int] = None):
        cfg = get_config().harness
        self.trials = cfg.trials if trials is None else trials
        self.seed = cfg.seed if seed is None else seed
        self.max_degree = cfg.max_degree if max_degree is None else max_degree
        self.box = cfg.coefficient_box if box is None else box
        self.rng = random.Random(self.seed)

    def _number(self, max_degree: int, monic: bool = False) -> AlgebraicNumber:
        return random_number(self.rng, min(max_degree, self.max_degree), self.box, monic)

    def _run(self, name: str, trial: Callable[[], Dict[str, Any]], trials: int) -> SuiteResult:
        """Each trial returns its witnesses plus an 'ok' flag."""
        result = SuiteResult(name)
        for _ in range(trials):
            result.trials += 1
            try:
                outcome = trial()
            except TailcertError as e:
                outcome = {'ok': False, 'error': str(e)}
            if outcome.pop('ok'):
                result.passed += 1
            else:
                result.counterexamples.append(outcome)
        logger.info(f"🧪 {name}: {result.passed}/{result.trials} passed")
        return result

    # -- trials --------------------------------------------------------

    def house_chain_trial(self) -> Dict[str, Any]:
        a = self._number(self.max_degree, monic=True)
        report = check_house_chain(a)
        return {'ok': report.holds, 'minpoly': a.minpoly.to_json(), 'report': report.to_dict()}

    def reciprocal_trial(self) -> Dict[str, Any]:
        a = self._number(5)
        inverse = algnum.reciprocal(a)
        h, h_inv = weil_height(a), weil_height(inverse)
        twice = recip_poly(recip_poly(a.minpoly)) == a.minpoly
        return {
            'ok': h.overlaps(h_inv) and twice,
            'minpoly': a.minpoly.to_json(),
            'height': h.to_dict(),
            'reciprocal_height': h_inv.to_dict(),
        }

    def sum_trial(self) -> Dict[str, Any]:
        a, b = self._number(3), self._number(3)
        s = algnum.add(a, b)
        bound = MagnitudeBound.power_of_two(2) * weil_height(a) * weil_height(b)
        h = weil_height(s)
        return {
            'ok': h.certainly_le(bound) and s.degree <= a.degree * b.degree,
            'minpolys': [a.minpoly.to_json(), b.minpoly.to_json()],
            'sum_minpoly': s.minpoly.to_json(),
            'height': h.to_dict(),
            'bound': bound.to_dict(),
        }

    def separation_trial(self) -> Dict[str, Any]:
        a = self._number(4)
        b = self._number(4)
        while b.minpoly == a.minpoly:
            b = self._number(4)
        gap = liouville_gap(a, b)
        dist = distance_enclosure(a, b)
        return {
            'ok': gap.certainly_le(dist),
            'minpolys': [a.minpoly.to_json(), b.minpoly.to_json()],
            'gap': gap.to_dict(),
            'distance': dist.to_dict(),
        }

    def tail_suite(self) -> SuiteResult:
        """Deterministic grid over epsilon and k; trials and seed do not apply."""
        result = SuiteResult("polynomial tail bound")
        for eps in TAIL_EPSILONS:
            for k in range(1, TAIL_K_MAX + 1):
                result.trials += 1
                tail = power_tail_enclosure(k, 1 + eps)
                bound = polynomial_tail_bound(MagnitudeBound.exact(k) ** (1 + eps), eps)
                if tail.certainly_lt(bound):
                    result.passed += 1
                else:
                    result.counterexamples.append(
                        {'epsilon': str(eps), 'k': k, 'tail': tail.to_dict(), 'bound': bound.to_dict()}
                    )
        logger.info(f"🧪 {result.name}: {result.passed}/{result.trials} passed")
        return result

    # -- driver --------------------------------------------------------

    def run(self) -> HarnessSummary:
        logger.info(f"🧪 Lemma harness: {self.trials} trials, seed {self.seed}, degree <= {self.max_degree}")
        half = self.trials // 2
        suites = [
            self._run("house chain", self.house_chain_trial, self.trials),
            self._run("reciprocal height", self.reciprocal_trial, half),
            self._run("sum height", self.sum_trial, half),
            self._run("separation", self.separation_trial, half),
            self.tail_suite(),
        ]
        summary = HarnessSummary(self.seed, suites)
        if self.trials == 0:
            summary.warnings.append("0 trials requested: only the deterministic tail grid ran")
            logger.warning("⚠️ 0 trials requested")
        return summary


def run_lemma_harness(trials: Optional[int] = None, seed: Optional[int] = None,
                      max_degree: Optional[int] = None) -> HarnessSummary:
    return LemmaHarness(trials=trials, seed=seed, max_degree=max_degree).run()
