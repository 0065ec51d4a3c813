#!/usr/bin/env python3
"""
🧮 Tailcert - Certified Heights and Non-Degree Certificates
==========================================================

Command-line front end of the certification engine:
- analyze: hypothesis checks and growth exponents, one row per term
- certify: search for a witness N refuting the critical estimate
- check-lemmas: seeded randomized verification of the height lemmas
- sum-info: exact partial sums next to the generic height/degree bounds

Exit codes: 0 ok, 1 hypothesis violation, 2 malformed input,
3 no witness found, 4 degree cap exceeded.

Usage:
    python main.py analyze --spec data/specs/tower_sqrt.json --dcap 2
    python main.py certify --spec data/specs/tower_integers.json --height-max 2^10
    python main.py check-lemmas --trials 200 --seed 42
    python main.py sum-info --spec data/specs/sqrt2_sqrt3.json
"""

import sys
import json
import logging
import argparse
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

# Add project root to path
project_root = Path(__file__).parent
sys.path.insert(0, str(project_root))

from core.certify import (
    Certificate,
    TailEstimator,
    find_certificate,
    growth_exponents,
    hypothesis_check,
    partial_sum_report,
)
from core.exceptions import SpecFormatError, TailcertError
from core.heights import height_report
from core.lemma_harness import run_lemma_harness
from core.magnitude import MagnitudeBound, decimal_string, parse_rational
from core.sequences import Prefix, TailKind, load_spec, materialize
from utils.config import reset_config
from utils.logging_system import setup_logging

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_HYPOTHESIS = 1
EXIT_MALFORMED = 2
EXIT_NO_WITNESS = 3
EXIT_CAP = 4

COMMANDS = ('analyze', 'certify', 'check-lemmas', 'sum-info')
DEFAULT_ESTIMATORS = "ratio,log,polynomial"


@dataclass
class RunConfig:
    """Validated command-line parameters."""
    command: str
    spec_path: Optional[str] = None
    D: int = 1
    d: Optional[int] = None
    hmax: MagnitudeBound = field(default_factory=lambda: MagnitudeBound.power_of_two(1))
    n_range: Optional[List[int]] = None
    epsilon: Optional[Fraction] = None
    estimators: List[TailEstimator] = field(default_factory=list)
    trials: Optional[int] = None
    seed: Optional[int] = None
    max_degree: Optional[int] = None
    terms: Optional[int] = None
    output_format: str = "text"
    pisot_salem: bool = False


def parse_arguments(argv: Optional[List[str]] = None) -> argparse.Namespace:
    """Parse command line arguments."""
    parser = argparse.ArgumentParser(
        description="🧮 Tailcert - certified non-degree certificates for series of reciprocals",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  python main.py analyze --spec data/specs/tower_sqrt.json --dcap 2
  python main.py certify --spec data/specs/tower_integers.json --estimators ratio
  python main.py certify --spec data/specs/tower_integers.json --height-max 2^10
  python main.py check-lemmas --trials 50 --seed 7 --format json
  python main.py sum-info --spec data/specs/sqrt2_sqrt3.json
        """
    )

    parser.add_argument('command', choices=COMMANDS,
                        help='What to run')
    parser.add_argument('--spec',
                        help='Sequence specification (JSON)')
    parser.add_argument('--degree', type=int, default=1,
                        help='Degree D to refute (default 1)')
    parser.add_argument('--dcap', type=int,
                        help='Degree bound d of the terms (default: spec d, else observed maximum)')
    parser.add_argument('--height-max', default='2',
                        help='Height cap Hmax, decimal or "2^k" (default 2)')
    parser.add_argument('--epsilon',
                        help='Growth exponent epsilon as p/q (default: declared floor, else 1)')
    parser.add_argument('--n-range',
                        help='Witness range a..b (default 1..prefix length - 1)')
    parser.add_argument('--estimators', default=DEFAULT_ESTIMATORS,
                        help=f'Tail estimator order (default {DEFAULT_ESTIMATORS})')
    parser.add_argument('--pisot-salem', action='store_true',
                        help='Use Weil heights instead of houses in the critical product')
    parser.add_argument('--terms', type=int,
                        help='sum-info: number of reciprocals to add (default: whole prefix)')
    parser.add_argument('--trials', type=int,
                        help='check-lemmas: trials per suite')
    parser.add_argument('--seed', type=int,
                        help='check-lemmas: random seed')
    parser.add_argument('--max-degree', type=int,
                        help='check-lemmas: degree cap of random polynomials')
    parser.add_argument('--tol',
                        help='Relative root tolerance as p/q')
    parser.add_argument('--format', choices=('json', 'text'),
                        help='Output format (default from config: text)')
    parser.add_argument('--config',
                        help='JSON configuration file')
    parser.add_argument('--debug', action='store_true',
                        help='Enable debug logging')

    return parser.parse_args(argv)


def _positive_rational(text: str, name: str) -> Fraction:
    try:
        value = parse_rational(text)
    except ValueError as e:
        raise SpecFormatError(f"--{name}: {e}") from e
    if value <= 0:
        raise SpecFormatError(f"--{name} must be positive")
    return value


def parse_height_max(text: str) -> MagnitudeBound:
    """'2^k' (k rational) or a positive decimal/rational."""
    text = text.strip()
    if text.startswith('2^'):
        try:
            return MagnitudeBound.power_of_two(parse_rational(text[2:]))
        except ValueError as e:
            raise SpecFormatError(f"--height-max: {e}") from e
    return MagnitudeBound.exact(_positive_rational(text, 'height-max'))


def parse_n_range(text: str) -> List[int]:
    try:
        if '..' in text:
            a, b = (int(x) for x in text.split('..', 1))
        else:
            a = b = int(text)
    except ValueError as e:
        raise SpecFormatError(f"--n-range must look like a..b: {e}") from e
    if a < 1 or b < a:
        raise SpecFormatError("--n-range needs 1 <= a <= b")
    return list(range(a, b + 1))


def build_run_config(args: argparse.Namespace) -> RunConfig:
    """Apply the config file and CLI overrides, then validate every parameter."""
    config = reset_config(args.config)
    if args.tol is not None:
        config.precision.root_tolerance = _positive_rational(args.tol, 'tol')

    for name in ('degree', 'dcap', 'terms', 'max_degree'):
        value = getattr(args, name)
        if value is not None and value < 1:
            raise SpecFormatError(f"--{name.replace('_', '-')} must be >= 1")
    if args.trials is not None and args.trials < 0:
        raise SpecFormatError("--trials must be >= 0")
    if args.command != 'check-lemmas' and not args.spec:
        raise SpecFormatError(f"{args.command} needs --spec")

    try:
        estimators = [TailEstimator(e.strip()) for e in args.estimators.split(',') if e.strip()]
    except ValueError as e:
        raise SpecFormatError(f"--estimators: {e}") from e

    return RunConfig(
        command=args.command,
        spec_path=args.spec,
        D=args.degree,
        d=args.dcap,
        hmax=parse_height_max(args.height_max),
        n_range=parse_n_range(args.n_range) if args.n_range else None,
        epsilon=_positive_rational(args.epsilon, 'epsilon') if args.epsilon else None,
        estimators=estimators,
        trials=args.trials,
        seed=args.seed,
        max_degree=args.max_degree,
        terms=args.terms,
        output_format=args.format or config.output.format,
        pisot_salem=args.pisot_salem,
    )


# ============================================================================
# Commands
# ============================================================================

def _load_prefix(config: RunConfig) -> Prefix:
    return materialize(load_spec(config.spec_path))


def _epsilon(config: RunConfig, prefix: Prefix) -> Fraction:
    if config.epsilon is not None:
        return config.epsilon
    floor = prefix.spec.assumption(TailKind.POLYNOMIAL_FLOOR)
    return floor.epsilon if floor is not None else Fraction(1)


def _degree_cap(config: RunConfig, prefix: Prefix) -> int:
    if config.d is not None:
        return config.d
    if prefix.spec.d is not None:
        return prefix.spec.d
    return max(t.degree for t in prefix.terms)


def cmd_analyze(config: RunConfig) -> Tuple[int, Dict[str, Any]]:
    """Hypothesis report plus one row per term."""
    prefix = _load_prefix(config)
    d = _degree_cap(config, prefix)
    report = hypothesis_check(prefix, _epsilon(config, prefix), d)
    growth = growth_exponents(prefix, config.D, d)

    rows = []
    for term, row in zip(prefix.terms, growth.rows):
        heights = height_report(term.value)
        entry = row.to_dict()
        entry['mahler'] = heights.mahler.to_dict()
        entry['weil_height'] = heights.height.to_dict()
        entry['value'] = str(term.value)
        rows.append(entry)

    payload = {
        'command': 'analyze',
        'family': prefix.spec.family.value,
        'prefix_length': len(prefix),
        'D': config.D,
        'd': d,
        'hypotheses': report.to_dict(),
        'rows': rows,
    }
    problem = report.first_problem()
    if problem is not None:
        payload['violation'] = problem.to_dict()
        return EXIT_HYPOTHESIS, payload
    return EXIT_OK, payload


def cmd_certify(config: RunConfig) -> Tuple[int, Dict[str, Any]]:
    """Certificate JSON on success, per-N diagnostics otherwise."""
    prefix = _load_prefix(config)
    d = _degree_cap(config, prefix)
    n_range = config.n_range or list(range(1, max(len(prefix), 2)))
    result = find_certificate(
        prefix,
        D=config.D,
        d_cap=d,
        hmax=config.hmax,
        N_range=n_range,
        estimators=config.estimators,
        pisot_salem=config.pisot_salem or prefix.spec.pisot_salem,
        epsilon=config.epsilon,
    )
    payload = {'command': 'certify', **result.to_dict()}
    if isinstance(result, Certificate):
        return EXIT_OK, payload
    return EXIT_NO_WITNESS, payload


def cmd_check_lemmas(config: RunConfig) -> Tuple[int, Dict[str, Any]]:
    summary = run_lemma_harness(trials=config.trials, seed=config.seed, max_degree=config.max_degree)
    return EXIT_OK, {'command': 'check-lemmas', **summary.to_dict()}


def cmd_sum_info(config: RunConfig) -> Tuple[int, Dict[str, Any]]:
    prefix = _load_prefix(config)
    N = config.terms or len(prefix)
    if N > len(prefix):
        raise SpecFormatError(f"--terms {N} exceeds the prefix length {len(prefix)}")
    report = partial_sum_report(prefix, N)
    return EXIT_OK, {'command': 'sum-info', **report.to_dict()}


HANDLERS = {
    'analyze': cmd_analyze,
    'certify': cmd_certify,
    'check-lemmas': cmd_check_lemmas,
    'sum-info': cmd_sum_info,
}


# ============================================================================
# Rendering
# ============================================================================

def _log2_range(bound: Dict[str, str]) -> str:
    return f"[{bound['log2_lower']}, {bound['log2_upper']}]"


def render_text(payload: Dict[str, Any]) -> str:
    """Plain-text view derived from the JSON payload."""
    lines: List[str] = []
    command = payload.get('command')

    if 'error' in payload:
        lines.append(f"❌ {payload['error']}")
        return "\n".join(lines)

    if command == 'analyze':
        lines.append(f"📜 {payload['family']} sequence, {payload['prefix_length']} terms, D={payload['D']}, d={payload['d']}")
        icons = {'pass': '✅', 'fail': '❌', 'inconclusive': '❓'}
        for check in payload['hypotheses']['checks']:
            where = f" (n={check['index']})" if check['index'] is not None else ""
            detail = f": {check['detail']}" if check['detail'] else ""
            lines.append(f"  {icons[check['status']]} {check['name']}{where}{detail}")
        lines.append("")
        lines.append("  n | deg | log2 house | log2 M | log2 H | t_n upper | jump")
        for row in payload['rows']:
            lines.append(
                f"  {row['n']} | {row['degree']} | {_log2_range(row['house'])} | "
                f"{_log2_range(row['mahler'])} | {_log2_range(row['weil_height'])} | "
                f"{row['t_upper']} | {'*' if row['lemma7_jump'] else ''}"
            )
        if 'violation' in payload:
            lines.append(f"\n❌ hypothesis '{payload['violation']['name']}' not established")

    elif command == 'certify':
        if payload.get('certificate', True) is None:
            lines.append(f"❌ No certificate for D={payload['D']}, d={payload['d']}")
            for row in payload['rows']:
                lines.append(f"  N={row['N']}: best log2 LHS <= {row['best_log2_upper']} {row['skipped'] or ''}")
            for note in payload['notes']:
                lines.append(f"  note: {note}")
        else:
            lines.append(f"✅ Certificate: witness N={payload['witness_N']} ({payload['tail_estimator']} estimator)")
            lines.append(f"  log2 LHS <= {payload['lhs_log2_upper']}")
            lines.append(f"  D={payload['D']}, d={payload['d']}, log2 Hmax <= {payload['hmax']['log2_upper']}")
            for condition in payload['assumptions']['conditions']:
                lines.append(f"  assuming: {condition}")

    elif command == 'check-lemmas':
        lines.append(f"🧪 Lemma harness (seed {payload['seed']})")
        for suite in payload['suites']:
            lines.append(f"  {suite['name']}: {suite['passed']}/{suite['trials']} passed")
            for example in suite['counterexamples']:
                lines.append(f"    counterexample: {json.dumps(example)}")
        for warning in payload['warnings']:
            lines.append(f"  ⚠️ {warning}")

    elif command == 'sum-info':
        lines.append(f"Σ_(n<={payload['N']}) 1/a_n = {payload['value']}")
        lines.append(f"  minimal polynomial: {payload['minpoly']}")
        lines.append(f"  degree {payload['degree']} <= {payload['degree_bound']}: {payload['degree_consistent']}")
        lines.append(
            f"  log2 H = {_log2_range(payload['weil_height'])} vs bound "
            f"{_log2_range(payload['height_bound'])}: {payload['height_consistent']}"
        )

    return "\n".join(lines)


def emit(payload: Dict[str, Any], output_format: str):
    if output_format == 'json':
        print(json.dumps(payload, indent=2))
    else:
        print(render_text(payload))


def main(argv: Optional[List[str]] = None) -> int:
    """Main application entry point; returns the exit code."""
    args = parse_arguments(argv)
    setup_logging(debug=args.debug)
    output_format = args.format or 'text'

    try:
        config = build_run_config(args)
        setup_logging(debug=args.debug)
        output_format = config.output_format
        code, payload = HANDLERS[config.command](config)
    except TailcertError as e:
        logger.error(f"❌ {e}")
        payload = {'command': args.command, 'error': str(e), 'exit_code': e.exit_code}
        hypothesis = getattr(e, 'hypothesis', None)
        if hypothesis is not None:
            payload['hypothesis'] = hypothesis
        emit(payload, output_format)
        return e.exit_code

    emit(payload, output_format)
    return code


if __name__ == "__main__":
    sys.exit(main())
