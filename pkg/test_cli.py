#!/usr/bin/env python3
"""
🧪 End-to-end tests for the command-line front end

Each test runs main() in-process and reads the rendered JSON from stdout;
logs go to stderr and are ignored.
"""

import json
from pathlib import Path

import pytest

from main import main, parse_height_max, parse_n_range
from core.exceptions import SpecFormatError

SPECS = Path(__file__).parent / "data" / "specs"


def spec(name):
    return str(SPECS / f"{name}.json")


def run(capsys, *argv):
    code = main([*argv, '--format', 'json'])
    return code, json.loads(capsys.readouterr().out)


class TestCertify:

    def test_tower_certificate(self, capsys):
        code, payload = run(capsys, 'certify', '--spec', spec('tower_integers'), '--estimators', 'ratio')
        assert code == 0
        assert payload['witness_N'] == 1
        assert payload['lhs_log2_upper'] == "-8"
        assert payload['assumptions']['conditions']

    def test_larger_height_cap(self, capsys):
        code, payload = run(capsys, 'certify', '--spec', spec('tower_integers'),
                            '--estimators', 'ratio', '--height-max', '2^10')
        assert code == 0
        assert payload['witness_N'] == 2
        assert payload['lhs_log2_upper'] == "-30"

    def test_squares_have_no_witness(self, capsys):
        code, payload = run(capsys, 'certify', '--spec', spec('squares'), '--n-range', '1..10')
        assert code == 3
        assert payload['certificate'] is None
        assert len(payload['rows']) == 10

    def test_naturals_violate_growth(self, capsys):
        code, payload = run(capsys, 'certify', '--spec', spec('naturals'))
        assert code == 1
        assert payload['hypothesis'] == "polynomial growth floor"

    def test_output_is_reproducible(self, capsys):
        argv = ['certify', '--spec', spec('tower_integers'), '--format', 'json']
        main(argv)
        first = capsys.readouterr().out
        main(argv)
        assert capsys.readouterr().out == first


class TestAnalyze:

    def test_tower_sqrt_rows(self, capsys):
        code, payload = run(capsys, 'analyze', '--spec', spec('tower_sqrt'), '--dcap', '2')
        assert code == 0
        assert payload['hypotheses']['passed']
        assert len(payload['rows']) == 6
        assert payload['rows'][1]['denominator'] == "4"

    def test_early_small_terms_pass(self, capsys):
        code, payload = run(capsys, 'analyze', '--spec', spec('pisot_units'))
        assert code == 0
        assert payload['hypotheses']['growth_from'] == 3

    def test_huge_irrational_terms(self, capsys):
        code, payload = run(capsys, 'analyze', '--spec', spec('tower_sqrt_irrational'))
        assert code == 0
        assert "e+616" in payload['rows'][5]['value']

    def test_conjugate_larger(self, capsys):
        code, payload = run(capsys, 'analyze', '--spec', spec('conjugate_larger'))
        assert code == 1
        assert payload['violation']['name'] == "modulus equals house"
        assert payload['violation']['index'] == 1

    def test_text_output(self, capsys):
        assert main(['analyze', '--spec', spec('two_four'), '--format', 'text']) == 0
        assert "✅" in capsys.readouterr().out


class TestSumInfo:

    def test_sqrt2_sqrt3(self, capsys):
        code, payload = run(capsys, 'sum-info', '--spec', spec('sqrt2_sqrt3'))
        assert code == 0
        assert payload['degree'] == 4
        assert payload['degree_consistent'] and payload['height_consistent']

    def test_two_four(self, capsys):
        code, payload = run(capsys, 'sum-info', '--spec', spec('two_four'))
        assert code == 0
        assert payload['minpoly'] == [-3, 4]

    def test_degree_cap(self, capsys):
        code, payload = run(capsys, 'sum-info', '--spec', spec('cubic_roots'))
        assert code == 4
        assert "243" in payload['error']


class TestCheckLemmas:

    def test_small_run(self, capsys):
        code, payload = run(capsys, 'check-lemmas', '--trials', '2', '--seed', '3', '--max-degree', '2')
        assert code == 0
        assert payload['all_passed']
        assert payload['seed'] == 3

    def test_zero_trials(self, capsys):
        code, payload = run(capsys, 'check-lemmas', '--trials', '0')
        assert code == 0
        assert payload['warnings']


class TestMalformedInput:

    @pytest.mark.parametrize("argv", [
        ['certify', '--spec', spec('empty')],
        ['certify'],
        ['certify', '--spec', spec('tower_integers'), '--height-max', '-3'],
        ['certify', '--spec', spec('tower_integers'), '--n-range', '3..1'],
        ['certify', '--spec', spec('tower_integers'), '--estimators', 'magic'],
        ['analyze', '--spec', spec('tower_integers'), '--dcap', '0'],
        ['check-lemmas', '--trials', '-1'],
        ['sum-info', '--spec', spec('two_four'), '--terms', '5'],
    ])
    def test_exit_code_two(self, capsys, argv):
        code, payload = run(capsys, *argv)
        assert code == 2
        assert payload['exit_code'] == 2

    def test_parsers(self):
        assert parse_height_max("2^10").log2_hi == 10
        assert parse_height_max("3").contains(3)
        assert parse_n_range("2..4") == [2, 3, 4]
        assert parse_n_range("5") == [5]
        with pytest.raises(SpecFormatError):
            parse_n_range("a..b")
