#!/usr/bin/env python3
"""
🧪 Unit tests for the configuration layer
"""

import json
import logging
from fractions import Fraction

import pytest

from utils.config import TailcertConfig, get_config, reset_config
from utils.logging_system import resolve_level


@pytest.fixture(autouse=True)
def fresh_config():
    yield
    reset_config()


class TestTailcertConfig:

    def test_defaults(self):
        config = TailcertConfig()
        assert config.WORKING_PRECISION == 128
        assert config.FACTOR_DEGREE_CAP == 24
        assert config.ROOT_TOLERANCE == Fraction(1, 2 ** 96)
        assert all(config.validate_config().values())

    def test_config_file(self, tmp_path):
        path = tmp_path / "tailcert.json"
        path.write_text(json.dumps({'algebra': {'factor_degree_cap': 12}, 'output': {'format': 'json'}}))
        config = TailcertConfig(str(path))
        assert config.algebra.factor_degree_cap == 12
        assert config.output.format == 'json'
        assert config.harness.seed == 42

    def test_environment_wins(self, tmp_path, monkeypatch):
        path = tmp_path / "tailcert.json"
        path.write_text(json.dumps({'harness': {'seed': 5}}))
        monkeypatch.setenv("TAILCERT_HARNESS_SEED", "9")
        assert TailcertConfig(str(path)).harness.seed == 9

    def test_invalid_values_flagged(self, monkeypatch):
        monkeypatch.setenv("TAILCERT_OUTPUT_FORMAT", "yaml")
        checks = TailcertConfig().validate_config()
        assert not checks['output_format']

    def test_default_file_round_trip(self, tmp_path):
        path = tmp_path / "default.json"
        TailcertConfig().create_default_config_file(str(path))
        data = json.loads(path.read_text())
        assert data['precision']['root_tolerance'] == str(Fraction(1, 2 ** 96))
        assert TailcertConfig(str(path)).to_dict() == TailcertConfig().to_dict()

    def test_reset_replaces_global(self, tmp_path):
        path = tmp_path / "tailcert.json"
        path.write_text(json.dumps({'precision': {'working_precision_bits': 256}}))
        reset_config(str(path))
        assert get_config().WORKING_PRECISION == 256


class TestLogLevel:

    def test_configured_level(self, monkeypatch):
        monkeypatch.setenv("TAILCERT_APP_LOG_LEVEL", "warning")
        reset_config()
        assert resolve_level() == logging.WARNING
        assert resolve_level(debug=True) == logging.DEBUG

    def test_debug_flag_from_environment(self, monkeypatch):
        monkeypatch.setenv("TAILCERT_APP_DEBUG", "false")
        reset_config()
        assert resolve_level() == logging.INFO
        monkeypatch.setenv("TAILCERT_APP_DEBUG", "true")
        reset_config()
        assert resolve_level() == logging.DEBUG

    def test_unknown_level_falls_back_to_info(self, monkeypatch):
        monkeypatch.setenv("TAILCERT_APP_LOG_LEVEL", "chatty")
        reset_config()
        assert resolve_level() == logging.INFO
