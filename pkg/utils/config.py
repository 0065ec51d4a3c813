"""
🧮 Tailcert Unified Configuration System
=======================================

Manages configuration for the certification engine: working precision and
the precision ladder, the factorization degree cap, the lemma harness and
output rendering.

Resolution order: built-in defaults, then an optional JSON config file
(dotted keys, e.g. ``precision.working_precision_bits``), then ``TAILCERT_*``
environment variables (a ``.env`` file is honoured). CLI flags override all.
"""

import os
import json
from fractions import Fraction
from pathlib import Path
from typing import Dict, Any, Optional
from dataclasses import dataclass, asdict
from dotenv import load_dotenv


@dataclass
class PrecisionConfig:
    """Configuration for interval arithmetic and root certification."""
    working_precision_bits: int
    ladder_start_bits: int
    ladder_steps: int
    root_tolerance: Fraction


@dataclass
class AlgebraConfig:
    """Configuration for exact polynomial algebra."""
    factor_degree_cap: int


@dataclass
class HarnessConfig:
    """Configuration for the seeded lemma-verification harness."""
    trials: int
    seed: int
    max_degree: int
    coefficient_box: int


@dataclass
class OutputConfig:
    """Configuration for rendered output."""
    format: str
    decimal_digits: int


class TailcertConfig:
    """
    Unified configuration manager for the certification engine.

    Sections:
    - precision: interval working precision, ladder start and length, root tolerance
    - algebra: factorization degree cap
    - harness: trials, seed, degree and coefficient box of random polynomials
    - output: json/text and decimal digits of rendered bounds
    """

    ENV_PREFIX = "TAILCERT_"

    def __init__(self, config_path: Optional[str] = None):
        """Initialize configuration."""
        load_dotenv()

        self.project_root = Path(__file__).parent.parent

        self.config_file = None
        if config_path and Path(config_path).exists():
            with open(config_path, 'r') as f:
                self.config_file = json.load(f)

        self._init_precision_config()
        self._init_algebra_config()
        self._init_harness_config()
        self._init_output_config()
        self._init_app_config()

    def _init_precision_config(self):
        """Initialize precision configuration."""
        self.precision = PrecisionConfig(
            working_precision_bits=int(self._get_config_value('precision.working_precision_bits', 128)),
            ladder_start_bits=int(self._get_config_value('precision.ladder_start_bits', 64)),
            ladder_steps=int(self._get_config_value('precision.ladder_steps', 9)),
            root_tolerance=Fraction(str(self._get_config_value('precision.root_tolerance', '1/79228162514264337593543950336')))
        )

    def _init_algebra_config(self):
        """Initialize algebra configuration."""
        self.algebra = AlgebraConfig(
            factor_degree_cap=int(self._get_config_value('algebra.factor_degree_cap', 24))
        )

    def _init_harness_config(self):
        """Initialize harness configuration."""
        self.harness = HarnessConfig(
            trials=int(self._get_config_value('harness.trials', 200)),
            seed=int(self._get_config_value('harness.seed', 42)),
            max_degree=int(self._get_config_value('harness.max_degree', 6)),
            coefficient_box=int(self._get_config_value('harness.coefficient_box', 20))
        )

    def _init_output_config(self):
        """Initialize output configuration."""
        self.output = OutputConfig(
            format=str(self._get_config_value('output.format', 'text')),
            decimal_digits=int(self._get_config_value('output.decimal_digits', 30))
        )

    def _init_app_config(self):
        """Initialize general app configuration."""
        self.app = {
            'name': 'Tailcert',
            'version': '1.0.0',
            'description': 'Certified heights and non-degree certificates for series of reciprocals',
            'debug': str(self._get_config_value('app.debug', False)).lower() in ('1', 'true', 'yes'),
            'log_level': self._get_config_value('app.log_level', 'INFO'),
        }

    def _get_config_value(self, key: str, default: Any) -> Any:
        """Get configuration value: environment first, then config file, then default."""
        env_key = self.ENV_PREFIX + key.replace('.', '_').upper()
        if env_key in os.environ:
            return os.environ[env_key]

        if not self.config_file:
            return default

        # Navigate nested keys (e.g., 'precision.ladder_steps' -> config_file['precision']['ladder_steps'])
        value = self.config_file
        for k in key.split('.'):
            if isinstance(value, dict) and k in value:
                value = value[k]
            else:
                return default
        return value

    def validate_config(self) -> Dict[str, bool]:
        """Validate configuration settings."""
        return {
            'working_precision': self.precision.working_precision_bits >= 64,
            'ladder': self.precision.ladder_start_bits >= 16 and self.precision.ladder_steps >= 1,
            'root_tolerance': 0 < self.precision.root_tolerance < 1,
            'factor_degree_cap': self.algebra.factor_degree_cap >= 1,
            'harness': self.harness.max_degree >= 1 and self.harness.coefficient_box >= 1,
            'output_format': self.output.format in ('json', 'text'),
        }

    def to_dict(self) -> Dict[str, Any]:
        """Snapshot of every section, with rationals as strings."""
        precision = asdict(self.precision)
        precision['root_tolerance'] = str(self.precision.root_tolerance)
        return {
            'precision': precision,
            'algebra': asdict(self.algebra),
            'harness': asdict(self.harness),
            'output': asdict(self.output),
            'app': dict(self.app),
        }

    def create_default_config_file(self, output_path: str):
        """Create a default configuration file."""
        default_config = TailcertConfig().to_dict()
        default_config.pop('app')

        with open(output_path, 'w') as f:
            json.dump(default_config, f, indent=2)

        print(f"✅ Default configuration saved to: {output_path}")

    @property
    def WORKING_PRECISION(self) -> int:
        """Bits of interval working precision."""
        return self.precision.working_precision_bits

    @property
    def FACTOR_DEGREE_CAP(self) -> int:
        """Largest degree handed to the factorizer."""
        return self.algebra.factor_degree_cap

    @property
    def ROOT_TOLERANCE(self) -> Fraction:
        """Default relative radius of certified root disks."""
        return self.precision.root_tolerance


# Global config instance
config = None

def get_config(config_path: Optional[str] = None) -> TailcertConfig:
    """Get global configuration instance."""
    global config
    if config is None:
        config = TailcertConfig(config_path)
    return config


def reset_config(config_path: Optional[str] = None) -> TailcertConfig:
    """Rebuild the global configuration instance (CLI --config, tests)."""
    global config
    config = TailcertConfig(config_path)
    return config
