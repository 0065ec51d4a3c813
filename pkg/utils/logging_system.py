"""
📝 Tailcert Logging Setup
========================

One place to configure logging for the CLI and the harness. Logs go to
stderr so that stdout carries only the rendered report or certificate.
"""

import sys
import logging

from utils.config import get_config


LOG_FORMAT = '%(asctime)s - %(levelname)s - %(message)s'


def resolve_level(debug: bool = False) -> int:
    """DEBUG with --debug or app.debug, else the configured app.log_level."""
    app = get_config().app
    if debug or app['debug']:
        return logging.DEBUG
    level = logging.getLevelName(str(app['log_level']).upper())
    return level if isinstance(level, int) else logging.INFO


def setup_logging(debug: bool = False) -> None:
    """Configure root logging on stderr."""
    logging.basicConfig(
        level=resolve_level(debug),
        format=LOG_FORMAT,
        handlers=[logging.StreamHandler(sys.stderr)],
        force=True,
    )
