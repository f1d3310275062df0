"""
Logging configuration for restrictcat.

This module provides centralized logging configuration for the package:
one colored console handler on the root logger and per-module levels.
"""
import logging
import sys
from typing import Optional

import colorlog

_PACKAGE_LOGGERS = (
    "restrictcat.fincat",
    "restrictcat.restriction",
    "restrictcat.splitting",
    "restrictcat.mcat",
    "restrictcat.presheaf",
    "restrictcat.rpsh",
    "restrictcat.equiv",
    "restrictcat.cocheck",
    "restrictcat.cli",
)


def configure_logging(level: Optional[str] = None) -> None:
    """Configure logging for the restrictcat package.

    Args:
        level: Optional log level override. If not provided, uses INFO.

    Reports are written to standard output by the CLI; log records go to
    standard error through the colored handler installed here.
    """
    if level is None:
        level = 'INFO'

    root_logger = logging.getLogger()
    root_logger.setLevel(level)
    root_logger.handlers.clear()

    console_handler = colorlog.StreamHandler(sys.stderr)
    console_handler.setLevel(level)

    formatter = colorlog.ColoredFormatter(
        "%(log_color)s%(asctime)s - %(name)s - %(levelname)s - %(message)s%(reset)s",
        datefmt='%Y-%m-%d %H:%M:%S',
        log_colors={
            'DEBUG':    'cyan',
            'INFO':     'green',
            'WARNING':  'yellow',
            'ERROR':    'red',
            'CRITICAL': 'red,bg_white',
        },
        secondary_log_colors={},
        style='%'
    )
    console_handler.setFormatter(formatter)
    root_logger.addHandler(console_handler)

    for name in _PACKAGE_LOGGERS:
        logging.getLogger(name).setLevel(level)

    # Quiet some noisy loggers in testing
    if 'pytest' in sys.modules:
        logging.getLogger('hypothesis').setLevel(logging.WARNING)
