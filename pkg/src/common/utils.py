"""
Utility functions shared by the simulation modules.
"""

import logging
import math
import os
from typing import Optional


def get_logger(name: str, level: Optional[str] = None) -> logging.Logger:
    """Get configured logger."""
    log_level = level or os.getenv("LOG_LEVEL", "INFO")
    logger = logging.getLogger(name)

    if not logger.handlers:
        # stderr keeps report bytes on stdout untouched
        handler = logging.StreamHandler()
        formatter = logging.Formatter(
            '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
        )
        handler.setFormatter(formatter)
        logger.addHandler(handler)

    logger.setLevel(getattr(logging, log_level.upper(), logging.INFO))
    return logger


def set_log_level(level: str) -> None:
    """Apply a log level to every logger already created under ``src``."""
    numeric = getattr(logging, level.upper(), logging.INFO)
    os.environ["LOG_LEVEL"] = level.upper()
    for name, logger in logging.Logger.manager.loggerDict.items():
        if name.startswith("src") and isinstance(logger, logging.Logger):
            logger.setLevel(numeric)


def relative_difference(computed: float, reference: float) -> float:
    """Relative difference of ``computed`` with respect to ``reference``."""
    if reference == 0:
        return math.inf if computed != 0 else 0.0
    return abs(computed - reference) / abs(reference)


def not_exceeding(value: float, limit: float, rel_tol: float = 1e-12) -> bool:
    """``value <= limit`` allowing for round-off in products like 40 * 2.5e-6."""
    return value <= limit or math.isclose(value, limit, rel_tol=rel_tol)
