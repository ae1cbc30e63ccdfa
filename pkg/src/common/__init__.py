"""
Common utilities: constants, units, errors and logging.
"""

from .constants import CONSTANTS, PhysicalConstants
from .errors import (
    ConfigError,
    ConfigParseError,
    NumericalError,
    PhysicsDomainError,
    SchemaError,
    SingularityError,
    TorsionBalanceError,
    UnitMismatchError,
    UnreachableAngleError,
    UnreachableThresholdError,
)
from .units import parse_quantity
from .utils import get_logger, not_exceeding, relative_difference, set_log_level

__all__ = [
    "CONSTANTS",
    "PhysicalConstants",
    "ConfigError",
    "ConfigParseError",
    "NumericalError",
    "PhysicsDomainError",
    "SchemaError",
    "SingularityError",
    "TorsionBalanceError",
    "UnitMismatchError",
    "UnreachableAngleError",
    "UnreachableThresholdError",
    "parse_quantity",
    "get_logger",
    "not_exceeding",
    "relative_difference",
    "set_log_level",
]
