"""
Exception hierarchy for the torsion-balance simulator.

Every error carries the process exit code the CLI uses for it and an optional
``stage`` tag that ``scenario.run`` fills in before re-raising.
"""

from typing import Any, Optional, Sequence


class TorsionBalanceError(Exception):
    """Base class for all simulator errors."""

    exit_code = 1

    def __init__(self, message: str, stage: Optional[str] = None):
        super().__init__(message)
        self.message = message
        self.stage = stage

    def __str__(self) -> str:
        if self.stage:
            return f"{self.stage}: {self.message}"
        return self.message


# Configuration errors (exit code 2)

class ConfigError(TorsionBalanceError, ValueError):
    """Invalid settings or scenario file."""

    exit_code = 2


class ConfigParseError(ConfigError):
    """The scenario file is not well-formed YAML."""

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        location = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(f"{message}{location}")
        self.line = line
        self.column = column


class SchemaError(ConfigError):
    """Keys missing, unknown, or holding invalid values."""

    def __init__(self, message: str, keys: Sequence[str] = ()):
        super().__init__(message)
        self.keys = list(keys)


class UnitMismatchError(ConfigError):
    """A quantity was given in a unit of the wrong dimension."""

    def __init__(self, key: str, expected: str, received: str, unit: str):
        super().__init__(
            f"{key}: expected a {expected} but '{unit}' is a {received} unit"
        )
        self.key = key
        self.expected = expected
        self.received = received
        self.unit = unit


# Physics-domain errors (exit code 3)

class PhysicsDomainError(TorsionBalanceError, ValueError):
    """Input outside the physical domain of a formula."""

    exit_code = 3


class UnreachableAngleError(PhysicsDomainError):
    """Branch separation larger than the rod allows (arcsin argument > 1)."""


class UnreachableThresholdError(PhysicsDomainError):
    """Detection threshold not reached before a guard or the horizon."""


class SingularityError(PhysicsDomainError):
    """
    Formula evaluated at or beyond a singular point.

    When the integrator gives up next to a guard, ``last_state`` holds the
    last valid state.
    """

    def __init__(self, message: str, last_state: Any = None, stage: Optional[str] = None):
        super().__init__(message, stage=stage)
        self.last_state = last_state


# Numerical errors (exit code 4)

class NumericalError(TorsionBalanceError, ArithmeticError):
    """The integrator failed; ``last_state`` holds the last valid state."""

    exit_code = 4

    def __init__(self, message: str, last_state: Any = None, stage: Optional[str] = None):
        super().__init__(message, stage=stage)
        self.last_state = last_state
