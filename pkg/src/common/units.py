"""
Unit discipline at the configuration boundary.

Quantities in scenario files are plain numbers (already SI) or strings of the
form ``"<value> <unit>"``. Every field declares a dimension; a unit belonging
to another dimension is rejected with ``UnitMismatchError``. Past this
boundary everything is a float in SI base units.
"""

import math
import re
from typing import Dict, Optional, Tuple, Union

from .errors import SchemaError, UnitMismatchError

LENGTH = "length"
MASS = "mass"
TIME = "time"
TEMPERATURE = "temperature"
NUMBER_DENSITY = "number density"
PRESSURE = "pressure"
GRADIENT = "magnetic gradient"
ANGLE = "angle"
MASS_DENSITY = "mass density"
ACCELERATION = "acceleration"
POLARIZABILITY = "polarizability"
DIMENSIONLESS = "dimensionless"

# suffix -> (dimension, factor to SI)
UNITS: Dict[str, Tuple[str, float]] = {
    "m": (LENGTH, 1.0),
    "cm": (LENGTH, 1e-2),
    "mm": (LENGTH, 1e-3),
    "um": (LENGTH, 1e-6),
    "μm": (LENGTH, 1e-6),
    "nm": (LENGTH, 1e-9),
    "pm": (LENGTH, 1e-12),
    "kg": (MASS, 1.0),
    "g": (MASS, 1e-3),
    "amu": (MASS, 1.66053906660e-27),
    "u": (MASS, 1.66053906660e-27),
    "s": (TIME, 1.0),
    "ms": (TIME, 1e-3),
    "us": (TIME, 1e-6),
    "μs": (TIME, 1e-6),
    "ns": (TIME, 1e-9),
    "K": (TEMPERATURE, 1.0),
    "mK": (TEMPERATURE, 1e-3),
    "m^-3": (NUMBER_DENSITY, 1.0),
    "cm^-3": (NUMBER_DENSITY, 1e6),
    "Pa": (PRESSURE, 1.0),
    "mbar": (PRESSURE, 1e2),
    "bar": (PRESSURE, 1e5),
    "Torr": (PRESSURE, 101325.0 / 760.0),
    "T/m": (GRADIENT, 1.0),
    "T/mm": (GRADIENT, 1e3),
    "T/um": (GRADIENT, 1e6),
    "rad": (ANGLE, 1.0),
    "mrad": (ANGLE, 1e-3),
    "urad": (ANGLE, 1e-6),
    "deg": (ANGLE, math.pi / 180.0),
    "kg/m^3": (MASS_DENSITY, 1.0),
    "g/cm^3": (MASS_DENSITY, 1e3),
    "m/s^2": (ACCELERATION, 1.0),
    "C m^2/V": (POLARIZABILITY, 1.0),
}

_QUANTITY = re.compile(
    r"^\s*([-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?)\s*(.*?)\s*$"
)

Number = Union[int, float]


def split_quantity(text: str, key: str = "") -> Tuple[float, Optional[str]]:
    """Split ``"7.92 nm"`` into ``(7.92, "nm")``; a bare number has unit None."""
    match = _QUANTITY.match(text)
    if not match:
        raise SchemaError(f"{key}: cannot read a quantity from {text!r}", keys=[key])
    number, unit = match.groups()
    return float(number), (unit or None)


def unit_dimension(unit: str, key: str = "") -> Tuple[str, float]:
    """Dimension and SI factor of a unit suffix."""
    try:
        return UNITS[unit]
    except KeyError:
        raise SchemaError(
            f"{key}: unknown unit '{unit}' (known: {', '.join(sorted(UNITS))})",
            keys=[key],
        ) from None


def quantity_dimension(value: Union[Number, str], key: str = "") -> Optional[str]:
    """Dimension named by a quantity's unit, or None for a bare number."""
    if isinstance(value, str):
        _, unit = split_quantity(value, key)
        if unit is not None:
            return unit_dimension(unit, key)[0]
    return None


def parse_quantity(value: Union[Number, str], dimension: str, key: str = "") -> float:
    """
    Convert a config value to a float in SI units.

    Args:
        value: number (taken as SI) or ``"<value> <unit>"`` string
        dimension: the dimension the field expects
        key: key path used in error messages

    Returns:
        Value in SI base units
    """
    if isinstance(value, bool):
        raise SchemaError(f"{key}: expected a {dimension}, got a boolean", keys=[key])
    if isinstance(value, (int, float)):
        return float(value)
    if not isinstance(value, str):
        raise SchemaError(f"{key}: expected a {dimension}, got {type(value).__name__}", keys=[key])

    number, unit = split_quantity(value, key)
    if unit is None:
        return number

    unit_dim, factor = unit_dimension(unit, key)
    if unit_dim != dimension:
        raise UnitMismatchError(key or "value", dimension, unit_dim, unit)
    return number * factor
