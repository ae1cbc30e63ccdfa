"""
Physical constants in SI units (CODATA 2018) and the fixed mathematical
constants used by the decoherence formulas.

All internal computation is in SI base units; other units only appear at the
scenario-file boundary (see ``units.py``).
"""

import math
from dataclasses import dataclass, fields
from typing import Dict, List

CODATA_SOURCE = "CODATA 2018"


@dataclass(frozen=True)
class PhysicalConstants:
    """CODATA 2018 recommended values, full published precision."""

    # m^3 kg^-1 s^-2 (measured)
    G: float = 6.67430e-11
    # J s (exact: h / 2pi)
    hbar: float = 1.054571817e-34
    # J K^-1 (exact)
    kB: float = 1.380649e-23
    # m s^-1 (exact)
    c: float = 299792458.0
    # J T^-1
    muB: float = 9.2740100783e-24
    # F m^-1
    eps0: float = 8.8541878128e-12
    # kg
    amu: float = 1.66053906660e-27

    def __post_init__(self):
        for item in fields(self):
            value = getattr(self, item.name)
            if not (math.isfinite(value) and value > 0):
                raise ValueError(f"Constant {item.name} must be finite and positive, got {value!r}")

    def as_table(self) -> List[Dict[str, object]]:
        """Constants table for documentation and the ``constants`` command."""
        return [
            {"symbol": item.name, "value": getattr(self, item.name),
             "unit": CONSTANT_UNITS[item.name], "source": CODATA_SOURCE}
            for item in fields(self)
        ]


CONSTANT_UNITS: Dict[str, str] = {
    "G": "m^3 kg^-1 s^-2",
    "hbar": "J s",
    "kB": "J K^-1",
    "c": "m s^-1",
    "muB": "J T^-1",
    "eps0": "F m^-1",
    "amu": "kg",
}

CONSTANTS = PhysicalConstants()

# Riemann zeta values and factorials of the closed-form photon rates
ZETA_7 = 1.0083492773819228
ZETA_9 = 1.0020083928260822
FACTORIAL_6 = 720
FACTORIAL_8 = 40320

# Standard molecular masses (amu) of the residual-gas species
N2_MASS_AMU = 28.0134
O2_MASS_AMU = 31.9988
AIR_FRACTIONS = {"N2": 0.78, "O2": 0.22}

MBAR_PER_PASCAL = 1e-2

# Free-fall acceleration for the h(t) axis (config-overridable)
DEFAULT_FREE_FALL_ACCELERATION = 9.81
