"""
Residual-gas environment and ideal-gas pressure bookkeeping.
"""

import math
from dataclasses import dataclass, replace
from typing import Optional, Tuple

from ..common.constants import (
    AIR_FRACTIONS,
    CONSTANTS,
    MBAR_PER_PASCAL,
    N2_MASS_AMU,
    O2_MASS_AMU,
    PhysicalConstants,
)
from ..common.errors import PhysicsDomainError

FRACTION_TOLERANCE = 1e-12


@dataclass(frozen=True)
class Pressure:
    """Pressure reported in pascal and millibar."""

    pascal: float

    @property
    def mbar(self) -> float:
        return self.pascal * MBAR_PER_PASCAL


def pressure_from_density(
    number_density: float,
    temperature: float,
    constants: PhysicalConstants = CONSTANTS,
) -> Pressure:
    """
    Ideal-gas pressure p = n kB T.

    Args:
        number_density: gas number density (m^-3)
        temperature: gas temperature (K)
        constants: physical constants

    Returns:
        Pressure in Pa (``.pascal``) and mbar (``.mbar``)
    """
    if temperature <= 0:
        raise PhysicsDomainError(f"temperature must be positive, got {temperature!r}")
    if number_density < 0:
        raise PhysicsDomainError(f"number_density must be >= 0, got {number_density!r}")
    return Pressure(number_density * constants.kB * temperature)


def density_from_pressure(
    pressure: float,
    temperature: float,
    constants: PhysicalConstants = CONSTANTS,
) -> float:
    """Inverse of ``pressure_from_density``: n = p / (kB T), p in Pa."""
    if temperature <= 0:
        raise PhysicsDomainError(f"temperature must be positive, got {temperature!r}")
    if pressure < 0:
        raise PhysicsDomainError(f"pressure must be >= 0, got {pressure!r}")
    return pressure / (constants.kB * temperature)


@dataclass(frozen=True)
class GasSpecies:
    """One component of the residual gas."""

    name: str
    molecular_mass: float
    fraction: float

    def __post_init__(self):
        if self.molecular_mass <= 0:
            raise PhysicsDomainError(f"{self.name}: molecular_mass must be positive")
        if not 0 <= self.fraction <= 1:
            raise PhysicsDomainError(f"{self.name}: fraction must lie in [0, 1], got {self.fraction!r}")

    @classmethod
    def from_amu(
        cls,
        name: str,
        mass_amu: float,
        fraction: float,
        constants: PhysicalConstants = CONSTANTS,
    ) -> "GasSpecies":
        return cls(name=name, molecular_mass=mass_amu * constants.amu, fraction=fraction)


@dataclass(frozen=True)
class Environment:
    """Gas mixture, total number density and the two temperatures."""

    species: Tuple[GasSpecies, ...]
    number_density: float
    temperature_external: float
    temperature_internal: float

    def __post_init__(self):
        object.__setattr__(self, "species", tuple(self.species))
        if not self.species:
            raise PhysicsDomainError("environment needs at least one gas species")
        total = math.fsum(s.fraction for s in self.species)
        if abs(total - 1.0) > FRACTION_TOLERANCE:
            raise PhysicsDomainError(f"species fractions must sum to 1, got {total!r}")
        if self.number_density < 0:
            raise PhysicsDomainError(f"number_density must be >= 0, got {self.number_density!r}")
        if self.temperature_external <= 0 or self.temperature_internal <= 0:
            raise PhysicsDomainError("temperatures must be positive")

    @classmethod
    def air(
        cls,
        number_density: float,
        temperature_external: float,
        temperature_internal: Optional[float] = None,
        constants: PhysicalConstants = CONSTANTS,
    ) -> "Environment":
        """78 % N2 / 22 % O2 residual gas; T_I defaults to T_E (equilibrium)."""
        species = (
            GasSpecies.from_amu("N2", N2_MASS_AMU, AIR_FRACTIONS["N2"], constants),
            GasSpecies.from_amu("O2", O2_MASS_AMU, AIR_FRACTIONS["O2"], constants),
        )
        return cls(
            species=species,
            number_density=number_density,
            temperature_external=temperature_external,
            temperature_internal=temperature_external if temperature_internal is None else temperature_internal,
        )

    @property
    def mean_molecular_mass(self) -> float:
        """Fraction-weighted molecular mass, for the single-species formula."""
        return math.fsum(s.fraction * s.molecular_mass for s in self.species)

    def partial_density(self, species: GasSpecies) -> float:
        return species.fraction * self.number_density

    def pressure(self, constants: PhysicalConstants = CONSTANTS) -> Pressure:
        return pressure_from_density(self.number_density, self.temperature_external, constants)

    def with_temperature(self, temperature: float) -> "Environment":
        """Equilibrium copy with T_E = T_I = temperature."""
        return replace(self, temperature_external=temperature, temperature_internal=temperature)
