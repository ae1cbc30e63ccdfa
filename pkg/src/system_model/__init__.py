"""
Nanorod and environment data model.
"""

from .environment import (
    Environment,
    GasSpecies,
    Pressure,
    density_from_pressure,
    pressure_from_density,
)
from .nanorod import Nanorod, clausius_mossotti, mass_from_density, sphere_polarizability

__all__ = [
    "Environment",
    "GasSpecies",
    "Pressure",
    "density_from_pressure",
    "pressure_from_density",
    "Nanorod",
    "clausius_mossotti",
    "mass_from_density",
    "sphere_polarizability",
]
