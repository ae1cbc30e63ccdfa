"""
Decoherence budget of the angular superposition.
"""

from .decoherence_rates import (
    COLLISIONAL_MODES,
    DecoherenceBudget,
    budget,
    decoherence_time,
    max_number_density,
    rate_absorption,
    rate_collisional,
    rate_emission,
    rate_photon_scattering,
    rate_scattering_alternative,
    two_sphere_anisotropy,
)

__all__ = [
    "COLLISIONAL_MODES",
    "DecoherenceBudget",
    "budget",
    "decoherence_time",
    "max_number_density",
    "rate_absorption",
    "rate_collisional",
    "rate_emission",
    "rate_photon_scattering",
    "rate_scattering_alternative",
    "two_sphere_anisotropy",
]
