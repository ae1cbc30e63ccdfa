"""
Environmental decoherence rates of the angular superposition.

Closed-form rates for the two-sphere rod separated by angle theta:

- collisions with residual gas molecules (per species)
- scattering of thermal photons
- emission and absorption of thermal photons
- an alternative scattering law written with the rod's polarizability
  anisotropy, kept for cross-validation only

Every primary channel carries the geometric factor sin^2(theta/2); the
alternative law carries sin^2(theta).
"""

import math
from dataclasses import dataclass, replace
from typing import Any, Dict, Optional, Tuple

from ..common.constants import (
    CONSTANTS,
    FACTORIAL_6,
    FACTORIAL_8,
    ZETA_7,
    ZETA_9,
    PhysicalConstants,
)
from ..common.errors import PhysicsDomainError
from ..common.utils import get_logger
from ..system_model import Environment, Nanorod, sphere_polarizability

logger = get_logger(__name__)

COLLISIONAL_MODES = ("species", "averaged")

SCATTERING_PREFACTOR = 64 * FACTORIAL_8 * ZETA_9 / (9 * math.pi)
EMISSION_PREFACTOR = 128 * math.pi ** 5 / 189


def _check_angle(theta: float) -> None:
    if not 0 <= theta <= math.pi:
        raise PhysicsDomainError(f"theta must lie in [0, pi], got {theta!r}")


def _geometry(theta: float) -> float:
    _check_angle(theta)
    return math.sin(theta / 2) ** 2


def _thermal_wavenumber(temperature: float, constants: PhysicalConstants) -> float:
    return constants.kB * temperature / (constants.hbar * constants.c)


def rate_collisional(
    rod: Nanorod,
    env: Environment,
    theta: float,
    mode: str = "species",
    constants: PhysicalConstants = CONSTANTS,
) -> float:
    """
    Collisional decoherence rate (s^-1).

    Sum over species of 64 n_i sqrt(2 pi m_i) / (3 hbar^2) r^2 L^2 (kB T_E)^(3/2) sin^2(theta/2),
    with n_i = fraction_i n_gas.

    Args:
        rod: nanorod
        env: residual gas
        theta: superposition angle (rad)
        mode: 'species' sums the species; 'averaged' uses the fraction-weighted
            mean molecular mass in a single-species formula
        constants: physical constants
    """
    geometry = _geometry(theta)
    if mode == "species":
        gas_factor = math.fsum(
            env.partial_density(s) * math.sqrt(2 * math.pi * s.molecular_mass) for s in env.species
        )
    elif mode == "averaged":
        gas_factor = env.number_density * math.sqrt(2 * math.pi * env.mean_molecular_mass)
    else:
        raise PhysicsDomainError(f"unknown collisional mode {mode!r}; use one of {COLLISIONAL_MODES}")

    return (
        64 * gas_factor / (3 * constants.hbar ** 2)
        * rod.sphere_radius ** 2 * rod.half_length ** 2
        * (constants.kB * env.temperature_external) ** 1.5
        * geometry
    )


def rate_photon_scattering(
    rod: Nanorod,
    env: Environment,
    theta: float,
    constants: PhysicalConstants = CONSTANTS,
) -> float:
    """Thermal photon scattering rate (s^-1), scaling as T_E^9 and Re(CM)^2."""
    geometry = _geometry(theta)
    cm = rod.clausius_mossotti
    return (
        SCATTERING_PREFACTOR
        * rod.sphere_radius ** 6 * rod.half_length ** 2 * constants.c
        * cm.real ** 2
        * _thermal_wavenumber(env.temperature_external, constants) ** 9
        * geometry
    )


def _thermal_photon_rate(
    rod: Nanorod,
    temperature: float,
    theta: float,
    constants: PhysicalConstants,
) -> float:
    geometry = _geometry(theta)
    cm = rod.clausius_mossotti
    return (
        EMISSION_PREFACTOR
        * cm.imag * constants.c
        * rod.sphere_radius ** 3 * rod.half_length ** 2
        * _thermal_wavenumber(temperature, constants) ** 6
        * geometry
    )


def rate_emission(
    rod: Nanorod,
    env: Environment,
    theta: float,
    constants: PhysicalConstants = CONSTANTS,
) -> float:
    """Thermal emission rate (s^-1) at the rod's internal temperature T_I."""
    return _thermal_photon_rate(rod, env.temperature_internal, theta, constants)


def rate_absorption(
    rod: Nanorod,
    env: Environment,
    theta: float,
    constants: PhysicalConstants = CONSTANTS,
) -> float:
    """Thermal absorption rate (s^-1) at the environment temperature T_E."""
    return _thermal_photon_rate(rod, env.temperature_external, theta, constants)


def rate_scattering_alternative(
    alpha_x: float,
    alpha_z: float,
    env: Environment,
    theta: float,
    constants: PhysicalConstants = CONSTANTS,
) -> float:
    """
    Scattering rate from the polarizability anisotropy (s^-1).

    6! (2c / (9 eps0^2)) (kB T_E / hbar c)^7 zeta(7) (alpha_x - alpha_z)^2 sin^2(theta).
    Never summed into the total.
    """
    _check_angle(theta)
    anisotropy = complex(alpha_x).real - complex(alpha_z).real
    return (
        FACTORIAL_6 * 2 * constants.c / (9 * constants.eps0 ** 2)
        * _thermal_wavenumber(env.temperature_external, constants) ** 7
        * ZETA_7
        * anisotropy ** 2
        * math.sin(theta) ** 2
    )


def two_sphere_anisotropy(
    rod: Nanorod,
    constants: PhysicalConstants = CONSTANTS,
) -> Tuple[float, float]:
    """
    Coupled-dipole estimate of the rod's polarizability along and across the bar.

    Two spheres of polarizability alpha at separation d = 2L:
    alpha_par = 2 alpha / (1 - 2 alpha / (4 pi eps0 d^3)),
    alpha_perp = 2 alpha / (1 + alpha / (4 pi eps0 d^3)).

    Returns:
        (alpha_x, alpha_z) real parts in C m^2 V^-1; indicative only
    """
    alpha = sphere_polarizability(rod.sphere_radius, rod.dielectric, constants)
    coupling = alpha / (4 * math.pi * constants.eps0 * (2 * rod.half_length) ** 3)
    alpha_parallel = 2 * alpha / (1 - 2 * coupling)
    alpha_perpendicular = 2 * alpha / (1 + coupling)
    return alpha_parallel.real, alpha_perpendicular.real


@dataclass(frozen=True)
class DecoherenceBudget:
    """Per-channel rates, their total and the decoherence time at one angle."""

    rate_collisional: float
    rate_scattering: float
    rate_emission: float
    rate_absorption: float
    rate_total: float
    tau_D: float
    angle_used: float
    alternative_scattering_rate: float
    temperature_external: float
    temperature_internal: float

    @property
    def tau_D_infinite(self) -> bool:
        return math.isinf(self.tau_D)

    @property
    def channels(self) -> Dict[str, float]:
        return {
            "collisional": self.rate_collisional,
            "scattering": self.rate_scattering,
            "emission": self.rate_emission,
            "absorption": self.rate_absorption,
        }

    def to_dict(self) -> Dict[str, Any]:
        ratio = None
        if self.rate_scattering > 0:
            ratio = self.alternative_scattering_rate / self.rate_scattering
        return {
            "angle_rad": self.angle_used,
            "temperature_external_K": self.temperature_external,
            "temperature_internal_K": self.temperature_internal,
            "channels": [
                {"name": name, "rate_per_s": rate} for name, rate in self.channels.items()
            ],
            "rate_total_per_s": self.rate_total,
            "tau_D_s": None if self.tau_D_infinite else self.tau_D,
            "tau_D_infinite": self.tau_D_infinite,
            "alternative_scattering_rate_per_s": self.alternative_scattering_rate,
            "alternative_to_primary_scattering_ratio": ratio,
        }


def budget(
    rod: Nanorod,
    env: Environment,
    theta: float,
    alpha_x: Optional[float] = None,
    alpha_z: Optional[float] = None,
    collisional_mode: str = "species",
    constants: PhysicalConstants = CONSTANTS,
) -> DecoherenceBudget:
    """
    Full decoherence budget at a fixed angle.

    Args:
        rod: nanorod
        env: environment
        theta: angle the rates are evaluated at, normally theta0 (rad)
        alpha_x: polarizability along the bar; with ``alpha_z`` defaults to
            the two-sphere estimate
        alpha_z: polarizability across the bar
        collisional_mode: 'species' or 'averaged'
        constants: physical constants

    Returns:
        DecoherenceBudget; tau_D is math.inf when every channel vanishes
    """
    if alpha_x is None or alpha_z is None:
        alpha_x, alpha_z = two_sphere_anisotropy(rod, constants)

    collisional = rate_collisional(rod, env, theta, collisional_mode, constants)
    scattering = rate_photon_scattering(rod, env, theta, constants)
    emission = rate_emission(rod, env, theta, constants)
    absorption = rate_absorption(rod, env, theta, constants)
    total = math.fsum((collisional, scattering, emission, absorption))
    tau_d = 1.0 / total if total > 0 else math.inf

    result = DecoherenceBudget(
        rate_collisional=collisional,
        rate_scattering=scattering,
        rate_emission=emission,
        rate_absorption=absorption,
        rate_total=total,
        tau_D=tau_d,
        angle_used=theta,
        alternative_scattering_rate=rate_scattering_alternative(alpha_x, alpha_z, env, theta, constants),
        temperature_external=env.temperature_external,
        temperature_internal=env.temperature_internal,
    )
    logger.info(
        f"Decoherence budget at T_E={env.temperature_external:g} K, "
        f"T_I={env.temperature_internal:g} K: total {total:.4e} s^-1, tau_D={tau_d:.4e} s"
    )
    return result


def decoherence_time(
    rod: Nanorod,
    env: Environment,
    theta: float,
    constants: PhysicalConstants = CONSTANTS,
) -> float:
    """tau_D = 1 / Lambda_D in s, math.inf when nothing decoheres."""
    return budget(rod, env, theta, constants=constants).tau_D


def max_number_density(
    rod: Nanorod,
    env: Environment,
    theta: float,
    target_time: float,
    constants: PhysicalConstants = CONSTANTS,
) -> float:
    """
    Largest gas number density (m^-3) that keeps tau_D >= ``target_time``.

    The photon channels do not depend on the gas; the collisional rate is
    linear in n_gas. Returns 0 when the photon channels alone are too fast.
    """
    if target_time <= 0:
        raise PhysicsDomainError(f"target_time must be positive, got {target_time!r}")

    photons = math.fsum((
        rate_photon_scattering(rod, env, theta, constants),
        rate_emission(rod, env, theta, constants),
        rate_absorption(rod, env, theta, constants),
    ))
    allowed = 1.0 / target_time - photons
    if allowed <= 0:
        logger.warning(f"Photon channels alone exceed the target rate {1.0 / target_time:.3e} s^-1")
        return 0.0

    per_molecule = rate_collisional(rod, replace(env, number_density=1.0), theta, constants=constants)
    if per_molecule == 0:
        return math.inf
    return allowed / per_molecule
