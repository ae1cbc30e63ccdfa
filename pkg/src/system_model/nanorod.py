"""
Geometry, mass and dielectric model of the two-sphere nanorod.
"""

import math
from dataclasses import dataclass

from ..common.constants import CONSTANTS, PhysicalConstants
from ..common.errors import PhysicsDomainError, SingularityError


def mass_from_density(radius: float, density: float) -> float:
    """
    Mass of a homogeneous sphere.

    Args:
        radius: sphere radius (m)
        density: mass density (kg m^-3)

    Returns:
        (4/3) pi r^3 rho in kg
    """
    if radius <= 0 or density <= 0:
        raise PhysicsDomainError(
            f"radius and density must be positive, got r={radius!r}, rho={density!r}"
        )
    return 4.0 / 3.0 * math.pi * radius ** 3 * density


def clausius_mossotti(dielectric: complex) -> complex:
    """Clausius-Mossotti factor (eps - 1) / (eps + 2)."""
    dielectric = complex(dielectric)
    if dielectric == -2:
        raise SingularityError("Clausius-Mossotti factor is singular at eps = -2")
    return (dielectric - 1) / (dielectric + 2)


def sphere_polarizability(
    radius: float,
    dielectric: complex,
    constants: PhysicalConstants = CONSTANTS,
) -> complex:
    """
    Small-sphere polarizability 4 pi eps0 r^3 (eps - 1)/(eps + 2).

    Args:
        radius: sphere radius (m)
        dielectric: complex dielectric constant
        constants: physical constants

    Returns:
        Polarizability in C m^2 V^-1
    """
    if radius <= 0:
        raise PhysicsDomainError(f"radius must be positive, got {radius!r}")
    return 4 * math.pi * constants.eps0 * radius ** 3 * clausius_mossotti(dielectric)


@dataclass(frozen=True)
class Nanorod:
    """Two spheres of mass m and radius r joined by a massless bar of length 2L."""

    sphere_radius: float
    half_length: float
    mass: float
    dielectric: complex = complex(5.7, 2.85e-4)

    def __post_init__(self):
        object.__setattr__(self, "dielectric", complex(self.dielectric))
        if self.sphere_radius <= 0:
            raise PhysicsDomainError(f"sphere_radius must be positive, got {self.sphere_radius!r}")
        if self.half_length <= self.sphere_radius:
            raise PhysicsDomainError(
                f"half_length ({self.half_length!r}) must exceed sphere_radius "
                f"({self.sphere_radius!r}) so the spheres do not overlap"
            )
        if self.mass <= 0:
            raise PhysicsDomainError(f"mass must be positive, got {self.mass!r}")
        if self.dielectric.imag < 0:
            raise PhysicsDomainError(f"Im(dielectric) must be >= 0, got {self.dielectric!r}")

    @classmethod
    def from_density(
        cls,
        sphere_radius: float,
        half_length: float,
        density: float,
        dielectric: complex = complex(5.7, 2.85e-4),
    ) -> "Nanorod":
        """Build a rod whose sphere mass follows from the material density."""
        return cls(
            sphere_radius=sphere_radius,
            half_length=half_length,
            mass=mass_from_density(sphere_radius, density),
            dielectric=dielectric,
        )

    @property
    def total_mass(self) -> float:
        return 2 * self.mass

    @property
    def moment_of_inertia(self) -> float:
        """Moment of inertia about the rod centre (bar massless, spheres as points)."""
        return 2 * self.mass * self.half_length ** 2

    @property
    def clausius_mossotti(self) -> complex:
        return clausius_mossotti(self.dielectric)
