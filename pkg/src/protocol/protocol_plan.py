"""
Superposition-preparation planning: branch separation from the magnetic
gradient transfer, the resulting superposition angle, and the stage timeline
against the spin coherence time.

The transfer Hamiltonian is represented only through its closed-form
displacement; no wavepacket is evolved.
"""

import math
from dataclasses import dataclass, replace
from typing import Any, Dict, Optional

from ..common.constants import CONSTANTS, PhysicalConstants
from ..common.errors import PhysicsDomainError, UnreachableAngleError
from ..common.utils import get_logger, not_exceeding
from ..system_model import Nanorod

logger = get_logger(__name__)

# Literature spin coherence times of NV centres in diamond nanorods (s)
T2_LARGE_NANOROD = 300e-6   # 300-500 nm diameter
T2_SMALL_NANOROD = 80e-6    # 50 nm x 150 nm
T2_ASSUMED = 100e-6


@dataclass(frozen=True)
class ProtocolPlan:
    """Transfer-stage parameters; ``delta0``/``theta0`` filled by ``plan_protocol``."""

    gradient: float
    transfer_time: float
    measurement_time: float = 0.0
    spin_coherence: float = T2_ASSUMED
    lande_g: float = 2.0
    delta0: Optional[float] = None
    theta0: Optional[float] = None

    def __post_init__(self):
        # t0 = 0 is admitted as the degenerate no-transfer plan
        if self.transfer_time < 0:
            raise PhysicsDomainError(f"transfer_time must be >= 0, got {self.transfer_time!r}")
        if self.measurement_time < 0:
            raise PhysicsDomainError(f"measurement_time must be >= 0, got {self.measurement_time!r}")
        if self.spin_coherence <= 0:
            raise PhysicsDomainError(f"spin_coherence must be positive, got {self.spin_coherence!r}")
        if self.gradient <= 0 or self.lande_g <= 0:
            raise PhysicsDomainError("gradient and lande_g must be positive")
        if self.delta0 is not None and self.delta0 < 0:
            raise PhysicsDomainError(f"delta0 must be >= 0, got {self.delta0!r}")
        if self.theta0 is not None and not 0 <= self.theta0 <= math.pi / 2:
            raise PhysicsDomainError(f"theta0 must lie in [0, pi/2], got {self.theta0!r}")


def branch_separation(
    plan: ProtocolPlan,
    mass: float,
    constants: PhysicalConstants = CONSTANTS,
) -> float:
    """
    Linear separation of the two branches after the gradient transfer.

    Args:
        plan: transfer parameters
        mass: mass of the sphere carrying the spin (kg)
        constants: physical constants

    Returns:
        Delta0 = (g_NV muB / m) dB/dx t0^2 in m
    """
    if mass <= 0:
        raise PhysicsDomainError(f"mass must be positive, got {mass!r}")
    return plan.lande_g * constants.muB / mass * plan.gradient * plan.transfer_time ** 2


def superposition_angle(delta0: float, half_length: float) -> float:
    """
    Angular separation theta0 = arcsin(Delta0 / 2L).

    Raises:
        UnreachableAngleError: if Delta0 > 2L
    """
    if half_length <= 0:
        raise PhysicsDomainError(f"half_length must be positive, got {half_length!r}")
    if delta0 < 0:
        raise PhysicsDomainError(f"delta0 must be >= 0, got {delta0!r}")
    ratio = delta0 / (2 * half_length)
    if ratio > 1:
        raise UnreachableAngleError(
            f"branch separation {delta0:.3e} m exceeds the rod length 2L = "
            f"{2 * half_length:.3e} m; the planned transfer cannot be realised"
        )
    return math.asin(ratio)


def plan_protocol(
    plan: ProtocolPlan,
    rod: Nanorod,
    constants: PhysicalConstants = CONSTANTS,
) -> ProtocolPlan:
    """Return a copy of ``plan`` with delta0 and theta0 computed for ``rod``."""
    delta0 = branch_separation(plan, rod.mass, constants)
    theta0 = superposition_angle(delta0, rod.half_length)
    logger.info(f"Protocol planned: delta0={delta0:.4e} m, theta0={theta0:.4e} rad")
    return replace(plan, delta0=delta0, theta0=theta0)


def transfer_time_for_angle(
    theta0: float,
    rod: Nanorod,
    plan: ProtocolPlan,
    constants: PhysicalConstants = CONSTANTS,
) -> float:
    """Transfer time that produces ``theta0`` with the plan's gradient and g factor."""
    if not 0 <= theta0 <= math.pi / 2:
        raise PhysicsDomainError(f"theta0 must lie in [0, pi/2], got {theta0!r}")
    delta0 = 2 * rod.half_length * math.sin(theta0)
    return math.sqrt(delta0 * rod.mass / (plan.lande_g * constants.muB * plan.gradient))


def validate_timeline(plan: ProtocolPlan, safety_factor: float = 1.0) -> Dict[str, Any]:
    """
    Check the preparation stages against the spin coherence time.

    Args:
        plan: transfer parameters
        safety_factor: required ratio T2 / t0 (>= 1)

    Returns:
        Validation report; ``passed`` is true iff every constraint holds
    """
    if safety_factor < 1:
        raise PhysicsDomainError(f"safety_factor must be >= 1, got {safety_factor!r}")

    t2 = plan.spin_coherence
    safety_value = plan.transfer_time * safety_factor
    hard_value = plan.transfer_time + plan.measurement_time

    constraints = [
        {
            "name": "safety",
            "description": f"t0 x {safety_factor:g} <= T2",
            "value": safety_value,
            "limit": t2,
            "margin": t2 - safety_value,
            "passed": not_exceeding(safety_value, t2),
        },
        {
            "name": "hard",
            "description": "t0 + dt <= T2",
            "value": hard_value,
            "limit": t2,
            "margin": t2 - hard_value,
            "passed": not_exceeding(hard_value, t2),
        },
    ]
    passed = all(c["passed"] for c in constraints)

    if not passed:
        failed = [c["name"] for c in constraints if not c["passed"]]
        logger.warning(f"Timeline check failed on: {failed}")

    return {"passed": passed, "safety_factor": safety_factor, "constraints": constraints}


def non_overlap_check(
    theta0: float,
    half_length: float,
    sphere_radius: float,
    wavepacket_width: float = 0.0,
) -> Dict[str, Any]:
    """
    Check that each sphere and its superposed self do not overlap.

    The chord 2L sin(theta0/2) between the two positions of a sphere must
    exceed 2r plus the centre-of-mass wavepacket width.
    """
    if theta0 < 0 or half_length <= 0 or sphere_radius < 0 or wavepacket_width < 0:
        raise PhysicsDomainError("non_overlap_check needs non-negative inputs and L > 0")

    chord = 2 * half_length * math.sin(theta0 / 2)
    required = 2 * sphere_radius + wavepacket_width
    passed = chord > required

    if not passed:
        logger.warning(f"Superposed spheres overlap: chord {chord:.3e} m <= {required:.3e} m")

    return {
        "passed": passed,
        "chord": chord,
        "required": required,
        "margin": chord - required,
    }
