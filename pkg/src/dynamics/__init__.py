"""
Classical-gravity dynamics of the superposition angle.
"""

from .gravity_dynamics import (
    DynamicsConfig,
    SmallAngleEstimate,
    ThresholdCrossing,
    angular_acceleration,
    characteristic_time,
    conserved_energy,
    integrate,
    physical_angular_acceleration,
    potential,
    quantum_baseline,
    sample_grid,
    small_angle_deviation,
    tangential_force,
    time_to_threshold,
)
from .trajectory import TRAJECTORY_COLUMNS, TerminationReason, Trajectory

__all__ = [
    "DynamicsConfig",
    "SmallAngleEstimate",
    "ThresholdCrossing",
    "angular_acceleration",
    "characteristic_time",
    "conserved_energy",
    "integrate",
    "physical_angular_acceleration",
    "potential",
    "quantum_baseline",
    "sample_grid",
    "small_angle_deviation",
    "tangential_force",
    "time_to_threshold",
    "TRAJECTORY_COLUMNS",
    "TerminationReason",
    "Trajectory",
]
