"""
Classical-gravity dynamics of the superposition angle.

In the classical scenario each branch of the angular superposition attracts
the other. In rescaled time s = t / tau the equation of motion is
parameter-free:

    theta''(s) = -[cos^3(theta/2) - sin^3(theta/2)] / [cos^2(theta/2) sin^2(theta/2)]

negative for theta < pi/2, so the separation closes. The state integrated is
(theta - theta0, theta'), never theta itself: the signal is ~1e-6 of theta0
and would drown in round-off under naive subtraction.
"""

import math
from dataclasses import dataclass
from typing import Callable, List, Optional, Tuple

import numpy as np
from scipy.integrate import solve_ivp
from scipy.optimize import bisect

from ..common.constants import CONSTANTS, PhysicalConstants
from ..common.errors import (
    NumericalError,
    PhysicsDomainError,
    SingularityError,
    UnreachableThresholdError,
)
from ..common.utils import get_logger
from ..system_model import Nanorod
from .trajectory import TerminationReason, Trajectory, potential

logger = get_logger(__name__)

DEFAULT_FLOOR = 1e-8
DEFAULT_CEILING = math.pi - 1e-8
DEFAULT_TOLERANCE = 1e-10
SMALL_ANGLE_VALIDITY = 1e-3
INTEGRATOR_METHOD = "DOP853"

# atol = tolerance * this; error control is effectively relative
_ABSOLUTE_TOLERANCE_SCALE = 1e-30


@dataclass(frozen=True)
class DynamicsConfig:
    """Initial condition, integrator tolerance and singularity guards."""

    theta0: float
    initial_angular_velocity: float = 0.0
    tolerance: float = DEFAULT_TOLERANCE
    max_step: float = math.inf
    stop_angle_floor: float = DEFAULT_FLOOR
    stop_angle_ceiling: float = DEFAULT_CEILING

    def __post_init__(self):
        if not 0 < self.stop_angle_floor < self.theta0 < self.stop_angle_ceiling < math.pi:
            raise PhysicsDomainError(
                f"need 0 < floor ({self.stop_angle_floor!r}) < theta0 ({self.theta0!r}) "
                f"< ceiling ({self.stop_angle_ceiling!r}) < pi"
            )
        if self.tolerance <= 0:
            raise PhysicsDomainError(f"tolerance must be positive, got {self.tolerance!r}")
        if self.max_step <= 0:
            raise PhysicsDomainError(f"max_step must be positive, got {self.max_step!r}")


@dataclass(frozen=True)
class SmallAngleEstimate:
    deviation: float
    valid: bool


@dataclass(frozen=True)
class ThresholdCrossing:
    """First time |theta_t - theta0| reaches ``resolution``."""

    resolution: float
    time: float
    rescaled_time: float
    closed_form_time: float
    closed_form_valid: bool
    method: str = "integrated"

    def to_dict(self) -> dict:
        return {
            "resolution_rad": self.resolution,
            "time_s": self.time,
            "rescaled_time": self.rescaled_time,
            "closed_form_time_s": self.closed_form_time,
            "closed_form_valid": self.closed_form_valid,
            "method": self.method,
        }


def characteristic_time(
    half_length: float,
    mass: float,
    constants: PhysicalConstants = CONSTANTS,
) -> float:
    """
    Characteristic time tau = sqrt((1/2) 4 L^3 / (G m)) = sqrt(2 L^3 / (G m)).

    The factor 1/2 accounts for both masses pulling on the separation angle.
    """
    if half_length <= 0 or mass <= 0:
        raise PhysicsDomainError(f"L and m must be positive, got L={half_length!r}, m={mass!r}")
    return math.sqrt(2 * half_length ** 3 / (constants.G * mass))


def _signed_acceleration(theta: float) -> float:
    # cos^3 u - sin^3 u = (cos u - sin u)(1 + sin(theta)/2), u = theta/2,
    # cos u - sin u = sqrt(2) sin((pi/2 - theta)/2): exactly zero at theta = pi/2
    sin_theta = math.sin(theta)
    if sin_theta == 0.0:
        raise SingularityError(f"acceleration is singular at theta = {theta!r}")
    return (
        -4.0 * math.sqrt(2.0) * math.sin((math.pi / 2 - theta) / 2)
        * (1.0 + 0.5 * sin_theta) / (sin_theta * sin_theta)
    )


def _check_guard(theta: float, floor: float, ceiling: float) -> None:
    if not floor <= theta <= ceiling:
        raise SingularityError(
            f"theta = {theta!r} outside the guard band [{floor!r}, {ceiling!r}]; "
            "the Newtonian potential is singular at 0 and pi"
        )


def angular_acceleration(
    theta: float,
    floor: float = DEFAULT_FLOOR,
    ceiling: float = DEFAULT_CEILING,
) -> float:
    """
    Signed angular acceleration in rescaled units.

    Args:
        theta: separation angle (rad)
        floor: lower singularity guard (rad)
        ceiling: upper singularity guard (rad)

    Returns:
        d^2 theta / ds^2; zero at pi/2, negative below it
    """
    _check_guard(theta, floor, ceiling)
    return _signed_acceleration(theta)


def physical_angular_acceleration(theta: float, tau: float) -> float:
    """Angular acceleration in rad s^-2 for a rod with characteristic time ``tau``."""
    return angular_acceleration(theta) / tau ** 2


def conserved_energy(
    theta: float,
    theta_dot: float,
    floor: float = DEFAULT_FLOOR,
    ceiling: float = DEFAULT_CEILING,
) -> float:
    """First integral E = theta'^2 / 2 + V(theta) of the rescaled motion."""
    _check_guard(theta, floor, ceiling)
    return 0.5 * theta_dot ** 2 + potential(theta)


def tangential_force(
    rod: Nanorod,
    theta: float,
    constants: PhysicalConstants = CONSTANTS,
) -> float:
    """
    Net tangential Newtonian force on one sphere from the other branch (N).

    F = G1 cos(theta/2) - G2 sin(theta/2), Gi = G m^2 / di^2 with
    d1 = 2L sin(theta/2), d2 = 2L cos(theta/2). The separation angle closes
    at 2F / (m L).
    """
    _check_guard(theta, DEFAULT_FLOOR, DEFAULT_CEILING)
    half = theta / 2
    d1 = 2 * rod.half_length * math.sin(half)
    d2 = 2 * rod.half_length * math.cos(half)
    g1 = constants.G * rod.mass ** 2 / d1 ** 2
    g2 = constants.G * rod.mass ** 2 / d2 ** 2
    return g1 * math.cos(half) - g2 * math.sin(half)


def small_angle_deviation(theta0: float, tau: float, t: float) -> SmallAngleEstimate:
    """
    Constant-acceleration estimate |theta_t - theta0| = 2 t^2 / (theta0^2 tau^2).

    ``valid`` is false once the estimate exceeds 1e-3 theta0.
    """
    if theta0 <= 0 or tau <= 0 or t < 0:
        raise PhysicsDomainError("small_angle_deviation needs theta0 > 0, tau > 0, t >= 0")
    deviation = 2 * t ** 2 / (theta0 ** 2 * tau ** 2)
    return SmallAngleEstimate(deviation=deviation, valid=deviation <= SMALL_ANGLE_VALIDITY * theta0)


def sample_grid(s_end: float, samples: int, spacing: str = "log", decades: float = 4.0) -> np.ndarray:
    """Strictly increasing sample points in [0, s_end], always starting at 0."""
    if samples < 2:
        raise PhysicsDomainError(f"need at least 2 samples, got {samples!r}")
    if spacing == "linear":
        return np.linspace(0.0, s_end, samples)
    if spacing == "log":
        tail = np.geomspace(s_end * 10.0 ** (-decades), s_end, samples - 1)
        return np.concatenate(([0.0], tail))
    raise PhysicsDomainError(f"unknown sample spacing {spacing!r} (use 'log' or 'linear')")


def _equation(theta0: float) -> Callable[[float, np.ndarray], Tuple[float, float]]:
    def rhs(_s: float, y: np.ndarray) -> Tuple[float, float]:
        return y[1], _signed_acceleration(theta0 + y[0])
    return rhs


def _terminal(*events: Callable, direction: int = -1) -> List[Callable]:
    for event in events:
        event.terminal = True
        event.direction = direction
    return list(events)


def _guard_events(config: DynamicsConfig) -> List[Callable]:
    theta0 = config.theta0

    def floor_hit(_s, y):
        return theta0 + y[0] - config.stop_angle_floor

    def ceiling_hit(_s, y):
        return config.stop_angle_ceiling - (theta0 + y[0])

    return _terminal(floor_hit, ceiling_hit)


def _halfway(config: DynamicsConfig) -> Tuple[float, float]:
    """Angles halfway from theta0 to the floor and to the ceiling."""
    return (
        0.5 * (config.theta0 + config.stop_angle_floor),
        0.5 * (config.theta0 + config.stop_angle_ceiling),
    )


def _halfway_events(config: DynamicsConfig) -> List[Callable]:
    theta0 = config.theta0
    floor_mid, ceiling_mid = _halfway(config)

    def toward_floor(_s, y):
        return theta0 + y[0] - floor_mid

    def toward_ceiling(_s, y):
        return ceiling_mid - (theta0 + y[0])

    return _terminal(toward_floor, toward_ceiling)


def _run_solver(rhs, span: Tuple[float, float], y0, config: DynamicsConfig, **kwargs):
    try:
        sol = solve_ivp(
            rhs,
            span,
            y0,
            method=INTEGRATOR_METHOD,
            rtol=config.tolerance,
            atol=config.tolerance * _ABSOLUTE_TOLERANCE_SCALE,
            max_step=config.max_step,
            **kwargs,
        )
    except SingularityError as e:
        raise SingularityError(f"integration reached a singular point: {e.message}") from e
    logger.debug(f"solve_ivp status={sol.status} nfev={sol.nfev} message={sol.message}")
    return sol


def _raise_failure(sol, theta: Optional[float], theta_dot: Optional[float], near_guard: bool):
    """Integrator gave up: a singularity error next to a guard, a numerical error elsewhere."""
    last_state = None
    if theta is not None:
        last_state = {"s": float(sol.t[-1]), "theta": theta, "theta_dot": theta_dot}
    logger.error(f"Integration failed: {sol.message} (last state {last_state})")
    if near_guard:
        raise SingularityError(f"step size underflow near a guard: {sol.message}", last_state=last_state)
    raise NumericalError(f"integration failed: {sol.message}", last_state=last_state)


def _solve(config: DynamicsConfig, s_end: float, events: Optional[List[Callable]] = None, **kwargs):
    """Integrate (theta - theta0, theta') from s = 0."""
    y0 = [0.0, config.initial_angular_velocity]
    events = _guard_events(config) if events is None else events
    sol = _run_solver(_equation(config.theta0), (0.0, s_end), y0, config, events=events, **kwargs)
    if sol.status == -1:
        if not sol.t.size:
            _raise_failure(sol, None, None, near_guard=False)
        theta = float(config.theta0 + sol.y[0, -1])
        floor_mid, ceiling_mid = _halfway(config)
        _raise_failure(sol, theta, float(sol.y[1, -1]), near_guard=not floor_mid < theta < ceiling_mid)
    return sol


def _termination(sol) -> TerminationReason:
    if sol.status == 1:
        if sol.t_events[0].size:
            return TerminationReason.FLOOR_HIT
        if sol.t_events[1].size:
            return TerminationReason.CEILING_HIT
    return TerminationReason.TIME_LIMIT


def _approach_speed(energy: float, theta: float) -> float:
    if not 0.0 < theta < math.pi:
        return 0.0
    return math.sqrt(2.0 * max(energy - potential(theta), 0.0))


def _approach_guard(
    config: DynamicsConfig,
    energy: float,
    heading: float,
    s_start: float,
    theta_start: float,
    s_end: float,
    grid: np.ndarray,
):
    """
    Finish a monotone run toward a guard from the halfway point.

    Past halfway the motion cannot turn, so theta' = heading sqrt(2 (E - V))
    and the angle itself is integrated. The first integral then holds to
    round-off all the way to the guard, where the second-order form loses it
    to the growing velocity.

    Returns:
        (s, theta, termination reason) including the guard-hit state
    """
    floor, ceiling = config.stop_angle_floor, config.stop_angle_ceiling

    def rhs(_s, y):
        return [heading * _approach_speed(energy, y[0])]

    def floor_hit(_s, y):
        return y[0] - floor

    def ceiling_hit(_s, y):
        return ceiling - y[0]

    sol = _run_solver(rhs, (s_start, s_end), [theta_start], config,
                      events=_terminal(floor_hit, ceiling_hit), t_eval=grid)
    if sol.status == -1:
        theta = float(sol.y[0, -1]) if sol.t.size else theta_start
        _raise_failure(sol, theta, heading * _approach_speed(energy, theta), near_guard=True)

    s_values = np.asarray(sol.t, dtype=float)
    theta = np.asarray(sol.y, dtype=float).reshape(-1)
    terminated_by = TerminationReason.TIME_LIMIT
    for index, reason, guard in ((0, TerminationReason.FLOOR_HIT, floor),
                                 (1, TerminationReason.CEILING_HIT, ceiling)):
        if sol.status == 1 and sol.t_events[index].size:
            terminated_by = reason
            s_hit = float(sol.t_events[index][0])
            if not s_values.size or s_hit > s_values[-1]:
                s_values = np.append(s_values, s_hit)
                theta = np.append(theta, guard)
            else:
                theta[-1] = guard
    return s_values, theta, terminated_by


def integrate(
    config: DynamicsConfig,
    tau: float,
    duration: float,
    samples: int = 400,
    spacing: str = "log",
) -> Trajectory:
    """
    Integrate the classical-gravity motion from theta0 over ``duration``.

    Args:
        config: initial condition, tolerance and guards
        tau: characteristic time (s)
        duration: physical duration (s)
        samples: number of output samples (first one at t = 0)
        spacing: 'log' (default, resolves the early-time regime) or 'linear'

    Returns:
        Sampled trajectory; halts early if a guard is crossed, with the
        guard-hit state as its last sample

    Raises:
        SingularityError: step size underflow next to a guard
        NumericalError: any other integrator failure
    """
    if duration <= 0:
        raise PhysicsDomainError(f"duration must be positive, got {duration!r}")
    if tau <= 0:
        raise PhysicsDomainError(f"tau must be positive, got {tau!r}")

    theta0 = config.theta0
    s_end = duration / tau
    grid = sample_grid(s_end, samples, spacing)
    sol = _solve(config, s_end, _halfway_events(config), t_eval=grid)

    s_values = np.asarray(sol.t, dtype=float)
    delta = np.asarray(sol.y[0], dtype=float)
    theta_dot = np.asarray(sol.y[1], dtype=float)
    theta = theta0 + delta
    terminated_by = TerminationReason.TIME_LIMIT

    if sol.status == 1:
        index = 0 if sol.t_events[0].size else 1
        heading = -1.0 if index == 0 else 1.0
        s_switch = float(sol.t_events[index][0])
        theta_switch = float(theta0 + sol.y_events[index][0][0])
        energy = conserved_energy(theta0, config.initial_angular_velocity,
                                  config.stop_angle_floor, config.stop_angle_ceiling)
        logger.debug(f"Halfway to the {'floor' if index == 0 else 'ceiling'} at s={s_switch:.4e}")
        tail_s, tail_theta, terminated_by = _approach_guard(
            config, energy, heading,
            s_switch, theta_switch, s_end, grid[grid > s_switch],
        )
        s_values = np.concatenate((s_values, tail_s))
        theta = np.concatenate((theta, tail_theta))
        delta = np.concatenate((delta, tail_theta - theta0))
        speed = np.sqrt(2.0 * np.maximum(energy - potential(tail_theta), 0.0))
        theta_dot = np.concatenate((theta_dot, heading * speed))

    if terminated_by is not TerminationReason.TIME_LIMIT:
        logger.warning(f"Integration stopped early ({terminated_by.value}) at s={s_values[-1]:.4e}")

    trajectory = Trajectory(
        s=s_values,
        delta=delta,
        theta_dot=theta_dot,
        theta0=theta0,
        tau=tau,
        terminated_by=terminated_by,
        theta=theta,
    )
    logger.info(
        f"Integrated {len(trajectory)} samples over {duration:g} s "
        f"(tau={tau:.4e} s); final deviation {trajectory.deviation[-1]:.4e} rad"
    )
    return trajectory


def time_to_threshold(
    theta0: float,
    tau: float,
    resolution: float,
    config: Optional[DynamicsConfig] = None,
    max_rescaled_time: float = 100.0,
) -> ThresholdCrossing:
    """
    First time the deviation |theta_t - theta0| reaches ``resolution``.

    The crossing is bracketed by the integrator steps and refined by
    bisection on the dense-output interpolant. The closed form
    theta0 tau sqrt(resolution / 2) is reported alongside and used when the
    integration fails inside its small-angle validity range.

    Raises:
        UnreachableThresholdError: guard hit or horizon reached first
    """
    if resolution <= 0:
        raise PhysicsDomainError(f"resolution must be positive, got {resolution!r}")
    if tau <= 0:
        raise PhysicsDomainError(f"tau must be positive, got {tau!r}")

    if config is None:
        config = DynamicsConfig(theta0=theta0)
    elif config.theta0 != theta0:
        raise PhysicsDomainError(f"config.theta0 ({config.theta0!r}) differs from theta0 ({theta0!r})")

    closed_form = theta0 * tau * math.sqrt(resolution / 2)
    closed_valid = (
        resolution <= SMALL_ANGLE_VALIDITY * theta0
        and config.initial_angular_velocity == 0.0
    )

    def reached(_s, y):
        return abs(y[0]) - resolution
    reached.terminal = True
    reached.direction = 1

    try:
        sol = _solve(config, max_rescaled_time, _guard_events(config) + [reached], dense_output=True)
    except (NumericalError, SingularityError):
        if closed_valid:
            logger.warning("Integration failed; using the small-angle closed form for the crossing")
            return ThresholdCrossing(resolution, closed_form, closed_form / tau,
                                     closed_form, closed_valid, method="closed_form")
        raise

    if not sol.t_events[2].size:
        reason = _termination(sol).value
        raise UnreachableThresholdError(
            f"deviation never reaches {resolution:.3e} rad before {reason} "
            f"(theta0={theta0!r}, max rescaled time {max_rescaled_time:g})"
        )

    def excess(s: float) -> float:
        return abs(float(sol.sol(s)[0])) - resolution

    hi = float(sol.t_events[2][0])
    lo = float(sol.t[-2]) if sol.t.size > 1 else 0.0
    if excess(hi) < 0 or lo >= hi:
        s_cross = hi
    else:
        s_cross = bisect(excess, lo, hi, xtol=hi * 1e-15, rtol=4 * np.finfo(float).eps)

    crossing = ThresholdCrossing(
        resolution=resolution,
        time=tau * s_cross,
        rescaled_time=s_cross,
        closed_form_time=closed_form,
        closed_form_valid=closed_valid,
    )
    logger.info(f"Deviation reaches {resolution:.3e} rad after {crossing.time:.4e} s")
    return crossing


def quantum_baseline(trajectory: Trajectory) -> np.ndarray:
    """Quantum scenario: theta stays at theta0, the deviation is identically zero."""
    return np.zeros_like(trajectory.s)
