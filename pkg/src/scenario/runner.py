"""
End-to-end scenario execution: protocol, dynamics, decoherence, verdicts.
"""

import json
import math
from concurrent.futures import ThreadPoolExecutor
from contextlib import contextmanager
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, Iterator, List, Optional, Sequence, Union

import pandas as pd
from box import Box

from ..common.errors import SchemaError, TorsionBalanceError, UnreachableThresholdError
from ..common.utils import get_logger, relative_difference
from ..config import SimulationSettings
from ..decoherence import DecoherenceBudget, budget
from ..dynamics import (
    DynamicsConfig,
    TerminationReason,
    Trajectory,
    characteristic_time,
    integrate,
    small_angle_deviation,
    time_to_threshold,
)
from ..protocol import non_overlap_check, plan_protocol, transfer_time_for_angle, validate_timeline
from .config_loader import SWEEP_AXES, ScenarioConfig, with_override
from .plot_data import PlotBundle, build_plot_bundle

logger = get_logger(__name__)

STAGES = ("config", "protocol", "dynamics", "decoherence", "report")
REPORT_FILE = "report.json"
TRAJECTORY_FILE = "trajectory.csv"


@contextmanager
def stage(name: str) -> Iterator[None]:
    """Tag simulator errors raised inside the block with the stage name."""
    try:
        yield
    except TorsionBalanceError as e:
        if e.stage is None:
            e.stage = name
        logger.error(f"Stage '{name}' failed: {e.message}")
        raise


def verdict(crossing_time: Optional[float], tau_d: float, duration: float) -> Dict[str, Any]:
    """
    Detectability of one detection line in one environment.

    Detectable iff the crossing time is below min(tau_D, duration).

    Returns:
        {"detectable", "limit", "window_s"}; limit is the binding constraint:
        'unreachable' (no crossing), 'decoherence' (tau_D < duration) or 'duration'
    """
    window = min(tau_d, duration)
    if crossing_time is None:
        return {"detectable": False, "limit": "unreachable", "window_s": window}
    limit = "decoherence" if tau_d < duration else "duration"
    return {"detectable": crossing_time < window, "limit": limit, "window_s": window}


@dataclass(frozen=True)
class RunReport:
    """Report summary plus the trajectory and plot data it was built from."""

    summary: Dict[str, Any]
    trajectory: Trajectory
    plot_bundle: PlotBundle

    def to_json(self) -> str:
        return json.dumps(self.summary, sort_keys=True, indent=2) + "\n"

    @property
    def verdicts(self) -> List[Dict[str, Any]]:
        return self.summary["verdicts"]

    def write(
        self,
        out_dir: Union[str, Path],
        formats: Sequence[str] = ("json", "csv"),
        svg: bool = False,
    ) -> List[Path]:
        """Write the report, trajectory table and plot bundle into ``out_dir``."""
        out_dir = Path(out_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
        written: List[Path] = []
        if "json" in formats:
            written.append(out_dir / REPORT_FILE)
            written[-1].write_text(self.to_json(), encoding="utf-8")
        if "csv" in formats:
            written.append(out_dir / TRAJECTORY_FILE)
            self.trajectory.to_csv(written[-1])
        written.extend(self.plot_bundle.write(out_dir, svg=svg))
        logger.info(f"Wrote {len(written)} files to {out_dir}")
        return written


def _crossing_record(label, angle, displacement, crossing=None, reason=None) -> Dict[str, Any]:
    record = {"label": label, "resolution_rad": angle, "displacement_m": displacement,
              "reachable": crossing is not None}
    if crossing is not None:
        record.update(crossing.to_dict())
    else:
        record["reason"] = reason
    return record


def _budget_verdicts(
    crossings: List[Dict[str, Any]],
    budgets: List[Dict[str, Any]],
    duration: float,
) -> List[Dict[str, Any]]:
    verdicts = []
    for entry in budgets:
        tau_d = entry["budget"].tau_D
        for crossing in crossings:
            crossing_time = crossing.get("time_s")
            result = verdict(crossing_time, tau_d, duration)
            verdicts.append({
                "resolution": crossing["label"],
                "environment": entry["name"],
                "temperature_K": entry["budget"].temperature_external,
                "crossing_time_s": crossing_time,
                "tau_D_s": None if entry["budget"].tau_D_infinite else tau_d,
                "duration_s": duration,
                **result,
            })
    return verdicts


def run(config: ScenarioConfig, settings: Optional[SimulationSettings] = None) -> RunReport:
    """
    Execute one scenario.

    Args:
        config: resolved scenario
        settings: process settings (integrator defaults); read from the
            environment when omitted

    Returns:
        RunReport; identical configs give byte-identical ``to_json()``
    """
    settings = settings or SimulationSettings()
    notes: List[str] = []
    duration = config.resolved_duration

    with stage("config"):
        rod = config.build_rod()
        env = config.build_environment()
        plan = config.build_plan()

    with stage("protocol"):
        planned = plan_protocol(plan, rod)
        timeline = validate_timeline(planned, config.plan.safety_factor)
        theta0 = config.dynamics.theta0 if config.dynamics.theta0 is not None else planned.theta0
        overlap = non_overlap_check(theta0, rod.half_length, rod.sphere_radius, config.plan.wavepacket_width)
        needed_transfer = None
        if theta0 <= math.pi / 2:
            needed_transfer = transfer_time_for_angle(theta0, rod, planned)

        if config.dynamics.theta0 is not None and theta0 != planned.theta0:
            note = (
                f"theta0 {theta0:.4e} rad is set explicitly; the gradient transfer gives "
                f"{planned.theta0:.4e} rad ({100 * relative_difference(planned.theta0, theta0):.1f}% apart)"
            )
            if needed_transfer is not None:
                note += f" and would need t0 = {needed_transfer:.4e} s"
            notes.append(note)
        if not timeline["passed"]:
            notes.append("preparation timeline exceeds the spin coherence budget")
        if not overlap["passed"]:
            notes.append(
                f"superposed spheres overlap: chord {overlap['chord']:.3e} m <= required {overlap['required']:.3e} m"
            )

    with stage("dynamics"):
        numerics = settings.get_numerics_config()
        tau = characteristic_time(rod.half_length, rod.mass)
        dynamics_config = DynamicsConfig(
            theta0=theta0,
            initial_angular_velocity=config.dynamics.initial_angular_velocity,
            tolerance=config.dynamics.tolerance or numerics["tolerance"],
        )
        trajectory = integrate(
            dynamics_config,
            tau,
            duration,
            samples=config.dynamics.samples or numerics["samples"],
            spacing=config.dynamics.spacing,
        )
        estimate = small_angle_deviation(theta0, tau, duration)

        crossings = []
        for label, angle, displacement in config.resolution_angles():
            try:
                crossing = time_to_threshold(
                    theta0, tau, angle, dynamics_config, config.dynamics.max_rescaled_time
                )
                crossings.append(_crossing_record(label, angle, displacement, crossing))
            except UnreachableThresholdError as e:
                logger.warning(f"Resolution '{label}' is never reached: {e.message}")
                crossings.append(_crossing_record(label, angle, displacement, reason=e.message))

        if trajectory.terminated_by is not TerminationReason.TIME_LIMIT:
            notes.append(f"integration stopped early: {trajectory.terminated_by.value}")
        if not estimate.valid:
            notes.append("small-angle estimate is outside its validity range at the full duration")

    with stage("decoherence"):
        alpha_x = alpha_z = None
        if config.polarizability is not None:
            alpha_x, alpha_z = config.polarizability.alpha_x, config.polarizability.alpha_z
        else:
            notes.append("alternative scattering rate uses the two-sphere polarizability estimate (indicative)")

        def compute(environment) -> DecoherenceBudget:
            return budget(rod, environment, theta0, alpha_x, alpha_z, config.collisional_mode)

        budgets = [{"name": "nominal", "budget": compute(env)}]
        for temperature in config.temperatures_to_mark:
            budgets.append({"name": f"equilibrium {temperature:g} K",
                            "budget": compute(env.with_temperature(temperature))})

    with stage("report"):
        verdicts = _budget_verdicts(crossings, budgets, duration)
        marked = [entry["budget"] for entry in budgets[1:]]
        bundle = build_plot_bundle(
            trajectory,
            rod.half_length,
            config.resolution_angles(),
            marked,
            config.platform_durations,
            config.gravity_acceleration,
        )
        summary = {
            "parameters": config.to_data(),
            "protocol": {
                "delta0_m": planned.delta0,
                "theta0_protocol_rad": planned.theta0,
                "theta0_used_rad": theta0,
                "theta0_source": "config" if config.dynamics.theta0 is not None else "protocol",
                "transfer_time_for_theta0_s": needed_transfer,
                "timeline": timeline,
                "non_overlap": overlap,
            },
            "dynamics": {
                "tau_s": tau,
                "duration_s": duration,
                "rescaled_duration": duration / tau,
                "terminated_by": trajectory.terminated_by.value,
                "samples": len(trajectory),
                "deviation_at_end_rad": float(trajectory.deviation[-1]),
                "small_angle_deviation_rad": estimate.deviation,
                "small_angle_valid": estimate.valid,
                "crossings": crossings,
            },
            "decoherence": {
                "nominal": budgets[0]["budget"].to_dict(),
                "marked": [b.to_dict() for b in marked],
            },
            "verdicts": verdicts,
            "notes": notes,
        }
        for note in notes:
            logger.warning(note)

    logger.info(
        f"Run finished: {sum(v['detectable'] for v in verdicts)}/{len(verdicts)} "
        f"detectable (resolution, environment) pairs"
    )
    return RunReport(summary=summary, trajectory=trajectory, plot_bundle=bundle)


def sweep(
    config: ScenarioConfig,
    axis: str,
    values: Sequence[Any],
    workers: Optional[int] = None,
    settings: Optional[SimulationSettings] = None,
) -> List[RunReport]:
    """
    One run per value of a sweepable scalar, returned in input order.

    Args:
        config: base scenario
        axis: one of ``SWEEP_AXES``
        values: numbers (SI) or quantity strings
        workers: thread-pool size; ``TORSION_SWEEP_WORKERS`` when omitted
        settings: process settings

    Raises:
        SchemaError: unknown axis (message lists the sweepable axes) or no values
    """
    if axis not in SWEEP_AXES:
        raise SchemaError(f"unknown sweep axis {axis!r}; sweepable axes: {', '.join(SWEEP_AXES)}",
                          keys=[axis])
    if not values:
        raise SchemaError("sweep needs at least one value", keys=[axis])

    settings = settings or SimulationSettings()
    with stage("config"):
        configs = [with_override(config, axis, value) for value in values]

    workers = workers or settings.sweep_workers
    logger.info(f"Sweeping {axis} over {len(configs)} values with {workers} worker(s)")

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(lambda c: run(c, settings), configs))
    return [run(c, settings) for c in configs]


def sweep_table(axis: str, reports: Sequence[RunReport]) -> pd.DataFrame:
    """One row per sweep point, keyed by the swept value in SI units."""
    rows = []
    for report in reports:
        summary = report.summary
        parameters = Box(summary["parameters"], box_dots=True)
        try:
            value = parameters[SWEEP_AXES[axis]]
        except KeyError:
            # omitted T_I follows T_E; omitted duration is the platform default
            value = (parameters["environment.temperature_external"] if axis == "T_I"
                     else summary["dynamics"]["duration_s"])
        nominal = summary["decoherence"]["nominal"]
        row = {
            axis: value,
            "theta0_rad": summary["protocol"]["theta0_used_rad"],
            "tau_s": summary["dynamics"]["tau_s"],
            "tau_D_s": nominal["tau_D_s"],
            "deviation_at_end_rad": summary["dynamics"]["deviation_at_end_rad"],
            "duration_s": summary["dynamics"]["duration_s"],
        }
        for v in summary["verdicts"]:
            if v["environment"] == "nominal":
                row[f"crossing_time_s[{v['resolution']}]"] = v["crossing_time_s"]
                row[f"detectable[{v['resolution']}]"] = v["detectable"]
        rows.append(row)
    return pd.DataFrame(rows)
