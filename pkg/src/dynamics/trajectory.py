"""
Sampled classical-gravity trajectory and its exports.
"""

import json
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

import numpy as np
import pandas as pd

TRAJECTORY_COLUMNS = ["t_s", "s_rescaled", "theta_rad", "deviation_rad"]


class TerminationReason(str, Enum):
    TIME_LIMIT = "time_limit"
    FLOOR_HIT = "floor_hit"
    CEILING_HIT = "ceiling_hit"


def potential(theta):
    """V(theta) = -2 [csc(theta/2) + sec(theta/2)]; -dV/dtheta is the acceleration."""
    half = np.asarray(theta, dtype=float) / 2
    value = -2.0 * (1.0 / np.sin(half) + 1.0 / np.cos(half))
    return float(value) if value.ndim == 0 else value


def _read_only(values: np.ndarray) -> np.ndarray:
    array = np.array(values, dtype=float)
    array.flags.writeable = False
    return array


@dataclass(frozen=True, eq=False)
class Trajectory:
    """
    Samples of theta(t) stored as offsets from theta0 and as angles.

    ``delta`` holds theta - theta0 as integrated, so the deviation keeps its
    full precision even when it is many orders below theta0. ``theta`` is
    theta0 + delta unless given; near a guard the angle itself is integrated
    and stored. Physical time is derived as tau * s on access.
    """

    s: np.ndarray
    delta: np.ndarray
    theta_dot: np.ndarray
    theta0: float
    tau: float
    terminated_by: TerminationReason = TerminationReason.TIME_LIMIT
    theta: Optional[np.ndarray] = None

    def __post_init__(self):
        if self.theta is None:
            object.__setattr__(self, "theta", self.theta0 + np.asarray(self.delta, dtype=float))
        for name in ("s", "delta", "theta_dot", "theta"):
            object.__setattr__(self, name, _read_only(getattr(self, name)))
        if not len(self.s) == len(self.delta) == len(self.theta_dot) == len(self.theta):
            raise ValueError("trajectory arrays must have equal length")
        if len(self.s) > 1 and not np.all(np.diff(self.s) > 0):
            raise ValueError("trajectory samples must be strictly increasing in time")

    def __len__(self) -> int:
        return len(self.s)

    @property
    def t(self) -> np.ndarray:
        return self.tau * self.s

    @property
    def deviation(self) -> np.ndarray:
        return np.abs(self.delta)

    @property
    def samples(self) -> List[Dict[str, float]]:
        """One record per sample: t, s, theta, theta_dot, deviation."""
        return [
            {"t": float(t), "s": float(s), "theta": float(th),
             "theta_dot": float(w), "deviation": float(d)}
            for t, s, th, w, d in zip(self.t, self.s, self.theta, self.theta_dot, self.deviation)
        ]

    def energy(self) -> np.ndarray:
        """First integral E = theta'^2 / 2 - 2 [csc(theta/2) + sec(theta/2)] per sample."""
        return 0.5 * self.theta_dot ** 2 + potential(self.theta)

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({
            "t_s": self.t,
            "s_rescaled": self.s,
            "theta_rad": self.theta,
            "deviation_rad": self.deviation,
        }, columns=TRAJECTORY_COLUMNS)

    def to_csv(self, path: Union[str, Path, None] = None) -> str:
        """Write the trajectory table; returns the CSV text."""
        text = self.to_frame().to_csv(index=False, float_format="%.17g")
        if path is not None:
            Path(path).write_text(text, encoding="utf-8")
        return text

    def to_dict(self) -> Dict[str, Any]:
        return {
            "tau_s": self.tau,
            "theta0_rad": self.theta0,
            "terminated_by": self.terminated_by.value,
            "samples": self.to_frame().to_dict(orient="list"),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)
