"""
Plot-data bundle for the angular-distance figure.

The bundle is data, not an image: a curves table plus a JSON manifest naming
the axes, detection lines, decoherence markers and platform spans. Any
plotting tool can redraw the figure from it; ``render_svg`` does so with
matplotlib.
"""

import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd

from ..common.constants import DEFAULT_FREE_FALL_ACCELERATION
from ..common.errors import PhysicsDomainError
from ..common.utils import get_logger
from ..decoherence import DecoherenceBudget
from ..dynamics import Trajectory, quantum_baseline

logger = get_logger(__name__)

CURVES_FILE = "curves.csv"
MANIFEST_FILE = "plot_manifest.json"
SVG_FILE = "figure.svg"
DROP_TOWER_LINE = 4.6
CURVE_COLUMNS = ["t_s", "deviation_rad", "deviation_m", "quantum_deviation_rad", "fall_height_m"]


def drop_distance(t: Union[float, np.ndarray], g: float = DEFAULT_FREE_FALL_ACCELERATION):
    """
    Free-fall height h = g t^2 / 2.

    Args:
        t: elapsed time (s), scalar or array, >= 0
        g: free-fall acceleration (m s^-2)

    Returns:
        Height fallen in m, same shape as ``t``
    """
    times = np.asarray(t, dtype=float)
    if np.any(times < 0):
        raise PhysicsDomainError("drop_distance needs t >= 0")
    height = 0.5 * g * times ** 2
    return float(height) if height.ndim == 0 else height


@dataclass(frozen=True)
class PlotBundle:
    curves: pd.DataFrame
    manifest: Dict[str, Any]

    def manifest_json(self) -> str:
        return json.dumps(self.manifest, sort_keys=True, indent=2)

    def curves_csv(self) -> str:
        return self.curves.to_csv(index=False, float_format="%.17g")

    def write(self, out_dir: Union[str, Path], svg: bool = False) -> List[Path]:
        """Write the curves table, the manifest and optionally the SVG."""
        out_dir = Path(out_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
        written = [out_dir / CURVES_FILE, out_dir / MANIFEST_FILE]
        written[0].write_text(self.curves_csv(), encoding="utf-8")
        written[1].write_text(self.manifest_json(), encoding="utf-8")
        if svg:
            written.append(render_svg(self, out_dir / SVG_FILE))
        logger.info(f"Plot bundle written to {out_dir}")
        return written


def build_plot_bundle(
    trajectory: Trajectory,
    half_length: float,
    resolutions: Sequence[Tuple[str, float, Optional[float]]],
    marked_budgets: Sequence[DecoherenceBudget],
    platform_durations: Dict[str, float],
    g: float = DEFAULT_FREE_FALL_ACCELERATION,
) -> PlotBundle:
    """
    Assemble the figure data.

    Args:
        trajectory: classical-scenario trajectory
        half_length: L, converts angles to displacements (dx = L dtheta)
        resolutions: (label, angle rad, displacement m or None) per detection line
        marked_budgets: equilibrium budgets, one per marked temperature
        platform_durations: platform name -> available free-evolution time (s)
        g: free-fall acceleration for the h(t) axis
    """
    t = trajectory.t
    curves = pd.DataFrame({
        "t_s": t,
        "deviation_rad": trajectory.deviation,
        "deviation_m": half_length * trajectory.deviation,
        "quantum_deviation_rad": quantum_baseline(trajectory),
        "fall_height_m": drop_distance(t, g),
    }, columns=CURVE_COLUMNS)

    markers = [
        {
            "label": f"{b.temperature_external:g} K",
            "temperature_K": b.temperature_external,
            "tau_D_s": None if b.tau_D_infinite else b.tau_D,
        }
        for b in sorted(marked_budgets, key=lambda b: -b.temperature_external)
    ]

    manifest = {
        "files": {"curves": CURVES_FILE},
        "axes": {
            "x": {"column": "t_s", "label": "t (s)", "scale": "log"},
            "x_top": {"column": "fall_height_m", "label": "h (m)", "g_m_per_s2": g},
            "y_left": {"column": "deviation_rad", "label": "|theta_t - theta_0| (rad)", "scale": "log"},
            "y_right": {"column": "deviation_m", "label": "dx (m)", "scale": "log",
                        "factor_from_left": half_length},
        },
        "curves": [
            {"name": "classical", "column": "deviation_rad"},
            {"name": "quantum", "column": "quantum_deviation_rad"},
        ],
        "resolution_lines": [
            {"label": label, "angle_rad": angle, "displacement_m": displacement}
            for label, angle, displacement in resolutions
        ],
        "decoherence_markers": markers,
        "platforms": [
            {"name": name, "duration_s": duration}
            for name, duration in sorted(platform_durations.items(), key=lambda item: item[1])
        ],
        "drop_tower_line_s": DROP_TOWER_LINE,
        "theta0_rad": trajectory.theta0,
        "tau_s": trajectory.tau,
    }
    return PlotBundle(curves=curves, manifest=manifest)


def render_svg(bundle: PlotBundle, path: Union[str, Path]) -> Path:
    """Draw the bundle with matplotlib (Agg) and save it as SVG."""
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    plt.rcParams["svg.hashsalt"] = "torsion-balance"
    curves = bundle.curves[(bundle.curves["t_s"] > 0) & (bundle.curves["deviation_rad"] > 0)]
    manifest = bundle.manifest

    fig, ax = plt.subplots(figsize=(7, 5))
    ax.loglog(curves["t_s"], curves["deviation_rad"], color="black", label="classical")
    for line in manifest["resolution_lines"]:
        ax.axhline(line["angle_rad"], color="purple", linestyle="-", linewidth=1, label=line["label"])
    for marker in manifest["decoherence_markers"]:
        if marker["tau_D_s"] is not None and math.isfinite(marker["tau_D_s"]):
            ax.axvline(marker["tau_D_s"], color="red", linewidth=1)
            ax.annotate(marker["label"], (marker["tau_D_s"], ax.get_ylim()[1]), color="red",
                        rotation=90, va="top", ha="right", fontsize=8)
    ax.axvline(manifest["drop_tower_line_s"], color="grey", linestyle="--", linewidth=1)

    ax.set_xlabel(manifest["axes"]["x"]["label"])
    ax.set_ylabel(manifest["axes"]["y_left"]["label"])
    factor = manifest["axes"]["y_right"]["factor_from_left"]
    right = ax.secondary_yaxis("right", functions=(lambda y: y * factor, lambda y: y / factor))
    right.set_ylabel(manifest["axes"]["y_right"]["label"])
    g = manifest["axes"]["x_top"]["g_m_per_s2"]
    top = ax.secondary_xaxis(
        "top", functions=(lambda t: 0.5 * g * t ** 2, lambda h: np.sqrt(2 * np.abs(h) / g))
    )
    top.set_xlabel(manifest["axes"]["x_top"]["label"])
    ax.legend(loc="lower right", fontsize=8)

    path = Path(path)
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)
    return path
