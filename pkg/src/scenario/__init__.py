"""
Scenario files, end-to-end runs, sweeps, plot data and published-claim checks.
"""

from .claims import check_claims, claims_table
from .config_loader import (
    DEFAULT_PLATFORM_DURATIONS,
    PLATFORMS,
    SWEEP_AXES,
    ScenarioConfig,
    config_from_mapping,
    dump_config,
    list_presets,
    load_config,
    load_preset,
    parse_config,
    resolve_config,
    with_override,
)
from .plot_data import PlotBundle, build_plot_bundle, drop_distance, render_svg
from .runner import RunReport, run, stage, sweep, sweep_table, verdict

__all__ = [
    "check_claims",
    "claims_table",
    "DEFAULT_PLATFORM_DURATIONS",
    "PLATFORMS",
    "SWEEP_AXES",
    "ScenarioConfig",
    "config_from_mapping",
    "dump_config",
    "list_presets",
    "load_config",
    "load_preset",
    "parse_config",
    "resolve_config",
    "with_override",
    "PlotBundle",
    "build_plot_bundle",
    "drop_distance",
    "render_svg",
    "RunReport",
    "run",
    "stage",
    "sweep",
    "sweep_table",
    "verdict",
]
