"""
Process-level settings for the torsion-balance simulator.

Scenario physics lives in scenario files (see ``src.scenario.config_loader``);
this module only covers how the process runs: log level, output location,
integrator defaults and sweep parallelism.
"""

import os
from pathlib import Path
from typing import Any, Dict, List

from .common.errors import ConfigError

try:
    from dotenv import load_dotenv
    # Load environment variables
    load_dotenv()
except ImportError:
    # dotenv is optional
    pass

# Project paths
PROJECT_ROOT = Path(__file__).parent.parent
REPORTS_DIR = PROJECT_ROOT / "reports"
PRESETS_DIR = Path(__file__).parent / "scenario" / "presets"

_LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


class SimulationSettings:
    """Simulator settings read from the environment."""

    def __init__(self):
        # Logging
        self.log_level = os.getenv("LOG_LEVEL", "INFO")

        # Output
        self.output_dir = Path(os.getenv("TORSION_OUTPUT_DIR", str(REPORTS_DIR)))

        # Numerics
        self.integrator_tolerance = float(os.getenv("TORSION_INTEGRATOR_TOLERANCE", "1e-10"))
        self.trajectory_samples = int(os.getenv("TORSION_TRAJECTORY_SAMPLES", "400"))

        # Sweeps
        self.sweep_workers = int(os.getenv("TORSION_SWEEP_WORKERS", "1"))

        # Paths
        self.paths = {
            "project_root": PROJECT_ROOT,
            "reports": REPORTS_DIR,
            "presets": PRESETS_DIR,
        }

    def get_numerics_config(self) -> Dict[str, Any]:
        """Get integrator defaults as dictionary."""
        return {
            "tolerance": self.integrator_tolerance,
            "samples": self.trajectory_samples,
        }


# Global settings instance
settings = SimulationSettings()


def validate_settings(current: SimulationSettings = None) -> bool:
    """Validate the settings, naming every offending variable."""
    current = current or SimulationSettings()
    problems: List[str] = []

    if current.log_level.upper() not in _LOG_LEVELS:
        problems.append(f"LOG_LEVEL={current.log_level!r}")
    if not 0 < current.integrator_tolerance < 1e-3:
        problems.append(f"TORSION_INTEGRATOR_TOLERANCE={current.integrator_tolerance!r}")
    if current.trajectory_samples < 2:
        problems.append(f"TORSION_TRAJECTORY_SAMPLES={current.trajectory_samples!r}")
    if current.sweep_workers < 1:
        problems.append(f"TORSION_SWEEP_WORKERS={current.sweep_workers!r}")

    if problems:
        raise ConfigError(f"Invalid environment settings: {problems}")

    return True
