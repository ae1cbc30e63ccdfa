"""
Quantum torsion balance simulator.

Models a two-sphere diamond nanorod prepared in an angular superposition:
the gradient-transfer protocol that sets the initial angle, the
classical-gravity evolution of that angle, the environmental decoherence
budget, and the detectability of the motion on table-top, drop-tower,
sounding-rocket and space platforms.

## Packages
- common: constants, units, errors, logging
- system_model: nanorod and residual-gas environment
- protocol: branch separation, superposition angle, timeline checks
- dynamics: rescaled equation of motion, integration, threshold crossing
- decoherence: per-channel rates and decoherence time
- scenario: scenario files, runs, sweeps, plot data
"""

__version__ = "1.0.0"

from .common import CONSTANTS, PhysicalConstants, TorsionBalanceError, get_logger
from .scenario import ScenarioConfig, load_config, load_preset, run, sweep

__all__ = [
    "CONSTANTS",
    "PhysicalConstants",
    "TorsionBalanceError",
    "get_logger",
    "ScenarioConfig",
    "load_config",
    "load_preset",
    "run",
    "sweep",
    "__version__",
]
