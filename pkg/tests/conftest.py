"""Test configuration."""

import pytest

from src.protocol import ProtocolPlan
from src.scenario import load_preset
from src.system_model import Environment, Nanorod


@pytest.fixture
def mock_env_vars(monkeypatch):
    """Mock environment variables for testing."""
    test_vars = {
        "LOG_LEVEL": "WARNING",
        "TORSION_OUTPUT_DIR": "/tmp/torsion-reports",
        "TORSION_INTEGRATOR_TOLERANCE": "1e-11",
        "TORSION_SWEEP_WORKERS": "2",
        "TORSION_TRAJECTORY_SAMPLES": "64",
    }

    for key, value in test_vars.items():
        monkeypatch.setenv(key, value)

    return test_vars


@pytest.fixture
def reference_rod():
    """Diamond nanorod: r = 7.92 nm, L = 10 um, m = 1e-20 kg."""
    return Nanorod(sphere_radius=7.92e-9, half_length=10e-6, mass=1e-20,
                   dielectric=complex(5.7, 2.85e-4))


@pytest.fixture
def reference_env():
    """N2/O2 residual gas at 1e9 m^-3 and 300 K, T_E = T_I."""
    return Environment.air(number_density=1e9, temperature_external=300.0)


@pytest.fixture
def reference_plan():
    """1e6 T/m gradient for 2.5 us with T2 = 100 us."""
    return ProtocolPlan(gradient=1e6, transfer_time=2.5e-6, spin_coherence=100e-6)


@pytest.fixture
def preset_config():
    return load_preset("paper_fig2")


@pytest.fixture
def write_scenario(tmp_path):
    """Write YAML text to a scenario file and return its path."""
    def write(text, name="scenario.yaml"):
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return path
    return write
