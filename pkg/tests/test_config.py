"""Test configuration module."""

import pytest

from src.common import ConfigError
from src.config import PRESETS_DIR, SimulationSettings, settings, validate_settings


def test_settings_structure():
    """Test that settings has expected structure."""
    assert hasattr(settings, "log_level")
    assert hasattr(settings, "output_dir")
    assert hasattr(settings, "integrator_tolerance")
    assert hasattr(settings, "sweep_workers")
    assert hasattr(settings, "paths")


def test_settings_from_env(mock_env_vars):
    """Test settings read from the environment."""
    current = SimulationSettings()
    assert current.log_level == "WARNING"
    assert str(current.output_dir) == "/tmp/torsion-reports"
    assert current.integrator_tolerance == 1e-11
    assert current.sweep_workers == 2
    assert current.trajectory_samples == 64


def test_settings_defaults(monkeypatch):
    for key in ("TORSION_INTEGRATOR_TOLERANCE", "TORSION_SWEEP_WORKERS", "TORSION_TRAJECTORY_SAMPLES"):
        monkeypatch.delenv(key, raising=False)

    current = SimulationSettings()
    assert current.integrator_tolerance == 1e-10
    assert current.sweep_workers == 1
    assert current.get_numerics_config() == {"tolerance": 1e-10, "samples": 400}


def test_presets_dir_ships_reference_preset():
    assert (PRESETS_DIR / "paper_fig2.yaml").is_file()


def test_validate_settings_success(mock_env_vars):
    """Test settings validation with valid vars."""
    assert validate_settings() is True


def test_validate_settings_failure(monkeypatch):
    """Test settings validation names the offending variables."""
    monkeypatch.setenv("TORSION_SWEEP_WORKERS", "0")
    monkeypatch.setenv("LOG_LEVEL", "LOUD")

    with pytest.raises(ConfigError, match="TORSION_SWEEP_WORKERS") as excinfo:
        validate_settings()
    assert "LOG_LEVEL" in str(excinfo.value)
    assert excinfo.value.exit_code == 2
