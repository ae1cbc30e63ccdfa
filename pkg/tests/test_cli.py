"""Test the torsion-balance command line."""

import json

import pytest
from click.testing import CliRunner

from src.app import cli


@pytest.fixture
def runner(mock_env_vars):
    return CliRunner()


def test_presets(runner):
    result = runner.invoke(cli, ["presets"])
    assert result.exit_code == 0
    assert "paper_fig2" in result.output.split()


def test_constants_csv(runner):
    result = runner.invoke(cli, ["constants"])
    assert result.exit_code == 0
    lines = result.output.splitlines()
    assert lines[0] == "symbol,value,unit,source"
    assert len(lines) == 8


def test_constants_json(runner):
    result = runner.invoke(cli, ["constants", "--format", "json"])
    table = json.loads(result.output)
    assert {row["symbol"] for row in table} >= {"G", "hbar", "kB"}


def test_run_prints_report(runner):
    result = runner.invoke(cli, ["run", "paper_fig2"])
    assert result.exit_code == 0, result.output
    report = json.loads(result.output)
    assert len(report["verdicts"]) == 5
    assert report["dynamics"]["samples"] == 64


def test_run_trajectory_csv(runner):
    result = runner.invoke(cli, ["run", "paper_fig2", "--format", "csv"])
    assert result.exit_code == 0
    lines = result.output.splitlines()
    assert lines[0] == "t_s,s_rescaled,theta_rad,deviation_rad"
    assert len(lines) == 65


def test_run_writes_outputs(runner, tmp_path):
    out = tmp_path / "out"
    result = runner.invoke(cli, ["run", "paper_fig2", "--out", str(out), "--svg"])
    assert result.exit_code == 0
    for name in ("report.json", "trajectory.csv", "curves.csv", "plot_manifest.json", "figure.svg"):
        assert (out / name).is_file(), name


def test_run_is_byte_identical(runner):
    first = runner.invoke(cli, ["run", "paper_fig2"]).output
    second = runner.invoke(cli, ["run", "paper_fig2"]).output
    assert first == second


def test_missing_scenario_exits_2(runner, tmp_path):
    result = runner.invoke(cli, ["run", str(tmp_path / "absent.yaml")])
    assert result.exit_code == 2
    assert "error:" in result.output


def test_unit_mismatch_exits_2(runner, write_scenario):
    path = write_scenario(
        "rod: {sphere_radius: 7.92 nm, half_length: 10 K, mass: 1e-20}\n"
        "environment: {number_density: 1e9, temperature_external: 300}\n"
        "plan: {gradient: 1e6, transfer_time: 2.5 us}\n"
        "platform: drop_tower\n"
    )
    result = runner.invoke(cli, ["run", str(path)])
    assert result.exit_code == 2
    assert "rod.half_length" in result.output


def test_unreachable_angle_exits_3(runner, write_scenario):
    path = write_scenario(
        "rod: {sphere_radius: 7.92 nm, half_length: 10 um, mass: 1e-20}\n"
        "environment: {number_density: 1e9, temperature_external: 300}\n"
        "plan: {gradient: 1e6, transfer_time: 1 ms}\n"
        "platform: drop_tower\n"
    )
    result = runner.invoke(cli, ["run", str(path)])
    assert result.exit_code == 3
    assert "error: protocol:" in result.output


def test_sweep_csv(runner):
    result = runner.invoke(cli, ["sweep", "paper_fig2", "--axis", "T_E", "--values", "300 K, 4 K"])
    assert result.exit_code == 0, result.output
    lines = result.output.splitlines()
    assert lines[0].startswith("T_E,theta0_rad,tau_s,tau_D_s")
    assert len(lines) == 3


def test_sweep_to_file(runner, tmp_path):
    out = tmp_path / "sweep.json"
    result = runner.invoke(cli, ["sweep", "paper_fig2", "--axis", "n_gas", "--values", "1e9,2e9",
                                 "--format", "json", "--out", str(out), "--workers", "1"])
    assert result.exit_code == 0
    summaries = json.loads(out.read_text(encoding="utf-8"))
    assert [s["parameters"]["environment"]["number_density"] for s in summaries] == [1e9, 2e9]


def test_sweep_unknown_axis_exits_2(runner):
    result = runner.invoke(cli, ["sweep", "paper_fig2", "--axis", "colour", "--values", "1"])
    assert result.exit_code == 2
    assert "sweepable axes" in result.output


def test_claims_command(runner):
    result = runner.invoke(cli, ["check-paper", "--format", "json"])
    assert result.exit_code == 0
    rows = json.loads(result.output)
    assert len(rows) == 8
    assert {row["status"] for row in rows} == {"pass", "flag"}


def test_plot_data(runner, tmp_path):
    result = runner.invoke(cli, ["plot-data", "paper_fig2", "--out", str(tmp_path)])
    assert result.exit_code == 0
    assert [line.rsplit("/", 1)[-1] for line in result.output.splitlines()] == [
        "curves.csv", "plot_manifest.json",
    ]


def test_plot_data_defaults_to_output_dir(runner, monkeypatch, tmp_path):
    monkeypatch.setenv("TORSION_OUTPUT_DIR", str(tmp_path / "bundle"))
    result = runner.invoke(cli, ["plot-data", "paper_fig2"])
    assert result.exit_code == 0
    assert (tmp_path / "bundle" / "plot_manifest.json").is_file()


def test_invalid_settings_exit_2(runner, monkeypatch):
    monkeypatch.setenv("TORSION_SWEEP_WORKERS", "0")
    result = runner.invoke(cli, ["presets"])
    assert result.exit_code == 2
    assert "TORSION_SWEEP_WORKERS" in result.output
