"""
torsion-balance - command-line interface of the quantum torsion balance simulator.

Commands:
    run          run one scenario and print or write its report
    sweep        run a scenario over the values of one parameter
    check-paper  recompute the published figures and flag mismatches
    plot-data    write the plot-data bundle for a scenario
    constants    print the physical constants table
    presets      list the shipped scenario presets

Exit codes: 0 ok, 2 configuration error, 3 physics-domain error,
4 numerical error.
"""

import functools
import json
import sys
from pathlib import Path
from typing import Any, List, Optional

import click
import pandas as pd

from .common import CONSTANTS, TorsionBalanceError, get_logger, set_log_level
from .config import SimulationSettings, validate_settings
from .scenario import (
    SWEEP_AXES,
    check_claims,
    claims_table,
    list_presets,
    resolve_config,
    run,
    sweep,
    sweep_table,
)

logger = get_logger(__name__)

FORMATS = click.Choice(["json", "csv"])


def _handle_errors(command):
    """Map simulator errors to their exit codes with a one-line stderr message."""
    @functools.wraps(command)
    def wrapper(*args, **kwargs):
        try:
            return command(*args, **kwargs)
        except TorsionBalanceError as e:
            click.echo(f"error: {e}", err=True)
            sys.exit(e.exit_code)
    return wrapper


def _parse_values(text: str) -> List[Any]:
    values: List[Any] = []
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        try:
            values.append(float(item))
        except ValueError:
            values.append(item)
    return values


def _csv(frame: pd.DataFrame) -> str:
    return frame.to_csv(index=False, float_format="%.10g")


@click.group()
@click.option("--log-level", default=None, help="Override LOG_LEVEL (DEBUG, INFO, WARNING, ...)")
@click.pass_context
def cli(ctx: click.Context, log_level: Optional[str]):
    """Quantum torsion balance simulator."""
    if log_level:
        set_log_level(log_level)
    settings = SimulationSettings()
    try:
        validate_settings(settings)
    except TorsionBalanceError as e:
        click.echo(f"error: {e}", err=True)
        sys.exit(e.exit_code)
    ctx.obj = settings


@cli.command("run")
@click.argument("config")
@click.option("--out", "out_dir", type=click.Path(file_okay=False), default=None,
              help="Directory for report, trajectory and plot bundle")
@click.option("--format", "fmt", type=FORMATS, default="json", help="Stdout format")
@click.option("--svg", is_flag=True, help="Also render the figure as SVG")
@click.pass_obj
@_handle_errors
def run_command(settings: SimulationSettings, config: str, out_dir: Optional[str], fmt: str, svg: bool):
    """Run CONFIG (a scenario file or preset name)."""
    scenario = resolve_config(config)
    report = run(scenario, settings)

    target = out_dir or scenario.output.directory
    if target:
        report.write(target, scenario.output.formats, svg=svg or scenario.output.svg)

    if fmt == "json":
        click.echo(report.to_json(), nl=False)
    else:
        click.echo(report.trajectory.to_csv(), nl=False)


@cli.command("sweep")
@click.argument("config")
@click.option("--axis", required=True, help=f"One of: {', '.join(SWEEP_AXES)}")
@click.option("--values", "values_text", required=True,
              help="Comma-separated values, SI numbers or quantities such as '4 K'")
@click.option("--workers", type=int, default=None, help="Thread-pool size")
@click.option("--format", "fmt", type=FORMATS, default="csv", help="Output format")
@click.option("--out", "out_file", type=click.Path(dir_okay=False), default=None,
              help="Write the table here instead of stdout")
@click.pass_obj
@_handle_errors
def sweep_command(settings: SimulationSettings, config: str, axis: str, values_text: str,
                  workers: Optional[int], fmt: str, out_file: Optional[str]):
    """Run CONFIG once per value of AXIS."""
    scenario = resolve_config(config)
    reports = sweep(scenario, axis, _parse_values(values_text), workers=workers, settings=settings)

    if fmt == "csv":
        text = _csv(sweep_table(axis, reports))
    else:
        text = json.dumps([r.summary for r in reports], sort_keys=True, indent=2) + "\n"

    if out_file:
        Path(out_file).write_text(text, encoding="utf-8")
        logger.info(f"Sweep table written to {out_file}")
    else:
        click.echo(text, nl=False)


@cli.command("check-paper")
@click.option("--config", "config", default=None, help="Scenario to check (default: paper_fig2)")
@click.option("--format", "fmt", type=FORMATS, default="csv", help="Output format")
@_handle_errors
def check_paper_command(config: Optional[str], fmt: str):
    """Print computed versus published values with pass/flag status."""
    rows = check_claims(resolve_config(config) if config else None)
    if fmt == "csv":
        click.echo(_csv(claims_table(rows)), nl=False)
    else:
        click.echo(json.dumps(rows, sort_keys=True, indent=2))


@cli.command("plot-data")
@click.argument("config")
@click.option("--out", "out_dir", type=click.Path(file_okay=False), default=None,
              help="Output directory (default: TORSION_OUTPUT_DIR)")
@click.option("--svg", is_flag=True, help="Also render the figure as SVG")
@click.pass_obj
@_handle_errors
def plot_data_command(settings: SimulationSettings, config: str, out_dir: Optional[str], svg: bool):
    """Write the curves table and plot manifest for CONFIG."""
    report = run(resolve_config(config), settings)
    for path in report.plot_bundle.write(out_dir or settings.output_dir, svg=svg):
        click.echo(str(path))


@cli.command("constants")
@click.option("--format", "fmt", type=FORMATS, default="csv", help="Output format")
def constants_command(fmt: str):
    """Print the physical constants used."""
    table = CONSTANTS.as_table()
    if fmt == "csv":
        click.echo(pd.DataFrame(table).to_csv(index=False), nl=False)
    else:
        click.echo(json.dumps(table, sort_keys=True, indent=2))


@cli.command("presets")
def presets_command():
    """List shipped scenario presets."""
    for name in list_presets():
        click.echo(name)


def main():
    cli(prog_name="torsion-balance")


if __name__ == "__main__":
    main()
