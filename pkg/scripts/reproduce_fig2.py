#!/usr/bin/env python3
"""Write the angular-distance figure bundle for the shipped drop-tower preset."""

import argparse
import logging
from pathlib import Path

from src.scenario import check_claims, claims_table, load_preset, run

logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)


def reproduce(out_dir: Path, preset: str = "paper_fig2", svg: bool = True) -> None:
    """Run the preset and write report, trajectory, plot bundle and claims table."""
    try:
        report = run(load_preset(preset))
        report.write(out_dir, svg=svg)

        claims = claims_table(check_claims())
        claims_path = out_dir / "claims.csv"
        claims.to_csv(claims_path, index=False)

        flagged = int((claims["status"] == "flag").sum())
        logger.info(f"Figure bundle in {out_dir}; {flagged} of {len(claims)} published values flagged")

    except Exception as e:
        logger.error(f"Error reproducing figure: {e}")
        raise


def main():
    """Main function."""
    parser = argparse.ArgumentParser(description="Reproduce the angular-distance figure data")
    parser.add_argument("--out", default="reports/fig2", help="Output directory")
    parser.add_argument("--preset", default="paper_fig2", help="Preset scenario name")
    parser.add_argument("--no-svg", action="store_true", help="Skip the SVG rendering")

    args = parser.parse_args()
    reproduce(Path(args.out), args.preset, svg=not args.no_svg)


if __name__ == "__main__":
    main()
