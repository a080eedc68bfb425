#!/usr/bin/env python3
"""Simulation-vs-theory comparison: for each grid point, the combined
bound, the exact probability, and the empirical rate over repeated
trials. Shows the bounds sitting below reality (conservative at small k,
tight at larger k).

Usage: python scripts/simulation_report.py [OUT.csv] [--trials N] [--seed S]
"""

import argparse
import sys

from qbounds.reports import (
    default_comparison_points,
    simulation_comparison,
    write_comparison_csv,
)


def main() -> None:
    parser = argparse.ArgumentParser()
    parser.add_argument("out", nargs="?", default=None)
    parser.add_argument("--trials", type=int, default=1000)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    points = default_comparison_points()
    records = simulation_comparison(points, trials=args.trials, seed=args.seed)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as handle:
            write_comparison_csv(records, handle)
        print(args.out)
    else:
        write_comparison_csv(records, sys.stdout)


if __name__ == "__main__":
    main()
