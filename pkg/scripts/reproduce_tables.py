"""Rerun the benchmark rows behind the reference witness lengths.

Usage: python scripts/reproduce_tables.py [--rrt] [--jobs N] [--csv out.csv]

Only witness lengths are meant to match; times depend on the machine.
"""

import argparse
import sys

from mmsreach.bench.harness import BenchConfig, run_benchmarks, table_cases
from mmsreach.bench.rrt import RrtParams

EXPECTED = {
    ("LShaped", 2, None): 2,
    ("LShaped", 3, None): 2,
    ("LShaped", 4, None): 2,
    ("Snake", 2, 3): 4,
    ("Snake", 2, 4): 5,
    ("Maze", 2, 2): 4,
    ("ModifiedL", 2, None): 3,
    ("UnreachableL", 2, None): None,
}


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--rrt", action="store_true", help="add the RRT baseline rows")
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--timeout", type=float, default=600.0, help="seconds per row")
    ap.add_argument("--csv")
    args = ap.parse_args(argv)

    methods = ("planner", "rrt") if args.rrt else ("planner",)
    config = BenchConfig(table_cases(), methods=methods, timeout=args.timeout, jobs=args.jobs, rrt=RrtParams())
    report = run_benchmarks(config)
    print(report.to_text())
    if args.csv:
        with open(args.csv, "w") as fh:
            fh.write(report.to_csv())

    mismatches = 0
    for row in report.sorted():
        if row.method != "planner":
            continue
        want = EXPECTED.get((row.family, row.dim, row.obstacles))
        got = row.witness_length
        match = got == want if row.dim == 2 or want is None else got is not None and got <= want
        mismatches += not match
        print(f"{row.label:14s} d{row.dim}  expected {want if want is not None else 'unreachable':>11}  got "
              f"{got if got is not None else row.outcome:>11}  {'ok' if match else 'MISMATCH'}")
    return 1 if mismatches else 0


if __name__ == "__main__":
    sys.exit(main())
