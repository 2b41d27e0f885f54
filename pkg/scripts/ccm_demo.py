"""Compile the worked two-counter machine and print its lemma report.

Usage: python scripts/ccm_demo.py [--steps N] [--literal]
"""

import argparse

from mmsreach.ccm import EXAMPLE_MACHINE, compile, parse_machine, simulate_induced


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--steps", type=int, default=100)
    ap.add_argument("--literal", action="store_true", help="drop the halt and branch guards")
    args = ap.parse_args(argv)
    machine = parse_machine(EXAMPLE_MACHINE)
    compiled = compile(machine, halt_guard=not args.literal, branch_guards=not args.literal)
    print(f"{len(compiled.variables)} variables, {len(compiled.mms.modes)} modes: {' '.join(compiled.mms.names)}")
    res = simulate_induced(compiled, max_mode_steps=args.steps)
    for line in res.report.lines():
        print(line)
    print(f"all deviations rejected: {res.report.all_rejected}; target reached: {res.reached_target}")


if __name__ == "__main__":
    main()
