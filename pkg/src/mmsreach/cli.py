"""Command line: plan, verify, cover, gen, bench, ccm and render.

Exit codes: 0 success (planned, verified, or unreachability proven), 1 no
answer or a failed check, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from fractions import Fraction
from pathlib import Path

from .model import InstanceError, load_instance, load_plan, save_plan, dump_instance, simulate
from .numeric import format_rational

log = logging.getLogger("mmsreach")

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _read_instance(path):
    if path is None:
        raise UsageError("--instance is required")
    try:
        return load_instance(Path(path).read_text())
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: invalid JSON ({exc})") from None


def _write(path, text: str):
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _write_json(path, doc):
    if path is not None:
        _write(path, json.dumps(doc, indent=2, sort_keys=True) + "\n")


# ---------------------------------------------------------------------------
# plan / verify


def _cover_or_none(inst):
    from .cellcover2d import CoverError, compute_cover

    if inst.dimension != 2 or inst.workspace is None:
        return None
    try:
        return compute_cover(inst)
    except CoverError as exc:
        log.warning("no cell cover: %s", exc)
        return None


def cmd_plan(args) -> int:
    from .planner import PLANNED, UNREACHABLE, SamplingBackend, SmtBackend, plan

    inst = _read_instance(args.instance)
    cover = _cover_or_none(inst)
    bound = args.max_bound
    if bound is None:
        if cover is None:
            raise UsageError("--max-bound is required unless the instance is planar with a bounded workspace")
        bound = cover.bound
        log.info("cell cover bound B = %d", bound)
    if bound < 0:
        raise UsageError("--max-bound must be >= 0")
    if args.backend == "sampling":
        backend = SamplingBackend(budget=args.budget, seed=args.seed)
    else:
        region = None
        if cover is not None:
            region = [c.polygon for c in cover.component_of(inst.start)]
        backend = SmtBackend(args.smt_cmd, args.timeout, region=region)
    out = plan(inst, bound, backend)
    doc = {"outcome": out.tag, "bound": bound}
    if out.tag == PLANNED:
        doc.update(save_plan(out.plan, witness_length=out.witness_length))
        print(f"planned: witness length {out.witness_length}, {len(out.plan.schedule)} actions")
        if args.svg:
            from .bench.svg import render_svg

            _write(args.svg, render_svg(inst, plan=out.plan))
    elif out.tag == UNREACHABLE:
        print(f"unreachable: no witness with up to {bound} intermediate waypoints")
    else:
        reasons = sorted({v.reason for _, v in out.verdicts if v.tag != "unsat"})
        print(f"exhausted: bound {bound} ({'; '.join(reasons) or 'no answer'})")
    doc["verdicts"] = [[k, v.tag, v.reason] for k, v in out.verdicts]
    _write_json(args.output, doc)
    return EXIT_OK if out.tag in (PLANNED, UNREACHABLE) else EXIT_FAIL


def cmd_verify(args) -> int:
    from .hop import verify_run

    inst = _read_instance(args.instance)
    if args.plan is None:
        raise UsageError("--plan is required")
    try:
        doc = json.loads(Path(args.plan).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read plan {args.plan}: {exc}") from None
    p = load_plan(doc)
    unknown = [a.mode for a in p.schedule if a.mode not in inst.mms.names]
    if unknown:
        raise UsageError(f"plan uses unknown modes: {', '.join(sorted(set(unknown)))}")
    run = simulate(inst.mms, inst.start, p.schedule)
    report = verify_run(inst, run)
    at_target = run.terminal == inst.target
    for piece, what, lam in report.violations:
        print(f"violation: piece {piece} meets {'obstacle ' + str(what) if what != 'workspace' else 'workspace boundary'} at lambda {format_rational(lam)}")
    if not at_target:
        print("terminal state " + str([format_rational(v) for v in run.terminal]) + " is not the target")
    ok = report.ok and at_target
    print("verified" if ok else "rejected")
    _write_json(
        args.output,
        {
            "ok": ok,
            "at_target": at_target,
            "violations": [[p_, str(w), format_rational(l)] for p_, w, l in report.violations],
        },
    )
    return EXIT_OK if ok else EXIT_FAIL


# ---------------------------------------------------------------------------
# cover / gen / render


def cmd_cover(args) -> int:
    from .cellcover2d import CoverError, channel_decide, compute_cover

    inst = _read_instance(args.instance)
    try:
        cover = compute_cover(inst)
    except CoverError as exc:
        raise UsageError(str(exc)) from None
    verdict = channel_decide(inst, cover)
    comps = cover.components()
    print(f"B = {cover.bound} cells, {len(comps)} component(s)")
    print("channel: " + ("reachable via " + " ".join(map(str, verdict.channel)) if verdict.reachable else "unreachable"))
    doc = {
        "bound": cover.bound,
        "cells": [{"id": c.id, "kind": c.kind, "polygon": c.polygon.to_json()} for c in cover.cells],
        "adjacency": {str(k): list(v) for k, v in sorted(cover.adjacency.items())},
        "components": comps,
        "reachable": verdict.reachable,
        "channel": list(verdict.channel) if verdict.channel else None,
        "waypoints": [[format_rational(v) for v in w] for w in verdict.waypoints] if verdict.waypoints else None,
    }
    _write_json(args.output, doc)
    if args.svg:
        from .bench.svg import render_svg

        _write(args.svg, render_svg(inst, path=verdict.waypoints, cells=[c.polygon for c in cover.cells]))
    return EXIT_OK


def cmd_gen(args) -> int:
    from .bench.arenas import ArenaError, ArenaParams, gen_arena

    if args.family is None:
        raise UsageError("--family is required")
    try:
        params = ArenaParams(dimension=args.dim, size=Fraction(args.size), obstacles=args.obstacles)
        inst = gen_arena(args.family, params)
    except (ArenaError, ValueError) as exc:
        raise UsageError(str(exc)) from None
    _write(args.output, dump_instance(inst) + "\n")
    return EXIT_OK


def cmd_render(args) -> int:
    from .bench.svg import render_svg

    inst = _read_instance(args.instance)
    p = None
    if args.plan:
        p = load_plan(json.loads(Path(args.plan).read_text()))
    try:
        svg = render_svg(inst, plan=p)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _write(args.svg or args.output, svg)
    return EXIT_OK


# ---------------------------------------------------------------------------
# bench


def cmd_bench(args) -> int:
    from .bench.arenas import FAMILIES
    from .bench.harness import BenchCase, BenchConfig, run_benchmarks, table_cases
    from .bench.rrt import RrtParams

    if args.family:
        if args.family not in FAMILIES:
            raise UsageError(f"unknown family {args.family!r}")
        cases = [BenchCase(args.family, args.dim, Fraction(args.size), args.obstacles)]
    else:
        cases = table_cases()
    methods = ("planner", "rrt") if args.method == "both" else (args.method,)
    config = BenchConfig(
        cases=cases,
        methods=methods,
        timeout=args.row_timeout,
        smt_cmd=args.smt_cmd,
        smt_timeout=args.timeout,
        max_bound=args.max_bound,
        rrt=RrtParams(seed=args.seed, max_iters=args.rrt_iters),
        jobs=args.jobs,
    )
    report = run_benchmarks(config)
    sys.stdout.write(report.to_text())
    if args.output:
        _write(args.output, report.to_csv())
    bad = [r for r in report.rows if r.outcome in ("Error",) or (r.outcome in ("planned", "Found") and not r.verified)]
    return EXIT_FAIL if bad else EXIT_OK


# ---------------------------------------------------------------------------
# ccm


def _read_machine(path):
    from .ccm import CcmError, parse_machine

    try:
        return parse_machine(Path(path).read_text())
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    except CcmError as exc:
        raise UsageError(f"{path}: {exc}") from None


def cmd_ccm(args) -> int:
    from .ccm import ReductionError, compile as ccm_compile, simulate_induced, simulate_machine

    machine = _read_machine(args.machine)
    compiled = ccm_compile(machine, halt_guard=not args.literal, branch_guards=not args.literal)
    if args.ccm_command == "compile":
        _write(args.output or "-", json.dumps(compiled.to_json(), indent=2) + "\n")
        return EXIT_OK
    mrun = simulate_machine(machine, args.steps)
    try:
        res = simulate_induced(compiled, machine, args.steps)
    except ReductionError as exc:
        print(f"nominal schedule broke: {exc}")
        return EXIT_FAIL
    print("machine: " + " ".join(f"(l{c.label},{c.c1},{c.c2})" for c in mrun.configs[:20]) + (" ..." if len(mrun) > 20 else ""))
    if mrun.clamped:
        print(f"machine decremented a zero counter at step(s) {mrun.clamped} (clamped)")
    print("modes: " + " ".join(a.mode for a in res.run.actions))
    for line in res.report.lines():
        print(line)
    if res.stuck:
        print(f"schedule stopped: {res.stuck}")
    print(f"halted: {res.halted}; target reached: {res.reached_target}; all deviations rejected: {res.report.all_rejected}")
    _write_json(
        args.output,
        {
            "modes": [a.mode for a in res.run.actions],
            "halted": res.halted,
            "reached_target": res.reached_target,
            "all_rejected": res.report.all_rejected,
            "unrejected": [list(map(str, u)) for u in res.report.unrejected()],
        },
    )
    return EXIT_OK if res.report.all_rejected and res.stuck is None else EXIT_FAIL


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="mmsreach", description="Reach-avoid planning for constant-rate multi-mode systems.")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, instance=True):
        if instance:
            p.add_argument("--instance")
        p.add_argument("--output")

    p = sub.add_parser("plan", help="find a verified schedule or prove unreachability")
    common(p)
    p.add_argument("--max-bound", type=int)
    p.add_argument("--backend", choices=("smt", "sampling"), default="smt")
    p.add_argument("--smt-cmd", help="solver command reading SMT-LIB on stdin (default: $MMS_SMT_CMD or 'z3 -in')")
    p.add_argument("--timeout", type=float, default=60.0, help="seconds per solver call")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=int, default=20000)
    p.add_argument("--svg")
    p.set_defaults(func=cmd_plan)

    p = sub.add_parser("verify", help="check a plan exactly")
    common(p)
    p.add_argument("--plan")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("cover", help="planar cell cover, its bound and the channel verdict")
    common(p)
    p.add_argument("--svg")
    p.set_defaults(func=cmd_cover)

    p = sub.add_parser("gen", help="generate a benchmark arena")
    common(p, instance=False)
    p.add_argument("--family")
    p.add_argument("--dim", type=int, default=2)
    p.add_argument("--size", default="4")
    p.add_argument("--obstacles", type=int)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("bench", help="planner vs RRT table")
    common(p, instance=False)
    p.add_argument("--family")
    p.add_argument("--dim", type=int, default=2)
    p.add_argument("--size", default="4")
    p.add_argument("--obstacles", type=int)
    p.add_argument("--method", choices=("planner", "rrt", "both"), default="both")
    p.add_argument("--max-bound", type=int)
    p.add_argument("--smt-cmd")
    p.add_argument("--timeout", type=float, default=60.0, help="seconds per solver call")
    p.add_argument("--row-timeout", type=float, default=600.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--rrt-iters", type=int, default=10000)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("render", help="draw a planar instance and plan as SVG")
    common(p)
    p.add_argument("--plan")
    p.add_argument("--svg")
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("ccm", help="two-counter machine reduction")
    csub = p.add_subparsers(dest="ccm_command", required=True)
    for name in ("compile", "run"):
        q = csub.add_parser(name)
        q.add_argument("machine")
        q.add_argument("--output")
        q.add_argument("--literal", action="store_true", help="omit the halt and branch guards")
        if name == "run":
            q.add_argument("--steps", type=int, default=100)
    p.set_defaults(func=cmd_ccm)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InstanceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
