"""Bounded motion planning: search for k intermediate waypoints, k = 0, 1, ..., B.

Each depth is posed as one nonlinear real-arithmetic query.  A backend answers
Sat (with waypoints and per-hop mode times), Unsat or Unknown.  Sat answers are
never trusted: the witness is re-checked exactly and the final schedule is
re-simulated and verified before a plan is reported.
"""

from __future__ import annotations

import logging
import os
import random
import shlex
import subprocess
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Sequence

from . import qe
from .geometry import contains
from .hop import HopError, hop_schedule, reach_cone_times, verify_run
from .model import Instance, Plan, simulate
from .numeric import lp_optimize

log = logging.getLogger(__name__)

SAT, UNSAT, UNKNOWN = "sat", "unsat", "unknown"
PLANNED, UNREACHABLE, EXHAUSTED = "planned", "unreachable", "exhausted"

DEFAULT_SMT_CMD = "z3 -in"
DEFAULT_TIMEOUT = 60.0
PLAIN_CHECK = "(check-sat)"
# z3's default nonlinear strategy can stall for a long time before falling back to
# its SMT core, which settles these queries quickly; nlsat stays as the backstop
Z3_CHECK = "(check-sat-using (or-else (then simplify smt) qfnra-nlsat))"
ROUNDING_CAPS = (10**2, 10**4, 10**6, 10**9, 10**12, 10**18)


@dataclass(frozen=True)
class WaypointWitness:
    waypoints: tuple  # intermediate x_1..x_k
    times: tuple  # per hop, one tuple of mode times


@dataclass(frozen=True)
class BackendVerdict:
    tag: str
    witness: Optional[WaypointWitness] = None
    reason: str = ""

    @classmethod
    def sat(cls, witness):
        return cls(SAT, witness)

    @classmethod
    def unsat(cls):
        return cls(UNSAT)

    @classmethod
    def unknown(cls, reason):
        return cls(UNKNOWN, reason=reason)


@dataclass
class PlanOutcome:
    tag: str
    plan: Optional[Plan] = None
    witness_length: Optional[int] = None
    bound: Optional[int] = None
    verdicts: list = field(default_factory=list)  # (k, BackendVerdict)


# ---------------------------------------------------------------------------
# witness checking


def full_waypoints(instance: Instance, intermediate: Sequence) -> list:
    return [instance.start, *[tuple(w) for w in intermediate], instance.target]


def check_hop(instance: Instance, p, q, formulas=None) -> Optional[tuple]:
    """Cone times for an obstacle-free hop, or None if the hop is not admissible."""
    if formulas is None:
        formulas = [qe.obstacle_free_formula(o, instance.dimension) for o in instance.obstacles]
    if not all(qe.evaluate(f, p, q) for f in formulas):
        return None
    return reach_cone_times(instance.mms, p, q)


def check_witness(instance: Instance, intermediate: Sequence, formulas=None) -> Optional[WaypointWitness]:
    """Exact check of a waypoint tuple; recomputes mode times from scratch."""
    if instance.workspace is not None:
        for w in intermediate:
            if not contains(instance.workspace, w, strictly=True):
                return None
    if formulas is None:
        formulas = [qe.obstacle_free_formula(o, instance.dimension) for o in instance.obstacles]
    pts = full_waypoints(instance, intermediate)
    times = []
    for p, q in zip(pts, pts[1:]):
        t = check_hop(instance, p, q, formulas)
        if t is None:
            return None
        times.append(t)
    return WaypointWitness(tuple(tuple(w) for w in intermediate), tuple(times))


# ---------------------------------------------------------------------------
# SMT encoding


def waypoint_symbol(i: int, d: int) -> str:
    return f"x_{i}_{d}"


def time_symbol(i: int, m: int) -> str:
    return f"t_{i}_{m}"


def encode_bmc(instance: Instance, k: int, region: Optional[Sequence] = None, check_sat: str = PLAIN_CHECK) -> str:
    """SMT-LIB script asking for k intermediate waypoints.

    ``region`` optionally lists open polytopes whose union must contain every
    intermediate waypoint.  It is meant for the cells of the start's connected
    component of the safety set, which every waypoint of a witness lies in, so
    it removes no solutions.
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    n = instance.dimension
    rates = instance.mms.rates
    nm = len(rates)
    lines = ["(set-logic QF_NRA)", "(set-option :produce-models true)"]
    xs = [[waypoint_symbol(i, d) for d in range(n)] for i in range(1, k + 1)]
    ts = [[time_symbol(i, m) for m in range(nm)] for i in range(k + 1)]
    for row in xs:
        for s in row:
            lines.append(f"(declare-fun {s} () Real)")
    for row in ts:
        for s in row:
            lines.append(f"(declare-fun {s} () Real)")
    for row in ts:
        for s in row:
            lines.append(f"(assert (>= {s} 0.0))")
    # endpoint coordinates: known Fractions for x_s / x_t, symbols otherwise
    points = [list(instance.start), *xs, list(instance.target)]

    def term(v):
        return v if isinstance(v, str) else qe.smt_number(v)

    lines.append("; hop equalities")
    for i in range(k + 1):
        for d in range(n):
            moves = [
                f"(* {qe.smt_number(r[d])} {ts[i][m]})" for m, r in enumerate(rates) if r[d] != 0
            ]
            rhs = "(+ " + " ".join([term(points[i][d])] + moves) + ")" if moves else term(points[i][d])
            lines.append(f"(assert (= {term(points[i + 1][d])} {rhs}))")
    lines.append("; obstacle avoidance")
    formulas = [qe.obstacle_free_formula(o, n) for o in instance.obstacles]
    for i in range(k + 1):
        for f in formulas:
            lines.append(f"(assert {qe.to_smtlib(f, points[i], points[i + 1])})")
    if instance.workspace is not None and k:
        lines.append("; workspace interior")
        for row in xs:
            for a, b in instance.workspace.rows:
                lhs = [f"(* {qe.smt_number(c)} {s})" for c, s in zip(a, row) if c]
                body = lhs[0] if len(lhs) == 1 else "(+ " + " ".join(lhs) + ")"
                lines.append(f"(assert (< {body} {qe.smt_number(b)}))")
    if region is not None and k:
        lines.append("; region hint")
        for row in xs:
            options = []
            for poly in region:
                atoms = []
                for a, b in poly.rows:
                    lhs = [f"(* {qe.smt_number(c)} {s})" for c, s in zip(a, row) if c]
                    body = lhs[0] if len(lhs) == 1 else "(+ " + " ".join(lhs) + ")"
                    atoms.append(f"(< {body} {qe.smt_number(b)})")
                options.append("(and " + " ".join(atoms) + ")" if len(atoms) > 1 else atoms[0])
            if not options:
                lines.append("(assert false)")
            else:
                lines.append("(assert (or " + " ".join(options) + "))" if len(options) > 1 else f"(assert {options[0]})")
    lines.append(check_sat)
    symbols = [s for row in xs for s in row] + [s for row in ts for s in row]
    if symbols:
        lines.append("(get-value (" + " ".join(symbols) + "))")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# talking to an external solver


def _tokenize(text: str):
    return text.replace("(", " ( ").replace(")", " ) ").split()


def parse_sexprs(text: str) -> list:
    tokens = _tokenize(text)
    pos = 0

    def read():
        nonlocal pos
        tok = tokens[pos]
        pos += 1
        if tok == "(":
            out = []
            while tokens[pos] != ")":
                out.append(read())
            pos += 1
            return out
        return tok

    out = []
    while pos < len(tokens):
        out.append(read())
    return out


class ModelValueError(ValueError):
    pass


def parse_value(expr) -> Fraction:
    """Exact value of a solver numeral; decimal approximations ending in '?' are read as-is."""
    if isinstance(expr, str):
        s = expr.rstrip("?")
        try:
            return Fraction(s)
        except ValueError:
            raise ModelValueError(f"cannot read numeral {expr!r}") from None
    if not expr:
        raise ModelValueError("empty value")
    head = expr[0]
    args = [parse_value(a) for a in expr[1:]] if head != "root-obj" else None
    if head == "-":
        return -args[0] if len(args) == 1 else args[0] - sum(args[1:])
    if head == "+":
        return sum(args, Fraction(0))
    if head == "*":
        out = Fraction(1)
        for a in args:
            out *= a
        return out
    if head == "/":
        return args[0] / args[1]
    raise ModelValueError(f"irrational or unsupported value {expr!r}")


def parse_model(text: str) -> dict:
    """Map symbol -> value from a ``(get-value ...)`` reply."""
    values = {}
    for item in parse_sexprs(text):
        if not isinstance(item, list):
            continue
        for pair in item:
            if isinstance(pair, list) and len(pair) == 2 and isinstance(pair[0], str):
                values[pair[0]] = pair[1]
    return values


@dataclass
class SmtBackend:
    """Any SMT-LIB v2 solver that reads a script on stdin, e.g. ``z3 -in``."""

    command: Optional[str] = None
    timeout: float = DEFAULT_TIMEOUT
    check_sat: Optional[str] = None  # None: pick by solver
    region: Optional[list] = None
    complete: bool = True
    name: str = "smt"

    def argv(self) -> list:
        cmd = self.command or os.environ.get("MMS_SMT_CMD") or DEFAULT_SMT_CMD
        return shlex.split(cmd)

    def check_command(self) -> str:
        if self.check_sat is not None:
            return self.check_sat
        prog = os.path.basename(self.argv()[0]) if self.argv() else ""
        return Z3_CHECK if prog.startswith("z3") else PLAIN_CHECK

    def __call__(self, instance: Instance, k: int) -> BackendVerdict:
        script = encode_bmc(instance, k, self.region, self.check_command())
        return run_backend(script, self, instance=instance, k=k)


def _invoke(script: str, backend: SmtBackend):
    try:
        proc = subprocess.run(
            backend.argv(),
            input=script,
            capture_output=True,
            text=True,
            timeout=backend.timeout,
        )
    except subprocess.TimeoutExpired:
        return None
    except OSError as exc:
        raise RuntimeError(f"cannot launch solver {backend.argv()!r}: {exc}") from exc
    return proc.stdout


def _decode(instance: Instance, k: int, raw: dict) -> Optional[WaypointWitness]:
    n = instance.dimension
    formulas = [qe.obstacle_free_formula(o, n) for o in instance.obstacles]
    try:
        exact = [[raw[waypoint_symbol(i, d)] for d in range(n)] for i in range(1, k + 1)]
    except KeyError:
        return None
    try:
        values = [[parse_value(v) for v in row] for row in exact]
    except ModelValueError:
        return None
    return check_witness(instance, values, formulas)


def run_backend(script: str, backend: SmtBackend, instance: Instance = None, k: int = None) -> BackendVerdict:
    """Run one script; on sat the model is rounded to rationals and re-verified exactly."""
    out = _invoke(script, backend)
    if out is None:
        return BackendVerdict.unknown("timeout")
    lines = out.strip().splitlines()
    if not lines:
        return BackendVerdict.unknown("no answer from solver")
    head = lines[0].strip()
    if head == UNSAT:
        return BackendVerdict.unsat()
    if head != SAT:
        return BackendVerdict.unknown(head if head == UNKNOWN else f"unexpected solver output: {head[:80]}")
    if instance is None or k is None:
        return BackendVerdict.sat(None)
    raw = parse_model("\n".join(lines[1:]))
    witness = _decode(instance, k, raw)
    if witness is None:
        # algebraic model values: ask again for decimal expansions and round them
        decimal_script = script.replace(
            "(set-option :produce-models true)",
            "(set-option :produce-models true)\n(set-option :pp.decimal true)\n"
            "(set-option :pp.decimal_precision 40)",
        )
        out = _invoke(decimal_script, backend)
        if out is not None and out.strip().startswith(SAT):
            raw = parse_model("\n".join(out.strip().splitlines()[1:]))
            witness = _round_and_check(instance, k, raw)
    if witness is None:
        return BackendVerdict.unknown("model rounding failed")
    return BackendVerdict.sat(witness)


def _round_and_check(instance: Instance, k: int, raw: dict) -> Optional[WaypointWitness]:
    n = instance.dimension
    formulas = [qe.obstacle_free_formula(o, n) for o in instance.obstacles]
    try:
        approx = [
            [parse_value(raw[waypoint_symbol(i, d)]) for d in range(n)] for i in range(1, k + 1)
        ]
    except (KeyError, ModelValueError):
        return None
    for cap in ROUNDING_CAPS:
        rounded = [[v.limit_denominator(cap) for v in row] for row in approx]
        found = check_witness(instance, rounded, formulas)
        if found is not None:
            return found
    return None


# ---------------------------------------------------------------------------
# sampling fallback


def _bounding_box(instance: Instance):
    n = instance.dimension
    cons = instance.workspace.constraints()
    lo, hi = [], []
    for d in range(n):
        e = [Fraction(0)] * n
        e[d] = Fraction(1)
        top = lp_optimize(e, cons, "max")
        bot = lp_optimize(e, cons, "min")
        if top.status != "bounded" or bot.status != "bounded":
            raise ValueError("sampling needs a bounded workspace")
        lo.append(bot.value)
        hi.append(top.value)
    return lo, hi


@dataclass
class SamplingBackend:
    """Incomplete backend: random rational waypoints, checked exactly.  Never answers Unsat."""

    budget: int = 20000
    seed: int = 0
    resolution: int = 10**4
    complete: bool = False
    name: str = "sampling"

    def __call__(self, instance: Instance, k: int) -> BackendVerdict:
        return sampling_backend(instance, k, self.budget, self.seed, self.resolution)


def sampling_backend(instance: Instance, k: int, budget: int, seed: int, resolution: int = 10**4) -> BackendVerdict:
    if instance.workspace is None:
        raise ValueError("sampling backend needs a workspace")
    if budget <= 0:
        return BackendVerdict.unknown("budget exhausted")
    formulas = [qe.obstacle_free_formula(o, instance.dimension) for o in instance.obstacles]
    if k == 0:
        found = check_witness(instance, [], formulas)
        return BackendVerdict.sat(found) if found else BackendVerdict.unknown("no direct hop found")
    lo, hi = _bounding_box(instance)
    rng = random.Random(seed)

    def sample():
        return tuple(l + (h - l) * Fraction(rng.randrange(1, resolution), resolution) for l, h in zip(lo, hi))

    for _ in range(budget):
        pts = [sample() for _ in range(k)]
        found = check_witness(instance, pts, formulas)
        if found is not None:
            return BackendVerdict.sat(found)
    return BackendVerdict.unknown("budget exhausted")


# ---------------------------------------------------------------------------
# the loop


def assemble_plan(instance: Instance, witness: WaypointWitness) -> Plan:
    """Expand a waypoint witness into a full schedule and verify it end to end."""
    pts = full_waypoints(instance, witness.waypoints)
    schedule, perhop = [], []
    for i, (p, q) in enumerate(zip(pts, pts[1:])):
        part = hop_schedule(instance.mms, p, q, instance, witness.times[i])
        perhop.append((i, (len(schedule), len(schedule) + len(part))))
        schedule.extend(part)
    run = simulate(instance.mms, instance.start, schedule)
    report = verify_run(instance, run)
    verified = report.ok and run.terminal == instance.target
    return Plan(pts, schedule, perhop, verified)


def plan(instance: Instance, bound: int, backend: Callable) -> PlanOutcome:
    """Try k = 0..bound intermediate waypoints and return the first verified plan."""
    if bound < 0:
        raise ValueError("bound must be >= 0")
    verdicts = []
    all_unsat = True
    for k in range(bound + 1):
        try:
            verdict = backend(instance, k)
        except RuntimeError as exc:
            verdict = BackendVerdict.unknown(str(exc))
        log.info("k=%d: %s %s", k, verdict.tag, verdict.reason)
        verdicts.append((k, verdict))
        if verdict.tag == SAT:
            try:
                result = assemble_plan(instance, verdict.witness)
            except HopError as exc:
                verdicts[-1] = (k, BackendVerdict.unknown(f"witness rejected: {exc}"))
                all_unsat = False
                continue
            if result.verified:
                return PlanOutcome(PLANNED, result, k + 1, bound, verdicts)
            verdicts[-1] = (k, BackendVerdict.unknown("assembled plan failed verification"))
            all_unsat = False
        elif verdict.tag != UNSAT:
            all_unsat = False
    complete = getattr(backend, "complete", False)
    if all_unsat and complete:
        return PlanOutcome(UNREACHABLE, bound=bound, verdicts=verdicts)
    return PlanOutcome(EXHAUSTED, bound=bound, verdicts=verdicts)
