"""Two-counter machines compiled into constant-rate multi-mode systems.

A machine run is simulated by a schedule that spends exactly one time unit in
each mode.  The safety set is a conjunction of guarded linear clauses; a clause
reads ``antecedent atoms (all strict) => consequent atoms``.  Checking a linear
piece against a clause reduces to 1-D interval emptiness in the elapsed time.

Two additions to the literal clause list are switchable on ``compile``:

``halt_guard``
    the sum clause on ``x_{i,halt}`` only applies once ``w_halt > 0``.  As
    literally stated it already fires while ``x_{i,halt}`` is being grown with
    ``w_halt = 0`` and so blocks every halting run.
``branch_guards``
    extra clauses (``phi_h``) tying each zero-test branch variable to the
    counter value.  Without them nothing rejects the wrong branch of a test.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence, Union

from .model import Mms, Run, TimedAction, simulate
from .numeric import interval_emptiness_1d

ONE = Fraction(1)
ZERO = Fraction(0)


class CcmError(ValueError):
    pass


class ReductionError(RuntimeError):
    """The nominal schedule left the safety set: the compiler is wrong."""


# ---------------------------------------------------------------------------
# machines


@dataclass(frozen=True)
class Inc:
    counter: int
    goto: int


@dataclass(frozen=True)
class Dec:
    counter: int
    goto: int


@dataclass(frozen=True)
class IfZero:
    counter: int
    pos: int  # taken when the counter is > 0
    zero: int


@dataclass(frozen=True)
class Halt:
    pass


Instruction = Union[Inc, Dec, IfZero, Halt]


@dataclass(frozen=True)
class CounterMachine:
    instructions: tuple

    def __post_init__(self):
        ins = tuple(self.instructions)
        object.__setattr__(self, "instructions", ins)
        if not ins:
            raise CcmError("empty machine")
        if not isinstance(ins[0], Inc):
            raise CcmError("instruction 0 must be an increment")
        halts = [i for i, x in enumerate(ins) if isinstance(x, Halt)]
        if len(halts) != 1:
            raise CcmError(f"need exactly one halt instruction, found {len(halts)}")
        for i, x in enumerate(ins):
            if isinstance(x, Halt):
                continue
            if x.counter not in (1, 2):
                raise CcmError(f"instruction {i}: counter must be c1 or c2")
            for target in successors(x):
                if not 0 <= target < len(ins):
                    raise CcmError(f"instruction {i}: goto {target} out of range")

    @property
    def halt(self) -> int:
        return next(i for i, x in enumerate(self.instructions) if isinstance(x, Halt))

    def __len__(self):
        return len(self.instructions)

    def __getitem__(self, i):
        return self.instructions[i]


def successors(ins: Instruction) -> tuple:
    if isinstance(ins, (Inc, Dec)):
        return (ins.goto,)
    if isinstance(ins, IfZero):
        return (ins.pos,) if ins.pos == ins.zero else (ins.pos, ins.zero)
    return ()


_LINE = [
    (re.compile(r"inc\s+c([12])\s+goto\s+(\d+)$"), lambda m: Inc(int(m[1]), int(m[2]))),
    (re.compile(r"dec\s+c([12])\s+goto\s+(\d+)$"), lambda m: Dec(int(m[1]), int(m[2]))),
    (re.compile(r"ifz\s+c([12])\s+pos\s+(\d+)\s+zero\s+(\d+)$"), lambda m: IfZero(int(m[1]), int(m[2]), int(m[3]))),
    (re.compile(r"halt$"), lambda m: Halt()),
]


def parse_machine(text: str) -> CounterMachine:
    """One instruction per line; ``#`` starts a comment."""
    out = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip().lower()
        if not line:
            continue
        for rx, build in _LINE:
            m = rx.match(line)
            if m:
                out.append(build(m))
                break
        else:
            raise CcmError(f"line {lineno}: cannot parse {raw.strip()!r}")
    return CounterMachine(tuple(out))


def format_machine(machine: CounterMachine) -> str:
    lines = []
    for x in machine.instructions:
        if isinstance(x, Inc):
            lines.append(f"inc c{x.counter} goto {x.goto}")
        elif isinstance(x, Dec):
            lines.append(f"dec c{x.counter} goto {x.goto}")
        elif isinstance(x, IfZero):
            lines.append(f"ifz c{x.counter} pos {x.pos} zero {x.zero}")
        else:
            lines.append("halt")
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class Config:
    label: int
    c1: int
    c2: int


@dataclass
class MachineRun:
    configs: list
    halted: bool
    clamped: list = field(default_factory=list)  # steps where a zero counter was decremented

    def __len__(self):
        return len(self.configs)

    def __iter__(self):
        return iter(self.configs)

    def __getitem__(self, i):
        return self.configs[i]


def step_machine(machine: CounterMachine, cfg: Config):
    """Next configuration and whether a zero counter was decremented."""
    ins = machine[cfg.label]
    counters = [cfg.c1, cfg.c2]
    clamped = False
    if isinstance(ins, Halt):
        return cfg, False
    k = ins.counter - 1
    if isinstance(ins, Inc):
        counters[k] += 1
        nxt = ins.goto
    elif isinstance(ins, Dec):
        if counters[k] == 0:
            clamped = True
        else:
            counters[k] -= 1
        nxt = ins.goto
    else:
        nxt = ins.pos if counters[k] > 0 else ins.zero
    return Config(nxt, counters[0], counters[1]), clamped


def simulate_machine(machine: CounterMachine, max_steps: int) -> MachineRun:
    cfg = Config(0, 0, 0)
    run = MachineRun([cfg], False)
    for step in range(max_steps):
        if isinstance(machine[cfg.label], Halt):
            break
        cfg, clamped = step_machine(machine, cfg)
        if clamped:
            run.clamped.append(step)
        run.configs.append(cfg)
    run.halted = isinstance(machine[cfg.label], Halt)
    return run


# ---------------------------------------------------------------------------
# linear atoms and guarded clauses


@dataclass(frozen=True)
class LinAtom:
    """``sum coeffs[v] * v  rel  bound`` over named variables."""

    coeffs: tuple  # ((var, coefficient), ...)
    rel: str
    bound: Fraction

    def value(self, point: dict) -> Fraction:
        return sum((c * point[v] for v, c in self.coeffs), ZERO)

    def holds(self, point: dict) -> bool:
        return _compare(self.value(point), self.rel, self.bound)

    def __str__(self):
        parts = []
        for v, c in self.coeffs:
            parts.append(v if c == 1 else f"-{v}" if c == -1 else f"{c}*{v}")
        return f"{' + '.join(parts)} {self.rel} {self.bound}"


def _compare(a, rel, b) -> bool:
    return {"<": a < b, "<=": a <= b, "=": a == b, ">=": a >= b, ">": a > b}[rel]


def var_atom(v: str, rel: str, bound=0) -> LinAtom:
    return LinAtom(((v, ONE),), rel, Fraction(bound))


_NEGATE = {"<": (">=",), "<=": (">",), ">": ("<=",), ">=": ("<",), "=": ("<", ">")}


@dataclass(frozen=True)
class Clause:
    name: str  # phi_a .. phi_h
    antecedent: tuple  # strict atoms, all must hold; empty = unconditional
    consequent: tuple

    def holds(self, point: dict) -> bool:
        if not all(a.holds(point) for a in self.antecedent):
            return True
        return all(a.holds(point) for a in self.consequent)

    def __str__(self):
        cons = " and ".join(str(a) for a in self.consequent)
        if not self.antecedent:
            return f"{self.name}: {cons}"
        ante = " and ".join(str(a) for a in self.antecedent)
        return f"{self.name}: {ante} => {cons}"


# ---------------------------------------------------------------------------
# compilation


def _pair(prefix: str, i, j) -> str:
    return f"{prefix}{i}{j}" if max(i, j) < 10 else f"{prefix}{i}_{j}"


@dataclass
class CompiledSystem:
    machine: CounterMachine
    variables: tuple
    mms: Mms
    clauses: tuple
    start: tuple
    target: tuple
    # bookkeeping used by the induced simulation
    instr_var: dict  # instruction index -> variable holding "current instruction" (w, z or w_halt)
    trans_var: dict  # (i, j) -> x_ij
    step_mode: dict  # instruction index -> mode name, or (pos_mode, zero_mode) for tests
    trans_mode: dict  # (i, j) -> M_ij
    halt_modes: tuple  # (M_halt, M_halt^c1, M_halt^c2)
    options: dict = field(default_factory=dict)

    @property
    def dimension(self) -> int:
        return len(self.variables)

    def point(self, vec: Sequence) -> dict:
        return dict(zip(self.variables, vec))

    def vector(self, values: dict) -> tuple:
        return tuple(Fraction(values.get(v, 0)) for v in self.variables)

    def to_json(self) -> dict:
        from .numeric import format_rational

        modes = {}
        for name, rate in self.mms.modes:
            modes[name] = {v: format_rational(r) for v, r in zip(self.variables, rate) if r}
        return {
            "variables": list(self.variables),
            "modes": modes,
            "start": {v: format_rational(x) for v, x in zip(self.variables, self.start) if x},
            "target": {v: format_rational(x) for v, x in zip(self.variables, self.target) if x},
            "clauses": [str(c) for c in self.clauses],
            "options": dict(self.options),
        }


def compile(machine: CounterMachine, halt_guard: bool = True, branch_guards: bool = True) -> CompiledSystem:
    n = len(machine)
    h = machine.halt
    ins = machine.instructions
    tests = [i for i, x in enumerate(ins) if isinstance(x, IfZero)]

    W, X, Z = [], [], []
    w_of, x_of, z_of = {}, {}, {}
    for i, x in enumerate(ins):
        if isinstance(x, (Inc, Dec)):
            w_of[i] = _pair("w", i, x.goto)
            W.append(w_of[i])
        elif isinstance(x, IfZero):
            z_of[i] = f"z{i}#"
            Z.append(z_of[i])
        for j in successors(x):
            x_of[(i, j)] = _pair("x", i, j)
            X.append(x_of[(i, j)])
    w_halt = "w_halt"
    variables = tuple(["s0", "c1", "c2"] + W + X + Z + [w_halt])
    idx = {v: k for k, v in enumerate(variables)}

    def instr_var(j):
        if j == h:
            return w_halt
        return z_of[j] if j in z_of else w_of[j]

    def rate(**changes):
        r = [ZERO] * len(variables)
        for v, c in changes.items():
            r[idx[v]] += Fraction(c)
        return tuple(r)

    def rate_of(pairs):
        r = [ZERO] * len(variables)
        for v, c in pairs:
            r[idx[v]] += Fraction(c)
        return tuple(r)

    modes = [("I", rate_of([("s0", -1), (instr_var(0), 1)]))]
    step_mode, trans_mode = {}, {}
    for i, x in enumerate(ins):
        if isinstance(x, Halt):
            continue
        if isinstance(x, IfZero):
            m1, m2 = f"M{i}^1", f"M{i}^2"
            modes.append((m1, rate_of([(z_of[i], -1), (x_of[(i, x.pos)], 1)])))
            modes.append((m2, rate_of([(z_of[i], -1), (x_of[(i, x.zero)], 1)])))
            step_mode[i] = (m1, m2)
        else:
            sign = 1 if isinstance(x, Inc) else -1
            name = f"M{i}"
            modes.append((name, rate_of([(w_of[i], -1), (x_of[(i, x.goto)], 1), (f"c{x.counter}", sign)])))
            step_mode[i] = name
        for j in successors(x):
            name = _pair("M", i, j)
            modes.append((name, rate_of([(x_of[(i, j)], -1), (instr_var(j), 1)])))
            trans_mode[(i, j)] = name
    halt_modes = (f"M{h}", f"M{h}^c1", f"M{h}^c2")
    modes.append((halt_modes[0], rate_of([(w_halt, -1)])))
    modes.append((halt_modes[1], rate_of([("c1", -1), (w_halt, 1)])))
    modes.append((halt_modes[2], rate_of([("c2", -1), (w_halt, 1)])))
    mms = Mms(len(variables), tuple(modes))

    clauses = _safety_clauses(machine, W, X, Z, x_of, halt_guard, branch_guards)
    start = rate(s0=1)
    target = rate(w_halt=1)
    return CompiledSystem(
        machine,
        variables,
        mms,
        tuple(clauses),
        start,
        target,
        {j: instr_var(j) for j in range(n)},
        x_of,
        step_mode,
        trans_mode,
        halt_modes,
        {"halt_guard": halt_guard, "branch_guards": branch_guards},
    )


def _safety_clauses(machine, W, X, Z, x_of, halt_guard, branch_guards) -> list:
    h = machine.halt
    out = []
    pos = lambda v: var_atom(v, ">")
    zero = lambda v: var_atom(v, "=")
    # phi_a: boxes
    for v in ["s0"] + W + X + Z:
        out.append(Clause("phi_a", (), (var_atom(v, ">="), var_atom(v, "<=", 1))))
    for v in ("w_halt", "c1", "c2"):
        out.append(Clause("phi_a", (), (var_atom(v, ">="),)))
    # phi_b: one x at a time
    for v in X:
        out.append(Clause("phi_b", (pos(v),), tuple(zero(u) for u in X if u != v)))
    # phi_c, phi_d: one of the w's and z's at a time
    for v in W:
        out.append(Clause("phi_c", (pos(v),), tuple(zero(u) for u in W + Z if u != v)))
    for v in Z:
        out.append(Clause("phi_d", (pos(v),), tuple(zero(u) for u in Z + W if u != v)))
    # phi_e
    if X:
        out.append(Clause("phi_e", (pos("s0"),), tuple(zero(u) for u in X)))
    # phi_f: once w_halt grows only the halt x's and the counters may be nonzero
    x_halt = [x_of[(i, j)] for (i, j) in x_of if j == h]
    rest = [v for v in ["s0"] + W + X + Z if v not in x_halt]
    if rest:
        out.append(Clause("phi_f", (pos("w_halt"),), tuple(zero(u) for u in rest)))
    # phi_g
    for v in x_halt:
        ante = (pos(v), pos("w_halt")) if halt_guard else (pos(v),)
        out.append(Clause("phi_g", ante, (LinAtom(((v, ONE), ("w_halt", ONE)), "=", ONE),)))
    # phi_h: a branch variable may only grow when the test agrees
    if branch_guards:
        for i, x in enumerate(machine.instructions):
            if isinstance(x, IfZero) and x.pos != x.zero:
                c = f"c{x.counter}"
                out.append(Clause("phi_h", (pos(x_of[(i, x.pos)]),), (var_atom(c, ">=", 1),)))
                out.append(Clause("phi_h", (pos(x_of[(i, x.zero)]),), (var_atom(c, "<=", 0),)))
    return out


# ---------------------------------------------------------------------------
# safety checks


def violated_clause(compiled: CompiledSystem, valuation: Sequence) -> Optional[Clause]:
    if len(valuation) != compiled.dimension:
        raise ValueError(f"valuation has {len(valuation)} entries, expected {compiled.dimension}")
    pt = compiled.point(tuple(Fraction(v) for v in valuation))
    for c in compiled.clauses:
        if not c.holds(pt):
            return c
    return None


def safety_holds(compiled: CompiledSystem, valuation: Sequence) -> bool:
    return violated_clause(compiled, valuation) is None


def _to_1d(atom: LinAtom, rel: str, x: dict, r: dict):
    """``atom`` along ``x + tau*r`` as numeric (slope, bound, rel) triples with rel in <=, <, =."""
    slope = sum((c * r[v] for v, c in atom.coeffs), ZERO)
    bound = atom.bound - atom.value(x)
    if rel in ("<", "<=", "="):
        return (slope, bound, rel)
    return (-slope, -bound, "<" if rel == ">" else "<=")


def segment_violation(compiled: CompiledSystem, start: Sequence, mode: str, duration) -> Optional[tuple]:
    """A (clause, tau) with the state at time tau in [0, duration] breaking the clause, or None.

    Clauses are tried in order; tau is a witness, not necessarily the first bad time.
    """
    duration = Fraction(duration)
    if duration < 0:
        raise ValueError("negative duration")
    x = compiled.point(tuple(Fraction(v) for v in start))
    r = compiled.point(compiled.mms.rate(mode))
    for c in compiled.clauses:
        ante = [_to_1d(a, a.rel, x, r) for a in c.antecedent]
        for atom in c.consequent:
            for neg in _NEGATE[atom.rel]:
                tau = interval_emptiness_1d(ante + [_to_1d(atom, neg, x, r)], 0, duration)
                if tau is not None:
                    return c, tau
    return None


def segment_safe(compiled: CompiledSystem, start: Sequence, mode: str, duration) -> bool:
    return segment_violation(compiled, start, mode, duration) is None


def _near_zero(slope, bound, rel) -> bool:
    """Does ``slope*tau rel bound`` hold for every small enough tau > 0?"""
    if bound != 0:
        return bound > 0 if rel != "=" else False
    if rel == "<=":
        return slope <= 0
    if rel == "<":
        return slope < 0
    return slope == 0


def immediate_violation(compiled: CompiledSystem, start: Sequence, mode: str) -> Optional[Clause]:
    """A clause broken by every positive dwell in ``mode`` from ``start``, or None.

    None means some short dwell is safe.
    """
    x = compiled.point(tuple(Fraction(v) for v in start))
    r = compiled.point(compiled.mms.rate(mode))
    for c in compiled.clauses:
        ante = [_to_1d(a, a.rel, x, r) for a in c.antecedent]
        if not all(_near_zero(*t) for t in ante):
            continue
        for atom in c.consequent:
            if any(_near_zero(*_to_1d(atom, neg, x, r)) for neg in _NEGATE[atom.rel]):
                return c
    return None


# ---------------------------------------------------------------------------
# the induced schedule


PERTURBATIONS = (Fraction(1, 2), Fraction(3, 2))


@dataclass
class StepCheck:
    step: int
    mode: str
    encodes: Optional[Config]  # configuration checked at this boundary, if any
    # duration t -> name of the clause rejecting it, None if it was accepted
    perturbations: dict = field(default_factory=dict)
    # wrong successor mode -> rejecting clause name, None if a short dwell was safe
    wrong_successors: dict = field(default_factory=dict)

    @property
    def unrejected(self) -> list:
        bad = [f"t={t}" for t, c in self.perturbations.items() if c is None]
        return bad + [m for m, c in self.wrong_successors.items() if c is None]


@dataclass
class LemmaReport:
    steps: list = field(default_factory=list)

    @property
    def all_rejected(self) -> bool:
        return not any(s.unrejected for s in self.steps)

    def unrejected(self) -> list:
        return [(s.step, s.mode, u) for s in self.steps for u in s.unrejected]

    def lines(self) -> list:
        out = []
        for s in self.steps:
            pert = ", ".join(f"t={t}:{c or 'ACCEPTED'}" for t, c in s.perturbations.items())
            wrong = [m for m, c in s.wrong_successors.items() if c is None]
            tag = "ok" if not s.unrejected else "NOT REJECTED " + ", ".join(s.unrejected)
            out.append(
                f"{s.step:4d} {s.mode:10s} {pert} wrong successors rejected "
                f"{len(s.wrong_successors) - len(wrong)}/{len(s.wrong_successors)} {tag}"
            )
        return out


@dataclass
class InducedResult:
    run: Run
    report: LemmaReport
    halted: bool
    reached_target: bool
    stuck: Optional[str] = None  # why the schedule stopped early


def _config_vector(compiled: CompiledSystem, cfg: Config) -> tuple:
    return compiled.vector({"c1": cfg.c1, "c2": cfg.c2, compiled.instr_var[cfg.label]: 1})


def _nominal_modes(compiled: CompiledSystem, machine: CounterMachine, max_mode_steps: int):
    """Mode sequence of the unique safe schedule, with the configuration each boundary encodes.

    Returns the executed steps, the mode that would follow the last one (or
    None), the final configuration and a reason if the schedule is stuck.
    """
    seq = [("I", Config(0, 0, 0))]
    cfg = Config(0, 0, 0)
    stuck = None
    # one step of lookahead past the horizon
    while len(seq) <= max_mode_steps:
        ins = machine[cfg.label]
        if isinstance(ins, Halt):
            break
        nxt, clamped = step_machine(machine, cfg)
        if clamped:
            stuck = f"instruction {cfg.label} decrements a zero counter"
            break
        if isinstance(ins, IfZero):
            m1, m2 = compiled.step_mode[cfg.label]
            k = ins.counter - 1
            mode = m1 if (cfg.c1, cfg.c2)[k] > 0 else m2
        else:
            mode = compiled.step_mode[cfg.label]
        seq.append((mode, None))
        seq.append((compiled.trans_mode[(cfg.label, nxt.label)], nxt))
        cfg = nxt
    if len(seq) > max_mode_steps:
        return seq[:max_mode_steps], seq[max_mode_steps][0], cfg, stuck
    if isinstance(machine[cfg.label], Halt):
        mh, mc1, mc2 = compiled.halt_modes
        for mc, count in ((mc1, cfg.c1), (mc2, cfg.c2)):
            for _ in range(count):
                seq.append((mc, None))
                seq.append((mh, None))
    return seq, None, cfg, stuck


def simulate_induced(
    compiled: CompiledSystem,
    machine: Optional[CounterMachine] = None,
    max_mode_steps: int = 100,
    check_lemmas: bool = True,
) -> InducedResult:
    """Run the unit-time schedule that mirrors the machine and check the lemmas along it.

    The halt phase (counters drained to 0, ``w_halt`` back to 1) is appended
    when the machine halts within the horizon and does not count against
    ``max_mode_steps``.
    """
    machine = machine or compiled.machine
    seq, lookahead, last_cfg, stuck = _nominal_modes(compiled, machine, max_mode_steps)
    halt_set = set(compiled.halt_modes)
    into_halt = {m for (i, j), m in compiled.trans_mode.items() if j == machine.halt}
    names = compiled.mms.names
    report = LemmaReport()
    state = compiled.start
    if not safety_holds(compiled, state):
        raise ReductionError("start point is unsafe")
    schedule = []
    for k, (mode, encodes) in enumerate(seq):
        bad = segment_violation(compiled, state, mode, ONE)
        if bad is not None:
            raise ReductionError(f"step {k} ({mode}): nominal piece violates {bad[0]} at tau={bad[1]}")
        after = simulate(compiled.mms, state, [TimedAction(mode, ONE)]).terminal
        if encodes is not None and after != _config_vector(compiled, encodes):
            raise ReductionError(f"step {k} ({mode}): state does not encode {encodes}")
        in_halt_phase = mode in halt_set
        if check_lemmas and not in_halt_phase:
            check = StepCheck(k, mode, encodes)
            for t in PERTURBATIONS:
                check.perturbations[t] = _perturbation(compiled, state, mode, t)
            nxt = seq[k + 1][0] if k + 1 < len(seq) else lookahead
            allowed = {mode, nxt}
            if mode in into_halt:
                # once w_halt = 1 the halt modes are all legitimate
                allowed |= halt_set
            for m in names:
                if m in allowed:
                    continue
                c = immediate_violation(compiled, after, m)
                check.wrong_successors[m] = c.name if c else None
            report.steps.append(check)
        schedule.append(TimedAction(mode, ONE))
        state = after
    run = simulate(compiled.mms, compiled.start, schedule)
    halted = stuck is None and lookahead is None and isinstance(machine[last_cfg.label], Halt)
    return InducedResult(run, report, halted, run.terminal == compiled.target, stuck)


def _perturbation(compiled: CompiledSystem, state, mode, t) -> Optional[str]:
    """Clause that rejects dwelling ``t`` in ``mode`` (then moving on), None if accepted."""
    bad = segment_violation(compiled, state, mode, t)
    if bad is not None:
        return bad[0].name
    if t >= 1:
        return None
    # a short dwell is only rejected if every way to continue is
    after = simulate(compiled.mms, state, [TimedAction(mode, t)]).terminal
    names = set()
    for m in compiled.mms.names:
        if m == mode:
            continue
        c = immediate_violation(compiled, after, m)
        if c is None:
            return None
        names.add(c.name)
    return "+".join(sorted(names))


# worked example: inc c1; dec c1; test c2; halt
EXAMPLE_MACHINE = """\
inc c1 goto 1
dec c1 goto 2
ifz c2 pos 3 zero 0
halt
"""

__all__ = [
    "CcmError",
    "ReductionError",
    "Inc",
    "Dec",
    "IfZero",
    "Halt",
    "CounterMachine",
    "Config",
    "MachineRun",
    "parse_machine",
    "format_machine",
    "simulate_machine",
    "LinAtom",
    "Clause",
    "CompiledSystem",
    "compile",
    "safety_holds",
    "violated_clause",
    "segment_safe",
    "segment_violation",
    "immediate_violation",
    "simulate_induced",
    "LemmaReport",
    "InducedResult",
    "EXAMPLE_MACHINE",
]
