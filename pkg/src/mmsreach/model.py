"""Multi-mode systems, schedules, runs and the instance / plan file formats."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .geometry import Polytope, as_point, contains
from .numeric import format_rational, parse_rational


class InstanceError(ValueError):
    """Raised for malformed instance or plan documents; message is ``path: reason``."""


@dataclass(frozen=True)
class Mms:
    dimension: int
    modes: tuple  # ((name, rate), ...)

    def __post_init__(self):
        modes = tuple((str(name), as_point(rate)) for name, rate in self.modes)
        if not modes:
            raise ValueError("an MMS needs at least one mode")
        names = [m for m, _ in modes]
        if len(set(names)) != len(names):
            raise ValueError("mode names must be unique")
        for name, rate in modes:
            if len(rate) != self.dimension:
                raise ValueError(f"mode {name}: rate has length {len(rate)}, expected {self.dimension}")
        object.__setattr__(self, "modes", modes)
        object.__setattr__(self, "_index", {m: i for i, m in enumerate(names)})

    @property
    def names(self) -> list:
        return [m for m, _ in self.modes]

    @property
    def rates(self) -> list:
        return [r for _, r in self.modes]

    def rate(self, name: str) -> tuple:
        try:
            return self.modes[self._index[name]][1]
        except KeyError:
            raise KeyError(f"unknown mode {name!r}") from None

    def index(self, name: str) -> int:
        return self._index[name]

    def max_rate_norm(self) -> Fraction:
        """Largest L-infinity norm over all rate vectors."""
        return max((max((abs(v) for v in r), default=Fraction(0)) for r in self.rates), default=Fraction(0))


@dataclass(frozen=True)
class TimedAction:
    mode: str
    duration: Fraction

    def __post_init__(self):
        object.__setattr__(self, "duration", Fraction(self.duration))
        if self.duration < 0:
            raise ValueError(f"negative duration {self.duration} for mode {self.mode}")


Schedule = tuple  # of TimedAction


@dataclass(frozen=True)
class Run:
    states: tuple
    actions: tuple

    @property
    def terminal(self) -> tuple:
        return self.states[-1]


def simulate(mms: Mms, start: Sequence, schedule: Sequence[TimedAction]) -> Run:
    x = as_point(start)
    if len(x) != mms.dimension:
        raise ValueError("start point has the wrong dimension")
    states = [x]
    for act in schedule:
        if act.duration < 0:
            raise ValueError("negative duration")
        r = mms.rate(act.mode)
        t = act.duration
        x = tuple(a + t * b for a, b in zip(x, r))
        states.append(x)
    return Run(tuple(states), tuple(schedule))


def terminal_state(mms: Mms, start: Sequence, schedule: Sequence[TimedAction]) -> tuple:
    return simulate(mms, start, schedule).terminal


@dataclass(frozen=True)
class Instance:
    mms: Mms
    obstacles: tuple
    start: tuple
    target: tuple
    workspace: Optional[Polytope] = None
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "start", as_point(self.start))
        object.__setattr__(self, "target", as_point(self.target))
        object.__setattr__(self, "obstacles", tuple(self.obstacles))

    @property
    def dimension(self) -> int:
        return self.mms.dimension

    def is_safe(self, point: Sequence) -> bool:
        """Membership in the open safety set: inside the workspace interior, outside every obstacle."""
        if self.workspace is not None and not contains(self.workspace, point, strictly=True):
            return False
        return not any(contains(o, point) for o in self.obstacles)

    def validate(self) -> "Instance":
        n = self.dimension
        for label, pt in (("start", self.start), ("target", self.target)):
            if len(pt) != n:
                raise InstanceError(f"{label}: expected {n} coordinates, got {len(pt)}")
        for k, o in enumerate(self.obstacles):
            if o.dimension not in (None, n):
                raise InstanceError(f"obstacles[{k}]: dimension {o.dimension}, expected {n}")
        if self.workspace is not None and self.workspace.dimension not in (None, n):
            raise InstanceError(f"workspace: dimension {self.workspace.dimension}, expected {n}")
        for label, pt in (("start", self.start), ("target", self.target)):
            if not self.is_safe(pt):
                raise InstanceError(f"{label}: {label} not in safety set")
        return self


@dataclass
class Plan:
    waypoints: list
    schedule: list
    perhop: list = field(default_factory=list)  # (waypoint index, (first action, end action))
    verified: bool = False


# ---------------------------------------------------------------------------
# JSON documents


def _rat(value, path: str) -> Fraction:
    try:
        return parse_rational(value)
    except ValueError as exc:
        raise InstanceError(f"{path}: {exc}") from None


def _vec(values, path: str, n: Optional[int] = None) -> tuple:
    if not isinstance(values, list):
        raise InstanceError(f"{path}: expected a list")
    if n is not None and len(values) != n:
        raise InstanceError(f"{path}: expected {n} entries, got {len(values)}")
    return tuple(_rat(v, f"{path}[{i}]") for i, v in enumerate(values))


def _polytope(doc, path: str, n: int) -> Polytope:
    if not isinstance(doc, dict) or "A" not in doc or "b" not in doc:
        raise InstanceError(f"{path}: expected an object with 'A' and 'b'")
    A = doc["A"]
    b = doc["b"]
    if not isinstance(A, list) or not isinstance(b, list) or len(A) != len(b):
        raise InstanceError(f"{path}: 'A' and 'b' must be lists of equal length")
    rows = []
    for i, (row, off) in enumerate(zip(A, b)):
        a = _vec(row, f"{path}.A[{i}]", n)
        rows.append((a, _rat(off, f"{path}.b[{i}]")))
    try:
        return Polytope(tuple(rows))
    except ValueError as exc:
        raise InstanceError(f"{path}: {exc}") from None


def load_instance(document) -> Instance:
    """Build and validate an Instance from a JSON document (dict, str or path-like text)."""
    doc = json.loads(document) if isinstance(document, (str, bytes)) else document
    if not isinstance(doc, dict):
        raise InstanceError("$: expected an object")
    for key in ("dimension", "modes", "start", "target"):
        if key not in doc:
            raise InstanceError(f"$.{key}: missing")
    n = doc["dimension"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise InstanceError("$.dimension: must be a positive integer")
    modes_doc = doc["modes"]
    if not isinstance(modes_doc, dict) or not modes_doc:
        raise InstanceError("$.modes: expected a non-empty object")
    modes = tuple((name, _vec(rate, f"$.modes.{name}", n)) for name, rate in modes_doc.items())
    obstacles = tuple(
        _polytope(o, f"$.obstacles[{k}]", n) for k, o in enumerate(doc.get("obstacles", []))
    )
    workspace = None
    if doc.get("workspace") is not None:
        workspace = _polytope(doc["workspace"], "$.workspace", n)
    inst = Instance(
        mms=Mms(n, modes),
        obstacles=obstacles,
        start=_vec(doc["start"], "$.start", n),
        target=_vec(doc["target"], "$.target", n),
        workspace=workspace,
        name=str(doc.get("name", "")),
    )
    return inst.validate()


def instance_to_doc(inst: Instance) -> dict:
    doc = {
        "dimension": inst.dimension,
        "modes": {name: [format_rational(v) for v in rate] for name, rate in inst.mms.modes},
        "obstacles": [o.to_json() for o in inst.obstacles],
        "start": [format_rational(v) for v in inst.start],
        "target": [format_rational(v) for v in inst.target],
    }
    if inst.workspace is not None:
        doc["workspace"] = inst.workspace.to_json()
    if inst.name:
        doc["name"] = inst.name
    return doc


def dump_instance(inst: Instance) -> str:
    return json.dumps(instance_to_doc(inst), indent=2, sort_keys=True)


def save_plan(plan: Plan, **extra) -> dict:
    doc = {
        "waypoints": [[format_rational(v) for v in w] for w in plan.waypoints],
        "schedule": [[a.mode, format_rational(a.duration)] for a in plan.schedule],
        "verified": bool(plan.verified),
    }
    doc.update(extra)
    return doc


def load_plan(document) -> Plan:
    doc = json.loads(document) if isinstance(document, (str, bytes)) else document
    if not isinstance(doc, dict):
        raise InstanceError("$: expected an object")
    waypoints = [_vec(w, f"$.waypoints[{i}]") for i, w in enumerate(doc.get("waypoints", []))]
    schedule = []
    for i, item in enumerate(doc.get("schedule", [])):
        if not isinstance(item, list) or len(item) != 2:
            raise InstanceError(f"$.schedule[{i}]: expected [mode, duration]")
        dur = _rat(item[1], f"$.schedule[{i}][1]")
        if dur < 0:
            raise InstanceError(f"$.schedule[{i}][1]: negative duration")
        schedule.append(TimedAction(str(item[0]), dur))
    return Plan(waypoints, schedule, verified=bool(doc.get("verified", False)))
