"""Cone reachability and slicing a straight hop into a safe round-robin schedule."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .geometry import Polytope, Segment, as_point, contains, segment_clearance, segment_hit
from .model import Instance, Mms, Run, TimedAction, simulate
from .numeric import BOUNDED, LinearConstraint, ceil_fraction, dot, lp_optimize

# doubling l more often than this means something is badly wrong with the inputs
MAX_DOUBLINGS = 40


class HopError(ValueError):
    pass


def reach_cone_times(mms: Mms, p: Sequence, q: Sequence) -> Optional[tuple]:
    """Nonnegative mode times with ``p + sum_m t_m R(m) = q``, or None.

    Among all solutions the one of least total time is returned.
    """
    p, q = as_point(p), as_point(q)
    if len(p) != mms.dimension or len(q) != mms.dimension:
        raise ValueError("dimension mismatch")
    nm = len(mms.modes)
    if p == q:
        return (Fraction(0),) * nm
    rates = mms.rates
    cons = [
        LinearConstraint(tuple(r[i] for r in rates), q[i] - p[i], "=")
        for i in range(mms.dimension)
    ]
    out = lp_optimize([Fraction(1)] * nm, cons, "min", nonneg=range(nm))
    if out.status != BOUNDED:
        return None
    return tuple(out.witness)


def t_safe(mms: Mms, S: Polytope, x: Sequence):
    """Least over modes of the longest dwell from ``x`` that stays in the closure of S."""
    x = as_point(x)
    if not contains(S, x, strictly=True):
        raise HopError("t_safe needs a point strictly inside S")
    best = math.inf
    for rate in mms.rates:
        for a, b in S.rows:
            speed = dot(a, rate)
            if speed > 0:
                best = min(best, (b - dot(a, x)) / speed)
    return best


def _round_robin(mms: Mms, times: Sequence[Fraction], rounds: int) -> list:
    sched = []
    active = [(name, t) for (name, _), t in zip(mms.modes, times) if t > 0]
    for _ in range(rounds):
        for name, t in active:
            sched.append(TimedAction(name, t / rounds))
    return sched


def round_boundaries(mms: Mms, p: Sequence, schedule: Sequence[TimedAction], per_round: int) -> list:
    """States after each complete round of a round-robin schedule."""
    run = simulate(mms, p, schedule)
    return [run.states[k] for k in range(0, len(run.states), per_round)] if per_round else [run.states[0]]


def reach_convex(mms: Mms, p: Sequence, q: Sequence, S: Polytope) -> Optional[list]:
    """Schedule from p to q inside the open convex set S, or None if q is outside p's cone."""
    p, q = as_point(p), as_point(q)
    for label, pt in (("p", p), ("q", q)):
        if not contains(S, pt, strictly=True):
            raise HopError(f"{label} is not strictly inside S")
    times = reach_cone_times(mms, p, q)
    if times is None:
        return None
    total = sum(times)
    if total == 0:
        return []
    ts = min(t_safe(mms, S, p), t_safe(mms, S, q))
    # each round must last strictly less than t_safe
    rounds = 1 if ts == math.inf else math.floor(total / ts) + 1
    for _ in range(MAX_DOUBLINGS):
        sched = _round_robin(mms, times, rounds)
        run = simulate(mms, p, sched)
        if run.terminal == q and all(contains(S, s, strictly=True) for s in run.states):
            return sched
        rounds *= 2
    raise HopError("could not slice the hop inside S")


@dataclass
class VerificationReport:
    ok: bool
    violations: list = field(default_factory=list)  # (piece, obstacle index or "workspace", lam)


def verify_run(instance: Instance, run: Run) -> VerificationReport:
    """Exact safety check of every linear piece of a run.

    ``lam`` in a violation is measured from the start of the piece (0) to its end (1).
    """
    violations = []
    states = run.states
    pieces = [(states[i], states[i + 1]) for i in range(len(states) - 1)] or [(states[0], states[0])]
    for i, (start, end) in enumerate(pieces):
        seg = Segment(end, start)
        for k, obs in enumerate(instance.obstacles):
            lam = segment_hit(seg, obs)
            if lam is not None:
                violations.append((i, k, lam))
        if instance.workspace is not None:
            for lam, pt in ((Fraction(0), start), (Fraction(1), end)):
                if not contains(instance.workspace, pt, strictly=True):
                    violations.append((i, "workspace", lam))
    return VerificationReport(not violations, violations)


def hop_schedule(mms: Mms, p: Sequence, q: Sequence, instance: Instance, times: Sequence) -> list:
    """Slice the straight hop p -> q into rounds short enough to stay clear of every obstacle."""
    p, q = as_point(p), as_point(q)
    times = tuple(Fraction(t) for t in times)
    total = sum(times)
    if p == q or total == 0:
        if p != q:
            raise HopError("zero times cannot move p to q")
        return []
    eps = segment_clearance(Segment(p, q), instance)
    if eps == 0:
        raise HopError("no clearance")
    if eps == math.inf:
        rounds = 1
    else:
        rounds = ceil_fraction(total * mms.max_rate_norm() / eps) + 1
    for _ in range(MAX_DOUBLINGS):
        sched = _round_robin(mms, times, rounds)
        run = simulate(mms, p, sched)
        if run.terminal != q:
            raise HopError("times do not solve the cone system for this hop")
        if verify_run(instance, run).ok:
            return sched
        rounds *= 2
    raise HopError("hop could not be verified")


__all__ = [
    "HopError",
    "VerificationReport",
    "reach_cone_times",
    "t_safe",
    "reach_convex",
    "hop_schedule",
    "verify_run",
    "round_boundaries",
]
