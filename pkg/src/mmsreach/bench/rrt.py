"""RRT baseline with cone-respecting steering.

Nearest-neighbour search and steering run in floating point.  Every candidate
node is converted to an exact rational point, and every candidate edge is checked
exactly before it joins the tree.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np
from scipy.optimize import nnls

from ..geometry import Segment, contains, segment_intersects
from ..hop import reach_cone_times
from ..model import Instance, Plan
from ..planner import WaypointWitness, _bounding_box, assemble_plan

# rational times are snapped to this denominator before the exact checks
TIME_DENOMINATOR = 10**6


@dataclass(frozen=True)
class RrtParams:
    goal_bias: Fraction = Fraction(1, 20)
    step: Fraction = Fraction(1, 4)
    max_iters: int = 10000
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "goal_bias", Fraction(self.goal_bias))
        object.__setattr__(self, "step", Fraction(self.step))
        if not 0 <= self.goal_bias <= 1:
            raise ValueError("goal_bias must lie in [0, 1]")
        if self.step <= 0:
            raise ValueError("step must be positive")
        if self.max_iters < 0:
            raise ValueError("max_iters must be >= 0")


@dataclass
class RrtResult:
    path: Optional[list]  # exact waypoints from start to target, or None
    nodes: int
    iterations: int
    plan: Optional[Plan] = None


def _free(instance: Instance, p, q) -> bool:
    if instance.workspace is not None and not contains(instance.workspace, q, strictly=True):
        return False
    seg = Segment(p, q)
    return not any(segment_intersects(seg, o) for o in instance.obstacles)


def _steer(rates: np.ndarray, exact_rates, near, delta: np.ndarray):
    """Exact point reached from ``near`` by the cone combination closest to ``delta``."""
    times, _ = nnls(rates.T, delta)
    if not times.any():
        return None
    ts = [Fraction(float(t)).limit_denominator(TIME_DENOMINATOR) for t in times]
    new = tuple(
        near[d] + sum((t * r[d] for t, r in zip(ts, exact_rates) if t), Fraction(0)) for d in range(len(near))
    )
    return None if new == near else new


def rrt_search(instance: Instance, params: RrtParams = RrtParams()) -> RrtResult:
    if instance.workspace is None:
        raise ValueError("RRT needs a bounded workspace")
    lo, hi = _bounding_box(instance)
    lo_f = np.array([float(v) for v in lo])
    hi_f = np.array([float(v) for v in hi])
    rng = np.random.default_rng(params.seed)
    exact_rates = instance.mms.rates
    rates = np.array([[float(v) for v in r] for r in exact_rates])
    step = float(params.step)
    bias = float(params.goal_bias)
    target = instance.target
    target_f = np.array([float(v) for v in target])

    nodes = [instance.start]
    parent = [-1]
    pts = np.empty((max(params.max_iters, 0) + 1, instance.dimension))
    pts[0] = [float(v) for v in instance.start]

    def close_to_goal(i):
        """Try the exact closing hop from node i; True on success."""
        if np.linalg.norm(target_f - pts[i]) > step:
            return False
        if reach_cone_times(instance.mms, nodes[i], target) is None:
            return False
        return _free(instance, nodes[i], target)

    def path_to(i):
        out = [target]
        while i >= 0:
            out.append(nodes[i])
            i = parent[i]
        return out[::-1]

    if close_to_goal(0):
        return RrtResult(path_to(0), 1, 0)
    for it in range(1, params.max_iters + 1):
        # one uniform draw decides the bias, so the stream is identical for every goal_bias
        u = rng.random()
        sample = rng.uniform(lo_f, hi_f)
        if u < bias:
            sample = target_f
        count = len(nodes)
        i = int(np.argmin(np.sum((pts[:count] - sample) ** 2, axis=1)))
        delta = sample - pts[i]
        dist = float(np.linalg.norm(delta))
        if dist == 0:
            continue
        if dist > step:
            delta = delta * (step / dist)
        new = _steer(rates, exact_rates, nodes[i], delta)
        if new is None or not _free(instance, nodes[i], new):
            continue
        nodes.append(new)
        parent.append(i)
        pts[count] = [float(v) for v in new]
        if close_to_goal(count):
            return RrtResult(path_to(count), len(nodes), it)
    return RrtResult(None, len(nodes), params.max_iters)


def path_plan(instance: Instance, path) -> Plan:
    """Slice an RRT path into a schedule and verify it exactly."""
    times = []
    for p, q in zip(path, path[1:]):
        t = reach_cone_times(instance.mms, p, q)
        if t is None:
            raise ValueError("path edge leaves the reach cone")
        times.append(t)
    return assemble_plan(instance, WaypointWitness(tuple(path[1:-1]), tuple(times)))


def rrt_plan(instance: Instance, params: RrtParams = RrtParams()) -> Optional[list]:
    """Waypoint path from start to target, or None when the iteration cap is hit."""
    return rrt_search(instance, params).path


__all__ = ["RrtParams", "RrtResult", "rrt_search", "rrt_plan", "path_plan"]
