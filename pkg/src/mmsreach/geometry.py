"""H-polytopes, fixed-endpoint segment tests and exact L-infinity clearance."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .numeric import (
    LE,
    LT,
    LinearConstraint,
    dot,
    interval_emptiness_1d,
    lp_feasible,
    lp_optimize,
)

Point = tuple


def as_point(values) -> Point:
    return tuple(Fraction(v) for v in values)


@dataclass(frozen=True)
class Polytope:
    """``{x : a . x <= b for every (a, b) in rows}``.

    Obstacles are read as the closed set; workspaces and cells as its interior.
    """

    rows: tuple

    def __post_init__(self):
        rows = []
        dims = set()
        for a, b in self.rows:
            a = as_point(a)
            b = Fraction(b)
            dims.add(len(a))
            if not any(a):
                if b < 0:
                    raise ValueError("row with zero normal and negative offset is unsatisfiable")
                continue
            rows.append((a, b))
        if len(dims) > 1:
            raise ValueError(f"rows of mixed dimension {sorted(dims)}")
        object.__setattr__(self, "rows", tuple(rows))
        object.__setattr__(self, "_dim", dims.pop() if dims else None)

    @property
    def dimension(self) -> Optional[int]:
        return self._dim

    @classmethod
    def box(cls, lo: Sequence, hi: Sequence) -> "Polytope":
        n = len(lo)
        rows = []
        for i in range(n):
            e = [Fraction(0)] * n
            e[i] = Fraction(1)
            rows.append((tuple(e), Fraction(hi[i])))
            e = [Fraction(0)] * n
            e[i] = Fraction(-1)
            rows.append((tuple(e), -Fraction(lo[i])))
        return cls(tuple(rows))

    def constraints(self, strict: bool = False, offset: int = 0, nvars: Optional[int] = None):
        """Rows as LinearConstraints on variables ``offset .. offset+n`` of an ``nvars`` system."""
        n = self._dim or 0
        nvars = n + offset if nvars is None else nvars
        rel = LT if strict else LE
        out = []
        for a, b in self.rows:
            coeffs = [Fraction(0)] * nvars
            coeffs[offset : offset + n] = a
            out.append(LinearConstraint(tuple(coeffs), b, rel))
        return out

    def is_empty(self, strict: bool = False) -> bool:
        if not self.rows:
            return False
        return not lp_feasible(self.constraints(strict), self._dim).feasible

    def to_json(self) -> dict:
        return {
            "A": [[str(v) for v in a] for a, _ in self.rows],
            "b": [str(b) for _, b in self.rows],
        }


def contains(poly: Polytope, point: Sequence, strictly: bool = False) -> bool:
    point = as_point(point)
    if poly.dimension is not None and poly.dimension != len(point):
        raise ValueError("dimension mismatch")
    if strictly:
        return all(dot(a, point) < b for a, b in poly.rows)
    return all(dot(a, point) <= b for a, b in poly.rows)


@dataclass(frozen=True)
class Segment:
    """Points ``lam*p + (1-lam)*q`` for lam in [0, 1]."""

    p: Point
    q: Point

    def __post_init__(self):
        object.__setattr__(self, "p", as_point(self.p))
        object.__setattr__(self, "q", as_point(self.q))
        if len(self.p) != len(self.q):
            raise ValueError("segment endpoints differ in dimension")

    def at(self, lam) -> Point:
        lam = Fraction(lam)
        return tuple(lam * a + (1 - lam) * b for a, b in zip(self.p, self.q))


def segment_hit(seg: Segment, obstacle: Polytope) -> Optional[Fraction]:
    """A lam in [0,1] whose point lies in the closed obstacle, or None."""
    if obstacle.dimension is not None and obstacle.dimension != len(seg.p):
        raise ValueError("dimension mismatch")
    diff = tuple(a - b for a, b in zip(seg.p, seg.q))
    atoms = [(dot(a, diff), b - dot(a, seg.q), LE) for a, b in obstacle.rows]
    return interval_emptiness_1d(atoms, 0, 1)


def segment_intersects(seg: Segment, obstacle: Polytope) -> bool:
    return segment_hit(seg, obstacle) is not None


def _linf_distance_to_polytope(seg: Segment, poly: Polytope):
    # variables: lam, y_1..y_n, d
    n = len(seg.p)
    nv = n + 2
    cons = []
    for i in range(n):
        delta = seg.p[i] - seg.q[i]
        row = [Fraction(0)] * nv
        row[0] = delta
        row[1 + i] = Fraction(-1)
        row[-1] = Fraction(-1)
        cons.append(LinearConstraint(tuple(row), -seg.q[i], LE))
        row = [Fraction(0)] * nv
        row[0] = -delta
        row[1 + i] = Fraction(1)
        row[-1] = Fraction(-1)
        cons.append(LinearConstraint(tuple(row), seg.q[i], LE))
    one = [Fraction(0)] * nv
    one[0] = Fraction(1)
    cons.append(LinearConstraint(tuple(one), Fraction(1), LE))
    cons.extend(poly.constraints(offset=1, nvars=nv))
    objective = [Fraction(0)] * (nv - 1) + [Fraction(1)]
    out = lp_optimize(objective, cons, "min", nonneg=(0, nv - 1))
    if out.status != "bounded":
        return math.inf
    return out.value


def workspace_margin(point: Sequence, workspace: Polytope):
    """L-infinity distance from an interior point to the workspace boundary."""
    best = math.inf
    for a, b in workspace.rows:
        norm1 = sum(abs(v) for v in a)
        best = min(best, (b - dot(a, point)) / norm1)
    return best


def segment_clearance(seg: Segment, instance) -> Fraction:
    """Exact L-infinity clearance of a segment from all obstacles and the workspace boundary.

    Returns ``math.inf`` when there is nothing to collide with and 0 when the
    segment touches an obstacle.
    """
    best = math.inf
    for obs in instance.obstacles:
        best = min(best, _linf_distance_to_polytope(seg, obs))
        if best == 0:
            return Fraction(0)
    if instance.workspace is not None:
        for end in (seg.p, seg.q):
            best = min(best, workspace_margin(end, instance.workspace))
        if best <= 0:
            return Fraction(0)
    return best


def point_clearance(point: Sequence, instance) -> Fraction:
    """L-infinity clearance of a single point (a degenerate segment)."""
    return segment_clearance(Segment(point, point), instance)
