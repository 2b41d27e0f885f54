"""Planar vertical decomposition, open cell covers and the channel decision procedure.

Only dimension 2 is supported.  The cover consists of the open trapezoids of
the decomposition plus one thin open cell per free stretch of every interior
slab line, so every strictly safe point of the workspace lies in some cell.
"""

from __future__ import annotations

import itertools
import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .geometry import Polytope, as_point, contains, point_clearance
from .model import Instance
from .numeric import EQ, LE, LT, LinearConstraint, lp_feasible, lp_optimize


class CoverError(ValueError):
    pass


@dataclass(frozen=True)
class Cell:
    polygon: Polytope  # read as its open interior
    id: int
    kind: str = "trapezoid"  # or "edge"


@dataclass
class Cover:
    cells: list
    adjacency: dict = field(default_factory=dict)  # id -> sorted tuple of ids

    @property
    def bound(self) -> int:
        return len(self.cells)

    def neighbours(self, i: int) -> tuple:
        return self.adjacency.get(i, ())

    def containing(self, point) -> list:
        return [c.id for c in self.cells if contains(c.polygon, point, strictly=True)]

    def components(self) -> list:
        seen, comps = set(), []
        for c in self.cells:
            if c.id in seen:
                continue
            comp, todo = [], [c.id]
            seen.add(c.id)
            while todo:
                i = todo.pop()
                comp.append(i)
                for j in self.neighbours(i):
                    if j not in seen:
                        seen.add(j)
                        todo.append(j)
            comps.append(sorted(comp))
        return comps

    def component_of(self, point) -> list:
        """Cells of the connected component containing ``point`` (empty if uncovered)."""
        ids = set(self.containing(point))
        for comp in self.components():
            if ids & set(comp):
                return [self.cells[i] for i in comp]
        return []


# ---------------------------------------------------------------------------
# polygon helpers


def _line_meet(r1, r2):
    (a1, b1), (a2, b2) = r1, r2
    det = a1[0] * a2[1] - a1[1] * a2[0]
    if det == 0:
        return None
    x = (b1 * a2[1] - b2 * a1[1]) / det
    y = (a1[0] * b2 - a2[0] * b1) / det
    return (x, y)


def polygon_vertices(poly: Polytope) -> list:
    """Vertices of a bounded 2-D polytope, counter-clockwise."""
    pts = set()
    for r1, r2 in itertools.combinations(poly.rows, 2):
        v = _line_meet(r1, r2)
        if v is not None and contains(poly, v):
            pts.add(v)
    return convex_hull(list(pts))


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def convex_hull(points: Sequence) -> list:
    pts = sorted(set(as_point(p) for p in points))
    if len(pts) <= 2:
        return pts
    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def hull_polytope(points: Sequence) -> Polytope:
    """H-representation of the convex hull of at least three affinely independent points."""
    hull = convex_hull(points)
    if len(hull) < 3:
        raise CoverError("degenerate hull")
    rows = []
    for i, p in enumerate(hull):
        q = hull[(i + 1) % len(hull)]
        # counter-clockwise: interior is to the left of p -> q
        a = (q[1] - p[1], p[0] - q[0])
        rows.append((a, a[0] * p[0] + a[1] * p[1]))
    return Polytope(tuple(rows))


def clip(poly: Polytope, workspace: Polytope) -> Polytope:
    return Polytope(poly.rows + workspace.rows)


def _vertical_extent(poly: Polytope, x: Fraction):
    """(lo, hi, lo_row, hi_row) of the closed section ``{y : (x, y) in poly}``, or None if empty."""
    lo, hi = -math.inf, math.inf
    lo_row = hi_row = None
    for a, b in poly.rows:
        ax, ay = a
        if ay == 0:
            if ax * x > b:
                return None
            continue
        t = (b - ax * x) / ay
        if ay > 0:
            if t < hi:
                hi, hi_row = t, (a, b)
        elif t > lo:
            lo, lo_row = t, (a, b)
    if lo > hi:
        return None
    return lo, hi, lo_row, hi_row


def _x_range(poly: Polytope):
    cons = poly.constraints()
    top = lp_optimize((Fraction(1), Fraction(0)), cons, "max")
    bot = lp_optimize((Fraction(1), Fraction(0)), cons, "min")
    if top.status != "bounded" or bot.status != "bounded":
        raise CoverError("unbounded workspace")
    return bot.value, top.value


# ---------------------------------------------------------------------------
# decomposition


def _require_plane(instance: Instance) -> Polytope:
    if instance.dimension != 2:
        raise CoverError("cell covers are only computed in dimension 2")
    if instance.workspace is None:
        raise CoverError("unbounded workspace")
    ws = instance.workspace
    _x_range(ws)
    e = (Fraction(0), Fraction(1))
    cons = ws.constraints()
    for direction in ("max", "min"):
        if lp_optimize(e, cons, direction).status != "bounded":
            raise CoverError("unbounded workspace")
    return ws


def _on_boundary(poly: Polytope, point) -> bool:
    return contains(poly, point) and not contains(poly, point, strictly=True)


def event_xs(instance: Instance) -> list:
    ws = _require_plane(instance)
    xmin, xmax = _x_range(ws)
    events = {xmin, xmax}
    events.update(v[0] for v in polygon_vertices(ws))
    clipped = [clip(o, ws) for o in instance.obstacles if not clip(o, ws).is_empty()]
    for c in clipped:
        events.update(v[0] for v in polygon_vertices(c))
    # crossings of boundaries of overlapping obstacles (and of obstacle vs workspace)
    shapes = clipped + [ws]
    for s1, s2 in itertools.combinations(shapes, 2):
        for r1 in s1.rows:
            for r2 in s2.rows:
                v = _line_meet(r1, r2)
                if v is not None and xmin < v[0] < xmax and _on_boundary(s1, v) and _on_boundary(s2, v):
                    events.add(v[0])
    return sorted(e for e in events if xmin <= e <= xmax)


def _free_gaps(instance: Instance, ws: Polytope, x: Fraction):
    """Open free intervals on the vertical line at x with their bounding rows."""
    ext = _vertical_extent(ws, x)
    if ext is None:
        return []
    lo, hi, lo_row, hi_row = ext
    blocks = []
    for o in instance.obstacles:
        e = _vertical_extent(o, x)
        if e is not None:
            blocks.append(e)
    blocks.sort(key=lambda e: e[0])
    gaps = []
    cur, cur_row, cur_kind = lo, lo_row, "workspace"
    for b_lo, b_hi, b_lo_row, b_hi_row in blocks:
        if b_hi < cur or (b_hi == cur and cur_kind == "obstacle"):
            continue
        if b_lo > cur:
            gaps.append((cur, min(b_lo, hi), cur_row, cur_kind, b_lo_row, "obstacle"))
        if b_hi >= cur:
            cur, cur_row, cur_kind = b_hi, b_hi_row, "obstacle"
        if cur >= hi:
            break
    if cur < hi:
        gaps.append((cur, hi, cur_row, cur_kind, hi_row, "workspace"))
    return [g for g in gaps if g[0] < g[1] and g[0] < hi]


def _gap_rows(g):
    """Rows bounding y from below and above for a gap, as interior-side halfplanes."""
    _, _, low_row, low_kind, up_row, up_kind = g
    rows = []
    a, b = low_row
    # workspace bottom rows already face inward; an obstacle top row must be flipped
    rows.append((a, b) if low_kind == "workspace" else ((-a[0], -a[1]), -b))
    a, b = up_row
    rows.append((a, b) if up_kind == "workspace" else ((-a[0], -a[1]), -b))
    return rows


def vertical_decomposition(instance: Instance) -> list:
    """Closed trapezoids of the free space, one per gap per slab."""
    ws = _require_plane(instance)
    xs = event_xs(instance)
    cells = []
    for x0, x1 in zip(xs, xs[1:]):
        xm = (x0 + x1) / 2
        for g in _free_gaps(instance, ws, xm):
            rows = [((Fraction(1), Fraction(0)), x1), ((Fraction(-1), Fraction(0)), -x0)]
            rows.extend(_gap_rows(g))
            cells.append(Polytope(tuple(rows)))
    return cells


def _edge_cell(instance: Instance, ws: Polytope, x: Fraction, y0: Fraction, y1: Fraction) -> Polytope:
    mid = (x, (y0 + y1) / 2)
    delta = point_clearance(mid, instance) / 2
    if delta == math.inf:
        delta = (y1 - y0) / 2
    delta = min(delta, (y1 - y0) / 2)
    for _ in range(64):
        pts = [(x, y0), (x, y1)] + [(mid[0] + sx * delta, mid[1] + sy * delta) for sx in (-1, 1) for sy in (-1, 1)]
        poly = hull_polytope(pts)
        if _cell_is_free(poly, instance, ws):
            return poly
        delta /= 2
    raise CoverError(f"could not fatten slab edge at x={x}")


def _cell_is_free(poly: Polytope, instance: Instance, ws: Polytope) -> bool:
    if not all(contains(ws, v) for v in polygon_vertices(poly)):
        return False
    for o in instance.obstacles:
        cons = poly.constraints(strict=True) + o.constraints()
        if lp_feasible(cons, 2).feasible:
            return False
    return True


def _adjacent(p1: Polytope, p2: Polytope) -> bool:
    return lp_feasible(p1.constraints(strict=True) + p2.constraints(strict=True), 2).feasible


def build_cover(cells: Sequence[Polytope], instance: Instance) -> Cover:
    """Open trapezoids plus fattened free stretches of the interior slab lines."""
    ws = _require_plane(instance)
    xs = event_xs(instance)
    polys = [(p, "trapezoid") for p in cells]
    for x in xs[1:-1]:
        for g in _free_gaps(instance, ws, x):
            polys.append((_edge_cell(instance, ws, x, g[0], g[1]), "edge"))
    out = [Cell(p, i, kind) for i, (p, kind) in enumerate(polys)]
    adj = {c.id: [] for c in out}
    for c1, c2 in itertools.combinations(out, 2):
        if _bbox_overlap(c1.polygon, c2.polygon) and _adjacent(c1.polygon, c2.polygon):
            adj[c1.id].append(c2.id)
            adj[c2.id].append(c1.id)
    return Cover(out, {i: tuple(sorted(v)) for i, v in adj.items()})


def _bbox(poly: Polytope):
    vs = polygon_vertices(poly)
    return min(v[0] for v in vs), max(v[0] for v in vs), min(v[1] for v in vs), max(v[1] for v in vs)


def _bbox_overlap(p1: Polytope, p2: Polytope) -> bool:
    a, b = _bbox(p1), _bbox(p2)
    return a[0] < b[1] and b[0] < a[1] and a[2] < b[3] and b[2] < a[3]


def compute_cover(instance: Instance) -> Cover:
    return build_cover(vertical_decomposition(instance), instance)


def cover_bound(instance: Instance) -> int:
    return compute_cover(instance).bound


# ---------------------------------------------------------------------------
# channels


@dataclass
class ChannelVerdict:
    reachable: bool
    channel: Optional[tuple] = None
    waypoints: Optional[list] = None  # x_s, intersection points..., x_t
    checked: int = 0  # number of channel systems solved


def _channel_system(instance: Instance, cover: Cover, channel: Sequence[int], closed: bool):
    """Constraint system for a channel; ``closed`` pins the last hop to the target.

    Variables: waypoints x_1..x_{N-1} (in consecutive intersections), then the
    end point (free in the last cell when not closed), then per-hop mode times.
    """
    n = 2
    rates = instance.mms.rates
    nm = len(rates)
    N = len(channel)
    npts = N - 1 + (0 if closed else 1)
    nv = n * npts + nm * N
    tbase = n * npts
    cons = []

    def point_vars(i):
        # waypoint i (1-based), or None for the fixed start / target
        if i == 0:
            return None
        if i == N and closed:
            return None
        return n * (i - 1)

    for i in range(1, npts + 1):
        off = point_vars(i)
        cells = [channel[i - 1]] + ([channel[i]] if i < N else [])
        for cid in cells:
            cons.extend(cover.cells[cid].polygon.constraints(strict=True, offset=off, nvars=nv))
    for h in range(N):
        # hop h goes from point h to point h+1 with times t_h
        src, dst = point_vars(h), point_vars(h + 1)
        for d in range(n):
            coeffs = [Fraction(0)] * nv
            bound = Fraction(0)
            # x_dst - x_src - sum_m t_m R(m) = 0, fixed end points moved to the right
            if dst is None:
                bound -= instance.target[d]
            else:
                coeffs[dst + d] += 1
            if src is None:
                bound += instance.start[d]
            else:
                coeffs[src + d] -= 1
            for m, r in enumerate(rates):
                coeffs[tbase + h * nm + m] -= r[d]
            cons.append(LinearConstraint(tuple(coeffs), bound, EQ))
    nonneg = range(tbase, nv)
    return cons, nv, nonneg, npts


def _solve_channel(instance, cover, channel, closed):
    cons, nv, nonneg, npts = _channel_system(instance, cover, channel, closed)
    out = lp_feasible(cons, nv, nonneg=nonneg)
    if not out.feasible:
        return None
    w = out.witness
    pts = [tuple(w[2 * i : 2 * i + 2]) for i in range(npts)]
    return pts


def channel_decide(instance: Instance, cover: Cover, allow_repeat: int = 0) -> ChannelVerdict:
    """Search channels from a cell holding x_s to a cell holding x_t, shortest first.

    ``allow_repeat`` lets each cell appear up to ``1 + allow_repeat`` times
    (a debugging aid; repeat-free channels are enough).
    """
    for label, pt in (("start", instance.start), ("target", instance.target)):
        if not instance.is_safe(pt):
            raise CoverError(f"{label} is not strictly safe")
    starts = cover.containing(instance.start)
    goals = set(cover.containing(instance.target))
    if not starts or not goals:
        raise CoverError("start or target not covered")
    # graph distance to the goal set, for pruning
    dist = {g: 0 for g in goals}
    todo = deque(goals)
    while todo:
        i = todo.popleft()
        for j in cover.neighbours(i):
            if j not in dist:
                dist[j] = dist[i] + 1
                todo.append(j)
    prefix_ok = {}
    checked = 0
    limit = len(cover.cells) * (1 + allow_repeat)

    def prefix_feasible(chan):
        nonlocal checked
        if chan not in prefix_ok:
            checked += 1
            prefix_ok[chan] = _solve_channel(instance, cover, chan, closed=False) is not None
        return prefix_ok[chan]

    def dfs(chan, depth):
        nonlocal checked
        last = chan[-1]
        if len(chan) == depth:
            if last in goals:
                checked += 1
                pts = _solve_channel(instance, cover, chan, closed=True)
                if pts is not None:
                    return chan, [instance.start, *pts, instance.target]
            return None
        for j in cover.neighbours(last):
            if chan.count(j) > allow_repeat:
                continue
            if dist.get(j, math.inf) > depth - len(chan) - 1:
                continue
            nxt = chan + (j,)
            if not prefix_feasible(nxt):
                continue
            found = dfs(nxt, depth)
            if found:
                return found
        return None

    for depth in range(1, limit + 1):
        for s in starts:
            if dist.get(s, math.inf) > depth - 1:
                continue
            if not prefix_feasible((s,)):
                continue
            found = dfs((s,), depth)
            if found:
                chan, pts = found
                return ChannelVerdict(True, chan, pts, checked)
    return ChannelVerdict(False, checked=checked)


__all__ = [
    "Cell",
    "Cover",
    "CoverError",
    "ChannelVerdict",
    "vertical_decomposition",
    "build_cover",
    "compute_cover",
    "cover_bound",
    "channel_decide",
    "polygon_vertices",
    "convex_hull",
    "hull_polytope",
    "event_xs",
]
