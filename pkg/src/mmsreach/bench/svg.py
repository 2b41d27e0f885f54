"""Deterministic SVG drawing of a planar instance with an optional plan or path."""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence

from ..cellcover2d import clip, polygon_vertices
from ..model import Instance, Plan, simulate


def _num(v) -> str:
    s = f"{float(v):.4f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


def _pts(points) -> str:
    return " ".join(f"{_num(x)},{_num(y)}" for x, y in points)


def _bbox(instance: Instance):
    if instance.workspace is not None:
        vs = polygon_vertices(instance.workspace)
    else:
        vs = [instance.start, instance.target]
        for o in instance.obstacles:
            vs += polygon_vertices(o)
    xs = [v[0] for v in vs]
    ys = [v[1] for v in vs]
    return min(xs), min(ys), max(xs), max(ys)


def render_svg(
    instance: Instance,
    plan: Optional[Plan] = None,
    path: Optional[Sequence] = None,
    width: int = 480,
    cells: Optional[Sequence] = None,
) -> str:
    """Workspace, obstacles (gray), optional cover cells, trajectory polyline and waypoint dots."""
    if instance.dimension != 2:
        raise ValueError("only planar instances can be drawn")
    x0, y0, x1, y1 = _bbox(instance)
    w, h = x1 - x0, y1 - y0
    span = max(w, h) or Fraction(1)
    r = span / 120
    height = int(round(width * float(h / w))) if w else width
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="{_num(x0)} {_num(y0)} {_num(w)} {_num(h)}">',
        # flip so that y grows upwards
        f'<g transform="translate(0 {_num(y0 + y1)}) scale(1 -1)">',
    ]
    if instance.workspace is not None:
        out.append(
            f'<polygon points="{_pts(polygon_vertices(instance.workspace))}" fill="white" '
            f'stroke="black" stroke-width="{_num(r / 2)}"/>'
        )
    for c in cells or ():
        out.append(
            f'<polygon points="{_pts(polygon_vertices(c))}" fill="none" stroke="#7aa6d8" '
            f'stroke-width="{_num(r / 3)}"/>'
        )
    for o in instance.obstacles:
        poly = clip(o, instance.workspace) if instance.workspace is not None else o
        vs = polygon_vertices(poly)
        if len(vs) >= 3:
            out.append(f'<polygon points="{_pts(vs)}" fill="#999999" stroke="#555555" stroke-width="{_num(r / 3)}"/>')
    waypoints = None
    trajectory = None
    if plan is not None:
        waypoints = plan.waypoints
        trajectory = simulate(instance.mms, instance.start, plan.schedule).states
    elif path is not None:
        waypoints = list(path)
        trajectory = waypoints
    if trajectory is not None and len(trajectory) > 1:
        out.append(
            f'<polyline points="{_pts(trajectory)}" fill="none" stroke="#c0392b" stroke-width="{_num(r / 2)}"/>'
        )
    for p in waypoints or ():
        out.append(f'<circle cx="{_num(p[0])}" cy="{_num(p[1])}" r="{_num(r)}" fill="#1f4e79"/>')
    for p, color in ((instance.start, "#27ae60"), (instance.target, "#e67e22")):
        out.append(f'<circle cx="{_num(p[0])}" cy="{_num(p[1])}" r="{_num(r * 1.5)}" fill="{color}"/>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


__all__ = ["render_svg"]
