"""Deterministic benchmark arenas.

All base layouts live in a unit frame (L-shapes and mazes in [0,4]^2, snakes in
[0, width] x [0, height]) and are scaled exactly to the requested size.  Higher
dimensions extrude the planar layout: extra coordinates are unconstrained by the
obstacles and bounded only by the workspace box.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from ..geometry import Polytope
from ..model import Instance, Mms

F = Fraction

FAMILIES = ("LShaped", "Snake", "Maze", "ModifiedL", "UnreachableL")

LSHAPE_MODES = (("m1", (1, 1)), ("m2", (0, -1)), ("m3", (-1, 1)))

# [x0, x1] x [y0, y1] boxes in the [0,4]^2 frame
L_O1 = (F("0.15"), F("3.75"), F("0.25"), F("1"))
L_O2 = (F("3"), F("3.75"), F("1.05"), F("3.95"))

MAZE_CS = (
    # outer C, open to the right
    ((F("0.5"), F("3.5"), F("3"), F("3.5")), (F("0.5"), F("1"), F("1"), F("3")), (F("0.5"), F("3.5"), F("0.5"), F("1"))),
    # middle C, open to the left
    ((F("1.25"), F("3.5"), F("1.25"), F("1.5")), (F("1.25"), F("3.5"), F("2.5"), F("2.75")), (F("3.25"), F("3.5"), F("1.5"), F("2.5"))),
    # inner C, open to the right
    ((F("2"), F("3"), F("1.65"), F("1.85")), (F("2"), F("3"), F("2.15"), F("2.3")), (F("2"), F("2.15"), F("1.85"), F("2.15"))),
)


class ArenaError(ValueError):
    pass


@dataclass(frozen=True)
class ArenaParams:
    dimension: int = 2
    size: Fraction = F(4)
    obstacles: Optional[int] = None  # walls for Snake, C's for Maze
    margin: Fraction = F("0.1")  # start/target inset, in the unit frame
    # snake shape, in the unit frame
    chamber: Fraction = F("1.5")
    wall: Fraction = F("0.25")
    gap: Fraction = F("1")
    height: Fraction = F(4)
    modes: Optional[tuple] = None  # override: ((name, rate), ...)


def axis_modes(n: int) -> tuple:
    modes = []
    for i in range(n):
        for sign, tag in ((1, "p"), (-1, "n")):
            rate = [0] * n
            rate[i] = sign
            modes.append((f"{tag}{i + 1}", tuple(rate)))
    return tuple(modes)


def _box(n: int, x0, x1, y0, y1, scale) -> Polytope:
    """Planar box extruded through the remaining coordinates."""
    rows = []
    for axis, lo, hi in ((0, x0, x1), (1, y0, y1)):
        e = [F(0)] * n
        e[axis] = F(1)
        rows.append((tuple(e), hi * scale))
        e = [F(0)] * n
        e[axis] = F(-1)
        rows.append((tuple(e), -lo * scale))
    return Polytope(tuple(rows))


def _point(n: int, xy, rest, scale) -> tuple:
    return tuple(v * scale for v in xy) + tuple(rest * scale for _ in range(n - 2))


def _l_layout(p: ArenaParams, family: str):
    o1, o2 = L_O1, L_O2
    if family == "UnreachableL":
        # O1 spans the full width and O2 reaches the top: the start strip is sealed
        o1 = (F(0), F(4), o1[2], o1[3])
        o2 = (o2[0], o2[1], o2[2], F(4))
    if family == "ModifiedL":
        start, target = (F("2.85"), F("3.7")), (F("3.85"), F("3.7"))
    else:
        m = p.margin
        start, target = (m, m), (4 - m, 4 - m)
    return [o1, o2], start, target, (F(4), F(4))


def _snake_layout(p: ArenaParams):
    n = p.obstacles if p.obstacles is not None else 4
    if n < 1:
        raise ArenaError("a snake needs at least one wall")
    c, t, g, h, m = p.chamber, p.wall, p.gap, p.height, p.margin
    width = (n + 1) * c + n * t
    boxes = []
    for i in range(n):
        x0 = (i + 1) * c + i * t
        if i % 2 == 0:
            boxes.append((x0, x0 + t, F(0), h - g))  # from the bottom, gap on top
        else:
            boxes.append((x0, x0 + t, g, h))  # from the top, gap below
    # target in the last chamber, in the corner away from the last gap
    last_gap_on_top = (n - 1) % 2 == 0
    target = (width - m, m if last_gap_on_top else h - m)
    return boxes, (m, m), target, (width, h)


def _maze_layout(p: ArenaParams):
    k = p.obstacles if p.obstacles is not None else 3
    if not 1 <= k <= len(MAZE_CS):
        raise ArenaError(f"maze supports 1 to {len(MAZE_CS)} C-shapes")
    # the innermost k C's; the target stays in the centre pocket
    boxes = [b for c in MAZE_CS[len(MAZE_CS) - k:] for b in c]
    target = (F("2.3"), F("2"))
    m = p.margin
    return boxes, (m, m), target, (F(4), F(4))


def gen_arena(family: str, params: ArenaParams = ArenaParams()) -> Instance:
    if family not in FAMILIES:
        raise ArenaError(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}")
    n = params.dimension
    if n < 2:
        raise ArenaError("arenas need dimension >= 2")
    if family == "Snake":
        boxes, start, target, (w, h) = _snake_layout(params)
    elif family == "Maze":
        boxes, start, target, (w, h) = _maze_layout(params)
    else:
        boxes, start, target, (w, h) = _l_layout(params, family)
    # the long side of the layout is mapped to `size`
    scale = F(params.size) / max(w, h)
    lo = [F(0)] * n
    hi = [w * scale, h * scale] + [max(w, h) * scale] * (n - 2)
    workspace = Polytope.box(lo, hi)
    obstacles = tuple(_box(n, *b, scale) for b in boxes)
    m = params.margin
    far = max(w, h) - m
    x_s = _point(n, start, m, scale)
    x_t = _point(n, target, far, scale)
    if params.modes is not None:
        modes = params.modes
    elif n == 2 and family in ("LShaped", "UnreachableL"):
        modes = LSHAPE_MODES
    else:
        modes = axis_modes(n)
    size_label = params.size
    name = f"{family}-d{n}-s{size_label}" + (f"-o{params.obstacles}" if params.obstacles is not None else "")
    inst = Instance(Mms(n, modes), obstacles, x_s, x_t, workspace, name)
    return inst.validate()


__all__ = ["FAMILIES", "ArenaParams", "ArenaError", "gen_arena", "axis_modes"]
