"""Deterministic corpus of planar instances, reachable and unreachable."""

import random
from fractions import Fraction as F

from mmsreach.bench.arenas import LSHAPE_MODES, ArenaParams, axis_modes, gen_arena
from mmsreach.model import InstanceError

from instances import plane

AXES = axis_modes(2)
QUADRANT = (("e", (1, 0)), ("n", (0, 1)))
SKEW = (("a", (2, 1)), ("b", (-1, 1)), ("c", (0, -1)))
MODE_SETS = (LSHAPE_MODES, AXES, QUADRANT, SKEW)


def _arenas():
    return [
        ("LShaped", gen_arena("LShaped")),
        ("UnreachableL", gen_arena("UnreachableL")),
        ("ModifiedL", gen_arena("ModifiedL")),
        ("Snake-1", gen_arena("Snake", ArenaParams(obstacles=1))),
        ("Snake-2", gen_arena("Snake", ArenaParams(obstacles=2))),
        ("Maze-1", gen_arena("Maze", ArenaParams(obstacles=1))),
        ("LShaped-quadrant", gen_arena("LShaped", ArenaParams(modes=QUADRANT))),
        ("LShaped-diagonal", gen_arena("LShaped", ArenaParams(modes=(("m1", (1, 1)),)))),
        ("UnreachableL-axes", gen_arena("UnreachableL", ArenaParams(modes=AXES))),
        ("ModifiedL-quadrant", gen_arena("ModifiedL", ArenaParams(modes=QUADRANT))),
    ]


def _random_instance(rng, modes):
    q = lambda lo, hi: F(rng.randint(lo * 4, hi * 4), 4)
    for _ in range(200):
        obstacles = []
        for _ in range(rng.randint(1, 3)):
            x0, y0 = q(0, 3), q(0, 3)
            obstacles.append(((x0, y0), (x0 + q(0, 2) + F(1, 4), y0 + q(0, 2) + F(1, 4))))
        pt = lambda: (F(rng.randint(1, 39), 10), F(rng.randint(1, 39), 10))
        try:
            return plane(obstacles, pt(), pt(), modes=modes)
        except (InstanceError, ValueError):
            continue
    raise RuntimeError("could not place a random instance")


def corpus(random_count=20, seed=2024):
    items = _arenas()
    rng = random.Random(seed)
    for i in range(random_count):
        modes = MODE_SETS[i % len(MODE_SETS)]
        items.append((f"random-{i}", _random_instance(rng, modes)))
    return items
