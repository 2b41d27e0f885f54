"""Hand-built instances shared by the tests."""

from fractions import Fraction as F

from mmsreach.bench.arenas import LSHAPE_MODES, ArenaParams, gen_arena
from mmsreach.geometry import Polytope
from mmsreach.model import Instance, Mms


def lshaped():
    return gen_arena("LShaped", ArenaParams())


def box(lo, hi):
    return Polytope.box([F(v) for v in lo], [F(v) for v in hi])


def plane(obstacles, start, target, modes=LSHAPE_MODES, size=4, name=""):
    return Instance(
        Mms(2, modes),
        tuple(box(*o) for o in obstacles),
        tuple(F(v) for v in start),
        tuple(F(v) for v in target),
        box((0, 0), (size, size)),
        name,
    ).validate()
