from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mmsreach.bench.arenas import gen_arena
from mmsreach.cellcover2d import (
    CoverError,
    channel_decide,
    compute_cover,
    convex_hull,
    cover_bound,
    event_xs,
    polygon_vertices,
    vertical_decomposition,
)
from mmsreach.geometry import contains
from mmsreach.numeric import lp_feasible
from mmsreach.planner import check_witness

from instances import box, lshaped, plane


@pytest.fixture(scope="module")
def lshape_cover():
    return compute_cover(lshaped())


def test_lshape_cover_size(lshape_cover):
    # 7 trapezoids plus 8 thin cells on interior slab lines
    kinds = [c.kind for c in lshape_cover.cells]
    assert (kinds.count("trapezoid"), kinds.count("edge"), lshape_cover.bound) == (7, 8, 15)
    assert len(lshape_cover.components()) == 1
    assert cover_bound(lshaped()) == 15


def test_event_xs_lshaped():
    assert event_xs(lshaped()) == [0, F("0.15"), 3, F("3.75"), 4]


def test_convex_hull_and_vertices():
    pts = [(0, 0), (2, 0), (1, 1), (2, 2), (0, 2), (1, 0)]
    assert convex_hull(pts) == [(0, 0), (2, 0), (2, 2), (0, 2)]
    assert sorted(polygon_vertices(box((0, 0), (1, 2)))) == [(0, 0), (0, 2), (1, 0), (1, 2)]


def _open_meets_closed(cell, obstacle):
    cons = cell.constraints(strict=True) + obstacle.constraints()
    return lp_feasible(cons, 2).feasible


def _open_meets_open(a, b):
    return lp_feasible(a.constraints(strict=True) + b.constraints(strict=True), 2).feasible


def test_cells_are_safe_and_in_workspace(lshape_cover):
    inst = lshaped()
    for c in lshape_cover.cells:
        assert not c.polygon.is_empty(strict=True)
        for o in inst.obstacles:
            assert not _open_meets_closed(c.polygon, o)
        for v in polygon_vertices(c.polygon):
            assert contains(inst.workspace, v)


def test_adjacency_is_open_overlap(lshape_cover):
    cells = lshape_cover.cells
    for a in cells:
        for b in cells:
            if a.id < b.id:
                linked = b.id in lshape_cover.neighbours(a.id)
                assert linked == (b.id in lshape_cover.neighbours(a.id)) == (a.id in lshape_cover.neighbours(b.id))
                assert linked == _open_meets_open(a.polygon, b.polygon)


coord = st.integers(1, 399).map(lambda v: F(v, 100))


@settings(max_examples=200)
@given(coord, coord)
def test_every_safe_point_is_covered(lshape_cover, x, y):
    inst = lshaped()
    if inst.is_safe((x, y)):
        assert lshape_cover.containing((x, y))


@settings(max_examples=30)
@given(st.integers(1, 3), st.randoms(use_true_random=False))
def test_cover_property_random_layouts(count, rnd):
    q = lambda: F(rnd.randint(0, 12), 4)
    obstacles = []
    for _ in range(count):
        x0, y0 = q(), q()
        obstacles.append(((x0, y0), (x0 + F(rnd.randint(1, 6), 4), y0 + F(rnd.randint(1, 6), 4))))
    try:
        inst = plane(obstacles, (F(1, 20), F(1, 20)), (F(79, 20), F(79, 20)))
    except ValueError:
        return
    cover = compute_cover(inst)
    for _ in range(40):
        p = (F(rnd.randint(1, 399), 100), F(rnd.randint(1, 399), 100))
        if inst.is_safe(p):
            assert cover.containing(p)
    for c in cover.cells:
        for o in inst.obstacles:
            assert not _open_meets_closed(c.polygon, o)


def test_vertical_decomposition_only_planar():
    inst3 = gen_arena("LShaped", __import__("mmsreach.bench.arenas", fromlist=["ArenaParams"]).ArenaParams(dimension=3))
    with pytest.raises(CoverError):
        vertical_decomposition(inst3)


def test_channel_decide_lshaped(lshape_cover):
    inst = lshaped()
    v = channel_decide(inst, lshape_cover)
    assert v.reachable
    assert v.waypoints[0] == inst.start and v.waypoints[-1] == inst.target
    # the channel's intersection points form an exact waypoint witness
    assert check_witness(inst, v.waypoints[1:-1]) is not None
    for a, b in zip(v.channel, v.channel[1:]):
        assert b in lshape_cover.neighbours(a)


def test_unreachable_l_has_two_components():
    inst = gen_arena("UnreachableL")
    cover = compute_cover(inst)
    assert cover.bound == 10
    assert len(cover.components()) == 2
    assert not channel_decide(inst, cover).reachable
    assert {c.id for c in cover.component_of(inst.start)}.isdisjoint(cover.containing(inst.target))


def test_cone_blocks_channel():
    # open plane, target behind the start in a one-mode system
    inst = plane([((2, 2), (3, 3))], (F(1), F(1)), (F(1, 2), F(1, 2)), modes=(("ne", (1, 1)),))
    assert not channel_decide(inst, compute_cover(inst)).reachable
