from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from mmsreach.geometry import (
    Polytope,
    Segment,
    contains,
    point_clearance,
    segment_clearance,
    segment_hit,
    segment_intersects,
)

from instances import box, lshaped
from oracles import segment_meets_polytope

UNIT = box((0, 0), (1, 1))


def test_contains_closed_and_open():
    assert contains(UNIT, (1, F(1, 2)))
    assert not contains(UNIT, (1, F(1, 2)), strictly=True)
    assert contains(UNIT, (F(1, 2), F(1, 2)), strictly=True)
    assert not contains(UNIT, (2, 0))


def test_polytope_rows_and_json():
    assert UNIT.dimension == 2
    assert len(UNIT.rows) == 4
    assert UNIT.to_json() == {"A": [["1", "0"], ["-1", "0"], ["0", "1"], ["0", "-1"]], "b": ["1", "0", "1", "0"]}
    with pytest.raises(ValueError):
        Polytope((((1, 0), 1), ((1, 0, 0), 1)))
    with pytest.raises(ValueError):
        Polytope((((0, 0), -1),))


def test_emptiness():
    assert not UNIT.is_empty()
    flat = Polytope((((1,), 0), ((-1,), 0)))  # the point 0
    assert not flat.is_empty()
    assert flat.is_empty(strict=True)


def test_segment_parametrisation():
    seg = Segment((0, 0), (2, 4))
    assert seg.at(1) == (0, 0)
    assert seg.at(0) == (2, 4)
    assert seg.at(F(1, 2)) == (1, 2)


@pytest.mark.parametrize(
    "p, q, hits",
    [
        ((-1, F(1, 2)), (2, F(1, 2)), True),  # straight through
        ((-1, 2), (2, 2), False),  # above
        ((-1, 1), (2, 1), True),  # grazing the top face: obstacles are closed
        ((-1, 0), (0, -1), False),  # passes the corner outside
        ((-1, 1), (1, -1), True),  # touches the corner (0, 0)
        ((F(1, 2), F(1, 2)), (F(1, 2), F(1, 2)), True),  # degenerate inside
    ],
)
def test_segment_hit_examples(p, q, hits):
    assert segment_intersects(Segment(p, q), UNIT) is hits
    lam = segment_hit(Segment(p, q), UNIT)
    if hits:
        assert contains(UNIT, Segment(p, q).at(lam))


coord = st.integers(-6, 6).map(lambda v: F(v, 2))


@given(st.tuples(coord, coord), st.tuples(coord, coord), st.tuples(coord, coord), st.tuples(coord, coord))
def test_segment_hit_matches_oracle(p, q, lo, size):
    hi = (lo[0] + abs(size[0]), lo[1] + abs(size[1]))
    obs = box(lo, hi)
    assert segment_intersects(Segment(p, q), obs) == segment_meets_polytope(p, q, obs.rows)


def test_clearance_is_linf_distance():
    inst = lshaped()
    # a point 0.05 below O1 and far from everything else
    assert point_clearance((F(2), F("0.2")), inst) == F("0.05")
    # horizontal segment at y = 0.1: the workspace floor is 0.1 away, O1 0.15
    assert segment_clearance(Segment((F("0.5"), F("0.1")), (F(3), F("0.1"))), inst) == F("0.1")
    # touching segment has zero clearance
    assert segment_clearance(Segment((F("0.1"), F("0.5")), (F("0.2"), F("0.5"))), inst) == 0


def test_clearance_without_obstacles_is_infinite():
    from mmsreach.model import Instance, Mms

    inst = Instance(Mms(1, (("up", (1,)),)), (), (F(0),), (F(1),), None)
    assert segment_clearance(Segment((F(0),), (F(1),)), inst) == float("inf")
