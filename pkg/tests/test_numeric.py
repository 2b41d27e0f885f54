from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mmsreach.numeric import (
    BOUNDED,
    INFEASIBLE,
    UNBOUNDED,
    DimensionError,
    LinearConstraint,
    ceil_fraction,
    eq,
    format_rational,
    interval_emptiness_1d,
    le,
    lp_feasible,
    lp_optimize,
    lt,
    parse_rational,
)

from oracles import brute_max, brute_strict_feasible

small = st.integers(-4, 4).map(F)


@pytest.mark.parametrize(
    "text, value",
    [("3", F(3)), ("7/2", F(7, 2)), ("0.25", F(1, 4)), ("-1.5", F(-3, 2)), (" 2 ", F(2)), (5, F(5))],
)
def test_parse_rational(text, value):
    assert parse_rational(text) == value


@pytest.mark.parametrize("bad", ["", "1/0", "abc", 0.1, True, None])
def test_parse_rational_rejects(bad):
    with pytest.raises(ValueError):
        parse_rational(bad)


@given(st.fractions())
def test_format_parse_roundtrip(x):
    assert parse_rational(format_rational(x)) == x


def test_ceil_fraction():
    assert [ceil_fraction(F(v)) for v in ("-3/2", "0", "1/3", "2")] == [-1, 0, 1, 2]


# --- fixed LP oracles ------------------------------------------------------


def test_optimize_textbook():
    # max 3x + 2y  s.t. x + y <= 4, x + 3y <= 6, x <= 3, x, y >= 0  -> (3, 1), 11
    cons = [le((1, 1), 4), le((1, 3), 6), le((1, 0), 3)]
    out = lp_optimize((3, 2), cons, "max", nonneg=(0, 1))
    assert out.status == BOUNDED
    assert out.value == 11
    assert out.witness == (3, 1)


def test_optimize_min_free_variables():
    cons = [le((-1,), 2), le((1,), 5)]  # -2 <= x <= 5
    out = lp_optimize((1,), cons, "min")
    assert (out.status, out.value) == (BOUNDED, -2)


def test_unbounded_and_infeasible():
    assert lp_optimize((1, 0), [le((0, 1), 1)], "max").status == UNBOUNDED
    assert lp_optimize((1,), [le((1,), 0), le((-1,), -1)]).status == INFEASIBLE


def test_strict_feasibility():
    # 0 < x < 1 feasible; 0 < x <= 0 not
    assert lp_feasible([lt((-1,), 0), lt((1,), 1)], 1).feasible
    out = lp_feasible([lt((-1,), 0), le((1,), 0)], 1)
    assert not out.feasible
    # strict witness really is strict
    w = lp_feasible([lt((-1, 0), 0), lt((0, -1), 0), lt((1, 1), 1)], 2).witness
    assert w[0] > 0 and w[1] > 0 and w[0] + w[1] < 1


def test_equalities():
    out = lp_feasible([eq((1, 1), 2), eq((1, -1), 0)], 2)
    assert out.witness == (1, 1)
    assert not lp_feasible([eq((1, 1), 2), eq((1, 1), 3)], 2).feasible


def test_optimize_rejects_strict_and_bad_dims():
    with pytest.raises(ValueError):
        lp_optimize((1,), [lt((1,), 1)])
    with pytest.raises(DimensionError):
        lp_feasible([le((1, 2), 1)], 3)
    with pytest.raises(ValueError):
        lp_optimize((1,), [], "sideways")
    with pytest.raises(ValueError):
        LinearConstraint((1,), 1, ">=")


# degenerate systems on which naive pivoting cycles
DEGENERATE = [
    # Beale's example
    (
        (F(3, 4), F(-150), F(1, 50), F(-6)),
        [
            le((F(1, 4), F(-60), F(-1, 25), F(9)), 0),
            le((F(1, 2), F(-90), F(-1, 50), F(3)), 0),
            le((0, 0, 1, 0), 1),
        ],
        F(1, 20),
    ),
    # many constraints through the origin
    (
        (1, 1),
        [le((1, -1), 0), le((-1, 1), 0), le((1, 1), 2), le((2, -2), 0), le((1, 0), 1), le((0, 1), 1)],
        F(2),
    ),
    # Kuhn's cycling example
    (
        (2, 3, -1, -12),
        [le((-2, -9, 1, 9), 0), le((F(1, 3), 1, F(-1, 3), -2), 0), le((2, 3, -1, -12), 2)],
        F(2),
    ),
]


@pytest.mark.parametrize("objective, cons, best", DEGENERATE)
def test_degenerate_lps_terminate(objective, cons, best):
    n = len(objective)
    out = lp_optimize(objective, cons, "max", nonneg=range(n))
    assert out.status == BOUNDED
    assert out.value == best


# --- brute-force agreement -------------------------------------------------


@st.composite
def lp_systems(draw):
    n = draw(st.integers(1, 4))
    m = draw(st.integers(0, 8))
    rows = []
    for _ in range(m):
        a = tuple(draw(st.lists(small, min_size=n, max_size=n)))
        b = draw(small)
        rel = draw(st.sampled_from(["<=", "<=", "<=", "="]))
        rows.append((a, b, rel))
    # a box keeps the brute-force oracle finite
    box = []
    for i in range(n):
        e = [F(0)] * n
        e[i] = F(1)
        box.append((tuple(e), F(5), "<="))
        box.append((tuple(-v for v in e), F(5), "<="))
    objective = tuple(draw(st.lists(small, min_size=n, max_size=n)))
    return n, rows, box, objective


def _cons(rows):
    return [LinearConstraint(a, b, rel) for a, b, rel in rows]


@settings(max_examples=300)
@given(lp_systems())
def test_simplex_matches_vertex_enumeration(system):
    n, rows, box, objective = system
    allrows = rows + box
    expect = brute_max(objective, allrows, n)
    out = lp_optimize(objective, _cons(allrows), "max")
    if expect is None:
        assert out.status == INFEASIBLE
        assert not lp_feasible(_cons(allrows), n).feasible
    else:
        assert out.status == BOUNDED
        assert out.value == expect
        assert all(c.lhs(out.witness) <= c.bound if c.relation == "<=" else c.lhs(out.witness) == c.bound for c in _cons(allrows))
        assert lp_feasible(_cons(allrows), n).feasible


@settings(max_examples=120)
@given(lp_systems(), st.lists(st.booleans(), min_size=8, max_size=8))
def test_strict_feasibility_matches_oracle(system, flags):
    n, rows, box, _ = system
    rows = [(a, b, "<" if (f and rel == "<=") else rel) for (a, b, rel), f in zip(rows, flags)]
    allrows = rows + box
    out = lp_feasible(_cons(allrows), n)
    assert out.feasible == brute_strict_feasible(allrows, n)
    if out.feasible:
        for c in _cons(allrows):
            v = c.lhs(out.witness)
            assert v < c.bound if c.relation == "<" else v <= c.bound if c.relation == "<=" else v == c.bound


# --- one-dimensional emptiness ---------------------------------------------


def test_interval_examples():
    # 1/4 <= lam <= 1/2 inside [0, 1] -> midpoint
    assert interval_emptiness_1d([(F(-1), F(-1, 4), "<="), (F(1), F(1, 2), "<=")], 0, 1) == F(3, 8)
    # lam < 0 on [0, 1] -> empty
    assert interval_emptiness_1d([(F(1), F(0), "<")], 0, 1) is None
    # lam <= 0 on [0, 1] -> the single point 0
    assert interval_emptiness_1d([(F(1), F(0), "<=")], 0, 1) == 0
    # 0 * lam <= -1 -> empty; 0 * lam < 0 -> empty; 0 * lam <= 0 -> whole interval
    assert interval_emptiness_1d([(F(0), F(-1), "<=")], 0, 1) is None
    assert interval_emptiness_1d([(F(0), F(0), "<")], 0, 1) is None
    assert interval_emptiness_1d([(F(0), F(0), "<=")], 0, 1) == F(1, 2)
    assert interval_emptiness_1d([(F(2), F(1), "=")], 0, 1) == F(1, 2)
    with pytest.raises(ValueError):
        interval_emptiness_1d([], 1, 0)


@given(
    st.lists(st.tuples(small, small, st.sampled_from(["<=", "<", "="])), max_size=5),
    st.integers(0, 3).map(F),
    st.integers(0, 3).map(F),
)
def test_interval_matches_grid(atoms, lo, width):
    hi = lo + width
    w = interval_emptiness_1d(atoms, lo, hi)

    def ok(x):
        return all(s * x < b if r == "<" else s * x <= b if r == "<=" else s * x == b for s, b, r in atoms)

    if w is not None:
        assert lo <= w <= hi and ok(w)
    else:
        # breakpoints have denominators dividing 4!, so a fine grid plus breakpoints is exhaustive
        pts = {lo, hi} | {b / s for s, b, _ in atoms if s}
        pts = sorted(p for p in pts if lo <= p <= hi)
        probes = pts + [(x + y) / 2 for x, y in zip(pts, pts[1:])]
        assert not any(ok(x) for x in probes)
