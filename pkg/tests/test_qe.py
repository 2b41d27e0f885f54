import subprocess
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mmsreach import qe
from mmsreach.geometry import Polytope, Segment, segment_intersects
from mmsreach.qe import (
    FALSE,
    TRUE,
    And,
    Atom,
    Or,
    degree,
    emit_atoms,
    evaluate,
    obstacle_free_formula,
    smt_number,
    to_smtlib,
)

from conftest import needs_smt
from instances import box
from oracles import segment_meets_polytope

UNIT = box((0, 0), (1, 1))


def test_shape_of_formula():
    f = obstacle_free_formula(UNIT)
    clauses = emit_atoms(f)
    # 4 endpoint clauses of 2 atoms, 4*3 ordered pairs of 3 atoms
    assert sorted(len(c) for c in clauses) == [2] * 4 + [3] * 12
    assert degree(f) == 2


@pytest.mark.parametrize(
    "p, q, free",
    [
        ((-1, F(1, 2)), (2, F(1, 2)), False),
        ((-1, 2), (2, 2), True),
        ((-1, 1), (2, 1), False),  # touching counts as a hit
        ((-1, 0), (0, -1), True),
        ((2, 2), (3, 3), True),
        ((F(1, 2), F(1, 2)), (F(1, 2), F(1, 2)), False),
        ((-1, F(1, 2)), (-1, F(1, 2)), True),  # a point outside
    ],
)
def test_frozen_examples(p, q, free):
    assert evaluate(obstacle_free_formula(UNIT), p, q) is free


def test_empty_obstacle_is_true():
    empty = Polytope((((1, 0), 0), ((-1, 0), -1)))
    assert obstacle_free_formula(empty) is TRUE
    assert emit_atoms(TRUE) == [[]]
    assert emit_atoms(FALSE) == []


def test_emit_atoms_distributes():
    a = Atom(qe.constant(0, 1), "<", qe.constant(1, 1))
    b = Atom(qe.constant(1, 1), "<", qe.constant(0, 1))
    f = And((Or((a, b)), a))
    assert emit_atoms(f) == [[a, a], [b, a]]


def test_smt_numbers():
    assert smt_number(F(7)) == "7.0"
    assert smt_number(F(7, 2)) == "(/ 7.0 2.0)"
    assert smt_number(F(-3)) == "(- 3.0)"
    assert smt_number(F(-1, 3)) == "(- (/ 1.0 3.0))"


def test_to_smtlib_folds_known_coordinates():
    f = obstacle_free_formula(UNIT)
    text = to_smtlib(f, ["a", "b"], [F(2), F(2)])
    assert "a" in text and "b" in text
    # all-known endpoints collapse every atom
    ground = to_smtlib(f, [F(2), F(2)], [F(3), F(3)])
    assert set(ground.replace("(", " ").replace(")", " ").split()) <= {"or", "and", "true", "false"}


def _random_polytope(draw, n):
    kind = draw(st.sampled_from(["box", "rows"]))
    c = st.integers(-4, 4).map(lambda v: F(v, 2))
    if kind == "box":
        lo = [draw(c) for _ in range(n)]
        hi = [l + abs(draw(c)) for l in lo]
        return box(lo, hi)
    rows = []
    for _ in range(draw(st.integers(1, 2 * n + 1))):
        a = tuple(draw(st.integers(-2, 2)) for _ in range(n))
        if not any(a):
            continue
        rows.append((a, draw(c)))
    return Polytope(tuple(rows) or ((tuple([1] + [0] * (n - 1)), F(0)),))


@st.composite
def segment_obstacle(draw, n):
    c = st.integers(-6, 6).map(lambda v: F(v, 2))
    p = tuple(draw(c) for _ in range(n))
    q = tuple(draw(c) for _ in range(n))
    return p, q, _random_polytope(draw, n)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
@settings(max_examples=150)
@given(data=st.data())
def test_qe_matches_exact_intersection(n, data):
    p, q, obs = data.draw(segment_obstacle(n))
    free = evaluate(obstacle_free_formula(obs, n), p, q)
    assert free == (not segment_intersects(Segment(p, q), obs))
    assert free == (not segment_meets_polytope(p, q, obs.rows))


@needs_smt
@pytest.mark.parametrize(
    "p, q",
    [((-1, F(1, 2)), (2, F(1, 2))), ((-1, 2), (2, 2)), ((F(-1, 3), F(3, 2)), (F(3, 2), F(-1, 7)))],
)
def test_rendering_agrees_with_solver(p, q):
    f = obstacle_free_formula(UNIT)
    sym = to_smtlib(f, ["p0", "p1"], ["q0", "q1"])
    decls = "".join(f"(declare-fun {s} () Real)" for s in ("p0", "p1", "q0", "q1"))
    pins = "".join(
        f"(assert (= {s} {smt_number(v)}))" for s, v in zip(("p0", "p1", "q0", "q1"), tuple(p) + tuple(q))
    )
    res = subprocess.run(
        ["z3", "-in"], input=decls + pins + f"(assert {sym})(check-sat)\n", capture_output=True, text=True, timeout=30
    ).stdout.strip()
    assert (res == "sat") == evaluate(f, p, q)
