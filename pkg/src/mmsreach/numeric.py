"""Exact rational arithmetic and linear programming.

Everything here works on :class:`fractions.Fraction`; nothing is ever rounded.
The LP solver is a dense two-phase simplex with Bland's rule.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

Rational = Fraction

LE, LT, EQ = "<=", "<", "="
RELATIONS = (LE, LT, EQ)


def parse_rational(text) -> Fraction:
    """Parse ``"3"``, ``"7/2"`` or ``"0.25"`` into an exact Fraction.

    Ints and Fractions pass through.  Floats are rejected: they are not exact
    decimal literals and silently converting them hides rounding.
    """
    if isinstance(text, bool):
        raise ValueError(f"not a rational: {text!r}")
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    if not isinstance(text, str):
        raise ValueError(f"rationals must be given as strings, got {type(text).__name__}")
    s = text.strip()
    try:
        value = Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"malformed rational {text!r}") from exc
    return value


def format_rational(value: Fraction) -> str:
    return str(Fraction(value))


@dataclass(frozen=True)
class LinearConstraint:
    """``coefficients . x  relation  bound`` with relation one of ``<=``, ``<``, ``=``."""

    coefficients: tuple
    bound: Fraction
    relation: str = LE

    def __post_init__(self):
        if self.relation not in RELATIONS:
            raise ValueError(f"unknown relation {self.relation!r}")
        object.__setattr__(self, "coefficients", tuple(Fraction(c) for c in self.coefficients))
        object.__setattr__(self, "bound", Fraction(self.bound))

    def lhs(self, point: Sequence[Fraction]) -> Fraction:
        return sum((c * x for c, x in zip(self.coefficients, point)), Fraction(0))

    def holds(self, point: Sequence[Fraction]) -> bool:
        v = self.lhs(point)
        if self.relation == LE:
            return v <= self.bound
        if self.relation == LT:
            return v < self.bound
        return v == self.bound


def le(coeffs, bound) -> LinearConstraint:
    return LinearConstraint(tuple(coeffs), bound, LE)


def lt(coeffs, bound) -> LinearConstraint:
    return LinearConstraint(tuple(coeffs), bound, LT)


def eq(coeffs, bound) -> LinearConstraint:
    return LinearConstraint(tuple(coeffs), bound, EQ)


FEASIBLE = "feasible"
INFEASIBLE = "infeasible"
BOUNDED = "bounded"
UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LpOutcome:
    status: str
    witness: Optional[tuple] = None
    value: Optional[Fraction] = None
    pivots: int = 0

    @property
    def feasible(self) -> bool:
        return self.status in (FEASIBLE, BOUNDED, UNBOUNDED)


class DimensionError(ValueError):
    pass


def _check_dims(constraints: Sequence[LinearConstraint], nvars: int) -> None:
    for k, c in enumerate(constraints):
        if len(c.coefficients) != nvars:
            raise DimensionError(
                f"constraint {k} has {len(c.coefficients)} coefficients, expected {nvars}"
            )


# ---------------------------------------------------------------------------
# simplex core


class _Tableau:
    """Canonical-form tableau: rows[i] . cols = rhs, basis[i] is the basic column."""

    def __init__(self, rows, rhs, basis, ncols):
        self.rows = rows
        self.rhs = rhs
        self.basis = basis
        self.ncols = ncols
        self.pivots = 0

    def pivot(self, r: int, c: int, cost: list) -> None:
        row = self.rows[r]
        p = row[c]
        if p != 1:
            inv = 1 / p
            for j in range(self.ncols):
                if row[j]:
                    row[j] *= inv
            self.rhs[r] *= inv
        nz = [j for j in range(self.ncols) if row[j]]
        prhs = self.rhs[r]
        for i, other in enumerate(self.rows):
            if i == r:
                continue
            f = other[c]
            if f:
                for j in nz:
                    other[j] -= f * row[j]
                self.rhs[i] -= f * prhs
        f = cost[c]
        if f:
            for j in nz:
                cost[j] -= f * row[j]
            cost[-1] -= f * prhs
        self.basis[r] = c
        self.pivots += 1

    def reduced_costs(self, objective: Sequence[Fraction]) -> list:
        """Reduced cost row for maximizing objective; last entry is -(current value)."""
        cost = [Fraction(v) for v in objective] + [Fraction(0)]
        for i, b in enumerate(self.basis):
            cb = cost[b]
            if cb:
                row = self.rows[i]
                for j in range(self.ncols):
                    if row[j]:
                        cost[j] -= cb * row[j]
                cost[-1] -= cb * self.rhs[i]
        return cost

    def maximize(self, cost: list, allowed: Sequence[bool], max_pivots: int) -> bool:
        """Run Bland's-rule simplex. Returns False when unbounded."""
        while True:
            enter = -1
            for j in range(self.ncols):
                if allowed[j] and cost[j] > 0:
                    enter = j
                    break
            if enter < 0:
                return True
            leave = -1
            best = None
            for i, row in enumerate(self.rows):
                a = row[enter]
                if a > 0:
                    ratio = self.rhs[i] / a
                    if (
                        best is None
                        or ratio < best
                        or (ratio == best and self.basis[i] < self.basis[leave])
                    ):
                        best = ratio
                        leave = i
            if leave < 0:
                return False
            self.pivot(leave, enter, cost)
            if self.pivots > max_pivots:
                raise RuntimeError("simplex exceeded its pivot budget")


def _solve(
    constraints: Sequence[LinearConstraint],
    nvars: int,
    objective: Optional[Sequence[Fraction]],
    nonneg: Iterable[int] = (),
):
    """Core LP over non-strict rows (strict ones are treated as <=).

    Returns (status, x, value, pivots), status in FEASIBLE/INFEASIBLE/BOUNDED/UNBOUNDED.
    """
    nonneg = set(nonneg)
    # column layout: for each original var, a "plus" column, and a "minus" column if free
    col_of = []
    ncols = 0
    for v in range(nvars):
        if v in nonneg:
            col_of.append((ncols, None))
            ncols += 1
        else:
            col_of.append((ncols, ncols + 1))
            ncols += 2
    nstruct = ncols

    rows = []
    rhs = []
    slack_cols = []
    for c in constraints:
        row = [Fraction(0)] * nstruct
        for v, a in enumerate(c.coefficients):
            if a:
                pc, mc = col_of[v]
                row[pc] = a
                if mc is not None:
                    row[mc] = -a
        b = c.bound
        if c.relation == EQ:
            slack_cols.append(None)
        else:
            slack_cols.append(ncols)
            ncols += 1
        rows.append(row)
        rhs.append(b)

    # widen rows to include slacks; normalize rhs >= 0
    full = []
    need_art = []
    for i, row in enumerate(rows):
        r = row + [Fraction(0)] * (ncols - nstruct)
        sc = slack_cols[i]
        if sc is not None:
            r[sc] = Fraction(1)
        b = rhs[i]
        if b < 0:
            r = [-a for a in r]
            b = -b
            rhs[i] = b
        full.append(r)
        need_art.append(sc is None or r[sc] != 1)

    nart = sum(need_art)
    art_start = ncols
    ncols_total = ncols + nart
    basis = []
    k = art_start
    for i, r in enumerate(full):
        r.extend([Fraction(0)] * nart)
        if need_art[i]:
            r[k] = Fraction(1)
            basis.append(k)
            k += 1
        else:
            basis.append(slack_cols[i])

    tab = _Tableau(full, rhs, basis, ncols_total)
    budget = 50 * (ncols_total + len(full) + 10) ** 2

    if nart:
        phase1 = [Fraction(0)] * ncols_total
        for j in range(art_start, ncols_total):
            phase1[j] = Fraction(-1)
        cost = tab.reduced_costs(phase1)
        tab.maximize(cost, [True] * ncols_total, budget)
        if -cost[-1] < 0:
            return INFEASIBLE, None, None, tab.pivots
        # drive artificials out of the basis; drop redundant rows
        i = 0
        while i < len(tab.rows):
            if tab.basis[i] >= art_start:
                row = tab.rows[i]
                enter = next((j for j in range(art_start) if row[j]), -1)
                if enter < 0:
                    del tab.rows[i]
                    del tab.rhs[i]
                    del tab.basis[i]
                    continue
                tab.pivot(i, enter, [Fraction(0)] * (ncols_total + 1))
            i += 1

    allowed = [j < art_start for j in range(ncols_total)]

    def extract():
        vals = [Fraction(0)] * ncols_total
        for i, b in enumerate(tab.basis):
            vals[b] = tab.rhs[i]
        x = []
        for pc, mc in col_of:
            x.append(vals[pc] - (vals[mc] if mc is not None else 0))
        return tuple(x)

    if objective is None:
        return FEASIBLE, extract(), None, tab.pivots

    obj = [Fraction(0)] * ncols_total
    for v, a in enumerate(objective):
        a = Fraction(a)
        if a:
            pc, mc = col_of[v]
            obj[pc] = a
            if mc is not None:
                obj[mc] = -a
    cost = tab.reduced_costs(obj)
    if not tab.maximize(cost, allowed, budget):
        return UNBOUNDED, extract(), None, tab.pivots
    x = extract()
    value = sum((Fraction(a) * xi for a, xi in zip(objective, x)), Fraction(0))
    return BOUNDED, x, value, tab.pivots


def lp_feasible(
    constraints: Sequence[LinearConstraint], nvars: int, nonneg: Iterable[int] = ()
) -> LpOutcome:
    """Decide feasibility exactly; strict rows are honoured.

    Strict rows are handled with one shared slack ``s``: every strict row becomes
    ``a.x + s <= b`` and ``s`` is maximized (capped at 1).  The strict system is
    feasible iff the optimum is positive.  ``nonneg`` lists variables already
    known to be >= 0; it only saves columns and changes no semantics beyond that.
    """
    constraints = list(constraints)
    _check_dims(constraints, nvars)
    nonneg = tuple(nonneg)
    strict = [c for c in constraints if c.relation == LT]
    if not strict:
        status, x, _, piv = _solve(constraints, nvars, None, nonneg)
        if status == INFEASIBLE:
            return LpOutcome(INFEASIBLE, pivots=piv)
        return LpOutcome(FEASIBLE, x, pivots=piv)

    lifted = []
    for c in constraints:
        if c.relation == LT:
            lifted.append(LinearConstraint(c.coefficients + (Fraction(1),), c.bound, LE))
        else:
            lifted.append(LinearConstraint(c.coefficients + (Fraction(0),), c.bound, c.relation))
    lifted.append(LinearConstraint((Fraction(0),) * nvars + (Fraction(1),), Fraction(1), LE))
    objective = [Fraction(0)] * nvars + [Fraction(1)]
    status, x, value, piv = _solve(lifted, nvars + 1, objective, nonneg)
    if status == INFEASIBLE or value <= 0:
        return LpOutcome(INFEASIBLE, pivots=piv)
    return LpOutcome(FEASIBLE, x[:nvars], pivots=piv)


def lp_optimize(
    objective: Sequence,
    constraints: Sequence[LinearConstraint],
    direction: str = "max",
    nonneg: Iterable[int] = (),
) -> LpOutcome:
    """Exact optimum of ``objective . x`` over non-strict constraints.

    Strict rows are rejected: the optimum of an open set is generally only a
    supremum and no witness would attain it.
    """
    constraints = list(constraints)
    nvars = len(objective)
    _check_dims(constraints, nvars)
    if any(c.relation == LT for c in constraints):
        raise ValueError("lp_optimize does not accept strict constraints")
    if direction not in ("max", "min"):
        raise ValueError(f"direction must be 'max' or 'min', got {direction!r}")
    sign = 1 if direction == "max" else -1
    obj = [sign * Fraction(a) for a in objective]
    status, x, value, piv = _solve(constraints, nvars, obj, tuple(nonneg))
    if status == INFEASIBLE:
        return LpOutcome(INFEASIBLE, pivots=piv)
    if status == UNBOUNDED:
        return LpOutcome(UNBOUNDED, x, pivots=piv)
    return LpOutcome(BOUNDED, x, sign * value, pivots=piv)


# ---------------------------------------------------------------------------
# one-variable systems


def interval_emptiness_1d(atoms, lo, hi) -> Optional[Fraction]:
    """Find lam in [lo, hi] with ``slope*lam rel bound`` for every atom.

    ``atoms`` are ``(slope, bound, relation)`` triples.  Returns a witness, or
    None when the set is empty.  The witness is the midpoint of the feasible
    interval (or its single point).
    """
    lo = Fraction(lo)
    hi = Fraction(hi)
    if lo > hi:
        raise ValueError("empty domain: lo > hi")
    lower, lower_open = lo, False
    upper, upper_open = hi, False
    expanded = []
    for slope, bound, rel in atoms:
        if rel not in RELATIONS:
            raise ValueError(f"unknown relation {rel!r}")
        slope, bound = Fraction(slope), Fraction(bound)
        if rel == EQ:
            expanded.append((slope, bound, LE))
            expanded.append((-slope, -bound, LE))
        else:
            expanded.append((slope, bound, rel))
    for slope, bound, rel in expanded:
        if slope == 0:
            if not (0 < bound if rel == LT else 0 <= bound):
                return None
            continue
        t = bound / slope
        strict = rel == LT
        if slope > 0:
            if t < upper or (t == upper and strict):
                upper, upper_open = t, strict
        else:
            if t > lower or (t == lower and strict):
                lower, lower_open = t, strict
    if lower < upper:
        return (lower + upper) / 2
    if lower == upper and not lower_open and not upper_open:
        return lower
    return None


def ceil_fraction(x: Fraction) -> int:
    return math.ceil(Fraction(x))


def dot(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    return sum((x * y for x, y in zip(a, b)), Fraction(0))
