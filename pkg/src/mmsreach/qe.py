"""Eliminating the segment parameter from "segment avoids obstacle".

For an obstacle ``{x : a_j . x <= b_j}`` and the segment ``lam*p + (1-lam)*q``
write ``alpha_j = a_j . (p - q)`` and ``beta_j = b_j - a_j . q``.  The segment
meets the obstacle iff some lam in [0,1] satisfies ``alpha_j * lam <= beta_j``
for all j.  Fourier-Motzkin on lam gives the quantifier-free complement as a
disjunction of

* endpoint clauses  ``a_j . p > b_j  and  a_j . q > b_j``  (one per facet), and
* pair clauses      ``alpha_j > 0 and alpha_k < 0 and beta_j*alpha_k > beta_k*alpha_j``.

The endpoint clause stands for the three elimination cases that pair a facet
with ``lam >= 0``, ``lam <= 1`` or a vanishing slope.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from .geometry import Polytope, as_point
from .numeric import format_rational


@dataclass(frozen=True)
class LinExpr:
    """Affine form over the 2n symbols p_1..p_n, q_1..q_n."""

    coeffs: tuple
    const: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))
        object.__setattr__(self, "const", Fraction(self.const))

    @property
    def n(self) -> int:
        return len(self.coeffs) // 2

    def __add__(self, other: "LinExpr") -> "LinExpr":
        return LinExpr(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)), self.const + other.const)

    def __neg__(self) -> "LinExpr":
        return LinExpr(tuple(-a for a in self.coeffs), -self.const)

    def __sub__(self, other: "LinExpr") -> "LinExpr":
        return self + (-other)

    def degree(self) -> int:
        return 1 if any(self.coeffs) else 0

    def value(self, p, q) -> Fraction:
        v = self.const
        for c, x in zip(self.coeffs, tuple(p) + tuple(q)):
            if c:
                v += c * x
        return v


@dataclass(frozen=True)
class Product:
    left: LinExpr
    right: LinExpr

    def degree(self) -> int:
        return self.left.degree() + self.right.degree()

    def value(self, p, q) -> Fraction:
        return self.left.value(p, q) * self.right.value(p, q)


Term = Union[LinExpr, Product]

_CMP = {
    "<": lambda a, b: a < b,
    "<=": lambda a, b: a <= b,
    "=": lambda a, b: a == b,
    ">": lambda a, b: a > b,
}


@dataclass(frozen=True)
class Atom:
    lhs: Term
    rel: str
    rhs: Term

    def __post_init__(self):
        if self.rel not in _CMP:
            raise ValueError(f"unknown relation {self.rel!r}")

    def degree(self) -> int:
        return max(self.lhs.degree(), self.rhs.degree())


@dataclass(frozen=True)
class And:
    parts: tuple


@dataclass(frozen=True)
class Or:
    parts: tuple


@dataclass(frozen=True)
class Const:
    value: bool


TRUE = Const(True)
FALSE = Const(False)

Formula = Union[Atom, And, Or, Const]


def _endpoint_form(a, n: int, which: str) -> LinExpr:
    zeros = (Fraction(0),) * n
    return LinExpr(tuple(a) + zeros if which == "p" else zeros + tuple(a))


def slope_expr(a, n: int) -> LinExpr:
    """alpha = a . (p - q)"""
    return LinExpr(tuple(a) + tuple(-v for v in a))


def offset_expr(a, b, n: int) -> LinExpr:
    """beta = b - a . q"""
    zeros = (Fraction(0),) * n
    return LinExpr(zeros + tuple(-v for v in a), b)


def constant(value, n: int) -> LinExpr:
    return LinExpr((Fraction(0),) * (2 * n), value)


def obstacle_free_formula(obstacle: Polytope, n: int = None) -> Formula:
    """Quantifier-free condition on (p, q) for the segment to miss the closed obstacle."""
    if n is None:
        n = obstacle.dimension
    if n is None:
        raise ValueError("dimension of a row-less obstacle must be given")
    if obstacle.is_empty():
        return TRUE
    rows = obstacle.rows
    clauses = []
    for a, b in rows:
        clauses.append(
            And(
                (
                    Atom(_endpoint_form(a, n, "p"), ">", constant(b, n)),
                    Atom(_endpoint_form(a, n, "q"), ">", constant(b, n)),
                )
            )
        )
    zero = constant(0, n)
    for j, (aj, bj) in enumerate(rows):
        for k, (ak, bk) in enumerate(rows):
            if j == k:
                continue
            alpha_j, alpha_k = slope_expr(aj, n), slope_expr(ak, n)
            beta_j, beta_k = offset_expr(aj, bj, n), offset_expr(ak, bk, n)
            clauses.append(
                And(
                    (
                        Atom(alpha_j, ">", zero),
                        Atom(alpha_k, "<", zero),
                        Atom(Product(beta_j, alpha_k), ">", Product(beta_k, alpha_j)),
                    )
                )
            )
    return Or(tuple(clauses))


def evaluate(formula: Formula, p: Sequence, q: Sequence) -> bool:
    p = as_point(p)
    q = as_point(q)
    if isinstance(formula, Const):
        return formula.value
    if isinstance(formula, Atom):
        return _CMP[formula.rel](formula.lhs.value(p, q), formula.rhs.value(p, q))
    if isinstance(formula, And):
        return all(evaluate(f, p, q) for f in formula.parts)
    if isinstance(formula, Or):
        return any(evaluate(f, p, q) for f in formula.parts)
    raise TypeError(f"not a formula: {formula!r}")


# the public name; ``eval`` would shadow the builtin inside this module
eval_formula = evaluate


def emit_atoms(formula: Formula) -> list:
    """Flatten to a list of clauses (each a list of atoms) read as an OR of ANDs.

    A constant-true formula flattens to ``[[]]`` (one empty conjunction) and
    constant-false to ``[]``.
    """
    if isinstance(formula, Const):
        return [[]] if formula.value else []
    if isinstance(formula, Atom):
        return [[formula]]
    if isinstance(formula, Or):
        out = []
        for part in formula.parts:
            out.extend(emit_atoms(part))
        return out
    if isinstance(formula, And):
        clauses = [[]]
        for part in formula.parts:
            sub = emit_atoms(part)
            clauses = [c + s for c in clauses for s in sub]
        return clauses
    raise TypeError(f"not a formula: {formula!r}")


def degree(formula: Formula) -> int:
    if isinstance(formula, Const):
        return 0
    if isinstance(formula, Atom):
        return formula.degree()
    return max((degree(f) for f in formula.parts), default=0)


# ---------------------------------------------------------------------------
# SMT-LIB rendering


def smt_number(value) -> str:
    value = Fraction(value)
    num, den = abs(value.numerator), value.denominator
    body = f"{num}.0" if den == 1 else f"(/ {num}.0 {den}.0)"
    return f"(- {body})" if value < 0 else body


def _fold(expr: LinExpr, symbols: Sequence):
    """Split into (symbolic terms, constant); symbols given as Fractions are folded in."""
    terms = []
    const = expr.const
    for c, s in zip(expr.coeffs, symbols):
        if not c:
            continue
        if isinstance(s, (Fraction, int)):
            const += c * Fraction(s)
        else:
            terms.append((c, s))
    return terms, const


def _smt_lin(expr: LinExpr, symbols: Sequence) -> str:
    terms, const = _fold(expr, symbols)
    out = [s if c == 1 else f"(* {smt_number(c)} {s})" for c, s in terms]
    if const or not out:
        out.append(smt_number(const))
    return out[0] if len(out) == 1 else "(+ " + " ".join(out) + ")"


def _constant_value(term: Term, symbols):
    """Value of a term whose symbols are all folded constants, else None."""
    parts = [term.left, term.right] if isinstance(term, Product) else [term]
    vals = []
    for e in parts:
        terms, const = _fold(e, symbols)
        if terms:
            return None
        vals.append(const)
    return vals[0] * vals[1] if len(vals) == 2 else vals[0]


def _smt_term(term: Term, symbols) -> str:
    if isinstance(term, Product):
        return f"(* {_smt_lin(term.left, symbols)} {_smt_lin(term.right, symbols)})"
    return _smt_lin(term, symbols)


def to_smtlib(formula: Formula, p_symbols: Sequence[str], q_symbols: Sequence[str]) -> str:
    """Render with p/q coordinates replaced by SMT symbol names or known Fractions.

    Known coordinates are folded into constants; atoms that become ground are
    decided on the spot and rendered as ``true``/``false``.
    """
    symbols = list(p_symbols) + list(q_symbols)
    if isinstance(formula, Const):
        return "true" if formula.value else "false"
    if isinstance(formula, Atom):
        lv, rv = _constant_value(formula.lhs, symbols), _constant_value(formula.rhs, symbols)
        if lv is not None and rv is not None:
            return "true" if _CMP[formula.rel](lv, rv) else "false"
        l, r = _smt_term(formula.lhs, symbols), _smt_term(formula.rhs, symbols)
        return f"({formula.rel} {l} {r})"
    op = "and" if isinstance(formula, And) else "or"
    if not formula.parts:
        return "true" if op == "and" else "false"
    inner = " ".join(to_smtlib(f, p_symbols, q_symbols) for f in formula.parts)
    return f"({op} {inner})"


def substitute_constants(values: Sequence) -> list:
    return [smt_number(v) for v in values]


def describe(formula: Formula) -> str:
    """Human-readable rendering with p1..pn, q1..qn symbols."""
    if isinstance(formula, Const):
        return "true" if formula.value else "false"
    n = None
    for clause in emit_atoms(formula):
        for atom in clause:
            n = atom.lhs.left.n if isinstance(atom.lhs, Product) else atom.lhs.n
            break
        if n:
            break
    n = n or 0
    syms = [f"p{i + 1}" for i in range(n)] + [f"q{i + 1}" for i in range(n)]
    return to_smtlib(formula, syms[:n], syms[n:])


__all__ = [
    "LinExpr",
    "Product",
    "Atom",
    "And",
    "Or",
    "Const",
    "TRUE",
    "FALSE",
    "obstacle_free_formula",
    "evaluate",
    "eval_formula",
    "emit_atoms",
    "degree",
    "to_smtlib",
    "smt_number",
    "format_rational",
]
