"""Intuitionistic propositional formulas: syntax, evaluation, validity.

Grammar (lowest to highest precedence)::

    formula := iff
    iff     := imp ("<->" imp)*
    imp     := or ("->" imp)?          right associative
    or      := and ("|" and)*
    and     := neg ("&" neg)*
    neg     := "~" neg | atom
    atom    := ident | "0" | "1" | "(" formula ")"

``~a`` is ``a -> 0`` and ``a <-> b`` is ``(a -> b) & (b -> a)``. The Unicode
connectives ¬ ∧ ∨ → ↔ ⊥ ⊤ are accepted on input. An equation is
``formula = formula``; a bare formula ``φ`` means ``φ = 1``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import reduce
from itertools import product
from typing import Iterable, Mapping, Union

import numpy as np

from .algebra import HeytingAlgebra, heyting_from_upsets, require_si
from .errors import BudgetExceeded, InputError, ParseError, UnboundVariable
from .poset import Poset, all_upsets, bits, indices_of

DEFAULT_ASSIGNMENT_BUDGET = 1 << 26
DEFAULT_JANKOV_SYNTACTIC_CAP = 5
_CHUNK = 1 << 18


# -- syntax --------------------------------------------------------------------


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Bot:
    pass


@dataclass(frozen=True)
class Top:
    pass


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Imp:
    left: "Formula"
    right: "Formula"


Formula = Union[Var, Bot, Top, And, Or, Imp]


def Neg(a: Formula) -> Formula:
    return Imp(a, Bot())


def Iff(a: Formula, b: Formula) -> Formula:
    return And(Imp(a, b), Imp(b, a))


def big_and(parts: Iterable[Formula]) -> Formula:
    parts = list(parts)
    return reduce(And, parts) if parts else Top()


def big_or(parts: Iterable[Formula]) -> Formula:
    parts = list(parts)
    return reduce(Or, parts) if parts else Bot()


@dataclass(frozen=True)
class Equation:
    lhs: Formula
    rhs: Formula = Top()

    def __str__(self):
        if self.rhs == Top():
            return to_text(self.lhs)
        return f"{to_text(self.lhs)} = {to_text(self.rhs)}"


def _natural_key(name: str):
    return [int(t) if t.isdigit() else t for t in re.split(r"(\d+)", name)]


def variables(phi: Formula) -> tuple[str, ...]:
    """Variable names, in natural sort order (``p2`` before ``p10``)."""
    found = set()
    stack = [phi]
    while stack:
        f = stack.pop()
        if isinstance(f, Var):
            found.add(f.name)
        elif isinstance(f, (And, Or, Imp)):
            stack.append(f.left)
            stack.append(f.right)
    return tuple(sorted(found, key=_natural_key))


def size(phi: Formula) -> int:
    if isinstance(phi, (And, Or, Imp)):
        return 1 + size(phi.left) + size(phi.right)
    return 1


# -- parsing -------------------------------------------------------------------

_UNICODE = {"¬": "~", "∧": "&", "∨": "|", "→": "->", "↔": "<->", "⊥": "0", "⊤": "1"}
_TOKEN = re.compile(r"\s*(?:(<->|->|[~&|()=01])|([A-Za-z_][A-Za-z0-9_']*))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    for u, a in _UNICODE.items():
        text = text.replace(u, f" {a} ")
    out = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(text, pos, {"identifier", "0", "1", "(", "~"})
        start = m.start(1) if m.group(1) else m.start(2)
        if m.group(1):
            out.append((m.group(1), m.group(1), start))
        else:
            out.append(("ident", m.group(2), start))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out, text


class _Parser:
    def __init__(self, text: str):
        self.toks, self.text = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i][0]

    def take(self, kind):
        tok = self.toks[self.i]
        if tok[0] != kind:
            raise ParseError(self.text, tok[2], {kind})
        self.i += 1
        return tok

    def fail(self, expected):
        raise ParseError(self.text, self.toks[self.i][2], expected)

    def formula(self):
        left = self.imp()
        while self.peek() == "<->":
            self.i += 1
            left = Iff(left, self.imp())
        return left

    def imp(self):
        left = self.or_()
        if self.peek() == "->":
            self.i += 1
            return Imp(left, self.imp())
        return left

    def or_(self):
        left = self.and_()
        while self.peek() == "|":
            self.i += 1
            left = Or(left, self.and_())
        return left

    def and_(self):
        left = self.neg()
        while self.peek() == "&":
            self.i += 1
            left = And(left, self.neg())
        return left

    def neg(self):
        if self.peek() == "~":
            self.i += 1
            return Neg(self.neg())
        return self.atom()

    def atom(self):
        kind = self.peek()
        if kind == "ident":
            return Var(self.take("ident")[1])
        if kind == "0":
            self.i += 1
            return Bot()
        if kind == "1":
            self.i += 1
            return Top()
        if kind == "(":
            self.i += 1
            f = self.formula()
            self.take(")")
            return f
        self.fail({"identifier", "0", "1", "(", "~"})


def _after_formula(p: _Parser, allowed: set[str]):
    if p.peek() not in allowed:
        exp = {"->", "<->", "|", "&"} | (allowed - {"end"}) | {"end of input"}
        p.fail(exp)


def parse(text: str) -> Formula:
    p = _Parser(text)
    f = p.formula()
    _after_formula(p, {"end"})
    return f


def parse_equation(text: str) -> Equation:
    p = _Parser(text)
    lhs = p.formula()
    _after_formula(p, {"end", "="})
    if p.peek() == "=":
        p.i += 1
        rhs = p.formula()
        _after_formula(p, {"end"})
        return Equation(lhs, rhs)
    return Equation(lhs)


# -- printing ------------------------------------------------------------------

_IMP, _OR, _AND, _NEG, _ATOM = range(1, 6)


def _prec(f: Formula) -> int:
    if isinstance(f, Imp):
        return _NEG if isinstance(f.right, Bot) else _IMP
    if isinstance(f, Or):
        return _OR
    if isinstance(f, And):
        return _AND
    return _ATOM


def to_text(f: Formula) -> str:
    """Canonical ASCII rendering with the fewest parentheses that reparse to ``f``."""
    def wrap(g, need):
        s = to_text(g)
        return f"({s})" if need else s

    if isinstance(f, Var):
        return f.name
    if isinstance(f, Bot):
        return "0"
    if isinstance(f, Top):
        return "1"
    p = _prec(f)
    if p == _NEG:
        return "~" + wrap(f.left, _prec(f.left) < _NEG)
    op = {_IMP: "->", _OR: "|", _AND: "&"}[p]
    if p == _IMP:
        return f"{wrap(f.left, _prec(f.left) <= p)} {op} {wrap(f.right, _prec(f.right) < p)}"
    return f"{wrap(f.left, _prec(f.left) < p)} {op} {wrap(f.right, _prec(f.right) <= p)}"


# -- algebraic evaluation --------------------------------------------------------


def evaluate(A: HeytingAlgebra, phi: Formula, assignment: Mapping[str, int]) -> int:
    """Value of ``phi`` in ``A`` under ``assignment`` (variable -> element)."""
    if isinstance(phi, Var):
        try:
            return assignment[phi.name]
        except KeyError:
            raise UnboundVariable(phi.name) from None
    if isinstance(phi, Bot):
        return A.bot
    if isinstance(phi, Top):
        return A.top
    a = evaluate(A, phi.left, assignment)
    b = evaluate(A, phi.right, assignment)
    if isinstance(phi, And):
        return A.meet[a][b]
    if isinstance(phi, Or):
        return A.join[a][b]
    return A.imp[a][b]


def _eval_np(A: HeytingAlgebra, phi: Formula, cols: Mapping[str, np.ndarray], length: int) -> np.ndarray:
    M, J, I = A.tables_np
    if isinstance(phi, Var):
        return cols[phi.name]
    if isinstance(phi, Bot):
        return np.full(length, A.bot, dtype=M.dtype)
    if isinstance(phi, Top):
        return np.full(length, A.top, dtype=M.dtype)
    a = _eval_np(A, phi.left, cols, length)
    b = _eval_np(A, phi.right, cols, length)
    table = M if isinstance(phi, And) else J if isinstance(phi, Or) else I
    return table[a, b]


@dataclass(frozen=True)
class Validity:
    """Outcome of an exhaustive validity check.

    ``refutation`` maps each variable to an algebra element (or, for Kripke
    checks, to an upset of the poset as a bitmask).
    """
    valid: bool
    refutation: dict | None = None
    checked: int = 0

    def __bool__(self):
        return self.valid


def _first_failure(A: HeytingAlgebra, names: tuple[str, ...], fails, budget: int) -> Validity:
    n, k = A.size, len(names)
    total = n ** k
    if total > budget:
        raise BudgetExceeded("assignment search", budget, total, unit="assignments")
    strides = [n ** (k - 1 - i) for i in range(k)]
    dt = A.tables_np[0].dtype
    for start in range(0, total, _CHUNK):
        idx = np.arange(start, min(total, start + _CHUNK), dtype=np.int64)
        cols = {v: ((idx // s) % n).astype(dt) for v, s in zip(names, strides)}
        bad = np.flatnonzero(fails(cols, len(idx)))
        if len(bad):
            j = int(idx[bad[0]])
            return Validity(False, {v: (j // s) % n for v, s in zip(names, strides)}, j + 1)
    return Validity(True, None, total)


def valid_in(A: HeytingAlgebra, phi: Formula, budget: int = DEFAULT_ASSIGNMENT_BUDGET) -> Validity:
    """``A ⊨ phi``, by trying every assignment in mixed-radix lexicographic order.

    Variables are ordered as in :func:`variables`, elements by index; the
    first refuting assignment is returned.
    """
    names = variables(phi)
    return _first_failure(A, names, lambda cols, m: _eval_np(A, phi, cols, m) != A.top, budget)


def holds_equation(A: HeytingAlgebra, e: Equation, budget: int = DEFAULT_ASSIGNMENT_BUDGET) -> Validity:
    names = tuple(sorted(set(variables(e.lhs)) | set(variables(e.rhs)), key=_natural_key))
    return _first_failure(
        A, names, lambda cols, m: _eval_np(A, e.lhs, cols, m) != _eval_np(A, e.rhs, cols, m), budget)


# -- Kripke evaluation -------------------------------------------------------------


def _truth_sets(X: Poset, phi: Formula, cols: Mapping[str, np.ndarray], length: int) -> np.ndarray:
    full = np.uint64(X.full)
    if isinstance(phi, Var):
        return cols[phi.name]
    if isinstance(phi, Bot):
        return np.zeros(length, dtype=np.uint64)
    if isinstance(phi, Top):
        return np.full(length, full, dtype=np.uint64)
    a = _truth_sets(X, phi.left, cols, length)
    b = _truth_sets(X, phi.right, cols, length)
    if isinstance(phi, And):
        return a & b
    if isinstance(phi, Or):
        return a | b
    # x forces a -> b iff every point above x forcing a forces b
    bad = a & ~b
    below = np.zeros(length, dtype=np.uint64)
    one = np.uint64(1)
    for x in range(X.n):
        hit = ((bad >> np.uint64(x)) & one).astype(bool)
        below |= np.where(hit, np.uint64(X.down[x]), np.uint64(0))
    return full & ~below


def forced_sets(X: Poset, phi: Formula, valuation: Mapping[str, int]) -> int:
    """Set of points of ``X`` forcing ``phi`` under a valuation by upsets."""
    if X.n > 63:
        raise BudgetExceeded("Kripke evaluation", 63, X.n, unit="poset elements")
    missing = [v for v in variables(phi) if v not in valuation]
    if missing:
        raise UnboundVariable(missing[0])
    cols = {v: np.array([valuation[v]], dtype=np.uint64) for v in variables(phi)}
    return int(_truth_sets(X, phi, cols, 1)[0])


def valid_on_poset(X: Poset, phi: Formula, budget: int = DEFAULT_ASSIGNMENT_BUDGET) -> Validity:
    """Kripke validity of ``phi`` on ``X``.

    Truth at a point depends only on the valuation inside its principal
    upset, and every point lies above a minimal one, so it is enough to try
    every valuation on each ``↑m`` for minimal ``m`` and ask that ``phi``
    holds everywhere in ``↑m``. The refutation maps variables to upsets of
    ``X`` (bitmasks).
    """
    names = variables(phi)
    checked = 0
    for m in bits(X.minimal):
        S = X.up[m]
        sub = X.subposet(S)
        if sub.n > 63:
            raise BudgetExceeded("Kripke evaluation", 63, sub.n, unit="poset elements")
        ups = np.array(all_upsets(sub, cap=budget), dtype=np.uint64)
        r, k = len(ups), len(names)
        total = r ** k
        if checked + total > budget:
            raise BudgetExceeded("valuation search", budget, checked + total, unit="valuations")
        strides = [r ** (k - 1 - i) for i in range(k)]
        full = np.uint64(sub.full)
        for start in range(0, total, _CHUNK):
            idx = np.arange(start, min(total, start + _CHUNK), dtype=np.int64)
            cols = {v: ups[(idx // s) % r] for v, s in zip(names, strides)}
            bad = np.flatnonzero(_truth_sets(sub, phi, cols, len(idx)) != full)
            if len(bad):
                j = int(idx[bad[0]])
                lift = indices_of(S)
                ref = {}
                for v, s in zip(names, strides):
                    local = int(ups[(j // s) % r])
                    ref[v] = sum(1 << lift[i] for i in bits(local))
                return Validity(False, ref, checked + j + 1)
        checked += total
    return Validity(True, None, checked)


def valid_on_upsets(X: Poset, phi: Formula, budget: int = DEFAULT_ASSIGNMENT_BUDGET) -> Validity:
    """Same question answered through the algebra ``Up(X)``."""
    return valid_in(heyting_from_upsets(X), phi, budget)


# -- named formulas --------------------------------------------------------------------


def p(i) -> Var:
    return Var(f"p{i}")


def depth_formula(n: int) -> Formula:
    """``d1 = p1 | ~p1``, ``d(m+1) = p(m+1) | (p(m+1) -> dm)``."""
    if n < 1:
        raise InputError("depth formula needs n >= 1")
    d = Or(p(1), Imp(p(1), Bot()))
    for m in range(2, n + 1):
        d = Or(p(m), Imp(p(m), d))
    return d


def width_formula(n: int) -> Formula:
    """Join over ``i = 0..n`` of ``p_i -> (join of p_j, j != i)``."""
    if n < 1:
        raise InputError("width formula needs n >= 1")
    return big_or(Imp(p(i), big_or(p(j) for j in range(n + 1) if j != i)) for i in range(n + 1))


def weak_peirce() -> Formula:
    P, Q = Var("p"), Var("q")
    return Or(Imp(P, Q), Imp(Imp(Imp(Q, P), Q), Q))


def godel_dummett() -> Formula:
    P, Q = Var("p"), Var("q")
    return Or(Imp(P, Q), Imp(Q, P))


def excluded_middle() -> Formula:
    return Or(Var("p"), Neg(Var("p")))


def jankov_syntactic(A: HeytingAlgebra, max_size: int = DEFAULT_JANKOV_SYNTACTIC_CAP) -> Formula:
    """Diagram formula of a finite SI algebra.

    One variable ``x<a>`` per element. The antecedent says the variables
    respect meet, join, implication and bottom; the consequent is the
    variable of the second largest element.
    """
    s = require_si(A)
    if A.size > max_size:
        raise BudgetExceeded("syntactic Jankov formula", max_size, A.size, unit="elements")
    x = [Var(f"x{a}") for a in range(A.size)]
    parts = []
    for a in range(A.size):
        for b in range(a, A.size):
            parts.append(Iff(x[A.meet[a][b]], And(x[a], x[b])))
            parts.append(Iff(x[A.join[a][b]], Or(x[a], x[b])))
    for a in range(A.size):
        for b in range(A.size):
            parts.append(Iff(x[A.imp[a][b]], Imp(x[a], x[b])))
    parts.append(Iff(x[A.bot], Bot()))
    return Imp(big_and(parts), x[s])
