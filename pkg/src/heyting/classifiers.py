"""Structural classifiers: three point rule, cascades, width, diamond systems, root systems.

Every classifier accepts a Heyting algebra (read through its spectrum) or a
poset ``X`` (standing for ``Up(X)``). Multi-route classifiers run each
characterization separately and raise :class:`RouteDisagreement` when the
answers differ.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Union

from .algebra import HeytingAlgebra
from .catalog import named
from .duality import DEFAULT_SEARCH_BUDGET, dual_of, jankov_valid
from .errors import NotCascade, NotDecomposable, RouteDisagreement
from .poset import Poset, bits, isomorphic, linear_sum, antichain

AlgebraOrPoset = Union[HeytingAlgebra, Poset]


@dataclass
class ClassifierReport:
    verdict: bool
    routes: dict[str, bool] = field(default_factory=dict)
    witnesses: dict[str, object] = field(default_factory=dict)
    cross_check: bool = True

    def __bool__(self):
        return self.verdict

    def to_json(self) -> dict:
        return {"verdict": self.verdict, "routes": dict(self.routes),
                "witnesses": {k: _jsonable(v) for k, v in self.witnesses.items()},
                "cross_check": self.cross_check}


def _jsonable(v):
    if hasattr(v, "to_json"):
        return v.to_json()
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return v


def _combine(routes: dict[str, bool], witnesses: dict) -> ClassifierReport:
    values = set(routes.values())
    if len(values) > 1:
        raise RouteDisagreement(routes)
    return ClassifierReport(values.pop(), routes, witnesses, True)


# -- three point rule ------------------------------------------------------------


def _three_point_violation(X: Poset, need_common_lower: bool):
    """First ``(x, y, z)`` in lexicographic order breaking the rule.

    With ``need_common_lower`` the triple must also lie in a common ``↑w``;
    ``w`` is then the least-index such point.
    """
    for x in range(X.n):
        for y in range(X.n):
            if y == x or X.comparable(x, y):
                continue
            lower = X.down[x] & X.down[y]
            if need_common_lower and not lower:
                continue
            for z in bits(X.up[x] & ~(1 << x) & ~(1 << y)):
                if not X.leq(y, z):
                    if need_common_lower:
                        return (lower & -lower).bit_length() - 1, (x, y, z)
                    return None, (x, y, z)
    return None


def three_point_rule(X: Poset) -> ClassifierReport:
    """Whole-poset three point rule; the witness is a violating triple."""
    bad = _three_point_violation(X, False)
    if bad is None:
        return ClassifierReport(True, {"poset": True})
    return ClassifierReport(False, {"poset": False}, {"triple": bad[1]})


def three_point_rule_upsets(X: Poset) -> ClassifierReport:
    """The rule inside every principal upset ``↑w``; witness ``{"point": w, "triple": ...}``."""
    bad = _three_point_violation(X, True)
    if bad is None:
        return ClassifierReport(True, {"principal-upsets": True})
    return ClassifierReport(False, {"principal-upsets": False}, {"point": bad[0], "triple": bad[1]})


# -- cascades --------------------------------------------------------------------


CASCADE_JANKOV = ("P2", "P5", "P6")


def _jankov_route(X: Poset, targets, budget: int) -> tuple[bool, dict]:
    for t in targets:
        v = jankov_valid(X, named(t), budget)
        if not v.valid:
            return False, {"refuted": t, "witness": v.witness}
    return True, {}


def is_cascade(A: AlgebraOrPoset, budget: int = DEFAULT_SEARCH_BUDGET) -> ClassifierReport:
    X = dual_of(A)
    r = three_point_rule_upsets(X)
    ok, wit = _jankov_route(X, CASCADE_JANKOV, budget)
    witnesses = {}
    if not r.verdict:
        witnesses["principal-upsets"] = r.witnesses
    if not ok:
        witnesses["jankov"] = wit
    return _combine({"principal-upsets": r.verdict, "jankov": ok}, witnesses)


def is_cascade_width(A: AlgebraOrPoset, n: int, budget: int = DEFAULT_SEARCH_BUDGET) -> ClassifierReport:
    """Cascade of width at most ``n``; refuses inputs that are not cascades."""
    X = dual_of(A)
    if not is_cascade(X, budget):
        raise NotCascade("the Jankov characterization of width only applies to cascades")
    wide = [x for x in range(X.n) if X.widths[x] > n]
    ok, wit = _jankov_route(X, (f"F{n + 1}", f"D{n + 1}"), budget)
    witnesses = {}
    if wide:
        witnesses["spectrum"] = {"point": wide[0], "width": X.widths[wide[0]]}
    if not ok:
        witnesses["jankov"] = wit
    return _combine({"spectrum": not wide, "jankov": ok}, witnesses)


# -- diamond systems -----------------------------------------------------------------


def _upward_directed_failure(X: Poset):
    for x in range(X.n):
        U = X.up[x]
        for y in bits(U):
            for z in bits(U):
                if z > y and not (X.up[y] & X.up[z]):
                    return (x, y, z)
    return None


def _d4_failure(X: Poset):
    """First ``(⊥, x, y, z, v, ⊤)`` in lexicographic order with no ``w`` between."""
    failing = []
    for x, y in product(range(X.n), repeat=2):
        lower = X.down[x] & X.down[y]
        if not lower:
            continue
        common_up = X.up[x] & X.up[y]
        for z, v in product(bits(common_up), repeat=2):
            upper = X.up[z] & X.up[v]
            if upper and not (common_up & X.down[z] & X.down[v]):
                failing.append((lower, x, y, z, v, upper))
    if not failing:
        return None
    best = None
    for lower, x, y, z, v, upper in failing:
        b = (lower & -lower).bit_length() - 1
        t = (upper & -upper).bit_length() - 1
        cand = (b, x, y, z, v, t)
        if best is None or cand < best:
            best = cand
    return best


def is_diamond_system(X: Poset) -> ClassifierReport:
    """Check D1 to D4 in turn, stopping at the first that fails."""
    r = three_point_rule_upsets(X)
    if not r.verdict:
        return ClassifierReport(False, {"D1": False}, {"D1": r.witnesses})
    wide = [x for x in range(X.n) if X.widths[x] > 2]
    if wide:
        return ClassifierReport(False, {"D1": True, "D2": False},
                                {"D2": {"point": wide[0], "width": X.widths[wide[0]]}})
    bad = _upward_directed_failure(X)
    if bad:
        return ClassifierReport(False, {"D1": True, "D2": True, "D3": False},
                                {"D3": {"point": bad[0], "pair": bad[1:]}})
    bad = _d4_failure(X)
    if bad:
        return ClassifierReport(False, {"D1": True, "D2": True, "D3": True, "D4": False}, {"D4": bad})
    return ClassifierReport(True, {"D1": True, "D2": True, "D3": True, "D4": True})


def is_downward_directed(X: Poset) -> bool:
    return all(X.down[x] & X.down[y] for x in range(X.n) for y in range(x + 1, X.n))


def is_diamond_sequence(X: Poset) -> bool:
    return is_downward_directed(X) and is_diamond_system(X).verdict


@dataclass(frozen=True)
class Decomposition:
    blocks: tuple[tuple[str, tuple[int, ...]], ...]  # ("singleton" | "pair-block", points), top first

    def kinds(self) -> list[str]:
        return [k for k, _ in self.blocks]

    def reassemble(self) -> Poset:
        parts = []
        for kind, _ in self.blocks:
            parts += [antichain(1)] if kind == "singleton" else [antichain(2), antichain(1)]
        return linear_sum(parts)

    def to_json(self) -> dict:
        return {"blocks": [{"kind": k, "points": list(p)} for k, p in self.blocks]}


def decompose_shapes(X: Poset) -> Decomposition:
    """Split a rooted diamond sequence into singleton and pair blocks, top down.

    Levels are the depth classes. The split is forced: a pair block is a
    2-level together with the singleton directly below it.
    """
    if not X.is_rooted:
        raise NotDecomposable(0, "the poset is not rooted")
    depth = max(X.depths)
    levels = [[x for x in range(X.n) if X.depths[x] == d] for d in range(1, depth + 1)]
    below = 0
    for i, lev in enumerate(levels):
        if len(lev) > 2:
            raise NotDecomposable(i, f"level has {len(lev)} points")
        if i == 0 and len(lev) != 1:
            raise NotDecomposable(i, "the top level is not a singleton")
        if i > 0 and len(lev) == 2 and len(levels[i - 1]) == 2:
            raise NotDecomposable(i, "two adjacent 2-antichains")
        if len(lev) == 2 and i == len(levels) - 1:
            raise NotDecomposable(i, "2-antichain at the bottom")
        for x in lev:
            if X.up[x] & ~(1 << x) != below:
                raise NotDecomposable(i, "level is not below everything above it")
        below |= sum(1 << x for x in lev)
    blocks = []
    i = 0
    while i < len(levels):
        if len(levels[i]) == 1:
            blocks.append(("singleton", tuple(levels[i])))
            i += 1
        else:
            blocks.append(("pair-block", tuple(levels[i] + levels[i + 1])))
            i += 2
    dec = Decomposition(tuple(blocks))
    if isomorphic(dec.reassemble(), X) is None:
        raise NotDecomposable(len(levels) - 1, "blocks do not reassemble to the poset")
    return dec


DIAMOND_JANKOV = ("P1", "P2", "P3", "P4")


def is_diamond_algebra(A: AlgebraOrPoset, budget: int = DEFAULT_SEARCH_BUDGET) -> ClassifierReport:
    X = dual_of(A)
    sys = is_diamond_system(X)
    bad_upset = next((x for x in range(X.n) if not is_diamond_sequence(X.subposet(X.up[x]))), None)
    ok, wit = _jankov_route(X, DIAMOND_JANKOV, budget)
    witnesses = {}
    if not sys.verdict:
        witnesses["spectrum"] = sys.witnesses
    if bad_upset is not None:
        witnesses["principal-upsets"] = {"point": bad_upset}
    if not ok:
        witnesses["jankov"] = wit
    return _combine({"spectrum": sys.verdict, "principal-upsets": bad_upset is None, "jankov": ok},
                    witnesses)


def is_root_system(X: Poset) -> bool:
    return all(w <= 1 for w in X.widths)
