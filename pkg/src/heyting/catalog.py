"""Named posets, diamond sequences, counterexample truncations and the decision procedures.

Named posets, with elements listed in index order (index 0 first):

======  ==================================  ==========================================
name    elements                            covers
======  ==================================  ==========================================
P1      0 v1 v2 v3 1                        0 < v1, v2, v3 < 1
P2      0 v1 v2 v3 1                        0 < v1 < 1, 0 < v2 < v3 < 1
P3      v2 v1 v3                            v2 < v1, v2 < v3
P4      0 v1 v2 v3 v4 1                     0 < v1, v2 < v3, v4 < 1 (all four middle covers)
P5      0 v1 v2 1                           0 < v1 < 1, 0 < v2
P6      0 v1 v2 1a 1b                       0 < v1, v2; v1 < 1a, 1b; v2 < 1b
P7      0 v1 v3 v2 d1 d3                    0 < v1, v3; v1 < v2, d1; v3 < v2, d3
F(m)    0 1 .. m                            0 < i for every i
D(m)    0 1 .. m top                        0 < i < top for every i
chainN  0 .. N-1                            i < i+1
======  ==================================  ==========================================
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

from .algebra import HeytingAlgebra, heyting_from_upsets
from .duality import (DEFAULT_SEARCH_BUDGET, PMorphism, check_pmorphism, dual_of,
                      jankov_valid)
from .errors import BadSpec, InternalInconsistency, TooSmall, UnknownName
from .formulas import Equation, holds_equation
from .poset import (Poset, antichain, bits, chain, disjoint_union, isomorphic,
                    linear_sum, new_poset)


def _build(labels: Sequence[str], covers: Sequence[tuple[str, str]]) -> Poset:
    idx = {lab: i for i, lab in enumerate(labels)}
    return new_poset(len(labels), [(idx[a], idx[b]) for a, b in covers], labels)


_FIGURES = {
    "P1": (["0", "v1", "v2", "v3", "1"],
           [("0", "v1"), ("0", "v2"), ("0", "v3"), ("v1", "1"), ("v2", "1"), ("v3", "1")]),
    "P2": (["0", "v1", "v2", "v3", "1"],
           [("0", "v1"), ("v1", "1"), ("0", "v2"), ("v2", "v3"), ("v3", "1")]),
    "P3": (["v2", "v1", "v3"], [("v2", "v1"), ("v2", "v3")]),
    "P4": (["0", "v1", "v2", "v3", "v4", "1"],
           [("0", "v1"), ("0", "v2"), ("v1", "v3"), ("v1", "v4"), ("v2", "v3"), ("v2", "v4"),
            ("v3", "1"), ("v4", "1")]),
    "P5": (["0", "v1", "v2", "1"], [("0", "v1"), ("v1", "1"), ("0", "v2")]),
    "P6": (["0", "v1", "v2", "1a", "1b"],
           [("0", "v1"), ("0", "v2"), ("v1", "1a"), ("v1", "1b"), ("v2", "1b")]),
    "P7": (["0", "v1", "v3", "v2", "d1", "d3"],
           [("0", "v1"), ("0", "v3"), ("v1", "v2"), ("v1", "d1"), ("v3", "v2"), ("v3", "d3")]),
}

FORBIDDEN = ("P1", "P2", "P3", "P4")


def fork(m: int) -> Poset:
    """``F(m)``: a root with ``m`` maximal covers."""
    if m < 1:
        raise BadSpec("F(m) needs m >= 1")
    labels = ["0"] + [str(i) for i in range(1, m + 1)]
    return _build(labels, [("0", str(i)) for i in range(1, m + 1)])


def diamond(m: int) -> Poset:
    """``D(m)``: a root, ``m`` pairwise incomparable middles and a top."""
    if m < 1:
        raise BadSpec("D(m) needs m >= 1")
    mids = [str(i) for i in range(1, m + 1)]
    return _build(["0", *mids, "top"], [("0", i) for i in mids] + [(i, "top") for i in mids])


_NAME = re.compile(r"^\s*(F|D|chain|antichain)\s*\(?\s*(\d+)\s*\)?\s*$", re.IGNORECASE)


def named(name: str) -> Poset:
    """Look up ``P1``..``P7``, ``F3``/``F(3)``, ``D2``, ``chain4``, ``antichain2``."""
    key = name.strip()
    if key.upper() in _FIGURES:
        return _build(*_FIGURES[key.upper()])
    m = _NAME.match(key)
    if not m:
        raise UnknownName(f"unknown poset name {name!r}")
    kind, k = m.group(1).lower(), int(m.group(2))
    if kind == "f":
        return fork(k)
    if kind == "d":
        return diamond(k)
    if kind == "chain":
        return chain(k)
    return antichain(k)


def named_algebra(name: str) -> HeytingAlgebra:
    return heyting_from_upsets(named(name))


# -- diamond sequences ----------------------------------------------------------


def check_diamond_spec(levels: Sequence[int]) -> None:
    if not levels:
        raise BadSpec("a diamond sequence needs at least one level")
    if any(k not in (1, 2) for k in levels):
        raise BadSpec("levels must be 1 or 2")
    if levels[0] != 1:
        raise BadSpec("the top level must be a singleton")
    if levels[-1] != 1:
        raise BadSpec("the bottom level must be a singleton (downward directedness)")
    for i in range(len(levels) - 1):
        if levels[i] == levels[i + 1] == 2:
            raise BadSpec(f"adjacent 2-antichains at levels {i} and {i + 1}")


def diamond_sequence(levels: Sequence[int]) -> Poset:
    """Linear sum of antichains of the given sizes, listed top to bottom."""
    levels = list(levels)
    check_diamond_spec(levels)
    P = linear_sum([antichain(k) for k in levels])
    labels = []
    for depth, k in enumerate(levels):
        labels += [f"L{depth}"] if k == 1 else [f"L{depth}a", f"L{depth}b"]
    return P.relabel(labels)


# -- truncated counterexamples ---------------------------------------------------


@dataclass(frozen=True)
class TruncationWitness:
    case: str
    N: int
    poset: Poset
    copies: int
    morphism: PMorphism  # disjoint union of ``copies`` copies of the case poset -> ``poset``

    def verify(self) -> None:
        P = named(self.case)
        f = check_pmorphism(self.morphism.map, self.morphism.source, self.poset)
        if not f.surjective:
            raise InternalInconsistency("truncation morphism is not onto")
        if self.morphism.source.n != self.copies * P.n:
            raise InternalInconsistency("source is not the expected number of copies")
        X = self.poset
        if X.up_closure(X.minimal) != X.full:
            raise InternalInconsistency("poset is not generated by its minimal elements")
        for m in bits(X.minimal):
            if isomorphic(X.subposet(X.up[m]), P) is None:
                raise InternalInconsistency(f"upset of minimal point {X.labels[m]} is not a copy of {self.case}")

    def to_json(self) -> dict:
        return {"case": self.case, "N": self.N, "poset": self.poset.to_json(),
                "copies": self.copies, "map": list(self.morphism.map)}


def _truncation_poset(case: str, N: int) -> Poset:
    labels: list[str] = []
    pairs: list[tuple[int, int]] = []

    def add(lab):
        labels.append(lab)
        return len(labels) - 1

    if case == "P1":
        nat = [add(str(i)) for i in range(N)]
        top = add("T")
        for t in combinations(range(N), 3):
            b = add("B{" + ",".join(map(str, t)) + "}")
            pairs += [(b, nat[i]) for i in t]
        pairs += [(x, top) for x in range(len(labels)) if x != top]
    elif case == "P2":
        nat = [add(str(i)) for i in range(N)]
        primed = [add(f"{i}'") for i in range(N)]
        sigma = add("s")
        top = add("T")
        bots = []
        for n in range(N):
            for k in range(N):
                if n != k:
                    b = add(f"B{n},{k}")
                    bots.append(b)
                    pairs += [(b, nat[n]), (b, primed[k])]
        pairs += [(x, sigma) for x in nat + bots]
        pairs += [(x, top) for x in range(len(labels)) if x != top]
    elif case in ("P3", "P4"):
        ints = [add(str(i)) for i in range(N)]
        for n in range(N):
            for k in range(n + 2, N):
                b = add(f"B{{{n},{k}}}")
                pairs += [(b, ints[n]), (b, ints[k])]
        if case == "P4":
            low = list(range(len(labels)))
            sigma, tau, top = add("s"), add("t"), add("T")
            pairs += [(x, y) for x in low for y in (sigma, tau)]
            pairs += [(sigma, top), (tau, top)]
    else:
        raise UnknownName(f"unknown truncation case {case!r}")
    return new_poset(len(labels), pairs, labels)


def truncated_counterexample(case: str, N: int) -> TruncationWitness:
    """Finite piece of the counterexample poset for ``case``, with its covering map.

    The infinite rows are cut down to ``0..N-1``. The map sends one copy of
    the case poset onto ``↑m`` for each minimal ``m``.
    """
    case = case.strip().upper()
    if case not in FORBIDDEN:
        raise UnknownName(f"unknown truncation case {case!r}")
    if N < 4:
        raise TooSmall(f"truncations need N >= 4, got {N}")
    X = _truncation_poset(case, N)
    P = named(case)
    mins = list(bits(X.minimal))
    f: list[int] = []
    for m in mins:
        U = X.up[m]
        iso = isomorphic(P, X.subposet(U))
        if iso is None:
            raise InternalInconsistency(f"upset of {X.labels[m]} is not a copy of {case}")
        lift = list(bits(U))
        f += [lift[j] for j in iso]
    source = disjoint_union([P] * len(mins))
    w = TruncationWitness(case, N, X, len(mins), PMorphism(source, X, tuple(f)))
    w.verify()
    return w


# -- decision procedures -------------------------------------------------------------


@dataclass
class Verdict:
    answer: bool
    evidence: list = field(default_factory=list)
    extra: dict = field(default_factory=dict)

    def __bool__(self):
        return self.answer

    def to_json(self) -> dict:
        return {"answer": "yes" if self.answer else "no", "evidence": self.evidence, **self.extra}


def decide_equations(sigma: Sequence[Equation], budget: int | None = None) -> Verdict:
    """Yes exactly when each of ``Up(P1)``..``Up(P4)`` refutes some equation of ``sigma``."""
    kw = {} if budget is None else {"budget": budget}
    evidence = []
    ok = True
    for name in FORBIDDEN:
        A = named_algebra(name)
        names = A.element_names()
        entry = {"algebra": f"Up({name})", "refuted_by": None, "assignment": None}
        for e in sigma:
            res = holds_equation(A, e, **kw)
            if not res.valid:
                entry["refuted_by"] = str(e)
                entry["assignment"] = {v: names[a] for v, a in res.refutation.items()}
                break
        else:
            ok = False
            entry["satisfies_all"] = True
        evidence.append(entry)
    return Verdict(ok, evidence)


def _jankov_sweep(K, targets: Sequence[str], budget: int) -> tuple[bool, list]:
    evidence = []
    ok = True
    for k, A in enumerate(K):
        for t in targets:
            v = jankov_valid(A, named(t), budget)
            if not v.valid:
                ok = False
                evidence.append({"algebra": k, "jankov": t, "valid": False, "witness": v.witness.to_json()})
            else:
                evidence.append({"algebra": k, "jankov": t, "valid": True})
    return ok, evidence


def decide_generated(K: Sequence, budget: int = DEFAULT_SEARCH_BUDGET) -> Verdict:
    """Yes exactly when every member of ``K`` validates J(P1)..J(P4)."""
    ok, ev = _jankov_sweep(K, FORBIDDEN, budget)
    return Verdict(ok, ev)


def decide_representable_generated(K: Sequence, budget: int = DEFAULT_SEARCH_BUDGET) -> Verdict:
    """As :func:`decide_generated`, also reporting a depth bound ``n`` for the variety."""
    ok, ev = _jankov_sweep(K, FORBIDDEN, budget)
    n = max((max(dual_of(A).depths, default=0) for A in K), default=0)
    return Verdict(ok, ev, {"depth_bound": max(n, 1)})


PRIMITIVE_EXCLUDED = ("P1", "P2", "P5", "F3", "P7")


def decide_primitive_generated(K: Sequence, budget: int = DEFAULT_SEARCH_BUDGET) -> Verdict:
    ok, ev = _jankov_sweep(K, PRIMITIVE_EXCLUDED, budget)
    return Verdict(ok, ev)
