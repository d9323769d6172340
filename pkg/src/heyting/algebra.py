"""Finite Heyting algebras as explicit operation tables.

Elements are indices ``0..size-1``. Construction goes either through the
upsets of a poset (:func:`heyting_from_upsets`) or through raw tables that
are validated (:func:`algebra_from_tables`). Quotients and subalgebras are
enumerated by brute force and serve as the SH oracle in :mod:`heyting.duality`.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Iterator, Sequence

import numpy as np

from .errors import (AdjunctionFails, BudgetExceeded, InputError, NotDistributive,
                     NotLattice, NotSI)
from .poset import Poset, all_upsets, bits, indices_of, isomorphic

#: largest poset whose upset algebra is materialised
MAX_UPSET_POSET = 20
#: largest algebra materialised as tables
DEFAULT_ALGEBRA_CAP = 4096
#: size limit for quotient/subalgebra enumeration
DEFAULT_ORACLE_CAP = 64
DEFAULT_SUBALGEBRA_CAP = 1 << 14

Table = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class HeytingAlgebra:
    above: tuple[int, ...]  # above[a]: bitmask of {b : a <= b}
    meet: Table
    join: Table
    imp: Table
    bot: int
    top: int
    origin: str = "abstract"
    # what each element stands for: an upset mask (origin "upsets") or an
    # element of a parent algebra (quotients, subalgebras)
    carrier: tuple[Any, ...] | None = field(default=None, compare=False)
    poset: Poset | None = field(default=None, compare=False, repr=False)

    @property
    def size(self) -> int:
        return len(self.above)

    def __len__(self):
        return len(self.above)

    def le(self, a: int, b: int) -> bool:
        return bool(self.above[a] >> b & 1)

    def neg(self, a: int) -> int:
        return self.imp[a][self.bot]

    @cached_property
    def order(self) -> Poset:
        """The lattice order as a poset."""
        return Poset(self.above, tuple(self.element_names()))

    def element_names(self) -> list[str]:
        if self.origin == "upsets" and self.poset is not None:
            return ["{" + ",".join(self.poset.names(m)) + "}" for m in self.carrier]
        return [str(a) for a in range(self.size)]

    def index_of_upset(self, mask: int) -> int:
        """Element of ``Up(X)`` for the upset ``mask``."""
        if self.origin != "upsets":
            raise InputError("algebra is not an algebra of upsets")
        return self._upset_index[mask]

    @cached_property
    def _upset_index(self) -> dict[int, int]:
        return {m: i for i, m in enumerate(self.carrier)}

    @cached_property
    def tables_np(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        dt = np.int16 if self.size < 1 << 15 else np.int32
        return (np.array(self.meet, dtype=dt).reshape(self.size, self.size),
                np.array(self.join, dtype=dt).reshape(self.size, self.size),
                np.array(self.imp, dtype=dt).reshape(self.size, self.size))

    @cached_property
    def leq_np(self) -> np.ndarray:
        n = self.size
        m = np.zeros((n, n), dtype=bool)
        for a, ab in enumerate(self.above):
            for b in bits(ab):
                m[a, b] = True
        return m

    def to_json(self) -> dict:
        return {
            "size": self.size,
            "leq": [[bool(self.above[a] >> b & 1) for b in range(self.size)] for a in range(self.size)],
            "implies": [list(r) for r in self.imp],
            "bot": self.bot,
            "top": self.top,
        }

    @classmethod
    def from_json(cls, data: dict) -> "HeytingAlgebra":
        try:
            return algebra_from_tables(int(data["size"]), data["leq"], data["implies"],
                                       int(data["bot"]), int(data["top"]))
        except (KeyError, TypeError, ValueError) as e:
            raise InputError(f"bad algebra JSON: {e}") from None

    def __repr__(self):
        return f"HeytingAlgebra(size={self.size}, origin={self.origin})"


# -- construction ------------------------------------------------------------


def heyting_from_upsets(X: Poset, max_size: int = DEFAULT_ALGEBRA_CAP) -> HeytingAlgebra:
    """``Up(X)`` with union, intersection and ``U -> V = X \\ ↓(U \\ V)``."""
    if X.n > MAX_UPSET_POSET:
        raise BudgetExceeded("upset algebra", MAX_UPSET_POSET, X.n, unit="poset elements")
    ups = all_upsets(X, cap=max_size)
    n = len(ups)
    index = {m: i for i, m in enumerate(ups)}
    full = X.full
    down_cache: dict[int, int] = {}
    meet, join, imp = [], [], []
    for u in ups:
        mrow, jrow, irow = [], [], []
        for v in ups:
            mrow.append(index[u & v])
            jrow.append(index[u | v])
            d = u & ~v
            dc = down_cache.get(d)
            if dc is None:
                dc = down_cache[d] = X.down_closure(d)
            irow.append(index[full & ~dc])
        meet.append(tuple(mrow))
        join.append(tuple(jrow))
        imp.append(tuple(irow))
    above = []
    for u in ups:
        above.append(sum(1 << index[v] for v in ups if u & ~v == 0))
    return HeytingAlgebra(tuple(above), tuple(meet), tuple(join), tuple(imp),
                          bot=index[0], top=index[full], origin="upsets",
                          carrier=tuple(ups), poset=X)


def _leq_masks(size: int, leq) -> list[int]:
    rows = []
    if len(leq) != size:
        raise InputError("leq must be size x size")
    for a in range(size):
        row = leq[a]
        if len(row) != size:
            raise InputError("leq must be size x size")
        rows.append(sum(1 << b for b in range(size) if row[b]))
    return rows


def _glb_table(P: Poset, rel: Sequence[int], kind: str) -> Table:
    """Greatest element of ``rel[a] & rel[b]`` w.r.t. ``rel`` read as down-masks."""
    n = P.n
    out = []
    for a in range(n):
        row = []
        for b in range(n):
            common = rel[a] & rel[b]
            best = None
            for m in bits(common):
                if rel[m] == common:
                    best = m
                    break
            if best is None:
                raise NotLattice(a, b, kind)
            row.append(best)
        out.append(tuple(row))
    return tuple(out)


def algebra_from_tables(size: int, leq, implies, bot: int, top: int) -> HeytingAlgebra:
    """Validated algebra from an order matrix and an implication table.

    Meet and join are derived from ``leq``. Raises :class:`NotLattice`,
    :class:`NotDistributive` or :class:`AdjunctionFails` naming the failing
    elements.
    """
    if size < 1:
        raise InputError("an algebra has at least one element")
    P = Poset.from_up(_leq_masks(size, leq))
    meet = _glb_table(P, P.down, "meet")
    join = _glb_table(P, P.up, "join")
    if len(implies) != size or any(len(r) != size for r in implies):
        raise InputError("implies must be size x size")
    imp = tuple(tuple(int(x) for x in r) for r in implies)
    if any(not 0 <= x < size for r in imp for x in r):
        raise InputError("implication table entry out of range")
    if P.up[bot] != P.full or P.down[top] != P.full:
        raise InputError("bot/top are not the least/greatest elements")
    A = HeytingAlgebra(P.up, meet, join, imp, bot, top, origin="abstract")
    check_algebra(A)
    return A


def check_algebra(A: HeytingAlgebra) -> None:
    """Exhaustive check of distributivity and of ``a&b <= c  iff  a <= b->c``."""
    n = A.size
    M, J, I = (t.astype(np.intp) for t in A.tables_np)
    L = A.leq_np
    idx = np.arange(n)
    for a in range(n):
        lhs = M[a][J]                        # a & (b | c)  over (b, c)
        rhs = J[M[a][:, None], M[a][None, :]]  # (a & b) | (a & c)
        bad = np.argwhere(lhs != rhs)
        if len(bad):
            b, c = bad[0]
            raise NotDistributive(a, int(b), int(c))
    for a in range(n):
        left = L[M[a]][:, idx]               # a & b <= c over (b, c)
        right = L[a][I]                      # a <= b -> c
        bad = np.argwhere(left != right)
        if len(bad):
            b, c = bad[0]
            raise AdjunctionFails(a, int(b), int(c))


def boolean_algebra(k: int) -> HeytingAlgebra:
    """The Boolean algebra with ``2**k`` elements, as ``Up`` of a ``k``-antichain."""
    from .poset import antichain
    return heyting_from_upsets(antichain(k))


# -- structure -----------------------------------------------------------------


def join_irreducibles(A: HeytingAlgebra) -> list[int]:
    """Elements other than bottom with exactly one lower cover."""
    low = A.order.lower_covers
    return [j for j in range(A.size) if j != A.bot and low[j].bit_count() == 1]


def is_fsi(A: HeytingAlgebra) -> bool:
    """Top is join-prime (and the algebra is nontrivial)."""
    if A.size < 2:
        return False
    t = A.top
    return all(a == t or b == t for a in range(A.size) for b in range(A.size) if A.join[a][b] == t)


def second_largest(A: HeytingAlgebra) -> int | None:
    """The element right below top that every other non-top element lies under."""
    if A.size < 2:
        return None
    cover = A.order.lower_covers[A.top]
    if cover.bit_count() != 1:
        return None
    c = cover.bit_length() - 1
    if all(a == A.top or A.le(a, c) for a in range(A.size)):
        return c
    return None


def is_si(A: HeytingAlgebra) -> bool:
    return second_largest(A) is not None


def require_si(A: HeytingAlgebra) -> int:
    s = second_largest(A)
    if s is None:
        raise NotSI(f"{A!r} is not subdirectly irreducible")
    return s


def algebras_isomorphic(A: HeytingAlgebra, B: HeytingAlgebra) -> tuple[int, ...] | None:
    """Isomorphism of Heyting algebras.

    The Heyting operations are determined by the order, so a lattice-order
    isomorphism is a Heyting isomorphism.
    """
    return isomorphic(A.order, B.order)


# -- filters, quotients, subalgebras --------------------------------------------


def filters(A: HeytingAlgebra) -> list[int]:
    """All filters as bitmasks. Finite filters are principal: one per element."""
    return [A.above[a] for a in range(A.size)]


def is_filter(A: HeytingAlgebra, s: int) -> bool:
    if not s >> A.top & 1:
        return False
    for a in bits(s):
        if A.above[a] & ~s:
            return False
        for b in bits(s):
            if not s >> A.meet[a][b] & 1:
                return False
    return True


def _restrict(A: HeytingAlgebra, elems: list[int], imp_of, top: int, origin: str) -> HeytingAlgebra:
    pos = {e: k for k, e in enumerate(elems)}
    above = tuple(sum(1 << pos[f] for f in elems if A.le(e, f)) for e in elems)
    meet = tuple(tuple(pos[A.meet[a][b]] for b in elems) for a in elems)
    join = tuple(tuple(pos[A.join[a][b]] for b in elems) for a in elems)
    imp = tuple(tuple(pos[imp_of(a, b)] for b in elems) for a in elems)
    return HeytingAlgebra(above, meet, join, imp, pos[A.bot], pos[top], origin=origin, carrier=tuple(elems))


def quotient(A: HeytingAlgebra, f: int) -> HeytingAlgebra:
    """``A`` modulo the congruence of the filter ``↑f``.

    ``a`` and ``b`` are identified when ``a & f == b & f``; each class is
    represented by its least member ``a & f``, so the carrier is ``↓f`` with
    implication ``(a -> b) & f``.
    """
    elems = [a for a in range(A.size) if A.le(a, f)]
    return _restrict(A, elems, lambda a, b: A.meet[A.imp[a][b]][f], f, "quotient")


def quotients(A: HeytingAlgebra, cap: int = DEFAULT_ORACLE_CAP) -> Iterator[HeytingAlgebra]:
    """``A/F`` for every filter ``F``, from the largest filter to the smallest."""
    if A.size > cap:
        raise BudgetExceeded("quotient enumeration", cap, A.size, unit="elements")
    for f in sorted(range(A.size), key=lambda a: (A.above[a].bit_count(), a), reverse=True):
        yield quotient(A, f)


def _close(A: HeytingAlgebra, s: int) -> int:
    todo = indices_of(s)
    while todo:
        new = []
        cur = indices_of(s)
        for a in todo:
            for b in cur:
                for c in (A.meet[a][b], A.join[a][b], A.imp[a][b], A.imp[b][a]):
                    if not s >> c & 1:
                        s |= 1 << c
                        new.append(c)
        todo = new
    return s


def subuniverses(A: HeytingAlgebra, cap: int = DEFAULT_ORACLE_CAP,
                 max_count: int = DEFAULT_SUBALGEBRA_CAP) -> list[int]:
    """Carriers of all subalgebras, as bitmasks, smallest first.

    Every subalgebra is reached from ``{0, 1}`` by adding one element at a
    time and closing, so a breadth-first search over closures finds them all.
    """
    if A.size > cap:
        raise BudgetExceeded("subalgebra enumeration", cap, A.size, unit="elements")
    start = _close(A, (1 << A.bot) | (1 << A.top))
    seen = {start}
    queue = deque([start])
    while queue:
        s = queue.popleft()
        for a in range(A.size):
            if s >> a & 1:
                continue
            t = _close(A, s | (1 << a))
            if t not in seen:
                seen.add(t)
                if len(seen) > max_count:
                    raise BudgetExceeded("subalgebra enumeration", max_count, len(seen), unit="subalgebras")
                queue.append(t)
    return sorted(seen, key=lambda m: (m.bit_count(), m))


def subalgebra(A: HeytingAlgebra, s: int) -> HeytingAlgebra:
    return _restrict(A, indices_of(s), lambda a, b: A.imp[a][b], A.top, "subalgebra")


def subalgebras(A: HeytingAlgebra, cap: int = DEFAULT_ORACLE_CAP, up_to_iso: bool = False) -> Iterator[HeytingAlgebra]:
    """Every subalgebra of ``A``; with ``up_to_iso`` one per isomorphism type."""
    kept: list[HeytingAlgebra] = []
    for s in subuniverses(A, cap):
        B = subalgebra(A, s)
        if up_to_iso:
            if any(C.size == B.size and algebras_isomorphic(B, C) for C in kept):
                continue
            kept.append(B)
        yield B
