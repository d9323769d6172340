"""Finite posets on dense indices ``0..n-1`` with order relations stored as bitmasks.

A subset of a poset is an ``int`` whose bit ``i`` is set when element ``i``
belongs to it. ``Poset.up[i]`` is the principal upset of ``i`` (including
``i``) and ``Poset.down[i]`` the principal downset.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from .errors import BudgetExceeded, CycleError, EmptyPoset, InputError

#: cap on the number of upsets produced by :func:`enumerate_upsets`
DEFAULT_UPSET_CAP = 1 << 16


def bits(mask: int) -> Iterator[int]:
    """Indices of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def indices_of(mask: int) -> list[int]:
    return list(bits(mask))


@dataclass(frozen=True)
class Poset:
    up: tuple[int, ...]
    labels: tuple[str, ...]

    def __post_init__(self):
        if len(self.labels) != len(self.up):
            raise InputError("one label per element required")

    @classmethod
    def from_up(cls, up: Sequence[int], labels: Sequence[str] | None = None) -> "Poset":
        """Build from principal upsets, checking the partial order axioms."""
        n = len(up)
        full = (1 << n) - 1
        for i, u in enumerate(up):
            if u & ~full:
                raise InputError(f"element {i} relates to an index >= {n}")
            if not u >> i & 1:
                raise InputError(f"relation is not reflexive at {i}")
            for j in bits(u):
                if up[j] & ~u:
                    raise InputError(f"relation is not transitive at {i} <= {j}")
                if j != i and up[j] >> i & 1:
                    raise CycleError(i, j)
        if labels is None:
            labels = [str(i) for i in range(n)]
        return cls(tuple(up), tuple(str(x) for x in labels))

    # -- basic structure -------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.up)

    def __len__(self):
        return len(self.up)

    @property
    def full(self) -> int:
        return (1 << len(self.up)) - 1

    @cached_property
    def down(self) -> tuple[int, ...]:
        down = [0] * self.n
        for i, u in enumerate(self.up):
            for j in bits(u):
                down[j] |= 1 << i
        return tuple(down)

    def leq(self, x: int, y: int) -> bool:
        return bool(self.up[x] >> y & 1)

    def comparable(self, x: int, y: int) -> bool:
        return bool(self.up[x] >> y & 1 or self.up[y] >> x & 1)

    @cached_property
    def upper_covers(self) -> tuple[int, ...]:
        """``upper_covers[x]``: mask of the immediate successors of ``x``."""
        out = []
        for x, u in enumerate(self.up):
            strict = u & ~(1 << x)
            above = 0
            for y in bits(strict):
                above |= self.up[y] & ~(1 << y)
            out.append(strict & ~above)
        return tuple(out)

    @cached_property
    def lower_covers(self) -> tuple[int, ...]:
        low = [0] * self.n
        for x, c in enumerate(self.upper_covers):
            for y in bits(c):
                low[y] |= 1 << x
        return tuple(low)

    @property
    def covers(self) -> list[tuple[int, int]]:
        """Hasse diagram edges ``(x, y)`` with ``y`` covering ``x``."""
        return [(x, y) for x in range(self.n) for y in bits(self.upper_covers[x])]

    @cached_property
    def maximal(self) -> int:
        return mask_of(x for x in range(self.n) if not self.upper_covers[x])

    @cached_property
    def minimal(self) -> int:
        return mask_of(x for x in range(self.n) if not self.lower_covers[x])

    @property
    def root(self) -> int | None:
        """The least element, if there is one."""
        for x, u in enumerate(self.up):
            if u == self.full:
                return x
        return None

    @property
    def is_rooted(self) -> bool:
        return self.root is not None

    @cached_property
    def topdown(self) -> tuple[int, ...]:
        """A linear extension read from the top: every ``x`` comes after all of ``↑x``."""
        return tuple(sorted(range(self.n), key=lambda x: (self.up[x].bit_count(), x)))

    # -- closures --------------------------------------------------------

    def up_closure(self, s: int) -> int:
        out = 0
        for x in bits(s):
            out |= self.up[x]
        return out

    def down_closure(self, s: int) -> int:
        out = 0
        for x in bits(s):
            out |= self.down[x]
        return out

    def is_upset(self, s: int) -> bool:
        return self.up_closure(s) == s

    # -- measures --------------------------------------------------------

    @cached_property
    def depths(self) -> tuple[int, ...]:
        """Longest chain (counted in elements) inside each principal upset."""
        d = [0] * self.n
        for x in self.topdown:
            d[x] = 1 + max((d[y] for y in bits(self.upper_covers[x])), default=0)
        return tuple(d)

    @cached_property
    def widths(self) -> tuple[int, ...]:
        """Largest antichain inside each principal upset."""
        return tuple(max_antichain_size(self, u) for u in self.up)

    def depth_of(self, x: int) -> int:
        return self.depths[x]

    def width_of(self, x: int) -> int:
        return self.widths[x]

    # -- derived posets --------------------------------------------------

    def subposet(self, s: int) -> "Poset":
        """Induced subposet on the elements of ``s`` (kept in increasing index order)."""
        idx = indices_of(s)
        pos = {x: k for k, x in enumerate(idx)}
        up = [mask_of(pos[y] for y in bits(self.up[x] & s)) for x in idx]
        return Poset(tuple(up), tuple(self.labels[x] for x in idx))

    def relabel(self, labels: Sequence[str]) -> "Poset":
        return Poset(self.up, tuple(str(x) for x in labels))

    def dual(self) -> "Poset":
        """Order dual."""
        return Poset(self.down, self.labels)

    def index(self, label: str) -> int:
        return self.labels.index(label)

    def names(self, s: int) -> list[str]:
        return [self.labels[x] for x in bits(s)]

    def __repr__(self):
        edges = ", ".join(f"{self.labels[x]}<{self.labels[y]}" for x, y in self.covers)
        return f"Poset(n={self.n}; {edges})"

    # -- serialisation ---------------------------------------------------

    def to_json(self) -> dict:
        return {"n": self.n, "covers": [list(c) for c in self.covers], "labels": list(self.labels)}

    @classmethod
    def from_json(cls, data: dict) -> "Poset":
        try:
            n = int(data["n"])
            pairs = [(int(a), int(b)) for a, b in data.get("covers", [])]
        except (KeyError, TypeError, ValueError) as e:
            raise InputError(f"bad poset JSON: {e}") from None
        return new_poset(n, pairs, data.get("labels"))

    def to_dot(self, name: str = "P") -> str:
        """Hasse diagram in DOT, one rank per depth level."""
        lines = [f"digraph {name} {{", "  rankdir=BT;", "  node [shape=circle, width=0.3, fixedsize=false];"]
        for x in range(self.n):
            lines.append(f'  n{x} [label="{self.labels[x]}"];')
        for d in sorted(set(self.depths), reverse=True):
            same = " ".join(f"n{x};" for x in range(self.n) if self.depths[x] == d)
            lines.append(f"  {{ rank=same; {same} }}")
        for x, y in self.covers:
            lines.append(f"  n{x} -> n{y} [arrowhead=none];")
        lines.append("}")
        return "\n".join(lines)


def new_poset(n: int, pairs: Iterable[tuple[int, int]] = (), labels: Sequence[str] | None = None) -> Poset:
    """Reflexive-transitive closure of ``pairs`` on ``0..n-1``.

    Raises :class:`CycleError` when the closure is not antisymmetric.
    """
    if n < 0:
        raise InputError("negative size")
    if labels is not None and len(labels) != n:
        raise InputError(f"expected {n} labels, got {len(labels)}")
    reach = [1 << i for i in range(n)]
    for a, b in pairs:
        if not (0 <= a < n and 0 <= b < n):
            raise InputError(f"pair ({a}, {b}) out of range for n={n}")
        reach[a] |= 1 << b
    for k in range(n):
        rk = reach[k]
        for i in range(n):
            if reach[i] >> k & 1:
                reach[i] |= rk
    for i in range(n):
        for j in bits(reach[i] & ~(1 << i)):
            if reach[j] >> i & 1:
                raise CycleError(min(i, j), max(i, j))
    return Poset(tuple(reach), tuple(str(x) for x in labels) if labels is not None else tuple(str(i) for i in range(n)))


def chain(n: int) -> Poset:
    return new_poset(n, [(i, i + 1) for i in range(n - 1)])


def antichain(n: int) -> Poset:
    return new_poset(n)


# -- width via Dilworth ------------------------------------------------------


def max_antichain_size(X: Poset, s: int) -> int:
    """Size of a largest antichain inside ``s``.

    Dilworth: equals ``|s|`` minus a maximum matching in the bipartite graph
    of the strict order restricted to ``s``.
    """
    elems = indices_of(s)
    succ = {x: X.up[x] & s & ~(1 << x) for x in elems}
    match_of = {}  # right vertex -> left vertex

    def augment(x, seen):
        for y in bits(succ[x] & ~seen[0]):
            seen[0] |= 1 << y
            if y not in match_of or augment(match_of[y], seen):
                match_of[y] = x
                return True
        return False

    matched = sum(1 for x in elems if augment(x, [0]))
    return len(elems) - matched


def depth(X: Poset) -> int:
    if X.n == 0:
        raise EmptyPoset("depth of the empty poset")
    return max(X.depths)


def width(X: Poset) -> int:
    """Principal-upset width: the largest antichain inside some ``↑x``."""
    if X.n == 0:
        raise EmptyPoset("width of the empty poset")
    return max(X.widths)


# -- constructions -----------------------------------------------------------


def _joined_labels(parts: Sequence[Poset]) -> list[str]:
    labels = [lab for p in parts for lab in p.labels]
    if len(set(labels)) == len(labels):
        return labels
    return [f"{k}.{lab}" for k, p in enumerate(parts) for lab in p.labels]


def linear_sum(parts: Sequence[Poset]) -> Poset:
    """Stack ``parts`` into a tower, ``parts[0]`` on top and ``parts[-1]`` at the bottom."""
    if not parts:
        raise InputError("linear sum of no posets")
    offsets = []
    total = 0
    for p in parts:
        offsets.append(total)
        total += p.n
    # everything in parts[j] for j < i lies above parts[i]
    above = [0] * len(parts)
    acc = 0
    for i, p in enumerate(parts):
        above[i] = acc
        acc |= ((1 << p.n) - 1) << offsets[i]
    up = []
    for i, p in enumerate(parts):
        for u in p.up:
            up.append((u << offsets[i]) | above[i])
    return Poset(tuple(up), tuple(_joined_labels(parts)))


def disjoint_union(parts: Sequence[Poset]) -> Poset:
    if not parts:
        raise InputError("disjoint union of no posets")
    up = []
    off = 0
    for p in parts:
        up.extend(u << off for u in p.up)
        off += p.n
    return Poset(tuple(up), tuple(_joined_labels(parts)))


# -- isomorphism ---------------------------------------------------------------


def _signatures(X: Poset) -> list[tuple]:
    return [
        (X.depths[x], X.widths[x], X.upper_covers[x].bit_count(), X.lower_covers[x].bit_count(),
         X.up[x].bit_count(), X.down[x].bit_count())
        for x in range(X.n)
    ]


def isomorphic(X: Poset, Y: Poset) -> tuple[int, ...] | None:
    """An order isomorphism ``X -> Y`` as a tuple ``f[x]``, or ``None``.

    Backtracking over candidates with equal (depth, width, cover degree, ...)
    signatures; the first witness in candidate order is returned.
    """
    if X.n != Y.n:
        return None
    sx, sy = _signatures(X), _signatures(Y)
    if sorted(sx) != sorted(sy):
        return None
    # rarest signatures first, ties by index
    freq: dict[tuple, int] = {}
    for s in sx:
        freq[s] = freq.get(s, 0) + 1
    order = sorted(range(X.n), key=lambda x: (freq[sx[x]], sx[x], x))
    cands = {x: [y for y in range(Y.n) if sy[y] == sx[x]] for x in range(X.n)}
    f = [-1] * X.n
    used = 0

    def ok(x, y):
        for x2 in range(X.n):
            y2 = f[x2]
            if y2 < 0:
                continue
            if X.leq(x, x2) != Y.leq(y, y2) or X.leq(x2, x) != Y.leq(y2, y):
                return False
        return True

    def go(k):
        nonlocal used
        if k == len(order):
            return True
        x = order[k]
        for y in cands[x]:
            if used >> y & 1 or not ok(x, y):
                continue
            f[x] = y
            used |= 1 << y
            if go(k + 1):
                return True
            f[x] = -1
            used &= ~(1 << y)
        return False

    return tuple(f) if go(0) else None


# -- upsets --------------------------------------------------------------------


def _upset_key(mask: int):
    return (mask.bit_count(), indices_of(mask))


def enumerate_upsets(X: Poset, cap: int = DEFAULT_UPSET_CAP) -> Iterator[int]:
    """Every upset of ``X`` exactly once, as bitmasks.

    Order: by cardinality, then lexicographically by sorted element indices,
    so the empty upset comes first and ``X`` itself last.
    """
    return iter(all_upsets(X, cap))


def all_upsets(X: Poset, cap: int = DEFAULT_UPSET_CAP) -> list[int]:
    order = X.topdown
    strict = [X.up[x] & ~(1 << x) for x in range(X.n)]
    out: list[int] = []

    # deciding elements from the top down: x may join only once all of ↑x is in
    def go(k, cur):
        if k == len(order):
            out.append(cur)
            if len(out) > cap:
                raise BudgetExceeded("upset enumeration", cap, len(out), unit="upsets")
            return
        x = order[k]
        go(k + 1, cur)
        if strict[x] & ~cur == 0:
            go(k + 1, cur | (1 << x))

    go(0, 0)
    out.sort(key=_upset_key)
    return out


def count_upsets(X: Poset, cap: int = DEFAULT_UPSET_CAP) -> int:
    return len(all_upsets(X, cap))
