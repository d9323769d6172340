"""Small-poset corpora: every poset up to isomorphism, and seeded random posets."""

from __future__ import annotations

import random
from functools import lru_cache

from .poset import Poset, all_upsets, isomorphic, new_poset

MAX_EXHAUSTIVE = 7


def _invariant(X: Poset) -> tuple:
    return tuple(sorted((X.up[x].bit_count(), X.down[x].bit_count(), X.depths[x]) for x in range(X.n)))


@lru_cache(maxsize=None)
def all_posets(n: int) -> tuple[Poset, ...]:
    """One representative of each isomorphism type of ``n``-element poset.

    Built by adding a new minimal element below an arbitrary upset of each
    smaller representative; every poset arises this way by deleting one of
    its minimal elements.
    """
    if n < 0 or n > MAX_EXHAUSTIVE:
        raise ValueError(f"exhaustive enumeration supports 0..{MAX_EXHAUSTIVE} elements")
    if n == 0:
        return (new_poset(0),)
    buckets: dict[tuple, list[Poset]] = {}
    out = []
    for base in all_posets(n - 1):
        for U in all_upsets(base):
            up = base.up + (U | 1 << (n - 1),)
            X = Poset.from_up(up, [str(i) for i in range(n)])
            bucket = buckets.setdefault(_invariant(X), [])
            if any(isomorphic(X, Y) is not None for Y in bucket):
                continue
            bucket.append(X)
            out.append(X)
    return tuple(out)


def rooted_posets(n: int) -> tuple[Poset, ...]:
    return tuple(X for X in all_posets(n) if X.is_rooted)


def posets_up_to(n: int, rooted: bool = False) -> list[Poset]:
    pick = rooted_posets if rooted else all_posets
    return [X for k in range(1, n + 1) for X in pick(k)]


def random_poset(n: int, rng: random.Random, density: float = 0.35) -> Poset:
    """Transitive closure of a random DAG on a shuffled vertex order."""
    perm = list(range(n))
    rng.shuffle(perm)
    pairs = [(perm[i], perm[j]) for i in range(n) for j in range(i + 1, n) if rng.random() < density]
    return new_poset(n, pairs)


def random_posets(count: int, max_n: int, seed: int = 0, density: float = 0.35) -> list[Poset]:
    rng = random.Random(seed)
    return [random_poset(rng.randint(1, max_n), rng, density) for _ in range(count)]
