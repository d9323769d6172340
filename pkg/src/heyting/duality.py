"""Finite Esakia duality: spectra, the gamma isomorphism, p-morphisms and Jankov tests.

Prime filters of a finite Heyting algebra are the principal filters ``↑j``
of its join-irreducible elements ``j``. The spectrum is therefore built on
the join-irreducibles, ordered by filter inclusion: ``j ⊑ k`` exactly when
``k <= j`` in the algebra.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence, Union

from .algebra import (DEFAULT_ORACLE_CAP, HeytingAlgebra, algebras_isomorphic,
                      heyting_from_upsets, join_irreducibles, quotients, require_si,
                      subalgebra, subuniverses)
from .errors import (BudgetExceeded, InputError, InternalInconsistency, NotBack,
                     NotMonotone, NotSI)
from .poset import Poset, bits, indices_of, mask_of

DEFAULT_SEARCH_BUDGET = 10 ** 6

AlgebraOrDual = Union[HeytingAlgebra, Poset]


# -- spectrum and gamma ------------------------------------------------------


def prime_spectrum(A: HeytingAlgebra) -> Poset:
    """Poset of prime filters, one per join-irreducible, ordered by inclusion."""
    if A.origin == "upsets" and A.poset is not None:
        names = A.element_names()
    else:
        names = [str(a) for a in range(A.size)]
    J = join_irreducibles(A)
    up = [mask_of(q for q, k in enumerate(J) if A.le(k, j)) for j in J]
    return Poset(tuple(up), tuple(names[j] for j in J))


@dataclass(frozen=True)
class GammaIso:
    """``a -> {prime filters containing a}`` as a certified isomorphism ``A -> Up(X_A)``."""
    algebra: HeytingAlgebra
    spectrum: Poset
    target: HeytingAlgebra
    map: tuple[int, ...]       # element of ``algebra`` -> element of ``target``
    upsets: tuple[int, ...]    # element of ``algebra`` -> upset of ``spectrum``


def gamma_iso(A: HeytingAlgebra) -> GammaIso:
    X = prime_spectrum(A)
    J = join_irreducibles(A)
    target = heyting_from_upsets(X)
    ups = tuple(mask_of(q for q, j in enumerate(J) if A.le(j, a)) for a in range(A.size))
    try:
        g = tuple(target.index_of_upset(u) for u in ups)
    except KeyError:
        raise InternalInconsistency("gamma produced a set that is not an upset of the spectrum") from None
    if len(set(g)) != A.size or target.size != A.size:
        raise InternalInconsistency("gamma is not a bijection")
    if g[A.bot] != target.bot or g[A.top] != target.top:
        raise InternalInconsistency("gamma does not preserve the bounds")
    n = A.size
    for a in range(n):
        ga = g[a]
        for b in range(n):
            gb = g[b]
            if (g[A.meet[a][b]] != target.meet[ga][gb] or g[A.join[a][b]] != target.join[ga][gb]
                    or g[A.imp[a][b]] != target.imp[ga][gb]):
                raise InternalInconsistency(f"gamma fails to preserve an operation at ({a}, {b})")
    return GammaIso(A, X, target, g, ups)


def dual_of(B: AlgebraOrDual) -> Poset:
    return B if isinstance(B, Poset) else prime_spectrum(B)


# -- p-morphisms -----------------------------------------------------------------


@dataclass(frozen=True)
class PMorphism:
    source: Poset
    target: Poset
    map: tuple[int, ...]

    @property
    def image(self) -> int:
        return mask_of(self.map)

    @property
    def surjective(self) -> bool:
        return self.image == self.target.full

    def __call__(self, x: int) -> int:
        return self.map[x]


def check_pmorphism(f: Sequence[int], X: Poset, Y: Poset) -> PMorphism:
    """Verify ``f(↑x) = ↑f(x)`` for every ``x``.

    Raises :class:`NotMonotone` or :class:`NotBack` naming the failure.
    """
    if len(f) != X.n or any(not 0 <= t < Y.n for t in f):
        raise InputError("map must send every source element to a target element")
    for x in range(X.n):
        fx = f[x]
        img = 0
        for y in bits(X.up[x]):
            if not Y.leq(fx, f[y]):
                raise NotMonotone(x, y)
            img |= 1 << f[y]
        missing = Y.up[fx] & ~img
        if missing:
            raise NotBack(x, (missing & -missing).bit_length() - 1)
    return PMorphism(X, Y, tuple(f))


# -- search for Z as a p-morphic image of an upset of Y ---------------------------


@dataclass(frozen=True)
class Witness:
    """An upset ``U`` of ``Y`` and a surjective p-morphism from ``U`` onto the target."""
    poset: Poset
    upset: int
    morphism: PMorphism  # source is ``poset.subposet(upset)``

    def to_json(self) -> dict:
        return {"upset": indices_of(self.upset), "map": list(self.morphism.map)}

    def verify(self) -> None:
        if not self.poset.is_upset(self.upset):
            raise InternalInconsistency("witness set is not an upset")
        f = check_pmorphism(self.morphism.map, self.poset.subposet(self.upset), self.morphism.target)
        if not f.surjective:
            raise InternalInconsistency("witness map is not onto")


@dataclass(frozen=True)
class SearchResult:
    witness: Witness | None
    nodes: int

    @property
    def found(self) -> bool:
        return self.witness is not None


class _Budget:
    def __init__(self, limit):
        self.limit = limit
        self.spent = 0

    def tick(self):
        self.spent += 1
        if self.spent > self.limit:
            raise BudgetExceeded("p-morphism search", self.limit, self.spent)


def _onto_from(Y: Poset, U: int, Z: Poset, start: int | None, budget: _Budget) -> dict[int, int] | None:
    """Backtracking for a p-morphism ``U -> Z`` (``U`` an upset of ``Y``).

    Points are assigned from the top down, so when ``x`` is reached every
    point of ``↑x`` already has an image ``I``; the p-morphism law at ``x``
    then says exactly ``↑t \\ {t} ⊆ I ⊆ ↑t`` for the image ``t`` of ``x``.
    ``start``, when given, is the one point that must go to the root of ``Z``.
    """
    order = [x for x in Y.topdown if U >> x & 1]
    zstrict = [Z.up[t] & ~(1 << t) for t in range(Z.n)]
    zroot = Z.root
    f: dict[int, int] = {}

    def candidates(x, img):
        if x == start:
            return [zroot]
        dx, wx = Y.depths[x], Y.widths[x]
        out = [t for t in range(Z.n)
               if zstrict[t] & ~img == 0 and img & ~Z.up[t] == 0
               and Z.depths[t] <= dx and Z.widths[t] <= wx]
        out.sort(key=lambda t: (dx - Z.depths[t], wx - Z.widths[t], t))
        return out

    def go(k):
        if k == len(order):
            return mask_of(f.values()) == Z.full
        x = order[k]
        img = 0
        for y in bits(Y.up[x] & ~(1 << x)):
            img |= 1 << f[y]
        for t in candidates(x, img):
            if x == start and (zstrict[t] & ~img or img & ~Z.up[t]):
                continue
            budget.tick()
            f[x] = t
            if go(k + 1):
                return True
            del f[x]
        return False

    return dict(f) if go(0) else None


def pmorphic_image_of_upset(Z: Poset, Y: Poset, budget: int = DEFAULT_SEARCH_BUDGET) -> SearchResult:
    """Look for an upset ``U`` of ``Y`` and a p-morphism from ``U`` onto ``Z``.

    For rooted ``Z`` only principal upsets ``↑y`` are tried: if ``f`` maps an
    upset onto ``Z`` and ``f(y)`` is the root, then ``f`` restricted to
    ``↑y`` is already onto. Otherwise all upsets with at least ``|Z|``
    points are tried, largest first.
    """
    from .poset import all_upsets

    b = _Budget(budget)
    root = Z.root
    if Z.n == 0:
        return SearchResult(Witness(Y, 0, PMorphism(Y.subposet(0), Z, ())), 0)
    if root is not None:
        tries = [(Y.up[y], y) for y in sorted(range(Y.n), key=lambda y: (-Y.up[y].bit_count(), y))
                 if Y.up[y].bit_count() >= Z.n]
    else:
        tries = [(u, None) for u in sorted(all_upsets(Y), key=lambda m: (-m.bit_count(), m))
                 if u.bit_count() >= Z.n]
    for U, y in tries:
        if root is not None and (Z.depths[root] > Y.depths[y] or Z.widths[root] > Y.widths[y]):
            continue
        f = _onto_from(Y, U, Z, y, b)
        if f is not None:
            src = indices_of(U)
            w = Witness(Y, U, PMorphism(Y.subposet(U), Z, tuple(f[x] for x in src)))
            return SearchResult(w, b.spent)
    return SearchResult(None, b.spent)


# -- Jankov --------------------------------------------------------------------


@dataclass(frozen=True)
class JankovVerdict:
    valid: bool
    witness: Witness | None
    nodes: int = 0

    def __bool__(self):
        return self.valid

    def to_json(self) -> dict:
        return {"valid": self.valid, "witness": self.witness.to_json() if self.witness else None,
                "nodes": self.nodes}


def rooted_dual(A: AlgebraOrDual) -> Poset:
    """The rooted poset dual to a finite SI algebra (or the rooted poset itself)."""
    if isinstance(A, Poset):
        if not A.is_rooted:
            raise NotSI("the target poset is not rooted")
        return A
    require_si(A)
    return prime_spectrum(A)


def jankov_valid(B: AlgebraOrDual, A: AlgebraOrDual, budget: int = DEFAULT_SEARCH_BUDGET) -> JankovVerdict:
    """Whether the Jankov formula of ``A`` is valid in ``B``.

    It fails exactly when the dual of ``A`` is a p-morphic image of an upset
    of the dual of ``B``; the failing case carries that map as witness.
    Posets stand for their upset algebras.
    """
    Z = rooted_dual(A)
    Y = dual_of(B)
    res = pmorphic_image_of_upset(Z, Y, budget)
    return JankovVerdict(not res.found, res.witness, res.nodes)


# -- brute-force SH oracle -----------------------------------------------------------


def _as_algebra(A: AlgebraOrDual) -> HeytingAlgebra:
    return heyting_from_upsets(A) if isinstance(A, Poset) else A


@lru_cache(maxsize=512)
def sh_members(B: HeytingAlgebra, cap: int = DEFAULT_ORACLE_CAP) -> tuple[HeytingAlgebra, ...]:
    """Subalgebras of quotients of ``B``, one per isomorphism type."""
    kept: list[HeytingAlgebra] = []
    for Q in quotients(B, cap):
        for s in subuniverses(Q, cap):
            S = subalgebra(Q, s)
            if any(C.size == S.size and algebras_isomorphic(S, C) for C in kept):
                continue
            kept.append(S)
    return tuple(kept)


def in_SH_oracle(A: AlgebraOrDual, B: AlgebraOrDual, cap: int = DEFAULT_ORACLE_CAP) -> bool:
    """``A`` is isomorphic to a subalgebra of a quotient of ``B``.

    Pure algebra: filters give the quotients, closure gives the subalgebras.
    """
    A, B = _as_algebra(A), _as_algebra(B)
    if A.size > cap:
        raise BudgetExceeded("SH oracle", cap, A.size, unit="elements")
    return any(S.size == A.size and algebras_isomorphic(A, S) is not None for S in sh_members(B, cap))
