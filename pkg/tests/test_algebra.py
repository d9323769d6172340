import pytest
from hypothesis import given, settings

from heyting.algebra import (HeytingAlgebra, algebra_from_tables, boolean_algebra,
                             check_algebra, filters, heyting_from_upsets, is_filter, is_fsi,
                             is_si, join_irreducibles, quotients, second_largest,
                             subalgebras, subuniverses)
from heyting.catalog import named
from heyting.errors import AdjunctionFails, BudgetExceeded, NotDistributive
from heyting.poset import antichain, chain, indices_of, new_poset

from conftest import posets
import oracles


@pytest.mark.parametrize("name,size", [("P1", 10), ("P2", 8), ("P3", 5), ("P4", 9)])
def test_upset_algebra_sizes(name, size):
    assert heyting_from_upsets(named(name)).size == size


def test_empty_poset_gives_trivial_algebra():
    A = heyting_from_upsets(new_poset(0))
    assert A.size == 1 and A.bot == A.top


def test_too_large_poset_is_refused():
    with pytest.raises(BudgetExceeded):
        heyting_from_upsets(antichain(21))


@given(posets(0, 5))
@settings(max_examples=60, deadline=None)
def test_operations_match_set_semantics(X):
    A = heyting_from_upsets(X)
    ups = [frozenset(indices_of(u)) for u in A.carrier]
    for a, U in enumerate(ups):
        for b, V in enumerate(ups):
            assert ups[A.meet[a][b]] == U & V
            assert ups[A.join[a][b]] == U | V
            assert ups[A.imp[a][b]] == oracles.implies(X, U, V)
            assert A.le(a, b) == (U <= V)


def _two():
    return [[True, True], [False, True]], [[1, 1], [0, 1]]


def test_tables_two_element():
    leq, imp = _two()
    A = algebra_from_tables(2, leq, imp, 0, 1)
    assert A.size == 2 and is_si(A)


def test_m3_is_not_distributive():
    # 0 < a, b, c < 1
    leq = [[i == j or i == 0 or j == 4 for j in range(5)] for i in range(5)]
    imp = [[4] * 5 for _ in range(5)]
    with pytest.raises(NotDistributive):
        algebra_from_tables(5, leq, imp, 0, 4)


def test_perturbed_implication_fails_adjunction():
    A = heyting_from_upsets(chain(2))
    imp = [list(r) for r in A.imp]
    # lower one value of the true implication
    a, b = A.top, A.bot
    imp[a][b] = A.bot if A.imp[a][b] != A.bot else A.top
    imp[A.bot][A.bot] = A.bot
    leq = [[A.le(x, y) for y in range(A.size)] for x in range(A.size)]
    with pytest.raises(AdjunctionFails) as e:
        algebra_from_tables(A.size, leq, imp, A.bot, A.top)
    assert len(e.value.witness) == 3


@given(posets(0, 5))
@settings(max_examples=40, deadline=None)
def test_json_round_trip(X):
    A = heyting_from_upsets(X)
    B = HeytingAlgebra.from_json(A.to_json())
    assert B.imp == A.imp and B.meet == A.meet and B.join == A.join


def test_join_irreducibles():
    assert len(join_irreducibles(boolean_algebra(2))) == 2
    assert len(join_irreducibles(heyting_from_upsets(named("P3")))) == 3
    for n in range(1, 6):
        assert len(join_irreducibles(heyting_from_upsets(chain(n)))) == n


@given(posets(1, 5))
@settings(max_examples=60, deadline=None)
def test_join_irreducibles_count_points(X):
    assert len(join_irreducibles(heyting_from_upsets(X))) == X.n


def test_fsi_and_si():
    assert is_fsi(heyting_from_upsets(named("P3")))
    assert not is_fsi(boolean_algebra(2))
    assert is_si(boolean_algebra(1))
    assert not is_si(heyting_from_upsets(new_poset(0)))


@given(posets(0, 5))
@settings(max_examples=60, deadline=None)
def test_si_iff_rooted(X):
    A = heyting_from_upsets(X)
    assert is_si(A) == X.is_rooted == is_fsi(A)
    if X.is_rooted:
        s = second_largest(A)
        assert A.carrier[s] == X.full & ~(1 << X.root)


def test_filters_are_filters():
    A = heyting_from_upsets(named("P4"))
    assert all(is_filter(A, f) for f in filters(A))
    brute = [s for s in range(1 << A.size) if is_filter(A, s)]
    assert sorted(brute) == sorted(filters(A))


def test_quotients():
    two = boolean_algebra(1)
    assert sorted(Q.size for Q in quotients(two)) == [1, 2]
    qs = list(quotients(heyting_from_upsets(named("P3"))))
    assert len(qs) == 5
    for Q in qs:
        check_algebra(Q)


def test_subalgebras_validate():
    A = heyting_from_upsets(named("P1"))
    subs = list(subalgebras(A))
    assert subs
    for S in subs:
        check_algebra(S)
    # the two-element subalgebra {0, 1} is always there
    assert min(S.size for S in subs) == 2


def test_subuniverses_against_brute_force():
    A = heyting_from_upsets(named("P3"))

    def closed(s):
        if not (s >> A.bot & 1 and s >> A.top & 1):
            return False
        el = indices_of(s)
        return all(s >> t[a][b] & 1 for t in (A.meet, A.join, A.imp) for a in el for b in el)

    brute = [s for s in range(1 << A.size) if closed(s)]
    assert sorted(brute) == sorted(subuniverses(A))
