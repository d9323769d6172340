import pytest
from hypothesis import given, settings

from heyting.algebra import heyting_from_upsets
from heyting.catalog import diamond_sequence, named
from heyting.census import posets_up_to
from heyting.classifiers import (decompose_shapes, is_cascade, is_cascade_width,
                                 is_diamond_algebra, is_diamond_sequence, is_diamond_system,
                                 is_root_system, three_point_rule, three_point_rule_upsets)
from heyting.errors import NotCascade, NotDecomposable
from heyting.formulas import valid_on_poset, weak_peirce
from heyting.poset import antichain, chain, disjoint_union, isomorphic, linear_sum, new_poset

from conftest import posets
import oracles


def test_three_point_examples():
    for n in range(1, 5):
        assert three_point_rule(chain(n)).verdict
    P2 = named("P2")
    r = three_point_rule(P2)
    assert not r.verdict
    x, y, z = r.witnesses["triple"]
    assert (P2.labels[x], P2.labels[y], P2.labels[z]) == ("v2", "v1", "v3")
    assert three_point_rule(named("P3")).verdict


@given(posets(0, 6))
@settings(max_examples=100, deadline=None)
def test_three_point_matches_literal(X):
    assert three_point_rule(X).verdict == oracles.three_point_ok(X, range(X.n))
    r = three_point_rule_upsets(X)
    assert r.verdict == oracles.three_point_on_upsets(X)
    if not r.verdict:
        w = r.witnesses["point"]
        x, y, z = r.witnesses["triple"]
        assert len({x, y, z}) == 3 and all(X.leq(w, t) for t in (x, y, z))
        assert not X.comparable(x, y) and X.leq(x, z) and not X.leq(y, z)


def test_cascade_examples():
    assert is_cascade(heyting_from_upsets(chain(4))).verdict
    r = is_cascade(heyting_from_upsets(named("P3")))
    assert r.verdict and r.routes == {"principal-upsets": True, "jankov": True}
    r = is_cascade(heyting_from_upsets(named("P2")))
    assert not r.verdict
    assert r.witnesses["jankov"]["refuted"] == "P2"


def test_cascade_width_examples():
    assert not is_cascade_width(heyting_from_upsets(named("D3")), 2).verdict
    assert is_cascade_width(heyting_from_upsets(chain(3)), 1).verdict
    with pytest.raises(NotCascade):
        is_cascade_width(heyting_from_upsets(named("P7")), 2)


def test_cascade_width_routes_agree_on_cascades():
    for X in posets_up_to(6):
        if is_cascade(X):
            for n in (1, 2, 3):
                is_cascade_width(X, n)  # raises on disagreement


def test_diamond_system_examples():
    assert is_diamond_system(chain(4)).verdict
    P4 = named("P4")
    r = is_diamond_system(P4)
    assert r.routes["D4"] is False
    b, x, y, z, v, t = r.witnesses["D4"]
    labs = [P4.labels[i] for i in (b, x, y, z, v, t)]
    assert labs[0] == "0" and set(labs[1:3]) == {"v1", "v2"} and set(labs[3:5]) == {"v3", "v4"} and labs[5] == "1"
    r = is_diamond_system(named("P3"))
    assert r.routes["D3"] is False
    assert r.witnesses["D3"]["point"] == named("P3").root


def test_diamond_sequence_examples():
    assert is_diamond_sequence(named("D2"))
    assert is_diamond_sequence(chain(3))
    assert not is_diamond_sequence(disjoint_union([chain(1), chain(1)]))
    assert is_diamond_sequence(new_poset(0))


def test_decompose_examples():
    assert decompose_shapes(chain(3)).kinds() == ["singleton"] * 3
    assert decompose_shapes(named("D2")).kinds() == ["singleton", "pair-block"]
    with pytest.raises(NotDecomposable) as e:
        decompose_shapes(named("P4"))
    assert e.value.level == 2


def _rooted_up_to_eight():
    from heyting.census import all_posets
    yield from posets_up_to(7, rooted=True)
    for Y in all_posets(7):
        yield linear_sum([Y, chain(1)])


def test_decompose_exactly_on_rooted_diamond_sequences():
    for X in _rooted_up_to_eight():
        seq = is_diamond_sequence(X)
        try:
            d = decompose_shapes(X)
        except NotDecomposable:
            assert not seq
        else:
            assert seq
            assert isomorphic(d.reassemble(), X) is not None
            assert d.blocks[0][0] == "singleton"


def test_decompose_eight_point_sequences():
    for levels in ([1, 2, 1, 2, 1, 1], [1, 1, 2, 1, 2, 1], [1, 2, 1, 1, 2, 1]):
        X = diamond_sequence(levels)
        assert X.n == 8 and is_diamond_sequence(X)
        assert len(decompose_shapes(X).blocks) == 4


def test_diamond_algebra_examples():
    for n in range(1, 5):
        assert is_diamond_algebra(heyting_from_upsets(chain(n))).verdict
    for name in ("P1", "P2", "P3", "P4"):
        r = is_diamond_algebra(heyting_from_upsets(named(name)))
        assert not r.verdict and r.witnesses["jankov"]["refuted"] == name
    r = is_diamond_algebra(heyting_from_upsets(named("D2")))
    assert r.verdict and all(r.routes.values())


def test_diamond_algebra_implies_diamond_system():
    for X in posets_up_to(6):
        if is_diamond_algebra(X):
            assert is_diamond_system(X)


def test_root_system():
    assert is_root_system(chain(4))
    assert not is_root_system(named("P3"))
    assert is_root_system(disjoint_union([chain(2), chain(3)]))
    assert is_root_system(diamond_sequence([1, 1]))
    assert is_root_system(antichain(3))


def test_root_systems_are_width_one_diamond_systems():
    for X in posets_up_to(6):
        assert is_root_system(X) == (is_diamond_system(X).verdict and all(w <= 1 for w in X.widths))


def test_weak_peirce_on_a_linear_sum():
    X = linear_sum([chain(1), antichain(3), chain(1)])
    assert is_cascade(X).verdict and valid_on_poset(X, weak_peirce()).valid
