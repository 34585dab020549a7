from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bihecke import blocks as B
from bihecke.posets import Poset, boolean_lattice, chain

from conftest import group


def pentagon():
    return Poset.from_covers("0abc1", [("0", "a"), ("a", "b"), ("b", "1"), ("0", "c"), ("c", "1")])


def diamond():
    return Poset.from_covers("0abc1", [("0", x) for x in "abc"] + [(x, "1") for x in "abc"])


def test_mobius_of_chains_and_boolean_lattices():
    c = chain(5)
    assert [c.mobius(0, k) for k in range(5)] == [1, -1, 0, 0, 0]
    b = boolean_lattice(3)
    bottom, top = b.bottom(), b.top()
    assert b.mobius(bottom, top) == -1


def test_chain_predicates():
    c = chain(4)
    assert c.is_meet_semilattice() and c.is_lattice() and c.is_distributive() and c.is_meet_distributive()
    assert c.join_irreducibles() == [1, 2, 3]


def test_pentagon_and_diamond():
    assert pentagon().is_lattice() and not pentagon().is_distributive()
    assert diamond().is_lattice() and not diamond().is_distributive()


def test_boolean_join_irreducibles_are_atoms():
    b = boolean_lattice(3)
    assert len(b.join_irreducibles()) == 3
    assert b.is_boolean()


def test_meets_and_joins():
    p = pentagon()
    assert p.meet("b", "c") == "0"
    assert p.join("a", "c") == "1"
    v = Poset.from_covers("abc", [("a", "c"), ("b", "c")])
    assert v.meet("a", "b") is None


def test_birkhoff_lower_sets_of_a_chain():
    L = chain(3).lower_sets()
    assert len(L) == 4 and L.is_distributive()


def test_transitivity_is_validated():
    with pytest.raises(ValueError):
        Poset.from_leq([0, 1, 2], lambda x, y: x == y or (x, y) in {(0, 1), (1, 2)})


def test_dot_is_sorted_by_rank_then_label():
    dot = Poset.from_covers("cba", [("c", "a"), ("c", "b")]).to_dot()
    lines = dot.splitlines()
    assert lines[2:5] == ['  "c";', '  "a";', '  "b";']
    assert lines[5:7] == ['  "c" -> "a";', '  "c" -> "b";']


@pytest.mark.parametrize("text, expected", [("A0", 0), ("A1", 1), ("A2", 4), ("A3", 16)])
def test_cutting_poset_join_irreducible_counts(text, expected):
    assert len(B.cutting_poset(group(text)).poset.join_irreducibles()) == expected


def test_cutting_poset_of_s4_is_not_a_lattice(A3):
    p = B.cutting_poset(A3).poset
    assert p.is_meet_semilattice() and not p.is_lattice()
    assert p.is_meet_distributive()


def _random_poset(data):
    n = data.draw(st.integers(1, 7))
    rel = data.draw(st.sets(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)).filter(lambda e: e[0] < e[1])))
    return Poset.from_covers(list(range(n)), rel)


@settings(max_examples=150, deadline=None)
@given(st.data())
def test_mobius_inverts_zeta(data):
    p = _random_poset(data)
    for x in p.ground:
        for y in p.ground:
            if not p.leq(x, y):
                continue
            total = sum(p.mobius(x, z) for z in p.ground if p.leq(x, z) and p.leq(z, y))
            assert total == (1 if x == y else 0)


@settings(max_examples=150, deadline=None)
@given(st.data())
def test_distributive_implies_lattice(data):
    p = _random_poset(data)
    if p.is_distributive():
        assert p.is_lattice()
        for x, y, z in combinations(p.ground, 3):
            assert p.meet(x, p.join(y, z)) == p.join(p.meet(x, y), p.meet(x, z))
