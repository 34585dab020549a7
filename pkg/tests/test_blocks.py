import json
import random
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bihecke import blocks as B

from conftest import group

GOLDEN = Path(__file__).parent / "golden"


def test_blocks_of_4312(A3):
    w = A3.element("4312")
    b = B.is_right_block(A3, w, {2, 3})
    assert b is not None and b.J == {1, 2} and A3.label(b.cutting_point) == "4123"
    assert sorted(sorted(x.K) for x in B.reduced_blocks(A3, w)) == [[], [1], [1, 2, 3], [2, 3]]
    nonreduced = [sorted(x.K) for x in B.all_blocks(A3, w) if not x.reduced]
    assert sorted(nonreduced) == [[1, 3], [3]]
    assert sorted(sorted(x.J) for x in B.reduced_blocks(A3, w)) == [[], [1, 2], [1, 2, 3], [3]]


def test_block_condition_counterexample():
    g = group("A4")
    assert B.is_right_block(g, g.element("43125"), {1, 4}) is None


def test_empty_block(A3):
    for w in range(A3.size):
        b = B.is_right_block(A3, w, set())
        assert b.J == frozenset() and b.cutting_point == w
    assert [sorted(b.K) for b in B.reduced_blocks(A3, 0)] == [[]]
    assert all(b.trivial for b in B.all_blocks(A3, 0))


def test_w0_every_subset_is_reduced(A3):
    assert len(B.reduced_blocks(A3, A3.w0)) == 8


def test_jblock_examples(A3):
    w = A3.element("4312")
    assert B.jblock(A3, w, A3.element("1432")) == frozenset()
    assert B.jblock(A3, w, w) == frozenset()
    for u in range(A3.size):
        assert B.jblock(A3, A3.w0, u) == set(A3.index_set) - A3.descents_left(u)


def test_cutting_poset_s3(A2):
    cp = B.cutting_poset(A2)
    covers = sorted((A2.label(a), A2.label(b)) for a, b in cp.poset.covers)
    assert covers == [("123", "132"), ("123", "213"), ("123", "231"), ("123", "312"), ("231", "321"), ("312", "321")]


@pytest.mark.parametrize("text", ["A2", "A3"])
def test_cutting_poset_matches_figure(text):
    g = group(text)
    gold = json.loads((GOLDEN / f"cutting_poset_{text}.json").read_text())
    covers = sorted([g.label(a), g.label(b)] for a, b in B.cutting_poset(g).poset.covers)
    assert covers == gold["covers"]


def test_cutting_chain_a1():
    g = group("A1")
    assert B.cutting_le(g, 0, 1) and not B.cutting_le(g, 1, 0)


def test_boolean_interval_of_descent_class_minima(A3):
    p = B.cutting_poset(A3).poset
    interval = p.interval(0, A3.w0)
    assert interval.is_boolean() and len(interval) == 8


def test_matrix_blocks():
    mbs = B.matrix_blocks_typeA("36475812")
    by_cols = {mb.columns: mb for mb in mbs}
    assert by_cols[(2, 5)].pattern == (3, 1, 4, 2) and by_cols[(2, 5)].connected
    assert not by_cols[(7, 8)].connected
    assert B.matrix_blocks_typeA("58317462") == []
    ident = B.matrix_blocks_typeA("1234", proper=False)
    assert len(ident) == 6


def test_mobius_cutting_agrees_with_generic(A3):
    p = B.cutting_poset(A3).poset
    for u in range(A3.size):
        for w in range(A3.size):
            if p.leq(u, w):
                assert B.mobius_cutting(A3, u, w) == p.mobius(u, w)


S6 = group("A5")


@settings(max_examples=60, deadline=None)
@given(st.integers(0, S6.size - 1))
def test_matrix_blocks_give_the_blocks_in_s6(w):
    predicted = B.blocks_from_matrix_blocks(S6.one_line(w))
    actual = {b.K: b for b in B.all_blocks(S6, w)}
    assert set(predicted) == set(actual)
    for K, flags in predicted.items():
        assert flags["reduced"] == actual[K].reduced
        assert flags["trivial"] == actual[K].trivial


def test_blocks_closed_under_union_and_intersection_b3():
    g = group("B3")
    rng = random.Random(1)
    for w in rng.sample(range(g.size), 30):
        Ks = {b.K for b in B.all_blocks(g, w)}
        for a in Ks:
            for b in Ks:
                assert a | b in Ks and a & b in Ks
