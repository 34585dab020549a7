import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bihecke import build_group, parse_descriptor
from bihecke.coxeter import min_coset_rep_left, min_coset_rep_right

from conftest import group


@pytest.mark.parametrize(
    "text, order, l0",
    [("A0", 1, 0), ("A1", 2, 1), ("A3", 24, 6), ("B3", 48, 9), ("G2", 12, 6), ("I2(5)", 10, 5), ("A1xA1", 4, 2), ("D4", 192, 12)],
)
def test_orders(text, order, l0):
    g = group(text)
    assert g.size == order
    assert int(g.length[g.w0]) == l0


@pytest.mark.parametrize("text", ["A0", "A3", "B3", "I2(5)", "A1xA1", "D4"])
def test_descriptor_roundtrip(text):
    assert str(parse_descriptor(text)) == text


def test_g2_is_dihedral_of_order_12():
    assert str(parse_descriptor("G2")) == "I2(6)"


@pytest.mark.parametrize("bad", ["", "Z3", "A", "I2()", "A3x", "xA1"])
def test_bad_descriptors(bad):
    with pytest.raises(ValueError):
        parse_descriptor(bad)


def test_products(A3):
    g = group("A2")
    assert g.label(g.product(g.element("213"), g.element("132"))) == "231"
    for i in g.index_set:
        s = g.from_word([i])
        assert g.product(s, s) == 0
    assert all(g.product(0, x) == x for x in range(g.size))


def test_descents(A3):
    w = A3.element("4312")
    assert A3.descents_right(w) == {1, 2}
    assert A3.descents_right(0) == frozenset()
    assert A3.descents_right(A3.w0) == set(A3.index_set)


def test_weak_and_bruhat_examples(A3):
    e = A3.element
    assert A3.le_R(e("1243"), e("4123"))
    assert not A3.le_R(e("2134"), e("4312"))
    assert A3.le_B(e("2143"), e("2341"))
    assert all(A3.le_R(0, w) for w in range(A3.size))


def test_interval_sizes(A3):
    assert len(A3.interval(0, A3.element("4312"), "R")) == 12
    w = A3.element("2413")
    assert A3.interval(w, w, "B") == [w]


def test_coxeter_matrices():
    assert group("A3").coxeter_matrix.tolist() == [[1, 3, 2], [3, 1, 3], [2, 3, 1]]
    assert group("B3").coxeter_matrix[1, 2] == 4
    assert group("G2").coxeter_matrix[0, 1] == 6


@pytest.mark.parametrize("text", ["A2", "B2", "G2", "A1xA1"])
def test_braid_relations(text):
    g = group(text)
    M = g.coxeter_matrix
    for i in g.index_set:
        for j in g.index_set:
            word = [i, j] * int(M[i - 1, j - 1])
            assert g.from_word(word) == 0


def test_threads_do_not_change_ids():
    from bihecke.fmonoid import bihecke_generators, closure

    g = group("A3")
    a = closure(bihecke_generators(g), threads=1)
    b = closure(bihecke_generators(g), threads=4)
    assert np.array_equal(a.elements, b.elements)


B3 = build_group("B3")


@settings(max_examples=200, deadline=None)
@given(st.integers(0, B3.size - 1), st.sets(st.sampled_from(B3.index_set)))
def test_coset_representatives_b3(w, K):
    v = min_coset_rep_right(B3, w, K)
    assert not (B3.descents_right(v) & K)
    u = min_coset_rep_left(B3, w, K)
    assert not (B3.descents_left(u) & K)
    rest = B3.product(int(B3.inv[v]), w)
    assert B3.length[w] == B3.length[v] + B3.length[rest]


@settings(max_examples=200, deadline=None)
@given(st.integers(0, B3.size - 1), st.integers(0, B3.size - 1))
def test_weak_meet_join_b3(u, v):
    for side in "RL":
        m = B3.weak_meet(u, v, side)
        j = B3.weak_join(u, v, side)
        assert B3.le(m, u, side) and B3.le(m, v, side)
        assert B3.le(u, j, side) and B3.le(v, j, side)
        # absorption
        assert B3.weak_join(u, B3.weak_meet(u, v, side), side) == u


@settings(max_examples=300, deadline=None)
@given(st.integers(0, B3.size - 1), st.integers(0, B3.size - 1))
def test_bruhat_lifting_matches_subwords_b3(u, w):
    assert B3.le_B(u, w) == B3.le_B_subword(u, w)


def test_element_from_word():
    g = group("B2")
    assert g.element("s1s2s1") == g.from_word([1, 2, 1])
    assert g.element("s1s2s1s2") == g.w0
    with pytest.raises(KeyError):
        g.element("s3")
