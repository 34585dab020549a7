import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bihecke.fmonoid import (
    ClosureCapExceeded,
    InvalidPartition,
    bar,
    bihecke,
    bihecke_generators,
    borel,
    check_fiber_contraction,
    closure,
    e_ab,
    e_tilde,
    e_w,
    fibers,
    green,
    identity_function,
    image_set,
    irreducible_elements,
    is_aperiodic,
    load_monoid,
    omega,
    opi,
    pi,
    pi_word,
    rank,
    reconstruct,
    rees_monoid,
    save_monoid,
    type_of,
)

from conftest import group


@pytest.mark.parametrize("text, size", [("A1", 3), ("A2", 23), ("A3", 477), ("B2", 49), ("I2(5)", 91)])
def test_monoid_sizes(text, size):
    assert len(bihecke(group(text))) == size


def test_borel_sizes():
    g = group("I2(5)")
    assert len(borel(g, "w0")) == 22 and len(borel(g, "1")) == 22


def test_closure_cap_message():
    with pytest.raises(ClosureCapExceeded, match="--max-elements"):
        closure(bihecke_generators(group("A3")), max_elements=100)


def test_generators_are_idempotent(A3):
    for i in A3.index_set:
        for f in (pi(A3, i), opi(A3, i)):
            assert np.array_equal(f[f], f)


def test_green_of_s3():
    gs = green(bihecke(group("A2")))
    assert sorted(gs.class_sizes("J").values()) == [1, 2, 2, 6, 6, 6]
    assert gs.eggbox_shapes() == [(1, 1, 1), (1, 2, 2), (1, 2, 2), (1, 6, 6), (2, 3, 6), (2, 3, 6)]


def test_aperiodicity():
    assert is_aperiodic(bihecke(group("A3")))
    g = group("A2")
    group_as_monoid = closure([(f"s{i}", g.right[:, i - 1]) for i in g.index_set])
    assert len(group_as_monoid) == 6 and not is_aperiodic(group_as_monoid)


def test_omega_fixes_idempotents(A2):
    m = bihecke(A2)
    for f in m.idempotents:
        assert omega(m, f) == f


def test_rees_counterexample():
    m = rees_monoid([[1, 0], [0, 1]])
    assert len(m) == 6
    sizes = sorted(green(m).class_sizes("J").values())
    assert sizes == [1, 1, 4]


def test_identity_statistics(A3):
    f = identity_function(A3)
    assert fibers(f) == [[w] for w in range(A3.size)]
    assert type_of(A3, f) == A3.w0 and rank(f) == A3.size
    assert np.array_equal(reconstruct(A3, fibers(f), 0), f)


def test_image_of_pi1_pi3_opi2(A3):
    f = pi_word(A3, [1, 3])
    f = f[pi_word(A3, [2], bar=True)]
    img = image_set(f)
    lo = [u for u in img if all(A3.le_L(u, v) for v in img)]
    hi = [u for u in img if all(A3.le_L(v, u) for v in img)]
    assert [A3.label(u) for u in lo] == ["2143"] and [A3.label(u) for u in hi] == ["4231"]


def test_e_w_family(A3):
    for w in range(A3.size):
        e = e_w(A3, w)
        assert np.array_equal(e[e], e)
        assert e[0] == 0 and e[A3.w0] == w
        assert image_set(e) == sorted(A3.interval(0, w, "L"))
        assert np.array_equal(reconstruct(A3, fibers(e), 0), e)
        t = e_tilde(A3, w)
        assert t[A3.w0] == A3.w0 and t[0] == w
    a, b = A3.element("2134"), A3.element("4231")
    e = e_ab(A3, a, b)
    assert image_set(e) == sorted(A3.interval(a, b, "L"))


def test_bar_swaps_generators(A3):
    for i in A3.index_set:
        assert np.array_equal(bar(A3, pi(A3, i)), opi(A3, i))


def test_fiber_contraction():
    g = group("A2")
    for f in bihecke(g).elements:
        assert check_fiber_contraction(g, f)
    bad = np.array([0, 5, 0, 5, 0, 5])
    assert not check_fiber_contraction(g, bad)


def test_reconstruct_rejects_bad_partitions(A2):
    with pytest.raises(InvalidPartition):
        reconstruct(A2, [[0, 1], [1, 2, 3, 4, 5]], 0)


@pytest.mark.parametrize("text, n", [("A1", 2), ("A2", 3), ("A3", 4)])
def test_m1_generating_set(text, n):
    g = group(text)
    m1 = borel(g, "1")
    assert len(irreducible_elements(m1.elements)) + 1 == 2**n - n


def test_non_regular_b3_element():
    g = group("B3")
    m = bihecke(g)
    word = [(1, True), (3, True), (2, True), (1, False), (3, True), (2, True), (1, True)]
    f = identity_function(g)
    for i, is_bar in word:
        f = f[opi(g, i) if is_bar else pi(g, i)]
    k = m.index(f)
    gs = green(m)
    assert not gs.regular[int(gs.J[k])]


def test_cache_roundtrip(tmp_path, A3):
    m = bihecke(A3)
    path = tmp_path / "m.bhm"
    save_monoid(m, path, "A3", A3.size)
    m2 = load_monoid(path, "A3", A3.size)
    assert np.array_equal(m.elements, m2.elements)
    assert m.gen_labels == m2.gen_labels
    with pytest.raises(ValueError, match="different group"):
        load_monoid(path, "B3", A3.size)
    raw = bytearray(path.read_bytes())
    raw[4] = 99
    path.write_bytes(bytes(raw))
    with pytest.raises(ValueError, match="version"):
        load_monoid(path, "A3", A3.size)


B2 = group("B2")
M_B2 = bihecke(B2)


@settings(max_examples=200, deadline=None)
@given(st.integers(0, len(M_B2) - 1), st.integers(0, B2.size - 1), st.integers(0, B2.size - 1))
def test_elements_preserve_left_and_bruhat_order(k, u, v):
    f = M_B2.elements[k]
    if B2.le_L(u, v):
        assert B2.le_L(int(f[u]), int(f[v]))
    if B2.le_B(u, v):
        assert B2.le_B(int(f[u]), int(f[v]))
