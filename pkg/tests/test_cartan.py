"""q-Cartan matrices: orientation, golden tables and the Borel combinatorics."""

import json
from pathlib import Path

import numpy as np
import pytest

from bihecke.fmonoid import bihecke, borel
from bihecke.reptheory import cartan as RC
from bihecke.reptheory import tables as T
from bihecke.reptheory.linalg import RationalMatrix

from conftest import group

GOLDEN = Path(__file__).parent / "golden"


def _golden(name):
    return json.loads((GOLDEN / f"{name}.json").read_text())


def _agrees(table, gold):
    got = table.to_json()
    return {k: got[k] == gold[k] for k in gold}


def test_orientation_is_frozen(A2):
    """Rows are projectives: q sits at (132, 312) and (213, 231), not the transpose."""
    m0 = borel(A2, "w0")
    G = RC.graded_cartan(m0, RC.borel_simple_reps(A2, m0, "w0"), labels=A2.labels)
    pos = sorted((A2.label(i), A2.label(j)) for i, j in G.support(1))
    assert pos == [("132", "312"), ("213", "231")]
    assert G.degree == 1


def test_full_monoid_row_321(A2):
    t = T.qcartan_table(A2, "M")
    row = t.entries[t.labels.index("321")]
    assert [RC.format_poly(c) for c in row] == ["q^2", ".", ".", "q", "q", "1"]


@pytest.mark.parametrize("text", ["A1", "A2", "A3"])
def test_golden_borel(text):
    assert all(_agrees(T.qcartan_table(group(text), "Mw0"), _golden(f"cartan_mw0_{text}")).values())


@pytest.mark.parametrize("text", ["A1", "A2"])
def test_golden_full(text):
    assert all(_agrees(T.qcartan_table(group(text), "M"), _golden(f"cartan_M_{text}")).values())


@pytest.mark.parametrize("text", ["A1", "A2", "A3"])
def test_golden_decomposition(text):
    assert all(_agrees(T.decomposition_table(group(text)), _golden(f"decomposition_{text}")).values())


@pytest.mark.parametrize("text", ["B2"] + [f"I2({p})" for p in range(3, 9)])
def test_golden_other_types(text):
    g = group(text)
    safe = text.replace("(", "").replace(")", "")
    assert all(_agrees(T.qcartan_table(g, "Mw0"), _golden(f"cartan_mw0_{safe}")).values())
    assert all(_agrees(T.decomposition_table(g), _golden(f"decomposition_{safe}")).values())
    assert all(_agrees(T.qcartan_table(g, "M", slow=True), _golden(f"cartan_M_{safe}")).values())


def test_modular_equals_exact(A2):
    m = bihecke(A2)
    from bihecke.reptheory.modules import simple_modules

    exact = RC.graded_cartan(m, simple_modules(A2), labels=A2.labels)
    modular = RC.graded_cartan(m, simple_modules(A2), labels=A2.labels, modular=True, seed=3)
    assert exact == modular


def test_borel_count_matches_graded_at_one(A3):
    m1 = borel(A3, "1")
    G = RC.graded_cartan(m1, RC.borel_simple_reps(A3, m1, "1"), labels=A3.labels)
    assert np.array_equal(G.at_one(), RC.cartan_m1(A3))
    m0 = borel(A3, "w0")
    G0 = RC.graded_cartan(m0, RC.borel_simple_reps(A3, m0, "w0"), labels=A3.labels)
    assert np.array_equal(G0.at_one(), RC.cartan_mw0(A3))


def test_full_cartan_has_determinant_one(A2):
    C = T.cartan_table(A2, "M")
    M = np.array([[c[0] if c else 0 for c in row] for row in C.entries])
    assert RationalMatrix.from_numpy(M).det() == 1


@pytest.mark.parametrize("text", ["A2", "A3"])
def test_quiver_is_degree_one_support(text):
    g = group(text)
    m0 = borel(g, "w0")
    G = RC.graded_cartan(m0, RC.borel_simple_reps(g, m0, "w0"), labels=g.labels)
    flip = g.mul[g.w0, :]
    edges = sorted((int(flip[x]), int(flip[z])) for x, z in RC.quiver_m1(g))
    assert edges == sorted(G.support(1))


def test_quiver_a1_is_empty():
    assert RC.quiver_m1(group("A1")) == []


def test_quiver_i2_5_two_chains():
    g = group("I2(5)")
    edges = sorted((g.label(x), g.label(z)) for x, z in RC.quiver_m1(g))
    # the figure: s1 <- s1s2 <- s1s2s1 <- s1s2s1s2 and the same chain starting with s2
    assert edges == sorted([("12", "1"), ("121", "12"), ("1212", "121"), ("21", "2"), ("212", "21"), ("2121", "212")])
    assert sorted(RC.quiver_m1(g)) == sorted(RC.quiver_m1_monoidal(g))


def test_full_m_needs_slow():
    with pytest.raises(RC.SizeError, match="--slow"):
        T.qcartan_table(group("A3"), "M")


def test_radical_of_semisimple_algebra_is_zero():
    from bihecke.fmonoid import closure

    # the two-element semilattice {1, e} is commutative and semisimple
    m = closure([("e", np.array([1, 1], dtype=np.uint16))])
    assert RC.radical(m).nrows() == 0
