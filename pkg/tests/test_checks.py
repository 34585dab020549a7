"""Every structural check, on every small group it is meant for."""

from functools import lru_cache

import pytest

from bihecke.checks import CHECKS, Context, run_checks

from conftest import group

GROUPS = ["A0", "A1", "A2", "A3", "B2", "B3", "G2", "A1xA1", "I2(5)", "I2(7)", "I2(8)"]


@lru_cache(maxsize=None)
def context(text: str) -> Context:
    return Context(group(text))


@pytest.mark.parametrize("name", list(CHECKS))
@pytest.mark.parametrize("text", GROUPS)
def test_check(text, name):
    (result,) = run_checks(context(text), [name])
    if result.status == "skip":
        pytest.skip(result.detail)
    assert result.status == "pass", result.detail


def test_full_cartan_determinant_a3_modular():
    ctx = Context(group("A3"), slow=True)
    (result,) = run_checks(ctx, ["reptheory.cartan_determinant"])
    assert result.status == "pass", result.detail


def test_matrix_blocks_on_s6_sample():
    ctx = Context(group("A5"), samples=500, seed=7)
    (result,) = run_checks(ctx, ["blocks.matrix_blocks"])
    assert result.status == "pass", result.detail


def test_checks_catch_a_broken_invariant(monkeypatch):
    """A sabotaged Bruhat order must be reported as a failure, not a skip."""
    g = group("A2")
    ctx = Context(g)
    monkeypatch.setattr(type(g), "le_B_subword", lambda self, u, w: True)
    (result,) = run_checks(ctx, ["coxeter.bruhat_subword"])
    assert result.status == "fail"
