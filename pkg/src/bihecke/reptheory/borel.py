"""Restriction of biHecke modules to the Borel submonoid ``M_{w0}``."""

from __future__ import annotations

from typing import Sequence

import numpy as np

from ..coxeter import CoxeterGroup
from ..fmonoid import TransformationMonoid, bihecke, borel
from .cartan import borel_simple_reps, character_table
from .linalg import RationalMatrix
from .modules import SimpleModule, simple_basis, translation_module

CharacterVector = dict[int, int]


def decomposition_matrix(g: CoxeterGroup) -> np.ndarray:
    """``D[w, u]`` = multiplicity of ``S^{w0}_u`` in ``S_w`` restricted to ``M_{w0}`` (id order).

    Row ``w`` is the indicator of ``[1, w]_R`` minus the intervals of the
    elements strictly below ``w`` in the cutting poset.
    """
    n = g.size
    D = np.zeros((n, n), dtype=np.int64)
    for w in range(n):
        D[w, simple_basis(g, w)] = 1
    return D


class _BorelSolver:
    """Expands class functions on ``M_{w0}`` in the Borel simple characters.

    The characters are independent, so a square subsystem on a set of
    elements is inverted once; every answer is then checked against all
    elements.
    """

    def __init__(self, g: CoxeterGroup, m: TransformationMonoid):
        self.m0 = borel(g, "w0", m=m)
        self.ids = [m.index(f) for f in self.m0.elements]
        X0 = character_table(self.m0, borel_simple_reps(g, self.m0, "w0"))
        self.A = RationalMatrix.from_numpy(X0.T)
        rows: list[int] = []
        cur = RationalMatrix.zeros(0, self.A.cols)
        for r in range(self.A.rows):
            cand = RationalMatrix.vstack([cur, self.A.select_rows([r])], self.A.cols)
            if cand.rank() > cur.rows:
                cur = cand
                rows.append(r)
            if cur.rows == self.A.cols:
                break
        if cur.rows < self.A.cols:
            raise ArithmeticError("Borel simple characters are not independent")
        self.rows = rows
        self.inv = cur.inv()

    def solve(self, chi: Sequence) -> list[int]:
        b = RationalMatrix.from_numpy(np.asarray(chi, dtype=object).reshape(-1, 1))
        x = self.inv @ b.select_rows(self.rows)
        if not (self.A @ x == b):
            raise ArithmeticError("character is not a combination of Borel simple characters")
        out = [x[i, 0] for i in range(x.rows)]
        if any(v.denominator != 1 or v < 0 for v in out):
            raise ArithmeticError("non-integral restriction multiplicities")
        return [int(v) for v in out]


def _solver(g: CoxeterGroup, m: TransformationMonoid) -> _BorelSolver:
    cache = g.__dict__.setdefault("_borel_solver", {})
    if id(m) not in cache:
        cache[id(m)] = _BorelSolver(g, m)
    return cache[id(m)]


def decomposition_matrix_linear(g: CoxeterGroup, m: TransformationMonoid | None = None) -> np.ndarray:
    """Independent computation of :func:`decomposition_matrix` from characters.

    The character of each simple ``S_w`` on the elements of ``M_{w0}`` is
    expanded in the one-dimensional Borel characters.
    """
    m = m if m is not None else bihecke(g)
    sol = _solver(g, m)
    D = np.zeros((g.size, g.size), dtype=np.int64)
    for w in range(g.size):
        D[w] = sol.solve(SimpleModule(g, w).character(m, sol.ids))
    return D


def character_T_restricted(g: CoxeterGroup, w: int) -> CharacterVector:
    """Restriction of ``T_w`` to ``M_{w0}``: multiplicity one on ``[1, w]_R``."""
    return {int(u): 1 for u in g.interval(0, w, "R")}


def character_T_restricted_linear(g: CoxeterGroup, w: int, m: TransformationMonoid | None = None) -> CharacterVector:
    """The same restriction, computed from traces of ``T_w`` on ``M_{w0}``."""
    m = m if m is not None else bihecke(g)
    sol = _solver(g, m)
    c = sol.solve(translation_module(g, w).character(m, sol.ids))
    return {u: k for u, k in enumerate(c) if k}


def h0_restriction(g: CoxeterGroup, w: int) -> frozenset[int]:
    """``S^{w0}_w`` restricted to the 0-Hecke monoid is the simple indexed by ``D_R(w)``."""
    return g.descents_right(w)
