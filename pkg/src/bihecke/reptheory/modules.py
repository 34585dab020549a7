"""Translation modules ``T_w`` and the simple modules of the biHecke monoid.

Modules are right modules written on row vectors: a vector ``v`` is sent
by a monoid element ``f`` to ``v @ rho(f)``.  The translation module
``T_w`` has basis ``[1, w]_R``; generators act by partial permutations.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from ..blocks import all_blocks, cutting_poset, jblock, reduced_blocks
from ..coxeter import CoxeterGroup
from ..fmonoid import TransformationMonoid, closure
from .linalg import RationalMatrix

SINK = -1


class MatrixRep:
    """A module given by one exact matrix per generator label."""

    def __init__(self, basis_labels: Sequence[str], gens: dict[str, RationalMatrix]):
        self.basis_labels = list(basis_labels)
        self.gens = dict(gens)

    @property
    def dim(self) -> int:
        return len(self.basis_labels)

    def matrix(self, label: str) -> RationalMatrix:
        return self.gens[label]

    def act_word(self, word: Iterable[str]) -> RationalMatrix:
        out = RationalMatrix.identity(self.dim)
        for lab in word:
            out = out @ self.matrix(lab)
        return out

    def element_matrix(self, m: TransformationMonoid, f: int) -> RationalMatrix:
        return self.act_word(m.word(f))

    def character(self, m: TransformationMonoid, ids: Iterable[int]) -> list[Fraction]:
        return [self.element_matrix(m, f).trace() for f in ids]


class TranslationModule(MatrixRep):
    """``T_w`` with basis ``[1, w]_R`` (sorted by element id).

    ``maps[label]`` is an integer array over basis positions: the image
    position, or ``SINK`` when the basis vector is sent to 0.
    """

    def __init__(self, g: CoxeterGroup, w: int):
        self.group = g
        self.w = int(w)
        self.basis = g.interval(0, w, "R")
        self.pos = {u: k for k, u in enumerate(self.basis)}
        self.maps: dict[str, np.ndarray] = {}
        for i in g.index_set:
            p, q = [], []
            for u in self.basis:
                us = int(g.right[u, i - 1])
                inside = us in self.pos
                if int(g.dr[u]) >> (i - 1) & 1:
                    p.append(self.pos[u])
                    q.append(self.pos[us])
                else:
                    p.append(self.pos[us] if inside else SINK)
                    q.append(self.pos[u] if inside else SINK)
            self.maps[f"pi{i}"] = np.array(p, dtype=np.int64)
            self.maps[f"opi{i}"] = np.array(q, dtype=np.int64)
        super().__init__([g.label(u) for u in self.basis], {})

    def matrix(self, label: str) -> RationalMatrix:
        if label not in self.gens:
            self.gens[label] = _partial_matrix(self.maps[label], self.dim)
        return self.gens[label]

    def s_matrix(self, i: int) -> RationalMatrix:
        """``s_i = π_i + π̄_i - 1``."""
        return self.matrix(f"pi{i}") + self.matrix(f"opi{i}") - RationalMatrix.identity(self.dim)

    def left_s_matrix(self, i: int) -> RationalMatrix:
        """Left operator: ``u -> s_i u`` if inside the interval, else ``-u``."""
        g = self.group
        rows = []
        for u in self.basis:
            row = [0] * self.dim
            su = int(g.left[u, i - 1])
            if su in self.pos:
                row[self.pos[su]] = 1
            else:
                row[self.pos[u]] = -1
            rows.append(row)
        return RationalMatrix.from_rows(rows, ncols=self.dim)

    def element_maps(self, m: TransformationMonoid) -> np.ndarray:
        """Partial maps of every monoid element (labels ``pi*``/``opi*``),
        shape ``(|M|, dim)`` with ``SINK`` for annihilated vectors."""
        key = id(m)
        cache = self.__dict__.setdefault("_elt_maps", {})
        if key in cache:
            return cache[key]
        n, d = len(m), self.dim
        ext = {lab: np.append(arr, SINK) for lab, arr in self.maps.items()}
        out = np.empty((n, d), dtype=np.int64)
        out[0] = np.arange(d)
        for h in m.bfs_order()[1:]:
            par = out[int(m.parent[h])]
            out[h] = ext[m.gen_labels[int(m.parent_gen[h])]][par]
        cache[key] = out
        return out

    def element_matrix(self, m: TransformationMonoid, f: int) -> RationalMatrix:
        return _partial_matrix(self.element_maps(m)[f], self.dim)

    def character(self, m: TransformationMonoid, ids: Iterable[int]) -> list[Fraction]:
        maps = self.element_maps(m)
        return [Fraction(int((maps[f] == np.arange(self.dim)).sum())) for f in ids]

    def vector_action(self, v: np.ndarray, word: Iterable[str]) -> np.ndarray:
        """Apply a generator word to a coordinate vector (object/int array)."""
        v = np.array(v, dtype=object)
        for lab in word:
            out = np.zeros(self.dim, dtype=object)
            tgt = self.maps[lab]
            for k, t in enumerate(tgt):
                if t != SINK:
                    out[t] += v[k]
            v = out
        return v


def _partial_matrix(targets: np.ndarray, dim: int) -> RationalMatrix:
    rows = []
    for t in targets:
        row = [0] * dim
        if t != SINK:
            row[int(t)] = 1
        rows.append(row)
    return RationalMatrix.from_rows(rows, ncols=dim)


def _gen_labels(g: CoxeterGroup) -> list[str]:
    return [f"pi{i}" for i in g.index_set] + [f"opi{i}" for i in g.index_set]


def translation_module(g: CoxeterGroup, w: int) -> TranslationModule:
    cache = g.__dict__.setdefault("_tmod_cache", {})
    if w not in cache:
        cache[w] = TranslationModule(g, w)
    return cache[w]


# ------------------------------------------------------- P_J submodules
def left_fixed_space(T: TranslationModule, J: Iterable[int]) -> RationalMatrix:
    """Rows spanning ``{v : ls_j . v = -v for all j in J}`` for the left operators.

    This space always contains ``P_J^{(w)}`` but can be strictly larger:
    a basis vector ``u`` with every ``s_j u`` outside ``[1, w]_R`` satisfies
    the condition on its own.
    """
    J = sorted(J)
    if not J:
        return RationalMatrix.identity(T.dim)
    eye = RationalMatrix.identity(T.dim)
    # v (L_j + 1) = 0 for all j  <=>  v [L_1 + 1 | L_2 + 1 | ...] = 0
    cols = [(T.left_s_matrix(j) + eye).transpose() for j in J]
    stacked = RationalMatrix.vstack(cols, T.dim).transpose()
    return stacked.left_nullspace().rref()[0]


def is_submodule(T: MatrixRep, basis: RationalMatrix, labels: Iterable[str]) -> bool:
    if basis.rows == 0:
        return True
    for lab in labels:
        if not basis.contains_rows(basis @ T.matrix(lab)):
            return False
    return True


def antisym_vectors(g: CoxeterGroup, w: int, J: Iterable[int]) -> RationalMatrix:
    """The vectors ``v_J . π_v`` for ``v`` in ``[1, ^J w]_R``, where ``v_J`` is
    the alternating sum of ``[1, w_J]_R`` (signs relative to ``w_J``)."""
    T = translation_module(g, w)
    v, wJ = g.coset_left(w, J)
    vJ = np.zeros(T.dim, dtype=object)
    for u in g.interval(0, wJ, "R"):
        vJ[T.pos[u]] = (-1) ** int(g.length[wJ] - g.length[u])
    rows = []
    for x in g.interval(0, v, "R"):
        rows.append(list(T.vector_action(vJ, [f"pi{i}" for i in g.word(x)])))
    return RationalMatrix.from_rows(rows, ncols=T.dim)


def antisym_submodule(g: CoxeterGroup, w: int, J: Iterable[int]) -> RationalMatrix | None:
    """Basis ``{v_J . π_v : v in [1, ^J w]_R}`` of ``P_J^{(w)}``, or ``None``
    when its span is not stable under the generators."""
    J = frozenset(J)
    T = translation_module(g, w)
    if not J:
        return RationalMatrix.identity(T.dim)
    basis = antisym_vectors(g, w, J)
    if basis.rank() != basis.rows or not is_submodule(T, basis, _gen_labels(g)):
        return None
    return basis


def intertwines(g: CoxeterGroup, w: int, J: Iterable[int], basis: RationalMatrix) -> bool:
    """Check that ``e_x -> basis[x]`` (``x`` in ``[1, ^J w]_R``) is a module map ``T_{^J w} -> T_w``."""
    v = g.coset_left(w, J)[0]
    Tv, Tw = translation_module(g, v), translation_module(g, w)
    for lab in _gen_labels(g):
        if Tv.matrix(lab) @ basis != basis @ Tw.matrix(lab):
            return False
    return True


# ------------------------------------------------------------- simples
def simple_basis(g: CoxeterGroup, w: int) -> list[int]:
    """``[1, w]_R`` minus the intervals ``[1, v]_R`` of the cutting points ``v ⊏ w``."""
    cp = cutting_poset(g)
    inside = g.below_R(w).copy()
    for v in cp.strictly_below(w):
        inside &= ~g.below_R(v)
    return [int(x) for x in np.flatnonzero(inside)]


def dim_simple(g: CoxeterGroup, w: int) -> int:
    return len(simple_basis(g, w))


def radical_submodule(g: CoxeterGroup, w: int) -> RationalMatrix:
    """Span of the embedded ``T_v`` (``v ⊏ w``) inside ``T_w``, as ``P_J`` spaces."""
    T = translation_module(g, w)
    parts = [antisym_submodule(g, w, b.J) for b in reduced_blocks(g, w) if b.J]
    if any(p is None for p in parts):
        raise AssertionError("a reduced left block gave an unstable P_J")
    if not parts:
        return RationalMatrix.zeros(0, T.dim)
    return RationalMatrix.vstack(parts, T.dim).rref()[0]


def dim_simple_linear(g: CoxeterGroup, w: int) -> int:
    T = translation_module(g, w)
    return T.dim - radical_submodule(g, w).rows


class SimpleModule(MatrixRep):
    """``S_w = T_w / N_w`` with basis the non-pivot coordinates of ``N_w``."""

    def __init__(self, g: CoxeterGroup, w: int):
        self.group = g
        self.w = int(w)
        T = translation_module(g, w)
        N, piv = radical_submodule(g, w).rref() if T.dim else (RationalMatrix.zeros(0, 0), [])
        self.quotient_coords = [k for k in range(T.dim) if k not in set(piv)]
        self._T, self._N, self._piv = T, N, piv
        labels = [T.basis_labels[k] for k in self.quotient_coords]
        gens = {lab: self._quotient(T.matrix(lab)) for lab in _gen_labels(g)}
        super().__init__(labels, gens)

    def _quotient(self, A: RationalMatrix) -> RationalMatrix:
        Q, piv = self.quotient_coords, self._piv
        full = A.to_object_array()
        AQ = full[Q][:, Q]
        if piv:
            N = self._N.to_object_array()
            AQ = AQ - full[Q][:, piv].dot(N[:, Q])
        return RationalMatrix.from_numpy(AQ) if len(Q) else RationalMatrix.zeros(0, 0)

    def character(self, m: TransformationMonoid, ids: Iterable[int]) -> list[Fraction]:
        # f acts on T_w by a partial map t, so the trace on the quotient is the
        # sum over q in Q of [t(q) = q] - N[row of t(q), q] when t(q) is a pivot
        maps = self._T.element_maps(m)
        row_of = {p: r for r, p in enumerate(self._piv)}
        N = self._N.to_object_array() if self._piv else None
        out = []
        for f in ids:
            t = maps[f]
            tr = Fraction(0)
            for q in self.quotient_coords:
                tq = int(t[q])
                if tq == q:
                    tr += 1
                elif tq in row_of:
                    tr -= N[row_of[tq], q]
            out.append(tr)
        return out


def simple_modules(g: CoxeterGroup) -> list[SimpleModule]:
    """One simple module per element of ``W``, in id order."""
    return [SimpleModule(g, w) for w in range(g.size)]


# ------------------------------------------------- the w-biHecke algebra
def whbihecke_dim(g: CoxeterGroup, w: int) -> int:
    """Number of pairs ``(u, v)`` in ``[1, w]_R`` with ``J(u) ⊆ J(v)``."""
    inter = g.interval(0, w, "R")
    J = [jblock(g, w, u) for u in inter]
    return sum(1 for a in J for b in J if a <= b)


def whbihecke_dim_linear(g: CoxeterGroup, w: int, max_dim: int = 600) -> int:
    """Dimension of the span of all products of generator matrices of ``T_w``."""
    T = translation_module(g, w)
    if T.dim > max_dim:
        raise ValueError(f"T_w has dimension {T.dim} above the cap {max_dim}")
    d = T.dim
    # Partial maps closed under composition, with an explicit sink point d.
    gens = [(lab, np.append(arr, SINK) % (d + 1)) for lab, arr in T.maps.items()]
    if not gens:
        return 1  # the trivial group: only the identity operator
    mon = closure(gens)
    rows = []
    for f in mon.elements:
        row = np.zeros(d * d, dtype=np.int64)
        for k in range(d):
            t = int(f[k])
            if t != d:
                row[k * d + t] = 1
        rows.append(row)
    return RationalMatrix.from_numpy(np.array(rows)).rank()
