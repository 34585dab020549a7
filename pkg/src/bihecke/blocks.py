"""Blocks, cutting points and the cutting poset of a finite Coxeter group.

A right block of ``w`` is a subset ``K`` of the index set such that
``w W_K = W_J w`` for some ``J``; equivalently, conjugation by the
cutting point ``v = w^K`` sends each ``s_k`` (``k`` in ``K``) to a simple
reflection ``s_phi(k)``.  The cutting poset orders ``W`` by
``u ⊑ w  iff  w ∈ u W_{K(u)}`` where ``K(u)`` is the set of short right
nondescents of ``u``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import reduce
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from .coxeter import CoxeterGroup, IncomparableError
from .posets import Poset


@dataclass(frozen=True)
class BlockData:
    w: int
    K: frozenset[int]
    J: frozenset[int]
    phi: tuple[tuple[int, int], ...]
    cutting_point: int
    reduced: bool
    trivial: bool

    def phi_map(self) -> dict[int, int]:
        return dict(self.phi)

    def to_json(self, g: CoxeterGroup) -> dict:
        return {
            "w": g.label(self.w),
            "K": sorted(self.K),
            "J": sorted(self.J),
            "phi": {str(k): j for k, j in self.phi},
            "cutting_point": g.label(self.cutting_point),
            "reduced": self.reduced,
            "trivial": self.trivial,
        }


def _subsets(items: Sequence[int]):
    for r in range(len(items) + 1):
        yield from (frozenset(c) for c in combinations(items, r))


def _simple_index(g: CoxeterGroup) -> dict[int, int]:
    """Element id of ``s_i`` -> label ``i``."""
    return {int(g.right[0, i]): i + 1 for i in range(g.rank)}


def is_right_block(g: CoxeterGroup, w: int, K: Iterable[int]) -> BlockData | None:
    K = frozenset(int(k) for k in K)
    v, kw = g.coset_right(w, K)
    simples = _simple_index(g)
    vinv = int(g.inv[v])
    phi = []
    for k in sorted(K):
        vs = int(g.right[v, k - 1])
        j = simples.get(g.product(vs, vinv))
        if j is None:
            return None
        phi.append((k, j))
    J = frozenset(j for _, j in phi)
    reduced = g.bits(K) == int(g.support[kw])
    return BlockData(int(w), K, J, tuple(phi), v, reduced, v == int(w))


def is_left_block(g: CoxeterGroup, w: int, J: Iterable[int]) -> BlockData | None:
    """Left block ``J`` of ``w``, returned as the matching right-block record."""
    J = frozenset(int(j) for j in J)
    rb = is_right_block(g, int(g.inv[w]), J)
    if rb is None:
        return None
    # J is a right block of w^-1 with partner K; invert back.
    K = rb.J
    return is_right_block(g, w, K)


def all_blocks(g: CoxeterGroup, w: int) -> list[BlockData]:
    """Every right block of ``w`` (exhaustive over subsets of the index set)."""
    out = []
    for K in _subsets(g.index_set):
        b = is_right_block(g, w, K)
        if b is not None:
            out.append(b)
    return out


def right_reduced(g: CoxeterGroup, w: int, K: Iterable[int]) -> bool:
    """Every generator of ``K`` occurs in the reduced words of ``_K w``."""
    mask = g.bits(K)
    return int(g.support[g.coset_right(w, K)[1]]) == mask


def reduced_blocks(g: CoxeterGroup, w: int) -> list[BlockData]:
    """Reduced right blocks: right-reduced ``K`` with ``w^K <=_L w``."""
    out = []
    for K in _subsets(g.index_set):
        if not right_reduced(g, w, K):
            continue
        v = g.coset_right(w, K)[0]
        if g.le_L(v, w):
            b = is_right_block(g, w, K)
            if b is None:
                raise AssertionError("reduced-block criterion returned a non-block")
            out.append(b)
    return out


def reduce_block(g: CoxeterGroup, w: int, K: Iterable[int]) -> frozenset[int]:
    """Largest reduced set inside ``K`` with the same cutting point."""
    kw = g.coset_right(w, K)[1]
    return g.unbits(int(g.support[kw]))


# ------------------------------------------------------------ cutting poset
def short_right_nondescents(g: CoxeterGroup, u: int) -> frozenset[int]:
    """``K(u)``: nondescents ``k`` with ``u s_k = s_j u`` for a simple ``s_j``."""
    return g.unbits(_k_mask(g, u))


def short_left_nondescents(g: CoxeterGroup, u: int) -> frozenset[int]:
    return g.unbits(_k_mask(g, int(g.inv[u])))


def _k_mask(g: CoxeterGroup, u: int) -> int:
    simples = _simple_index(g)
    uinv = int(g.inv[u])
    mask = 0
    for k in g.index_set:
        if int(g.dr[u]) >> (k - 1) & 1:
            continue
        if g.product(int(g.right[u, k - 1]), uinv) in simples:
            mask |= 1 << (k - 1)
    return mask


def _k_masks(g: CoxeterGroup) -> np.ndarray:
    if not hasattr(g, "_cut_k_masks"):
        g._cut_k_masks = np.array([_k_mask(g, u) for u in range(g.size)], dtype=np.int64)
    return g._cut_k_masks


def cutting_le(g: CoxeterGroup, u: int, w: int) -> bool:
    """``u ⊑ w``, tested as membership of ``w`` in ``u W_{K(u)}``."""
    z = g.product(int(g.inv[u]), w)
    return int(g.support[z]) & ~int(_k_masks(g)[u]) == 0


def cutting_upset(g: CoxeterGroup, u: int) -> list[int]:
    """``U_u = {w : u ⊑ w}``."""
    z = g.mul[int(g.inv[u]), :]
    ok = (g.support[z] & ~_k_masks(g)[u]) == 0
    return [int(x) for x in np.flatnonzero(ok)]


@dataclass
class CuttingPoset:
    group: CoxeterGroup
    poset: Poset
    K: list[frozenset[int]] = field(repr=False)
    J: list[frozenset[int]] = field(repr=False)

    def le(self, u: int, w: int) -> bool:
        return self.poset.leq(int(u), int(w))

    def lower_covers(self, w: int) -> list[int]:
        return self.poset.lower_covers(int(w))

    def strictly_below(self, w: int) -> list[int]:
        return [u for u in self.poset.lower_set(int(w)) if u != w]

    def to_dot(self) -> str:
        return self.poset.to_dot(name=f"cutting_{self.group.descriptor}", label=self.group.label)


def cutting_poset(g: CoxeterGroup, validate: bool = True) -> CuttingPoset:
    if hasattr(g, "_cutting_poset"):
        return g._cutting_poset
    n = g.size
    le = np.zeros((n, n), dtype=bool)
    for u in range(n):
        le[u, cutting_upset(g, u)] = True
    if validate:
        for u in range(n):
            row = np.flatnonzero(le[u])
            if not (g.above_R(u)[row].all() and g.above_L(u)[row].all()):
                raise AssertionError("cutting order is not contained in the weak orders")
    poset = Poset.from_matrix(list(range(n)), le)
    masks = _k_masks(g)
    K = [g.unbits(int(m)) for m in masks]
    J = [short_left_nondescents(g, u) for u in range(n)]
    cp = CuttingPoset(g, poset, K, J)
    g._cutting_poset = cp
    return cp


def cutting_points(g: CoxeterGroup, w: int) -> dict[frozenset[int], int]:
    """Reduced right block ``K`` -> cutting point ``w^K``."""
    return {b.K: b.cutting_point for b in reduced_blocks(g, w)}


def reduced_left_blocks(g: CoxeterGroup, w: int) -> list[frozenset[int]]:
    return [b.J for b in reduced_blocks(g, w)]


def descent_complement_index(g: CoxeterGroup, w: int) -> dict[frozenset[int], int]:
    """Alternate indexing of the cutting points ``u ⊑ w`` by the complement of ``D_R(u)``."""
    cp = cutting_poset(g)
    full = frozenset(g.index_set)
    return {full - g.descents_right(u): u for u in cp.poset.lower_set(int(w))}


def _check_in_interval(g: CoxeterGroup, w: int, u: int) -> None:
    if not g.le_R(u, w):
        raise IncomparableError(f"{g.label(u)} is not in [1, {g.label(w)}]_R")


def jblock(g: CoxeterGroup, w: int, u: int) -> frozenset[int]:
    """Index ``J`` of the lowest cutting point ``^J w`` with ``u`` in ``[1, ^J w]_R``.

    The reduced left blocks are closed under union, and ``u`` lies below
    ``^J w`` exactly when ``D_L(u)`` misses ``J``, so the answer is the
    union of the reduced left blocks disjoint from ``D_L(u)``.
    """
    _check_in_interval(g, w, u)
    dl = g.descents_left(u)
    out: frozenset[int] = frozenset()
    for J in _reduced_left_blocks_cached(g, w):
        if not (J & dl):
            out |= J
    return out


def kblock(g: CoxeterGroup, w: int, u: int) -> frozenset[int]:
    """Right-block index of the same cutting point as :func:`jblock`."""
    J = jblock(g, w, u)
    for b in reduced_blocks(g, w):
        if b.J == J:
            return b.K
    raise AssertionError("left block without matching right block")


def _reduced_left_blocks_cached(g: CoxeterGroup, w: int) -> list[frozenset[int]]:
    cache = g.__dict__.setdefault("_rlb_cache", {})
    if w not in cache:
        cache[w] = reduced_left_blocks(g, w)
    return cache[w]


def mobius_cutting(g: CoxeterGroup, u: int, w: int) -> int:
    """Möbius function of the cutting poset by the closed formula:
    ``(-1)^r`` if ``u`` is the meet of the ``r`` lower covers of ``w``
    lying above it, and 0 otherwise."""
    cp = cutting_poset(g)
    if not cp.le(u, w):
        raise IncomparableError(f"{g.label(u)} is not below {g.label(w)} in the cutting order")
    if u == w:
        return 1
    above = [v for v in cp.lower_covers(w) if cp.le(u, v)]
    m = reduce(lambda a, b: g.weak_meet(a, b, "R"), above)
    return (-1) ** len(above) if m == u else 0


# ------------------------------------------------------ type-A matrix blocks
@dataclass(frozen=True)
class MatrixBlock:
    columns: tuple[int, int]  # 1-based inclusive positions
    rows: tuple[int, int]  # 1-based inclusive values
    pattern: tuple[int, ...]
    connected: bool

    @property
    def identity(self) -> bool:
        return self.pattern == tuple(range(1, len(self.pattern) + 1))


def _connected(pattern: Sequence[int]) -> bool:
    """No proper prefix of positions is mapped onto a prefix of values."""
    running = 0
    for k, v in enumerate(pattern[:-1], start=1):
        running = max(running, v)
        if running == k:
            return False
    return True


def matrix_blocks_typeA(w: Sequence[int] | str, proper: bool = True) -> list[MatrixBlock]:
    """Intervals of positions mapped onto intervals of values.

    ``w`` is a one-line permutation (1-based values).  With ``proper`` the
    singletons and the whole permutation are skipped; otherwise only the
    singletons are.
    """
    if isinstance(w, str):
        w = [int(c) for c in (w.split(",") if "," in w else w)]
    w = list(w)
    n = len(w)
    out = []
    for i in range(n):
        lo = hi = w[i]
        for k in range(i + 1, n):
            lo, hi = min(lo, w[k]), max(hi, w[k])
            if hi - lo != k - i:
                continue
            if proper and i == 0 and k == n - 1:
                continue
            pattern = tuple(v - lo + 1 for v in w[i : k + 1])
            out.append(MatrixBlock((i + 1, k + 1), (lo, hi), pattern, _connected(pattern)))
    return out


def blocks_from_matrix_blocks(w: Sequence[int]) -> dict[frozenset[int], dict[str, bool]]:
    """Right blocks of ``w`` predicted from disjoint unions of matrix-blocks.

    Each family of pairwise disjoint non-singleton matrix-blocks with column
    sets ``[i..k]`` gives ``K = ∪ {i..k-1}``.  The value records whether
    some family of connected blocks (reduced) or of identity blocks
    (trivial) produces the same ``K``.
    """
    mbs = matrix_blocks_typeA(w, proper=False)
    out: dict[frozenset[int], dict[str, bool]] = {}

    def rec(start: int, chosen: list[MatrixBlock]):
        K = frozenset(j for b in chosen for j in range(b.columns[0], b.columns[1]))
        rec_entry = out.setdefault(K, {"reduced": False, "trivial": False})
        if all(b.connected for b in chosen):
            rec_entry["reduced"] = True
        if all(b.identity for b in chosen):
            rec_entry["trivial"] = True
        for b in mbs:
            if b.columns[0] >= start:
                rec(b.columns[1] + 1, chosen + [b])

    rec(1, [])
    return out
