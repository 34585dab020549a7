"""Machine checks of the structural theorems, shared by ``bihecke check`` and the tests.

Each check takes a :class:`Context` and raises :class:`CheckFailure` (or
``AssertionError``) on a counterexample, or :class:`Skip` when the group or
monoid is too large for it.  Checks are exhaustive on small groups and fall
back to seeded random samples above ``Context.exhaustive_limit`` elements.
"""

from __future__ import annotations

import random
import tempfile
import time
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from pathlib import Path
from typing import Callable

import numpy as np

from . import blocks as B
from .coxeter import CoxeterGroup, SizeError
from .fmonoid import (
    TransformationMonoid,
    bihecke,
    borel,
    check_fiber_contraction,
    e_w,
    green,
    irreducible_elements,
    load_monoid,
    omega_array,
    save_monoid,
)
from .posets import Poset, boolean_lattice, chain
from .reptheory import borel as RB
from .reptheory import cartan as RC
from .reptheory import modules as RM
from .reptheory.linalg import PrimeField, RationalField, RationalMatrix


class CheckFailure(AssertionError):
    pass


class Skip(Exception):
    pass


def require(cond, msg: str) -> None:
    if not cond:
        raise CheckFailure(msg)


@dataclass
class Context:
    g: CoxeterGroup
    seed: int = 0
    exhaustive_limit: int = 48
    samples: int = 200
    monoid_cap: int = 40000
    slow: bool = False
    threads: int = 1
    progress: Callable[[str], None] | None = None
    rng: random.Random = field(init=False)

    def __post_init__(self) -> None:
        self.rng = random.Random(self.seed)

    @property
    def exhaustive(self) -> bool:
        return self.g.size <= self.exhaustive_limit

    def elements(self) -> list[int]:
        """All of ``W`` when small, otherwise a seeded sample."""
        n = self.g.size
        if self.exhaustive:
            return list(range(n))
        return sorted(self.rng.sample(range(n), min(self.samples, n)))

    def pairs(self) -> list[tuple[int, int]]:
        n = self.g.size
        if self.exhaustive:
            return [(u, v) for u in range(n) for v in range(n)]
        return [(self.rng.randrange(n), self.rng.randrange(n)) for _ in range(self.samples * 10)]

    @cached_property
    def M(self) -> TransformationMonoid:
        try:
            return bihecke(self.g, max_elements=self.monoid_cap, threads=self.threads)
        except SizeError as e:
            raise Skip(f"biHecke monoid too large: {e}") from None

    @cached_property
    def M1(self) -> TransformationMonoid:
        return borel(self.g, "1", m=self.M)

    @cached_property
    def Mw0(self) -> TransformationMonoid:
        return borel(self.g, "w0", m=self.M)

    def monoid_rows(self, m: TransformationMonoid) -> np.ndarray:
        if len(m) <= 6000:
            return m.elements.astype(np.int64)
        idx = sorted(self.rng.sample(range(len(m)), 2000))
        return m.elements[idx].astype(np.int64)


@dataclass
class CheckResult:
    name: str
    status: str  # "pass", "fail" or "skip"
    detail: str
    seconds: float


CHECKS: dict[str, Callable[[Context], None]] = {}


def check(name: str):
    def deco(fn):
        CHECKS[name] = fn
        return fn

    return deco


def run_checks(ctx: Context, names: list[str] | None = None) -> list[CheckResult]:
    out = []
    for name, fn in CHECKS.items():
        if names and not any(name == n or name.startswith(n + ".") for n in names):
            continue
        if ctx.progress:
            ctx.progress(f"check {name}")
        t = time.perf_counter()
        try:
            fn(ctx)
            status, detail = "pass", ""
        except Skip as e:
            status, detail = "skip", str(e)
        except AssertionError as e:
            status, detail = "fail", str(e) or type(e).__name__
        out.append(CheckResult(name, status, detail, time.perf_counter() - t))
    return out


def _subsets(items):
    for r in range(len(items) + 1):
        yield from (frozenset(c) for c in combinations(items, r))


# ================================================================ coxeter
@check("coxeter.length")
def _length(ctx: Context) -> None:
    g = ctx.g
    L = g.length
    require((L[g.mul] <= L[:, None] + L[None, :]).all(), "length is not subadditive")
    require((np.abs(L[g.right] - L[:, None]) == 1).all(), "l(u s_i) differs from l(u) by other than 1")


@check("coxeter.bruhat_subword")
def _bruhat(ctx: Context) -> None:
    g = ctx.g
    for u, w in ctx.pairs():
        require(g.le_B(u, w) == g.le_B_subword(u, w), f"Bruhat mismatch at ({g.label(u)}, {g.label(w)})")


@check("coxeter.weak_lattices")
def _weak_lattices(ctx: Context) -> None:
    g = ctx.g
    for side in "RL":
        below = np.stack([g._below(w, side) for w in range(g.size)])
        above = np.stack([g._above(w, side) for w in range(g.size)])
        for u, v in ctx.pairs():
            m, j = g.weak_meet(u, v, side), g.weak_join(u, v, side)
            require(np.array_equal(below[u] & below[v], below[m]), f"bad {side}-meet of {g.label(u)}, {g.label(v)}")
            require(np.array_equal(above[u] & above[v], above[j]), f"bad {side}-join of {g.label(u)}, {g.label(v)}")
            require(g.weak_meet(u, j, side) == u and g.weak_join(u, m, side) == u, "absorption fails")


@check("coxeter.interval_types")
def _interval_types(ctx: Context) -> None:
    g = ctx.g
    for u, w in ctx.pairs():
        for side in "LR":
            if not g.le(u, w, side):
                continue
            uinv = int(g.inv[u])
            t = g.product(w, uinv) if side == "L" else g.product(uinv, w)
            require(g.interval_type(u, w, side) == t, "interval type mismatch")
            shift = (lambda x: g.product(x, uinv)) if side == "L" else (lambda x: g.product(uinv, x))
            src = g.interval(u, w, side)
            img = [shift(x) for x in src]
            require(sorted(img) == sorted(g.interval(0, t, side)), "shift is not onto the standard interval")
            inside = set(src)
            step = g.left if side == "L" else g.right
            for x in src:
                for i in range(g.rank):
                    y = int(step[x, i])
                    if y in inside and g.length[y] > g.length[x]:
                        require(int(step[shift(x), i]) == shift(y), "colored cover not preserved")


@check("coxeter.cosets")
def _cosets(ctx: Context) -> None:
    g = ctx.g
    for w in ctx.elements():
        for K in _subsets(g.index_set):
            mask = g.bits(K)
            v, k = g.coset_right(w, K)
            require(g.product(v, k) == w, "w != w^K _K w")
            require(int(g.dr[v]) & mask == 0, "w^K has a right descent in K")
            require(g.length[w] == g.length[v] + g.length[k], "lengths do not add")
            require(int(g.support[k]) & ~mask == 0, "_K w not in W_K")
            a, b = g.coset_left(w, K)
            require(g.product(b, a) == w and int(g.dl[a]) & mask == 0, "left coset decomposition fails")


# ================================================================= posets
def _random_poset(rng: random.Random, n: int) -> Poset:
    covers = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < 0.15]
    return Poset.from_covers(list(range(n)), covers)


def _mobius_inversion(p: Poset, rng: random.Random) -> None:
    nodes = list(p.ground)
    f = {x: rng.randint(-5, 5) for x in nodes}
    gsum = {x: sum(f[y] for y in p.lower_set(x)) for x in nodes}
    for y in nodes:
        require(sum(p.mobius(x, y) * gsum[x] for x in p.lower_set(y)) == f[y], "Möbius inversion fails")


@check("posets.mobius_inversion")
def _posets_mobius(ctx: Context) -> None:
    posets = [_random_poset(ctx.rng, 30), boolean_lattice(4), chain(5)]
    if ctx.g.size <= 100:
        posets.append(B.cutting_poset(ctx.g).poset)
        posets.append(Poset.from_leq(list(range(ctx.g.size)), ctx.g.le_R))
    for p in posets:
        _mobius_inversion(p, ctx.rng)


def _birkhoff_roundtrip(p: Poset) -> None:
    ji = p.join_irreducibles()
    sub = p.subposet(ji)
    ideals = sub.lower_sets()
    image = {x: frozenset(j for j in ji if p.leq(j, x)) for x in p.ground}
    require(sorted(map(sorted, image.values())) == sorted(map(sorted, ideals.ground)), "not onto the lower sets")
    for x in p.ground:
        for y in p.ground:
            require(p.leq(x, y) == (image[x] <= image[y]), "Birkhoff map is not an order isomorphism")


@check("posets.birkhoff")
def _posets_birkhoff(ctx: Context) -> None:
    _birkhoff_roundtrip(boolean_lattice(3))
    _birkhoff_roundtrip(chain(4))
    cp = B.cutting_poset(ctx.g)
    for w in ctx.elements():
        iv = cp.poset.interval(0, w)
        if len(iv) <= 25:
            _birkhoff_roundtrip(iv)


# ================================================================= blocks
@check("blocks.closure")
def _blocks_closure(ctx: Context) -> None:
    g = ctx.g
    for w in ctx.elements():
        bl = {b.K: b.J for b in B.all_blocks(g, w)}
        for K1, K2 in combinations(bl, 2):
            for K, J in ((K1 | K2, bl[K1] | bl[K2]), (K1 & K2, bl[K1] & bl[K2])):
                require(K in bl, f"{sorted(K)} missing from the blocks of {g.label(w)}")
                require(bl[K] == J, f"left partner of {sorted(K)} is not {sorted(J)} for {g.label(w)}")


@check("blocks.antimorphism")
def _blocks_antimorphism(ctx: Context) -> None:
    g = ctx.g
    for w in ctx.elements():
        Ks = [b.K for b in B.all_blocks(g, w)]
        cut = {K: g.coset_right(w, K)[0] for K in Ks}
        for K1, K2 in combinations(Ks, 2):
            for side in "RL":
                require(cut[K1 & K2] == g.weak_join(cut[K1], cut[K2], side), f"join identity fails ({side})")
                require(cut[K1 | K2] == g.weak_meet(cut[K1], cut[K2], side), f"meet identity fails ({side})")


@check("blocks.cutting_order")
def _cutting_order(ctx: Context) -> None:
    g = ctx.g
    n = g.size
    le = np.zeros((n, n), dtype=bool)
    for u in range(n):
        le[u, B.cutting_upset(g, u)] = True
    require(le.diagonal().all(), "not reflexive")
    require(not (le & le.T & ~np.eye(n, dtype=bool)).any(), "not antisymmetric")
    li = le.astype(np.int64)
    require(not ((li @ li > 0) & ~le).any(), "not transitive")
    for u in range(n):
        require((g.above_R(u) | ~le[u]).all() and (g.above_L(u) | ~le[u]).all(), "not inside the weak orders")


@check("blocks.cutting_intervals")
def _cutting_intervals(ctx: Context) -> None:
    g = ctx.g
    cp = B.cutting_poset(g)
    for w in ctx.elements():
        for u in cp.poset.lower_set(w):
            iv = cp.poset.interval(u, w)
            require(iv.is_distributive(), f"[{g.label(u)}, {g.label(w)}] is not distributive")
            for a in iv.ground:
                for b in iv.ground:
                    require(iv.leq(a, b) == g.le_R(a, b), "interval is not induced from right order")


@check("blocks.cutting_lattice")
def _cutting_lattice(ctx: Context) -> None:
    g = ctx.g
    cp = B.cutting_poset(g)
    require(cp.poset.is_meet_semilattice(), "cutting poset is not a meet-semilattice")
    require(cp.poset.is_meet_distributive(), "cutting poset is not meet-distributive")
    for w in ctx.elements():
        for u in cp.poset.lower_set(w):
            require(B.mobius_cutting(g, u, w) == cp.poset.mobius(u, w), "Möbius formula mismatch")


@check("blocks.matrix_blocks")
def _matrix_blocks(ctx: Context) -> None:
    g = ctx.g
    if not g.is_type_a:
        raise Skip("type A only")
    for w in ctx.elements():
        pred = B.blocks_from_matrix_blocks(g.one_line(w))
        actual = {b.K: b for b in B.all_blocks(g, w)}
        require(set(pred) == set(actual), f"block sets differ for {g.label(w)}")
        for K, b in actual.items():
            require(pred[K]["reduced"] == b.reduced, f"reduced flag differs for {g.label(w)}, K={sorted(K)}")
            require(pred[K]["trivial"] == b.trivial, f"trivial flag differs for {g.label(w)}, K={sorted(K)}")


@check("blocks.tiling")
def _tiling(ctx: Context) -> None:
    g = ctx.g
    for w in ctx.elements():
        full = sorted(g.interval(0, w, "R"))
        for b in B.all_blocks(g, w):
            v, wJ = g.coset_left(w, b.J)
            prods = [g.product(x, y) for x in g.interval(0, wJ, "R") for y in g.interval(0, v, "R")]
            require(sorted(prods) == full, f"tiling fails for {g.label(w)}, J={sorted(b.J)}")


@check("blocks.birkhoff_indexing")
def _birkhoff_indexing(ctx: Context) -> None:
    g = ctx.g
    cp = B.cutting_poset(g)
    for w in ctx.elements():
        idx = B.descent_complement_index(g, w)
        keys = list(idx)
        for a, b in combinations(keys, 2):
            require(a | b in idx and a & b in idx, f"descent-complement sets not closed for {g.label(w)}")
        for a in keys:
            for b in keys:
                require(cp.le(idx[a], idx[b]) == (a >= b), "indexing is not an antiisomorphism")


# ================================================================ fmonoid
def _bruhat_covers(g: CoxeterGroup) -> tuple[np.ndarray, np.ndarray]:
    Bm = g.bruhat_lower
    xs, zs = np.nonzero(Bm & (g.length[None, :] == g.length[:, None] - 1))
    return xs, zs


@check("fmonoid.left_order")
def _left_order(ctx: Context) -> None:
    g = ctx.g
    E = ctx.monoid_rows(ctx.M)
    for j in range(g.rank):
        up = np.flatnonzero(g.length[g.left[:, j]] > g.length)
        a = E[:, up]
        b = E[:, g.left[up, j]]
        sa = g.left[a, j]
        require(((b == a) | (b == sa)).all(), "(s_j w).f is neither w.f nor s_j (w.f)")
        require((g.length[b] >= g.length[a]).all(), "left order not preserved")
        require((g.length[b] - g.length[a] <= 1).all(), "not length contracting")


@check("fmonoid.bruhat")
def _bruhat_preserved(ctx: Context) -> None:
    g = ctx.g
    E = ctx.monoid_rows(ctx.M)
    Bm = g.bruhat_lower
    xs, zs = _bruhat_covers(g)
    require(Bm[E[:, xs], E[:, zs]].all(), "Bruhat order not preserved")


@check("fmonoid.regressive")
def _regressive(ctx: Context) -> None:
    g = ctx.g
    Bm = g.bruhat_lower
    E = ctx.monoid_rows(ctx.M)
    ar = np.arange(g.size)
    for f in E[E[:, 0] == 0]:
        require(Bm[ar, f].all(), "element fixing 1 is not regressive")
    for f in E[E[:, g.w0] == g.w0]:
        require(Bm[f, ar].all(), "element fixing w0 is not extensive")


@check("fmonoid.length_contraction")
def _length_contraction(ctx: Context) -> None:
    g = ctx.g
    E = ctx.monoid_rows(ctx.M)
    L = g.length
    for w, w2 in ctx.pairs():
        if g.le_L(w, w2):
            require((L[E[:, w2]] - L[E[:, w]] <= L[w2] - L[w]).all(), "length contraction fails")


def _is_left_interval(g: CoxeterGroup, s: set[int]) -> bool:
    lo = min(s, key=lambda x: g.length[x])
    hi = max(s, key=lambda x: g.length[x])
    if not g.le_L(lo, hi):
        return False
    return set(g.interval(lo, hi, "L")) == s


@check("fmonoid.images")
def _images(ctx: Context) -> None:
    g = ctx.g
    m = ctx.M
    idem = m.idempotent_mask
    for k, f in enumerate(ctx.monoid_rows(m)):
        img = set(int(x) for x in np.unique(f))
        if len(m) <= 6000 and idem[k]:
            require(_is_left_interval(g, img), "idempotent image is not a left interval")
        lows = [x for x in img if all(g.le_L(x, y) for y in img)]
        highs = [x for x in img if all(g.le_L(y, x) for y in img)]
        require(len(lows) == 1 and len(highs) == 1, "image lacks a unique min or max")
        seen, stack = {lows[0]}, [lows[0]]
        while stack:
            x = stack.pop()
            for j in range(g.rank):
                y = int(g.left[x, j])
                if y in img and y not in seen:
                    seen.add(y)
                    stack.append(y)
        require(seen == img, "image is not connected in left order")


@check("fmonoid.fixed_points")
def _fixed_points(ctx: Context) -> None:
    g = ctx.g
    ar = np.arange(g.size)
    for f in ctx.monoid_rows(ctx.M):
        fix = set(int(x) for x in ar[f == ar])
        if fix:
            require(_is_left_interval(g, fix), "fixed points do not form a left interval")


@check("fmonoid.r_classes")
def _r_classes(ctx: Context) -> None:
    m = ctx.M
    if len(m) > 40000:
        raise Skip("monoid too large for Green's relations")
    gs = green(m)
    keys = {}
    fib = np.empty(len(m), dtype=np.int64)
    for k, f in enumerate(m.elements):
        _, canon = np.unique(f, return_inverse=True)
        first = {}
        key = tuple(first.setdefault(int(c), len(first)) for c in canon)
        fib[k] = keys.setdefault(key, len(keys))
    pairs = set(zip(gs.R.tolist(), fib.tolist()))
    require(len(pairs) == len(set(gs.R.tolist())) == len(keys), "R-classes differ from fiber classes")


@check("fmonoid.fiber_contraction")
def _fiber_contraction(ctx: Context) -> None:
    for f in ctx.monoid_rows(ctx.M):
        require(check_fiber_contraction(ctx.g, f), "fiber contraction is not an isomorphism")


@check("fmonoid.aperiodic")
def _aperiodic(ctx: Context) -> None:
    for f in ctx.monoid_rows(ctx.M):
        e = omega_array(f)
        require(np.array_equal(f[e], e), "monoid is not aperiodic")


@check("fmonoid.e_w")
def _e_w(ctx: Context) -> None:
    g = ctx.g
    m = ctx.M
    Bm = g.bruhat_lower
    for w in range(g.size):
        e = e_w(g, w)
        require(np.array_equal(e[e], e), "e_w is not idempotent")
        require(e in m, "e_w is not in M")
        require(e[0] == 0 and e[g.w0] == w, "e_w does not fix 1 or send w0 to w")
        low = g.below_L(w)
        require(set(np.unique(e).tolist()) == set(np.flatnonzero(low).tolist()), "image of e_w is not [1,w]_L")
        for u in ctx.elements():
            cand = np.flatnonzero(Bm[u] & low)
            top = [c for c in cand if Bm[c, cand].all()]
            require(len(top) == 1 and top[0] == e[u], "max-Bruhat evaluation formula fails")


def _j_reach(m: TransformationMonoid, J: np.ndarray) -> np.ndarray:
    """``reach[a, b]`` true iff J-class ``a`` is <=_J J-class ``b``."""
    n = len(m)
    k = int(J.max()) + 1
    src = np.repeat(np.arange(n), len(m.gen_ids))
    dst = np.concatenate([m.right.reshape(-1), m.left.reshape(-1)])
    src = np.concatenate([src, src])
    adj = np.zeros((k, k), dtype=bool)
    adj[J[dst], J[src]] = True
    reach = adj | np.eye(k, dtype=bool)
    while True:
        nxt = (reach.astype(np.int32) @ reach.astype(np.int32)) > 0
        if np.array_equal(nxt, reach):
            return reach
        reach = nxt


@check("fmonoid.transversal")
def _transversal(ctx: Context) -> None:
    g = ctx.g
    m = ctx.M
    if len(m) > 40000:
        raise Skip("monoid too large for Green's relations")
    gs = green(m)
    classes = [int(gs.J[m.index(e_w(g, w))]) for w in range(g.size)]
    require(len(set(classes)) == g.size, "two e_w share a J-class")
    require(set(classes) == {j for j, r in gs.regular.items() if r}, "e_w miss a regular J-class")


@check("fmonoid.j_order")
def _j_order(ctx: Context) -> None:
    g = ctx.g
    m = ctx.M
    if len(m) > 6000:
        raise Skip("J-order closure limited to 6000 elements")
    gs = green(m)
    reach = _j_reach(m, gs.J)
    idem = m.idempotents
    if len(idem) > 400:
        idem = sorted(ctx.rng.sample(idem, 400))
    types = {}
    for e in idem:
        img = np.unique(m.elements[e])
        a = int(img[np.argmin(g.length[img])])
        b = int(img[np.argmax(g.length[img])])
        types[e] = g.product(b, int(g.inv[a]))
    for e in idem:
        for f in idem:
            lhs = bool(reach[gs.J[f], gs.J[e]])
            require(lhs == g.le_LR(types[f], types[e]), "J-order on idempotents differs from interval types")


@check("fmonoid.m1_order")
def _m1_order(ctx: Context) -> None:
    g = ctx.g
    E = RC._idempotent_table(g)
    for u, v in ctx.pairs():
        uv = E[v][E[u]]
        vu = E[u][E[v]]
        le = g.le_L(u, v)
        require(np.array_equal(uv, E[u]) == le == np.array_equal(vu, E[u]), "e_u e_v = e_u criterion fails")
        require(np.array_equal(omega_array(uv), E[g.weak_meet(u, v, "L")]), "(e_u e_v)^ω is not e_{u meet v}")


@check("fmonoid.m1_generators")
def _m1_generators(ctx: Context) -> None:
    g = ctx.g
    m1 = ctx.M1
    if len(m1) > 6000:
        raise Skip("M_1 too large for the irreducibility test")
    irr = {m1.elements[i].tobytes() for i in irreducible_elements(m1.elements)}
    expected = set()
    for w in range(g.size):
        x = g.product(int(g.inv[w]), g.w0)
        if bin(int(g.dr[x])).count("1") <= 1 and w != g.w0:
            expected.add(e_w(g, w).astype(m1.elements.dtype).tobytes())
    require(irr == expected, "minimal generators are not the Grassmannian idempotents")
    if g.is_type_a:
        n = g.rank + 1
        require(len(irr) + 1 == 2**n - n, "generating set size is not 2^n - n")


# ============================================================= reptheory
@check("reptheory.generator_relations")
def _generator_relations(ctx: Context) -> None:
    g = ctx.g
    mij = g.coxeter_matrix
    for w in ctx.elements():
        T = RM.translation_module(g, w)
        ext = {lab: np.append(a, RM.SINK) for lab, a in T.maps.items()}

        def run(word):
            x = np.arange(T.dim + 1)
            x[-1] = RM.SINK
            for lab in word:
                x = ext[lab][x]
            return x

        for i in g.index_set:
            for kind in ("pi", "opi"):
                require(np.array_equal(run([f"{kind}{i}"] * 2), run([f"{kind}{i}"])), f"{kind}{i} not idempotent")
            S = T.s_matrix(i)
            require(S @ S == RationalMatrix.identity(T.dim), f"s_{i}^2 != 1 on T_{g.label(w)}")
            for j in g.index_set:
                if j <= i:
                    continue
                k = int(mij[i - 1, j - 1])
                for kind in ("pi", "opi"):
                    a = [f"{kind}{i}" if t % 2 == 0 else f"{kind}{j}" for t in range(k)]
                    b = [f"{kind}{j}" if t % 2 == 0 else f"{kind}{i}" for t in range(k)]
                    require(np.array_equal(run(a), run(b)), f"braid relation fails for {kind} {i},{j}")


@check("reptheory.simple_count")
def _simple_count(ctx: Context) -> None:
    if len(ctx.M) > 40000:
        raise Skip("monoid too large for Green's relations")
    require(green(ctx.M).n_regular == ctx.g.size, "number of regular J-classes differs from |W|")


@check("reptheory.translation_noniso")
def _translation_noniso(ctx: Context) -> None:
    g = ctx.g
    m = ctx.M
    if len(m) > 6000:
        raise Skip("character table limited to 6000 elements")
    ids = list(range(len(m)))
    chars = {tuple(RM.translation_module(g, w).character(m, ids)) for w in range(g.size)}
    require(len(chars) == g.size, "two translation modules share a character")
    cp = B.cutting_poset(g)
    for w in ctx.elements():
        # sorting along the reversed word sends w to 1 (right action, letters in order)
        word = [f"opi{i}" for i in reversed(g.word(w))]
        Tw = RM.translation_module(g, w)
        top = np.zeros(Tw.dim, dtype=object)
        top[Tw.pos[w]] = 1
        require(Tw.vector_action(top, word)[Tw.pos[0]] == 1, "sorting operator does not send f_w to f_1")
        for v in cp.strictly_below(w):
            Tv = RM.translation_module(g, v)
            for k in range(Tv.dim):
                e = np.zeros(Tv.dim, dtype=object)
                e[k] = 1
                require(not any(Tv.vector_action(e, word)), "sorting operator does not annihilate T_v")


@check("reptheory.translation_restriction")
def _translation_restriction(ctx: Context) -> None:
    g = ctx.g
    if len(ctx.M) > 6000:
        raise Skip("character computation limited to 6000 elements")
    for w in ctx.elements():
        require(RB.character_T_restricted(g, w) == RB.character_T_restricted_linear(g, w, ctx.M), "restriction of T_w mismatch")


def _linear_field(ctx: Context, size: int):
    """Exact arithmetic for small algebras (or with --slow), one random prime otherwise."""
    if size <= RC.FULL_M_DEFAULT_CAP or ctx.slow:
        return RationalField()
    return PrimeField.random(ctx.rng)


@check("reptheory.m1_radical")
def _m1_radical(ctx: Context) -> None:
    m1 = ctx.M1
    n = len(m1)
    if n > RC.MODULAR_CAP:
        raise Skip("M_1 algebra above the modular cap")
    F = _linear_field(ctx, n)
    T = m1.table
    omega = [m1.index(omega_array(f)) for f in m1.elements]
    Y = np.zeros((n, n), dtype=np.int64)
    for f, w in enumerate(omega):
        Y[f, w] += 1
        Y[f, f] -= 1
    Y = Y[[f for f in range(n) if omega[f] != f]]
    expected = n - len(m1.idempotents)
    require(len(Y) == expected and F.rank(F.from_int(Y)) == expected, "the f^ω - f do not span a space of dimension |M_1| - #idempotents")
    tf = RC.radical(m1, F)
    require(F.nrows(tf) == expected, "trace-form radical has the wrong dimension")
    R, piv = F.rref(tf)
    require(F.is_zero(F.residual(R, piv, F.from_int(Y))), "trace-form radical differs from the f^ω - f span")
    comm = []
    for a, b in combinations(m1.gen_ids, 2):
        v = np.zeros(n, dtype=np.int64)
        v[T[a, b]] += 1
        v[T[b, a]] -= 1
        comm.append(v)
    if comm:
        require(F.is_zero(F.residual(R, piv, F.from_int(np.array(comm)))), "K M_1 / rad is not commutative")


@check("reptheory.decomposition")
def _decomposition(ctx: Context) -> None:
    g = ctx.g
    D = RB.decomposition_matrix(g)
    require(set(np.unique(D).tolist()) <= {0, 1}, "entries outside {0,1}")
    require((D.diagonal() == 1).all(), "diagonal is not 1")
    for w, u in zip(*np.nonzero(D)):
        require(g.le_R(int(u), int(w)), "not triangular for right order")
    require([int(x) for x in D.sum(axis=1)] == [RM.dim_simple(g, w) for w in range(g.size)], "row sums differ from dim_simple")
    if len(ctx.M) <= 6000:
        require(np.array_equal(D, RB.decomposition_matrix_linear(g, ctx.M)), "character computation disagrees")


@check("reptheory.cartan_determinant")
def _cartan_determinant(ctx: Context) -> None:
    g = ctx.g
    m = ctx.M
    if len(m) > RC.FULL_M_DEFAULT_CAP and not ctx.slow:
        raise Skip(f"q-Cartan of M with {len(m)} elements needs --slow")
    modular = len(m) > RC.FULL_M_DEFAULT_CAP
    G = RC.graded_cartan(m, RM.simple_modules(g), labels=g.labels, modular=modular, seed=ctx.seed)
    C = G.at_one()
    require((C.diagonal() == 1).all(), "diagonal is not 1")
    off = (C != 0) & ~np.eye(g.size, dtype=bool)
    require(_acyclic(off), "Cartan matrix is not triangular in any order")
    require(RationalMatrix.from_numpy(C).det() == 1, "determinant is not 1")


def _transitive_closure(adj: np.ndarray) -> np.ndarray:
    r = adj.copy()
    while True:
        nxt = r | ((r.astype(np.int32) @ r.astype(np.int32)) > 0)
        if np.array_equal(nxt, r):
            return r
        r = nxt


def _acyclic(adj: np.ndarray) -> bool:
    return not _transitive_closure(adj).diagonal().any()


@check("reptheory.p_j")
def _p_j(ctx: Context) -> None:
    g = ctx.g
    for w in ctx.elements():
        cuts = {b.cutting_point for b in B.all_blocks(g, w)}
        left_blocks = {b.J for b in B.all_blocks(g, w)}
        for J in _subsets(g.index_set):
            sub = RM.antisym_submodule(g, w, J)
            v = g.coset_left(w, J)[0]
            require((sub is not None) == (v in cuts), f"P_J stability mismatch for {g.label(w)}, J={sorted(J)}")
            if J in left_blocks:
                require(sub.rows == len(g.interval(0, v, "R")), "dim P_J != |[1, ^J w]_R|")
                require(RM.intertwines(g, w, J, sub), "P_J is not isomorphic to T_{^J w}")


@check("reptheory.dim_simple")
def _dim_simple(ctx: Context) -> None:
    g = ctx.g
    for w in ctx.elements():
        require(RM.dim_simple(g, w) == RM.dim_simple_linear(g, w), f"dim_simple mismatch at {g.label(w)}")


@check("reptheory.whbihecke")
def _whbihecke(ctx: Context) -> None:
    g = ctx.g
    ws = list(range(g.size)) if g.size <= 6 else sorted(ctx.rng.sample(range(g.size), min(10, g.size)))
    for w in ws:
        if len(g.interval(0, w, "R")) > 24:
            continue
        require(RM.whbihecke_dim(g, w) == RM.whbihecke_dim_linear(g, w), f"w-biHecke dimension mismatch at {g.label(w)}")


@check("reptheory.lfix_rfix")
def _lfix_rfix(ctx: Context) -> None:
    g = ctx.g
    m1 = ctx.M1
    Bm = g.bruhat_lower
    idem = m1.idempotent_mask
    for k, f in enumerate(m1.elements):
        lf, rf = RC.lfix(g, f), RC.rfix(g, f)
        require(Bm[lf, rf], "lfix is not Bruhat-above rfix")
        require((lf == rf) == bool(idem[k]), "lfix = rfix does not characterise idempotents")
    for w in range(g.size):
        e = e_w(g, w)
        require(RC.lfix(g, e) == w == RC.rfix(g, e), "lfix(e_w) or rfix(e_w) differs from w")


@check("reptheory.cartan_m1")
def _cartan_m1(ctx: Context) -> None:
    g = ctx.g
    C = RC.cartan_m1(g, ctx.M1)
    require((C.diagonal() == 1).all(), "diagonal is not 1")
    for u, v in zip(*np.nonzero(C)):
        require(g.le_B(int(v), int(u)), "not triangular for Bruhat order")
    if len(ctx.M1) <= RC.MODULAR_CAP:
        modular = len(ctx.M1) > RC.FULL_M_DEFAULT_CAP and not ctx.slow
        G = RC.graded_cartan(ctx.M1, RC.borel_simple_reps(g, ctx.M1, "1"), labels=g.labels, modular=modular, seed=ctx.seed)
        require(np.array_equal(G.at_one(), C), "graded Cartan of M_1 at q=1 differs from the lfix/rfix count")


@check("reptheory.quiver")
def _quiver(ctx: Context) -> None:
    g = ctx.g
    comb = sorted(RC.quiver_m1(g))
    require(comb == sorted(RC.quiver_m1_monoidal(g)), "combinatorial and monoidal quivers differ")
    if len(ctx.Mw0) <= RC.MODULAR_CAP:
        modular = len(ctx.Mw0) > RC.FULL_M_DEFAULT_CAP and not ctx.slow
        G = RC.graded_cartan(ctx.Mw0, RC.borel_simple_reps(g, ctx.Mw0, "w0"), labels=g.labels, modular=modular, seed=ctx.seed)
        flip = g.mul[g.w0, :]
        mapped = sorted((int(flip[x]), int(flip[z])) for x, z in comb)
        require(sorted(G.support(1)) == mapped, "quiver differs from the degree-1 part of the q-Cartan matrix")


# ==================================================================== cli
@check("cli.cache_roundtrip")
def _cache_roundtrip(ctx: Context) -> None:
    m = ctx.M
    with tempfile.TemporaryDirectory() as d:
        path = Path(d) / "m.bin"
        save_monoid(m, path, str(ctx.g.descriptor), ctx.g.size)
        m2 = load_monoid(path, str(ctx.g.descriptor), ctx.g.size)
    require(np.array_equal(m.elements, m2.elements), "element table changed")
    require(m.gen_ids == m2.gen_ids and m.gen_labels == m2.gen_labels, "generator data changed")
    require(np.array_equal(m.right, m2.right), "Cayley graph changed")
