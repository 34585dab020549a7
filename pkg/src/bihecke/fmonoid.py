"""Transformation monoids on a finite set and the biHecke specialisation.

A function ``f: W -> W`` is stored as its image array ``f[w] = w.f``.
Functions act on the right, so the product ``f g`` (first ``f``, then
``g``) has image array ``g[f]``.

:func:`closure` enumerates the monoid generated by a labelled list of
functions breadth-first; inside each level the new elements are sorted by
image array before receiving their ids, so ids do not depend on the
thread count or on hash order.
"""

from __future__ import annotations

import hashlib
import struct
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .coxeter import CoxeterGroup, SizeError

DEFAULT_MAX_MONOID = 5 * 10**6
CACHE_FORMAT_VERSION = 1
CACHE_MAGIC = b"BHMC"


class ClosureCapExceeded(SizeError):
    """The closure grew past its element cap."""


class InvalidPartition(ValueError):
    """A fiber partition does not come from an element of M(W)."""


def _dtype_for(npoints: int):
    return np.uint16 if npoints <= 65535 else np.uint32


def compose(f: np.ndarray, g: np.ndarray) -> np.ndarray:
    """Image array of ``f g`` (apply ``f`` first)."""
    return g[f]


def _lexsort_rows(rows: np.ndarray) -> np.ndarray:
    return np.lexsort(rows.T[::-1]) if len(rows) else np.arange(0)


class TransformationMonoid:
    """A closed, deduplicated set of functions with labelled generators.

    ``elements`` has shape ``(|M|, npoints)``; element 0 is the identity.
    ``gen_labels[k]`` names generator ``k`` and ``gen_ids[k]`` its element id.
    """

    def __init__(
        self,
        elements: np.ndarray,
        gen_labels: Sequence[str],
        gen_ids: Sequence[int],
        right: np.ndarray | None = None,
        parent: np.ndarray | None = None,
        parent_gen: np.ndarray | None = None,
        point_labels: Sequence[str] | None = None,
    ):
        self.elements = elements
        self.npoints = elements.shape[1]
        self.gen_labels = list(gen_labels)
        self.gen_ids = [int(x) for x in gen_ids]
        self._index = {row.tobytes(): i for i, row in enumerate(elements)}
        if len(self._index) != len(elements):
            raise ValueError("duplicate elements")
        self._right = right
        self._parent = parent
        self._parent_gen = parent_gen
        self.point_labels = point_labels
        self.identity = 0
        if not np.array_equal(elements[0], np.arange(self.npoints)):
            raise ValueError("element 0 must be the identity")

    def __len__(self) -> int:
        return len(self.elements)

    def __repr__(self) -> str:
        return f"TransformationMonoid(|M|={len(self)}, generators={self.gen_labels})"

    def __getitem__(self, i: int) -> np.ndarray:
        return self.elements[i]

    def find(self, f: np.ndarray) -> int | None:
        return self._index.get(np.asarray(f, dtype=self.elements.dtype).tobytes())

    def index(self, f: np.ndarray) -> int:
        i = self.find(f)
        if i is None:
            raise KeyError("function is not an element of this monoid")
        return i

    def __contains__(self, f) -> bool:
        return self.find(f) is not None

    def _lookup_rows(self, rows: np.ndarray) -> np.ndarray:
        rows = np.ascontiguousarray(rows, dtype=self.elements.dtype)
        idx = self._index
        return np.fromiter((idx.get(r.tobytes(), -1) for r in rows), dtype=np.int64, count=len(rows))

    # --------------------------------------------------------- Cayley graphs
    @property
    def right(self) -> np.ndarray:
        """``right[f, k]`` = id of ``f . gen_k``."""
        if self._right is None:
            E = self.elements
            cols = [self._lookup_rows(E[self.gen_ids[k]][E]) for k in range(len(self.gen_ids))]
            self._right = np.stack(cols, axis=1) if cols else np.zeros((len(self), 0), np.int64)
            if (self._right < 0).any():
                raise ValueError("set is not closed under right multiplication by generators")
        return self._right

    @cached_property
    def left(self) -> np.ndarray:
        """``left[f, k]`` = id of ``gen_k . f``."""
        E = self.elements
        cols = [self._lookup_rows(E[:, E[self.gen_ids[k]]]) for k in range(len(self.gen_ids))]
        out = np.stack(cols, axis=1) if cols else np.zeros((len(self), 0), np.int64)
        if (out < 0).any():
            raise ValueError("set is not closed under left multiplication by generators")
        return out

    def _spanning_tree(self) -> None:
        n = len(self)
        parent = np.full(n, -1, dtype=np.int64)
        pgen = np.full(n, -1, dtype=np.int64)
        seen = np.zeros(n, dtype=bool)
        seen[0] = True
        frontier = [0]
        R = self.right
        while frontier:
            nxt = []
            for f in frontier:
                for k in range(R.shape[1]):
                    h = int(R[f, k])
                    if not seen[h]:
                        seen[h] = True
                        parent[h], pgen[h] = f, k
                        nxt.append(h)
            frontier = nxt
        if not seen.all():
            raise ValueError("generators do not generate the element set")
        self._parent, self._parent_gen = parent, pgen

    @property
    def parent(self) -> np.ndarray:
        if self._parent is None:
            self._spanning_tree()
        return self._parent

    @property
    def parent_gen(self) -> np.ndarray:
        if self._parent_gen is None:
            self._spanning_tree()
        return self._parent_gen

    def word(self, f: int) -> list[str]:
        """Generator labels of a shortest word for element ``f``."""
        out = []
        f = int(f)
        while f:
            out.append(self.gen_labels[int(self.parent_gen[f])])
            f = int(self.parent[f])
        return out[::-1]

    def bfs_order(self) -> list[int]:
        """Element ids ordered so that each parent precedes its children."""
        order = [0]
        children: list[list[int]] = [[] for _ in range(len(self))]
        for h in range(1, len(self)):
            children[int(self.parent[h])].append(h)
        i = 0
        while i < len(order):
            order.extend(children[order[i]])
            i += 1
        return order

    # ------------------------------------------------------------ products
    def mul(self, a: int, b: int) -> int:
        return self.index(self.elements[b][self.elements[a]])

    @cached_property
    def table(self) -> np.ndarray:
        """Full multiplication table ``table[a, b]`` = id of ``a b``."""
        n = len(self)
        if n > 20000:
            raise SizeError(f"multiplication table of {n} elements not materialised")
        T = np.empty((n, n), dtype=np.int32)
        T[:, 0] = np.arange(n)
        R = self.right
        for b in self.bfs_order()[1:]:
            T[:, b] = R[T[:, int(self.parent[b])], int(self.parent_gen[b])]
        return T

    @cached_property
    def idempotent_mask(self) -> np.ndarray:
        E = self.elements
        return (np.take_along_axis(E, E.astype(np.int64), axis=1) == E).all(axis=1)

    @property
    def idempotents(self) -> list[int]:
        return [int(x) for x in np.flatnonzero(self.idempotent_mask)]

    def element_label(self, f: int) -> str:
        if self.point_labels is not None:
            return self.point_labels[int(self.elements[f][0])]
        word = self.word(f)
        return "*".join(word) if word else "1"


# ------------------------------------------------------------------ closure
def closure(
    gens: Sequence[tuple[str, np.ndarray]] | dict,
    max_elements: int = DEFAULT_MAX_MONOID,
    threads: int = 1,
    progress=None,
) -> TransformationMonoid:
    """Monoid generated by labelled functions, enumerated breadth-first."""
    if isinstance(gens, dict):
        gens = list(gens.items())
    if not gens:
        raise ValueError("closure needs at least one generator")
    npoints = len(gens[0][1])
    dt = _dtype_for(npoints)
    garr = [np.asarray(a, dtype=dt) for _, a in gens]
    if any(len(a) != npoints for a in garr):
        raise ValueError("generators act on sets of different sizes")
    labels = [lab for lab, _ in gens]

    chunks: list[np.ndarray] = [np.arange(npoints, dtype=dt)[None, :]]
    index: dict[bytes, int] = {chunks[0][0].tobytes(): 0}
    total = 1
    right_rows: list[np.ndarray] = []
    frontier_block = chunks[0]
    pool = ThreadPoolExecutor(max_workers=threads) if threads > 1 else None

    def products(k: int) -> tuple[np.ndarray, list[bytes]]:
        P = garr[k][frontier_block]
        return P, [row.tobytes() for row in P]

    try:
        while len(frontier_block):
            if pool is not None:
                results = list(pool.map(products, range(len(garr))))
            else:
                results = [products(k) for k in range(len(garr))]
            fresh: dict[bytes, np.ndarray] = {}
            for P, keys in results:
                for key, row in zip(keys, P):
                    if key not in index and key not in fresh:
                        fresh[key] = row
            if fresh:
                new = np.array(list(fresh.values()), dtype=dt)
                new = new[_lexsort_rows(new)]
                if total + len(new) > max_elements:
                    raise ClosureCapExceeded(
                        f"closure exceeded {max_elements} elements (raise it with --max-elements)"
                    )
                for i, row in enumerate(new):
                    index[row.tobytes()] = total + i
            else:
                new = np.zeros((0, npoints), dtype=dt)
            edges = np.empty((len(frontier_block), len(garr)), dtype=np.int64)
            for k, (_, keys) in enumerate(results):
                edges[:, k] = [index[key] for key in keys]
            right_rows.append(edges)
            total += len(new)
            chunks.append(new)
            frontier_block = new
            if progress is not None:
                progress(total)
    finally:
        if pool is not None:
            pool.shutdown()
    elements = np.concatenate(chunks, axis=0)
    right = np.concatenate(right_rows, axis=0)
    gen_ids = [index[a.tobytes()] for a in garr]
    return TransformationMonoid(elements, labels, gen_ids, right=right)


def submonoid(m: TransformationMonoid, ids: Iterable[int], gens: Sequence[tuple[str, int]] | None = None) -> TransformationMonoid:
    """Sub-monoid on the given element ids (kept in increasing order).

    Without ``gens`` the generating set is the set of irreducible elements
    (not a product of two non-identity elements), which is the unique
    minimal generating set when the submonoid is J-trivial.
    """
    ids = sorted(set(int(i) for i in ids))
    if not ids or ids[0] != 0:
        raise ValueError("a submonoid must contain the identity")
    E = m.elements[ids]
    if gens is None:
        local = irreducible_elements(E)
        gens = [(f"f{ids[i]}", i) for i in local]
        return TransformationMonoid(E, [g for g, _ in gens], [i for _, i in gens])
    pos = {x: k for k, x in enumerate(ids)}
    return TransformationMonoid(E, [g for g, _ in gens], [pos[int(i)] for _, i in gens])


def irreducible_elements(E: np.ndarray) -> list[int]:
    """Rows ``h`` (other than the identity row 0) admitting no factorisation
    ``h = a x`` with ``a, x`` outside ``{1, h}``."""
    n = len(E)
    index = {row.tobytes(): i for i, row in enumerate(E)}
    reducible = np.zeros(n, dtype=bool)
    for a in range(1, n):
        # row k of P is the image array of a followed by E[1 + k]
        P = E[1:][:, E[a]]
        for x, row in enumerate(P, start=1):
            j = index.get(row.tobytes())
            if j is None:
                raise ValueError("row set is not closed under composition")
            if j != a and j != x:
                reducible[j] = True
    return [i for i in range(1, n) if not reducible[i]]


# --------------------------------------------------------- Green's relations
@dataclass
class GreenStructure:
    R: np.ndarray
    L: np.ndarray
    J: np.ndarray
    H: np.ndarray
    regular: dict[int, bool]
    transversal: dict[int, int]

    def class_sizes(self, rel: str = "J") -> dict[int, int]:
        ids, counts = np.unique(getattr(self, rel), return_counts=True)
        return {int(i): int(c) for i, c in zip(ids, counts)}

    def eggbox_shapes(self) -> list[tuple[int, int, int]]:
        """Per J-class: (number of R-classes, number of L-classes, size)."""
        out = []
        for j in np.unique(self.J):
            mask = self.J == j
            out.append((len(np.unique(self.R[mask])), len(np.unique(self.L[mask])), int(mask.sum())))
        return sorted(out)

    @property
    def n_regular(self) -> int:
        return sum(self.regular.values())


def _scc(n: int, src: np.ndarray, dst: np.ndarray) -> np.ndarray:
    graph = coo_matrix((np.ones(len(src), dtype=np.int32), (src, dst)), shape=(n, n)).tocsr()
    _, labels = connected_components(graph, directed=True, connection="strong")
    # relabel by first occurrence for determinism
    _, first = np.unique(labels, return_index=True)
    order = np.argsort(first)
    rank = np.empty_like(order)
    rank[order] = np.arange(len(order))
    return rank[labels]


def green(m: TransformationMonoid) -> GreenStructure:
    n = len(m)
    src = np.repeat(np.arange(n), len(m.gen_ids))
    rdst = m.right.reshape(-1)
    ldst = m.left.reshape(-1)
    R = _scc(n, src, rdst)
    L = _scc(n, src, ldst)
    J = _scc(n, np.concatenate([src, src]), np.concatenate([rdst, ldst]))
    pairs = R.astype(np.int64) * (L.max() + 1) + L
    _, H = np.unique(pairs, return_inverse=True)
    _, first = np.unique(H, return_index=True)
    relabel = np.empty(len(first), dtype=np.int64)
    relabel[np.argsort(first)] = np.arange(len(first))
    H = relabel[H]
    idem = m.idempotent_mask
    regular, transversal = {}, {}
    for j in range(int(J.max()) + 1):
        members = np.flatnonzero((J == j) & idem)
        regular[j] = bool(len(members))
        if len(members):
            transversal[j] = int(members[0])
    return GreenStructure(R, L, J, H, regular, transversal)


def j_leq(m: TransformationMonoid, a: int, b: int) -> bool:
    """``a <=_J b``: ``a`` lies in the two-sided ideal generated by ``b``."""
    seen = {int(b)}
    stack = [int(b)]
    R, Lt = m.right, m.left
    while stack:
        x = stack.pop()
        if x == a:
            return True
        for y in list(R[x]) + list(Lt[x]):
            y = int(y)
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return False


# ---------------------------------------------------------- aperiodicity
def omega_array(f: np.ndarray, guard: int = 64) -> np.ndarray:
    """Idempotent power of ``f`` by repeated squaring."""
    x = np.asarray(f)
    for _ in range(guard):
        sq = x[x]
        if np.array_equal(sq, x):
            return x
        x = sq
    raise ArithmeticError("repeated squaring did not stabilise within the guard")


def omega(m: TransformationMonoid, f: int) -> int:
    return m.index(omega_array(m.elements[f]))


def idempotent_power(f: np.ndarray) -> np.ndarray:
    """The unique idempotent among the powers of ``f`` (works for any transformation)."""
    seen: dict[bytes, int] = {}
    powers = []
    x = np.asarray(f)
    k = 1
    while x.tobytes() not in seen:
        seen[x.tobytes()] = k
        powers.append(x)
        x = f[x]
        k += 1
    start = seen[x.tobytes()]
    period = k - start
    e = ((start + period - 1) // period) * period
    return powers[e - 1]


def is_aperiodic(m: TransformationMonoid) -> bool:
    """Every element satisfies ``f^ω f = f^ω``."""
    for f in m.elements:
        e = idempotent_power(f)
        if not np.array_equal(f[e], e):
            return False
    return True


# ------------------------------------------------------ biHecke generators
def pi(g: CoxeterGroup, i: int) -> np.ndarray:
    """``w.π_i = w`` if ``i`` is a right descent of ``w``, else ``w s_i``."""
    desc = (g.dr >> (i - 1)) & 1
    return np.where(desc == 1, np.arange(g.size), g.right[:, i - 1]).astype(_dtype_for(g.size))


def opi(g: CoxeterGroup, i: int) -> np.ndarray:
    """``w.π̄_i = w s_i`` if ``i`` is a right descent of ``w``, else ``w``."""
    desc = (g.dr >> (i - 1)) & 1
    return np.where(desc == 1, g.right[:, i - 1], np.arange(g.size)).astype(_dtype_for(g.size))


def bihecke_generators(g: CoxeterGroup) -> list[tuple[str, np.ndarray]]:
    return [(f"pi{i}", pi(g, i)) for i in g.index_set] + [(f"opi{i}", opi(g, i)) for i in g.index_set]


def identity_function(g: CoxeterGroup) -> np.ndarray:
    return np.arange(g.size, dtype=_dtype_for(g.size))


def pi_word(g: CoxeterGroup, word: Iterable[int], bar: bool = False) -> np.ndarray:
    """Composite of ``π_{i1} π_{i2} ...`` (or the π̄ version), applied left to right."""
    f = identity_function(g)
    for i in word:
        f = compose(f, opi(g, i) if bar else pi(g, i))
    return f


def pi_element(g: CoxeterGroup, w: int, bar: bool = False) -> np.ndarray:
    """``π_w`` (or ``π̄_w``) along any reduced word of ``w``."""
    return pi_word(g, g.word(w), bar=bar)


def _monoid_cache(g: CoxeterGroup) -> dict:
    return g.__dict__.setdefault("_monoid_cache", {})


def bihecke(g: CoxeterGroup, max_elements: int = DEFAULT_MAX_MONOID, threads: int = 1, progress=None) -> TransformationMonoid:
    cache = _monoid_cache(g)
    if "M" not in cache:
        if g.rank == 0:
            cache["M"] = TransformationMonoid(identity_function(g)[None, :], [], [])
        else:
            cache["M"] = closure(bihecke_generators(g), max_elements=max_elements, threads=threads, progress=progress)
    return cache["M"]


def borel(g: CoxeterGroup, fixed: str = "w0", m: TransformationMonoid | None = None, **kw) -> TransformationMonoid:
    """``M_1`` (``fixed="identity"``) or ``M_{w0}`` (``fixed="w0"``) by filtering ``M(W)``."""
    key = "M1" if fixed in ("identity", "1", "one") else "Mw0"
    cache = _monoid_cache(g)
    if key not in cache:
        if m is None:
            m = bihecke(g, **kw)
        point = 0 if key == "M1" else g.w0
        ids = np.flatnonzero(m.elements[:, point] == point)
        sub = submonoid(m, ids)
        cache[key] = sub
    return cache[key]


def borel_size(g: CoxeterGroup, m: TransformationMonoid, fixed: str = "w0") -> int:
    point = 0 if fixed in ("identity", "1", "one") else g.w0
    return int((m.elements[:, point] == point).sum())


# -------------------------------------------------------- idempotent family
def e_w(g: CoxeterGroup, w: int) -> np.ndarray:
    """``e_w = π_{w^-1 w0} π̄_{w0 w}``: fixes 1, sends ``w0`` to ``w``, image ``[1, w]_L``."""
    a = g.product(int(g.inv[w]), g.w0)
    b = g.product(g.w0, w)
    return compose(pi_element(g, a), pi_element(g, b, bar=True))


def e_tilde(g: CoxeterGroup, w: int) -> np.ndarray:
    """``ẽ_w = π̄_{w^-1} π_w``: fixes ``w0``, sends 1 to ``w``, image ``[w, w0]_L``."""
    return compose(pi_element(g, int(g.inv[w]), bar=True), pi_element(g, w))


def e_ab(g: CoxeterGroup, a: int, b: int) -> np.ndarray:
    """``e_{a,b} = π̄_{a^-1} e_{b a^-1} π_a``, the idempotent with image ``[a, b]_L``."""
    if not g.le_L(a, b):
        raise ValueError("e_ab needs a <=_L b")
    mid = e_w(g, g.product(b, int(g.inv[a])))
    return compose(compose(pi_element(g, int(g.inv[a]), bar=True), mid), pi_element(g, a))


def fibers(f: np.ndarray) -> list[list[int]]:
    """Set partition of the domain into preimages, each block sorted, blocks
    ordered by their smallest element."""
    f = np.asarray(f)
    order = np.argsort(f, kind="stable")
    vals = f[order]
    cuts = np.flatnonzero(np.diff(vals)) + 1
    blocks = [sorted(int(x) for x in blk) for blk in np.split(order, cuts)]
    return sorted(blocks)


def image_set(f: np.ndarray) -> list[int]:
    return sorted(set(int(x) for x in np.asarray(f)))


def type_of(g: CoxeterGroup, f: np.ndarray) -> int:
    """``(w0.f)(1.f)^-1``."""
    return g.product(int(f[g.w0]), int(g.inv[int(f[0])]))


def rank(f: np.ndarray) -> int:
    return len(np.unique(np.asarray(f)))


def reconstruct(g: CoxeterGroup, blocks: Sequence[Sequence[int]], base: int) -> np.ndarray:
    """The unique ``f`` in ``M(W)`` with the given fibers and ``1.f = base``.

    Propagates along left Cayley edges ``w -> s_j w`` from the identity:
    inside a fiber the image is unchanged, across fibers it is multiplied
    by ``s_j`` on the left.
    """
    n = g.size
    block_of = np.full(n, -1, dtype=np.int64)
    for k, blk in enumerate(blocks):
        for w in blk:
            if block_of[w] != -1:
                raise InvalidPartition("blocks overlap")
            block_of[w] = k
    if (block_of < 0).any():
        raise InvalidPartition("blocks do not cover W")
    img = np.full(n, -1, dtype=np.int64)
    img[0] = int(base)
    frontier = [0]
    while frontier:
        nxt = []
        for w in frontier:
            for j in range(g.rank):
                v = int(g.left[w, j])
                val = img[w] if block_of[v] == block_of[w] else int(g.left[img[w], j])
                if img[v] == -1:
                    img[v] = val
                    nxt.append(v)
                elif img[v] != val:
                    raise InvalidPartition("fibers are not contractible to a consistent function")
        frontier = nxt
    f = img.astype(_dtype_for(n))
    if fibers(f) != sorted(sorted(int(x) for x in b) for b in blocks):
        raise InvalidPartition("reconstructed function has different fibers")
    return f


def bar(g: CoxeterGroup, f: np.ndarray) -> np.ndarray:
    """``w.f̄ = w0 ((w0 w).f)``; exchanges ``π_i`` and ``π̄_i``."""
    lw0 = g.mul[g.w0, :]
    return lw0[np.asarray(f)[lw0]].astype(np.asarray(f).dtype)


def check_fiber_contraction(g: CoxeterGroup, f: np.ndarray) -> bool:
    """Contract the coloured left-order Hasse diagram along the fibers of
    ``f`` and compare with left order on the image.

    Each edge ``w -> s_j w`` (``s_j w > w``) joining two fibers must map to
    the edge ``f(w) -> s_j f(w)`` of the image, going up; and the contracted
    edges must be exactly the coloured Hasse edges inside the image set.
    """
    f = np.asarray(f, dtype=np.int64)
    if f[0] < 0 or f[0] >= g.size:
        return False
    img = set(int(x) for x in f)
    contracted = set()
    for w in range(g.size):
        for j in range(g.rank):
            v = int(g.left[w, j])
            if g.length[v] < g.length[w]:
                continue
            a, b = int(f[w]), int(f[v])
            if a == b:
                continue
            if b != int(g.left[a, j]) or g.length[b] != g.length[a] + 1:
                return False
            contracted.add((a, j, b))
    expected = set()
    for a in img:
        for j in range(g.rank):
            b = int(g.left[a, j])
            if b in img and g.length[b] == g.length[a] + 1:
                expected.add((a, j, b))
    return contracted == expected


# ------------------------------------------------------------------ Rees
def rees_monoid(P: Sequence[Sequence[int]]) -> TransformationMonoid:
    """Aperiodic Rees matrix monoid ``{1, 0} ∪ {(i, j)}`` of a 0-1 matrix,
    realised through its right regular representation.

    ``(i, j)(i', j') = (i, j')`` if ``P[j][i'] = 1`` and 0 otherwise, with
    ``i`` indexing the columns of ``P`` and ``j`` its rows.
    """
    P = [list(map(int, row)) for row in P]
    nj = len(P)
    ni = len(P[0]) if nj else 0
    names = ["1"] + [f"({i + 1},{j + 1})" for i in range(ni) for j in range(nj)] + ["0"]
    pos = {name: k for k, name in enumerate(names)}
    zero = pos["0"]

    def mul(a: int, b: int) -> int:
        if a == 0:
            return b
        if b == 0:
            return a
        if a == zero or b == zero:
            return zero
        i, j = divmod(a - 1, nj)
        i2, j2 = divmod(b - 1, nj)
        return 1 + i * nj + j2 if P[j][i2] else zero

    n = len(names)
    rows = [np.array([mul(x, y) for x in range(n)], dtype=np.uint16) for y in range(n)]
    gens = [(names[y], rows[y]) for y in range(1, n)]
    m = closure(gens)
    m.point_labels = names
    return m


# ---------------------------------------------------------------- caching
def _descriptor_hash(descriptor: str) -> bytes:
    return hashlib.sha256(descriptor.encode()).digest()


def save_monoid(m: TransformationMonoid, path: str | Path, descriptor: str, group_size: int) -> None:
    """Binary cache: header, generator labels and ids, image arrays in id order."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    width = m.elements.dtype.itemsize
    with open(path, "wb") as fh:
        fh.write(CACHE_MAGIC)
        fh.write(struct.pack("<H", CACHE_FORMAT_VERSION))
        fh.write(_descriptor_hash(descriptor))
        fh.write(struct.pack("<IIIBH", group_size, len(m), m.npoints, width, len(m.gen_labels)))
        for lab, gid in zip(m.gen_labels, m.gen_ids):
            raw = lab.encode()
            fh.write(struct.pack("<HI", len(raw), gid))
            fh.write(raw)
        fh.write(np.ascontiguousarray(m.elements).astype(m.elements.dtype.newbyteorder("<")).tobytes())
    return None


def load_monoid(path: str | Path, descriptor: str, group_size: int) -> TransformationMonoid:
    with open(path, "rb") as fh:
        data = fh.read()
    if data[:4] != CACHE_MAGIC:
        raise ValueError(f"{path}: not a monoid cache file")
    (version,) = struct.unpack_from("<H", data, 4)
    if version != CACHE_FORMAT_VERSION:
        raise ValueError(f"{path}: cache format version {version}, expected {CACHE_FORMAT_VERSION}")
    if data[6:38] != _descriptor_hash(descriptor):
        raise ValueError(f"{path}: cache was built for a different group")
    off = 38
    wsize, count, npoints, width, ngens = struct.unpack_from("<IIIBH", data, off)
    off += struct.calcsize("<IIIBH")
    if wsize != group_size:
        raise ValueError(f"{path}: group size mismatch")
    labels, ids = [], []
    for _ in range(ngens):
        ln, gid = struct.unpack_from("<HI", data, off)
        off += 6
        labels.append(data[off : off + ln].decode())
        ids.append(gid)
        off += ln
    dt = np.dtype("<u2") if width == 2 else np.dtype("<u4")
    E = np.frombuffer(data, dtype=dt, count=count * npoints, offset=off).reshape(count, npoints)
    return TransformationMonoid(E.astype(dt.newbyteorder("=")), labels, ids)
