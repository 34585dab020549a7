"""Radicals, radical filtrations and (q-)Cartan matrices of monoid algebras.

Everything here works in the monoid basis of ``K M``: a vector is a row of
coefficients indexed by element ids.  The monoid acts on itself through its
multiplication table, so the algebra never has to be written down as
structure constants.

The q-Cartan matrix records, for every layer ``rad^k / rad^(k+1)`` of the
radical filtration seen as a bimodule, how often each pair of simple modules
occurs.  Rows index right projectives ``e_i K M``: entry ``[i, j]`` at degree
``k`` is the multiplicity of ``S_j`` in layer ``k`` of the projective cover
of ``S_i``.  This is the convention of the published Borel tables for type
``A2``; see ``tests/test_cartan.py``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

import numpy as np

from ..coxeter import CoxeterGroup, SizeError
from ..fmonoid import TransformationMonoid, borel, e_w, omega_array
from .linalg import PrimeField, RationalField, RationalMatrix
from .modules import MatrixRep

EXACT_CAP = 600
# the full biHecke algebra is only attempted above this size with --slow
FULL_M_DEFAULT_CAP = 200
MODULAR_CAP = 2000
N_PRIMES = 3


class SingularSystem(ArithmeticError):
    """The character matrix of the given simples is singular on every sample tried."""


class InconsistentPrimes(ArithmeticError):
    """Computations modulo different primes disagree."""


# ------------------------------------------------------------- containers
@dataclass
class GradedMatrix:
    """Square matrix of polynomials in ``q`` with non-negative integer coefficients.

    ``coeffs[k]`` is the integer matrix of the coefficient of ``q**k``.
    """

    labels: list[str]
    coeffs: list[np.ndarray]
    order_note: str = ""

    @property
    def size(self) -> int:
        return len(self.labels)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def at_one(self) -> np.ndarray:
        return np.sum(self.coeffs, axis=0) if self.coeffs else np.zeros((self.size, self.size), dtype=np.int64)

    def entry(self, i: int, j: int) -> list[int]:
        """Coefficient list ``[c_0, c_1, ...]`` with trailing zeros removed."""
        c = [int(C[i, j]) for C in self.coeffs]
        while c and c[-1] == 0:
            c.pop()
        return c

    def permuted(self, order: Sequence[int]) -> "GradedMatrix":
        idx = np.asarray(order)
        return GradedMatrix([self.labels[i] for i in order], [C[np.ix_(idx, idx)] for C in self.coeffs], self.order_note)

    def support(self, k: int) -> list[tuple[int, int]]:
        if k >= len(self.coeffs):
            return []
        return [(int(i), int(j)) for i, j in zip(*np.nonzero(self.coeffs[k]))]

    def __eq__(self, other) -> bool:
        if not isinstance(other, GradedMatrix) or self.labels != other.labels:
            return False
        d = max(len(self.coeffs), len(other.coeffs))
        return all(np.array_equal(self._c(k), other._c(k)) for k in range(d))

    def _c(self, k: int) -> np.ndarray:
        return self.coeffs[k] if k < len(self.coeffs) else np.zeros((self.size, self.size), dtype=np.int64)


def format_poly(coeffs: Sequence[int]) -> str:
    """Render ``[3, 0, 1]`` as ``q^2+3``, the zero polynomial as ``.``."""
    terms = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if not c:
            continue
        if k == 0:
            terms.append(str(c))
            continue
        mono = "q" if k == 1 else f"q^{k}"
        terms.append(mono if c == 1 else f"{c}{mono}")
    return "+".join(terms) if terms else "."


# ------------------------------------------------------------ the algebra
def regular_rep(m: TransformationMonoid) -> MatrixRep:
    """Right regular representation: generator ``s`` sends ``e_x`` to ``e_{x s}``."""
    n = len(m)
    gens = {}
    for lab, gid in zip(m.gen_labels, m.gen_ids):
        M = np.zeros((n, n), dtype=np.int64)
        M[np.arange(n), m.table[:, gid]] = 1
        gens[lab] = RationalMatrix.from_numpy(M)
    return MatrixRep([m.element_label(f) for f in range(n)], gens)


def _check_cap(m: TransformationMonoid, field_) -> None:
    cap = EXACT_CAP if field_.exact else MODULAR_CAP
    if len(m) > cap:
        flag = "--modular" if field_.exact else "--max-elements"
        raise SizeError(f"monoid algebra of dimension {len(m)} exceeds the linear-algebra cap {cap}; use {flag}")


def _fixed_counts(table: np.ndarray) -> np.ndarray:
    """``fix[a]`` = trace of left multiplication by ``a`` on ``K M``."""
    n = table.shape[0]
    return (table == np.arange(n)[None, :]).sum(axis=1)


def radical(m: TransformationMonoid, field_=None):
    """Basis (rows, in the field's matrix type) of the Jacobson radical.

    Uses the trace form: ``x`` is in the radical iff ``tr(L_{x b}) = 0`` for
    every monoid element ``b``, which characterises the radical in
    characteristic 0.
    """
    field_ = field_ or RationalField()
    _check_cap(m, field_)
    T = m.table
    G = _fixed_counts(T)[T]
    return field_.left_nullspace_int(G)


def radical_jtrivial(m: TransformationMonoid) -> RationalMatrix:
    """Radical of a J-trivial monoid algebra: the vectors ``f^ω - f``."""
    rows = []
    n = len(m)
    for f in range(n):
        w = m.index(omega_array(m.elements[f]))
        if w != f:
            v = [0] * n
            v[w] += 1
            v[f] -= 1
            rows.append(v)
    return RationalMatrix.from_rows(rows, ncols=n)


def _left_ideal_generators(field_, rad, table: np.ndarray) -> list:
    """Rows ``y`` of ``rad`` whose left ideals ``K M y`` together span ``rad``.

    Then ``rad^(k+1) = sum_y rad^k y`` since ``rad^k K M = rad^k``.
    """
    n = table.shape[0]
    R, _ = field_.rref(rad)
    r = field_.nrows(R)
    gens, span, span_piv = [], None, []
    for i in range(r):
        y = field_.take_rows(R, [i])
        if span is not None and field_.is_zero(field_.residual(span, span_piv, y)):
            continue
        My = field_.right_mult_matrix(y, table)
        gens.append(My)
        stack = [My] if span is None else [span, My]
        span, span_piv = field_.rref(field_.vstack(stack, n))
        if len(span_piv) == r:
            break
    return gens


def radical_filtration(m: TransformationMonoid, field_=None, progress: Callable[[str], None] | None = None) -> list:
    """``[rad^1, rad^2, ...]`` as RREF row bases, ending before the zero space."""
    field_ = field_ or RationalField()
    n = len(m)
    rad = radical(m, field_)
    if field_.nrows(rad) == 0:
        return []
    gens = _left_ideal_generators(field_, rad, m.table)
    cur, piv = field_.rref(rad)
    layers = [cur]
    while True:
        if progress:
            progress(f"rad^{len(layers)}: dim {field_.nrows(cur)}")
        nxt, piv = field_.rref(field_.vstack([field_.matmul(cur, My) for My in gens], n))
        if field_.nrows(nxt) == 0:
            return layers
        if field_.nrows(nxt) >= field_.nrows(cur):
            raise ArithmeticError("radical powers are not decreasing")
        layers.append(nxt)
        cur = nxt


# ------------------------------------------------------------ characters
def character_table(m: TransformationMonoid, reps: Sequence[MatrixRep]) -> np.ndarray:
    """Object array ``X[i, f]`` = trace of monoid element ``f`` on ``reps[i]``."""
    n = len(m)
    order = m.bfs_order()
    out = np.zeros((len(reps), n), dtype=object)
    for i, rep in enumerate(reps):
        d = rep.dim
        gm = {m.gen_labels.index(lab): rep.matrix(lab).to_object_array() for lab in m.gen_labels}
        mats: list = [None] * n
        mats[0] = np.eye(d, dtype=object) * Fraction(1) if d else np.zeros((0, 0), dtype=object)
        for f in order[1:]:
            mats[f] = mats[int(m.parent[f])].dot(gm[int(m.parent_gen[f])])
        for f in range(n):
            out[i, f] = sum((mats[f][k, k] for k in range(d)), Fraction(0))
    return out


def borel_simple_reps(g: CoxeterGroup, m0: TransformationMonoid, fixed: str = "w0") -> list[MatrixRep]:
    """One-dimensional simples of a Borel submonoid, one per element of ``W``.

    On ``M_{w0}`` the simple ``S^{w0}_w`` lets ``f`` act by 1 iff ``w.f = w``.
    On ``M_1`` the simple ``S^1_w`` lets ``f`` act by 1 iff ``e_w f = e_w``.
    """
    reps = []
    for w in range(g.size):
        gens = {}
        for lab, gid in zip(m0.gen_labels, m0.gen_ids):
            f = m0.elements[gid]
            if fixed == "w0":
                val = int(f[w] == w)
            else:
                e = e_w(g, w)
                val = int(np.array_equal(f[e], e))
            gens[lab] = RationalMatrix.from_rows([[val]])
        reps.append(MatrixRep([g.label(w)], gens))
    return reps


# --------------------------------------------------------- q-Cartan solver
def _layer_traces(field_, U, piv: list[int], table: np.ndarray, pairs: np.ndarray) -> np.ndarray:
    """``tr(x -> a x c)`` on the row space ``U`` (RREF) for each pair ``(a, c)``."""
    n = table.shape[0]
    ent, den = field_.row_entries(U)
    pivrow = np.full(n, -1, dtype=np.int64)
    pivrow[np.asarray(piv, dtype=np.int64)] = np.arange(len(piv))
    out = []
    cols = np.arange(n)
    for a, c in pairs:
        img = table[table[a, :], c]
        r = pivrow[img]
        ok = r >= 0
        vals = ent[r[ok], cols[ok]]
        if field_.exact:
            out.append(Fraction(int(sum(vals)), den))
        else:
            out.append(int(np.sum(vals % field_.p) % field_.p))
    return np.array(out, dtype=object)


def _choose_elements(m: TransformationMonoid, X: np.ndarray, rng: random.Random, tries: int = 2000) -> list[int]:
    """Elements ``a_1..a_s`` with the ``s x s`` character matrix invertible.

    Idempotents are tried first (greedily, by id), then random elements.
    """
    s = X.shape[0]
    chosen: list[int] = []
    current = RationalMatrix.zeros(0, s)

    def try_add(f: int) -> None:
        nonlocal current
        cand = RationalMatrix.vstack([current, RationalMatrix.from_rows([list(X[:, f])], ncols=s)], s)
        if cand.rank() > current.rows:
            current = cand
            chosen.append(f)

    for f in m.idempotents:
        if len(chosen) == s:
            break
        try_add(f)
    n = len(m)
    for _ in range(tries):
        if len(chosen) == s:
            break
        try_add(rng.randrange(n))
    if len(chosen) < s:
        raise SingularSystem("characters of the given simples are linearly dependent")
    return chosen


def _solve_layers(field_, m: TransformationMonoid, X: np.ndarray, chosen: list[int], progress=None) -> list[np.ndarray]:
    """Integer matrices ``C_k`` with ``T_k[a, c] = sum_ij C_k[i, j] chi_i(a) chi_j(c)``."""
    s = len(chosen)
    table = m.table
    pairs = np.array([(a, c) for a in chosen for c in chosen], dtype=np.int64)
    n = len(m)
    full = field_.from_int(np.eye(n, dtype=np.int64)) if field_.exact else np.eye(n, dtype=np.int64)
    spaces = [(full, list(range(n)))]
    for L in radical_filtration(m, field_, progress=progress):
        spaces.append((L, field_.rref(L)[1]))
    traces = [_layer_traces(field_, U, piv, table, pairs) for U, piv in spaces] + [np.zeros(len(pairs), dtype=object)]
    Xs = X[:, chosen].T  # Xs[a, i] = chi_i(a)
    if field_.exact:
        Xq = RationalMatrix.from_numpy(Xs)
        Xinv = Xq.inv()
    else:
        p = field_.p
        Xm = np.array([[int(Fraction(v).numerator * pow(Fraction(v).denominator, -1, p)) % p for v in r] for r in Xs], dtype=np.int64)
        Xinv = field_.inverse(Xm)
    out = []
    for k in range(len(spaces)):
        Tk = (traces[k] - traces[k + 1]).reshape(s, s)
        if field_.exact:
            C = Xinv @ RationalMatrix.from_numpy(Tk) @ Xinv.T
            C = C.to_object_array()
            if any(Fraction(v).denominator != 1 or v < 0 for v in C.reshape(-1)):
                raise ArithmeticError("non-integral or negative multiplicity: wrong simples or grading")
            out.append(np.array(C, dtype=np.int64))
        else:
            Tm = np.array([[int(v) % field_.p for v in r] for r in Tk], dtype=np.int64)
            C = field_.matmul(field_.matmul(Xinv, Tm), np.ascontiguousarray(Xinv.T))
            lifted = np.vectorize(field_.lift, otypes=[np.int64])(C)
            if (lifted < 0).any():
                raise ArithmeticError("negative multiplicity modulo a prime")
            out.append(lifted)
    while out and not out[-1].any():
        out.pop()
    return out


def graded_cartan(
    m: TransformationMonoid,
    simples: Sequence[MatrixRep],
    labels: Sequence[str] | None = None,
    modular: bool = False,
    seed: int = 0,
    progress: Callable[[str], None] | None = None,
) -> GradedMatrix:
    """q-Cartan matrix of ``K M`` for a complete list of pairwise non-isomorphic simples.

    Exact over Q by default.  With ``modular=True`` the computation runs modulo
    three random 31-bit primes and the three answers must coincide.
    """
    rng = random.Random(seed)
    X = character_table(m, simples)
    chosen = _choose_elements(m, X, rng)
    labels = list(labels) if labels is not None else [s.basis_labels[0] if s.dim == 1 else str(i) for i, s in enumerate(simples)]
    if not modular:
        coeffs = _solve_layers(RationalField(), m, X, chosen, progress)
        return GradedMatrix(labels, coeffs)
    results = []
    for _ in range(N_PRIMES):
        F = PrimeField.random(rng)
        if progress:
            progress(f"working modulo {F.p}")
        _check_cap(m, F)
        results.append(_solve_layers(F, m, X, chosen, progress))
    first = GradedMatrix(labels, results[0])
    for r in results[1:]:
        if GradedMatrix(labels, r) != first:
            raise InconsistentPrimes("q-Cartan matrices differ between primes")
    return first


# ------------------------------------------------------ Borel submonoid M_1
def _idempotent_table(g: CoxeterGroup) -> np.ndarray:
    cache = g.__dict__.setdefault("_ew_table", None)
    if cache is None:
        cache = np.stack([e_w(g, w) for w in range(g.size)])
        g._ew_table = cache
    return cache


def lfix(g: CoxeterGroup, f: np.ndarray) -> int:
    """``min_{<=_L} {u : e_u f = f}`` for ``f`` in ``M_1``."""
    f = np.asarray(f)
    if f[0] != 0:
        raise ValueError("lfix is defined on M_1 (functions fixing the identity)")
    E = _idempotent_table(g)
    ok = np.flatnonzero((f[E] == f[None, :]).all(axis=1))
    u = int(ok[np.argmin(g.length[ok])])
    return u


def rfix(g: CoxeterGroup, f: np.ndarray) -> int:
    """``w0 . f``, the image of the longest element."""
    f = np.asarray(f)
    if f[0] != 0:
        raise ValueError("rfix is defined on M_1 (functions fixing the identity)")
    return int(f[g.w0])


def cartan_m1(g: CoxeterGroup, m1: TransformationMonoid | None = None) -> np.ndarray:
    """``c[u, v]`` = number of elements of ``M_1`` with ``lfix = u`` and ``rfix = v`` (id order)."""
    m1 = m1 if m1 is not None else borel(g, "1")
    C = np.zeros((g.size, g.size), dtype=np.int64)
    for f in m1.elements:
        C[lfix(g, f), rfix(g, f)] += 1
    return C


def cartan_mw0(g: CoxeterGroup, m1: TransformationMonoid | None = None) -> np.ndarray:
    """Cartan matrix of ``K M_{w0}``: ``c^{w0}[u, v] = c^1[w0 u, w0 v]``."""
    C1 = cartan_m1(g, m1)
    flip = g.mul[g.w0, :]
    out = np.zeros_like(C1)
    out[np.ix_(flip, flip)] = C1
    return out


def quiver_m1(g: CoxeterGroup) -> list[tuple[int, int]]:
    """Quiver edges ``(x, z)`` of ``K M_1`` from the combinatorics of ``W``.

    ``y`` is an intermediate factor for ``x >_B z`` when ``[1, y]_L`` meets
    every non-empty Bruhat interval ``[c, a]_B`` with ``a`` in ``[1, x]_L``
    and ``c`` in ``[1, z]_L``; it is non-trivial when ``x >_B y >_B z`` and
    ``y`` is not left-above ``z``.  Edges are the pairs with ``x >_B z``,
    ``x`` not left-above ``z``, and no non-trivial intermediate factor.
    """
    n = g.size
    B = g.bruhat_lower
    low_L = np.stack([g.below_L(w) for w in range(n)])
    edges = []
    for x in range(n):
        A = np.flatnonzero(low_L[x])
        for z in range(n):
            if x == z or not B[x, z] or low_L[x, z]:
                continue
            C = np.flatnonzero(low_L[z])
            aa, cc = np.meshgrid(A, C, indexing="ij")
            keep = B[aa, cc]
            intervals = B[aa[keep]] & B[:, cc[keep]].T
            ys = [y for y in range(n) if y not in (x, z) and B[x, y] and B[y, z] and not low_L[y, z]]
            if any((intervals & low_L[y][None, :]).any(axis=1).all() for y in ys):
                continue
            edges.append((x, z))
    _assert_covers_are_edges(g, edges)
    return edges


def _assert_covers_are_edges(g: CoxeterGroup, edges: list[tuple[int, int]]) -> None:
    es = set(edges)
    B = g.bruhat_lower
    for x in range(g.size):
        for z in np.flatnonzero(B[x] & (g.length == g.length[x] - 1)):
            if not g.le_L(int(z), x) and (x, int(z)) not in es:
                raise AssertionError(f"Bruhat cover {g.label(x)} > {g.label(int(z))} missing from the quiver")


def quiver_m1_monoidal(g: CoxeterGroup, m1: TransformationMonoid | None = None) -> list[tuple[int, int]]:
    """Quiver edges read off ``M_1``: non-idempotent ``e_x e_z`` with ``lfix = x``,
    ``rfix = z`` that do not factor through a third idempotent."""
    E = _idempotent_table(g)
    n = g.size
    edges = []
    for x in range(n):
        for z in range(n):
            if x == z:
                continue
            q = E[z][E[x]]
            if np.array_equal(q[q], q) or lfix(g, q) != x or rfix(g, q) != z:
                continue
            if any(y not in (x, z) and _same_product(E, x, y, z, q) for y in range(n)):
                continue
            edges.append((x, z))
    return edges


def _same_product(E: np.ndarray, x: int, y: int, z: int, q: np.ndarray) -> bool:
    exy = E[y][E[x]]
    eyz = E[z][E[y]]
    return (
        np.array_equal(E[z][exy], q)
        and not np.array_equal(exy, E[x])
        and not np.array_equal(eyz, E[z])
    )
