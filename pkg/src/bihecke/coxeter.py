"""Finite Coxeter groups realised through faithful permutation actions.

Elements are numbered breadth-first by length, ties broken by the
lexicographic order of their action arrays, so that every identifier is
reproducible from the descriptor alone.  Generators carry the labels
``1..n``.  The group acts on itself on the right: ``w * s_i`` follows the
right Cayley edge ``g.right[w, i - 1]``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property, lru_cache
from math import factorial
from typing import Iterable, Sequence

import numpy as np

DEFAULT_MAX_ELEMENTS = 10**7
# Above these sizes the dense tables are not materialised.
MUL_TABLE_LIMIT = 6000
BRUHAT_BITSET_LIMIT = 10**4


class SizeError(ValueError):
    """A construction would exceed a configured element cap."""


class IncomparableError(ValueError):
    """Raised when an operation needs ``a <= b`` and the pair is incomparable."""


@dataclass(frozen=True)
class GroupDescriptor:
    """Type of a finite Coxeter group.

    ``family`` is one of ``"A"``, ``"B"``, ``"D"``, ``"I2"`` or ``"product"``.
    For ``A`` the parameter ``n`` is the number of permuted points, so
    ``A(4)`` is the symmetric group S4 of Cartan rank 3.  For ``B`` and ``D``
    it is the rank, for ``I2`` the dihedral parameter ``p``.  The string
    grammar (``parse_descriptor``) uses Cartan ranks throughout: ``"A3"`` is
    ``A(4)``.
    """

    family: str
    n: int = 0
    factors: tuple["GroupDescriptor", ...] = ()

    def __post_init__(self) -> None:
        fam, n = self.family, self.n
        if fam == "A" and n < 1:
            raise ValueError("A(n) needs n >= 1 points")
        if fam in ("B", "D") and n < 2:
            raise ValueError(f"{fam}(n) needs n >= 2")
        if fam == "I2" and n < 2:
            raise ValueError("I2(p) needs p >= 2")
        if fam == "product" and len(self.factors) < 1:
            raise ValueError("empty product")
        if fam not in ("A", "B", "D", "I2", "product"):
            raise ValueError(f"unknown family {fam!r}")

    @classmethod
    def A(cls, n: int) -> "GroupDescriptor":
        return cls("A", n)

    @classmethod
    def B(cls, n: int) -> "GroupDescriptor":
        return cls("B", n)

    @classmethod
    def D(cls, n: int) -> "GroupDescriptor":
        return cls("D", n)

    @classmethod
    def I2(cls, p: int) -> "GroupDescriptor":
        return cls("I2", p)

    @classmethod
    def product(cls, factors: Iterable["GroupDescriptor"]) -> "GroupDescriptor":
        flat: list[GroupDescriptor] = []
        for f in factors:
            flat.extend(f.factors if f.family == "product" else (f,))
        if len(flat) == 1:
            return flat[0]
        return cls("product", 0, tuple(flat))

    @property
    def rank(self) -> int:
        if self.family == "A":
            return self.n - 1
        if self.family in ("B", "D"):
            return self.n
        if self.family == "I2":
            return 2
        return sum(f.rank for f in self.factors)

    @property
    def order(self) -> int:
        if self.family == "A":
            return factorial(self.n)
        if self.family == "B":
            return 2**self.n * factorial(self.n)
        if self.family == "D":
            return 2 ** (self.n - 1) * factorial(self.n)
        if self.family == "I2":
            return 2 * self.n
        out = 1
        for f in self.factors:
            out *= f.order
        return out

    def __str__(self) -> str:
        if self.family == "A":
            return f"A{self.n - 1}"
        if self.family in ("B", "D"):
            return f"{self.family}{self.n}"
        if self.family == "I2":
            return f"I2({self.n})"
        return "x".join(str(f) for f in self.factors)


_TOKEN = re.compile(r"^(?:([ABD])(\d+)|I2\((\d+)\)|G2)$")


def parse_descriptor(text: str) -> GroupDescriptor:
    """Parse strings such as ``"A3"``, ``"B2"``, ``"I2(7)"``, ``"G2"``, ``"A1xA1"``."""
    if not text.strip():
        raise ValueError(f"empty group descriptor {text!r}")
    parts = [p.strip() for p in re.split(r"[x×*]", text.strip())]
    out = []
    for part in parts:
        m = _TOKEN.match(part)
        if not m:
            raise ValueError(f"cannot parse group descriptor {part!r}")
        if part == "G2":
            out.append(GroupDescriptor.I2(6))
        elif m.group(3) is not None:
            out.append(GroupDescriptor.I2(int(m.group(3))))
        elif m.group(1) == "A":
            out.append(GroupDescriptor.A(int(m.group(2)) + 1))
        else:
            out.append(GroupDescriptor(m.group(1), int(m.group(2))))
    return GroupDescriptor.product(out)


def _transposition(npts: int, *pairs: tuple[int, int]) -> np.ndarray:
    s = np.arange(npts, dtype=np.int32)
    for a, b in pairs:
        s[a], s[b] = b, a
    return s


def _generators(d: GroupDescriptor) -> tuple[int, list[np.ndarray]]:
    """Point count and generator permutations of the faithful action."""
    if d.family == "A":
        n = d.n
        return n, [_transposition(n, (i, i + 1)) for i in range(n - 1)]
    if d.family in ("B", "D"):
        # Points 0..n-1 stand for +1..+n and n..2n-1 for -1..-n.
        n = d.n
        gens = [_transposition(2 * n, (i, i + 1), (n + i, n + i + 1)) for i in range(n - 1)]
        if d.family == "B":
            gens.append(_transposition(2 * n, (n - 1, 2 * n - 1)))
        else:
            gens.append(_transposition(2 * n, (n - 2, 2 * n - 1), (n - 1, 2 * n - 2)))
        return 2 * n, gens
    if d.family == "I2":
        p = d.n
        if p == 2:
            return 4, [_transposition(4, (0, 1)), _transposition(4, (2, 3))]
        k = np.arange(p)
        return p, [((-k) % p).astype(np.int32), ((1 - k) % p).astype(np.int32)]
    total, gens = 0, []
    for f in d.factors:
        npts, fg = _generators(f)
        for s in fg:
            full = np.arange(total + npts, dtype=np.int32)
            full[total:] = s + total
            gens.append(full)
        total += npts
    gens = [np.concatenate([s, np.arange(len(s), total, dtype=np.int32)]) for s in gens]
    return total, gens


def _bits(subset: Iterable[int]) -> int:
    mask = 0
    for i in subset:
        mask |= 1 << (int(i) - 1)
    return mask


def _unbits(mask: int) -> frozenset[int]:
    out, i = [], 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return frozenset(out)


def _lowest(mask: int) -> int:
    """0-based index of the lowest set bit."""
    return (mask & -mask).bit_length() - 1


class CoxeterGroup:
    """A fully enumerated finite Coxeter group.

    Main tables (all indexed by element id):

    ``perms``   action arrays, shape ``(N, npoints)``;
    ``right``   ``right[w, i] = w s_{i+1}``;  ``left``  ``left[w, i] = s_{i+1} w``;
    ``length``  Coxeter length;  ``inv`` inverse ids;
    ``dr``/``dl`` right/left descent sets as bitmasks (bit ``i-1`` for ``s_i``);
    ``support`` bitmask of generators occurring in reduced words.
    """

    def __init__(self, descriptor: GroupDescriptor, max_elements: int = DEFAULT_MAX_ELEMENTS):
        if descriptor.order > max_elements:
            raise SizeError(
                f"{descriptor} has {descriptor.order} elements, above the cap {max_elements}"
                " (raise it with --max-elements)"
            )
        self.descriptor = descriptor
        self.rank = descriptor.rank
        self.npoints, self.gens = _generators(descriptor)
        self._enumerate()

    # ------------------------------------------------------------------ build
    def _enumerate(self) -> None:
        ident = np.arange(self.npoints, dtype=np.int32)
        rows = [ident]
        index = {ident.tobytes(): 0}
        lengths = [0]
        frontier = [0]
        level = 0
        while frontier:
            fresh: dict[bytes, np.ndarray] = {}
            for w in frontier:
                a = rows[w]
                for s in self.gens:
                    b = a[s]
                    key = b.tobytes()
                    if key not in index and key not in fresh:
                        fresh[key] = b
            level += 1
            frontier = []
            for b in sorted(fresh.values(), key=lambda r: tuple(r.tolist())):
                index[b.tobytes()] = len(rows)
                frontier.append(len(rows))
                rows.append(b)
                lengths.append(level)
        self.perms = np.array(rows, dtype=np.int32)
        self._index = index
        self.size = len(rows)
        self.length = np.array(lengths, dtype=np.int32)
        n, r = self.size, self.rank
        self.right = np.empty((n, r), dtype=np.int32)
        self.left = np.empty((n, r), dtype=np.int32)
        for i, s in enumerate(self.gens):
            self.right[:, i] = self._lookup_rows(self.perms[:, s])
            self.left[:, i] = self._lookup_rows(s[self.perms])
        self.dr = np.zeros(n, dtype=np.int64)
        self.dl = np.zeros(n, dtype=np.int64)
        for i in range(r):
            self.dr |= (self.length[self.right[:, i]] < self.length).astype(np.int64) << i
            self.dl |= (self.length[self.left[:, i]] < self.length).astype(np.int64) << i
        self.inv = self._lookup_rows(np.argsort(self.perms, axis=1).astype(np.int32))
        self.identity = 0
        self.w0 = int(np.argmax(self.length))
        # canonical reduced word: strip the smallest right descent repeatedly
        self.parent = np.zeros(n, dtype=np.int32)
        self.parent_gen = np.full(n, -1, dtype=np.int32)
        self.support = np.zeros(n, dtype=np.int64)
        for w in range(1, n):
            i = _lowest(int(self.dr[w]))
            v = int(self.right[w, i])
            self.parent[w], self.parent_gen[w] = v, i
            self.support[w] = self.support[v] | (1 << i)

    def _lookup_rows(self, arr: np.ndarray) -> np.ndarray:
        arr = np.ascontiguousarray(arr, dtype=np.int32)
        return np.fromiter((self._index[row.tobytes()] for row in arr), dtype=np.int32, count=len(arr))

    def lookup(self, action: Sequence[int] | np.ndarray) -> int:
        """Element id of an action array."""
        return self._index[np.asarray(action, dtype=np.int32).tobytes()]

    # --------------------------------------------------------------- access
    def __len__(self) -> int:
        return self.size

    def __repr__(self) -> str:
        return f"CoxeterGroup({self.descriptor}, |W|={self.size})"

    @property
    def index_set(self) -> list[int]:
        return list(range(1, self.rank + 1))

    @property
    def is_type_a(self) -> bool:
        return self.descriptor.family == "A"

    def word(self, w: int) -> list[int]:
        """Canonical reduced word (1-based generator labels)."""
        out = []
        w = int(w)
        while w:
            out.append(int(self.parent_gen[w]) + 1)
            w = int(self.parent[w])
        return out[::-1]

    def from_word(self, word: Iterable[int]) -> int:
        w = 0
        for i in word:
            w = int(self.right[w, int(i) - 1])
        return w

    def one_line(self, w: int) -> tuple[int, ...]:
        """One-line notation: 1-based values for type A, signed values for B and D."""
        row = self.perms[int(w)]
        fam = self.descriptor.family
        if fam == "A":
            return tuple(int(x) + 1 for x in row)
        if fam in ("B", "D"):
            n = self.descriptor.n
            return tuple(int(x) + 1 if x < n else -(int(x) - n + 1) for x in row[:n])
        raise ValueError("one-line notation only for types A, B, D")

    def label(self, w: int) -> str:
        fam = self.descriptor.family
        if fam == "A":
            vals = self.one_line(w)
            return "".join(map(str, vals)) if len(vals) <= 9 else ",".join(map(str, vals))
        if fam in ("B", "D"):
            return "[" + ",".join(map(str, self.one_line(w))) + "]"
        word = self.word(w)
        if not word:
            return "e"
        return "".join(map(str, word)) if self.rank <= 9 else ".".join(map(str, word))

    @cached_property
    def labels(self) -> list[str]:
        return [self.label(w) for w in range(self.size)]

    @cached_property
    def _label_index(self) -> dict[str, int]:
        return {lab: w for w, lab in enumerate(self.labels)}

    def element(self, x: int | str | Sequence[int]) -> int:
        """Resolve an id, a label, a word such as ``"s1s2s1"``, or a (type A,
        1-based) one-line sequence."""
        if isinstance(x, (int, np.integer)):
            if not 0 <= int(x) < self.size:
                raise IndexError(f"element id {x} out of range")
            return int(x)
        if isinstance(x, str):
            s = x.strip()
            if s in self._label_index:
                return self._label_index[s]
            if re.fullmatch(r"(?:s\d+)+", s):
                word = [int(t) for t in re.findall(r"\d+", s)]
                if not all(1 <= i <= self.rank for i in word):
                    raise KeyError(f"generator out of range in {x!r}")
                return self.from_word(word)
            if self.is_type_a and s.replace(",", "").isdigit():
                vals = [int(c) for c in (s.split(",") if "," in s else s)]
                return self.element(vals)
            raise KeyError(f"unknown element {x!r} in {self.descriptor}")
        vals = list(x)
        if self.is_type_a:
            return self.lookup([v - 1 for v in vals])
        if self.descriptor.family in ("B", "D"):
            n = self.descriptor.n
            pos = [v - 1 if v > 0 else n - v - 1 for v in vals]
            neg = [v - n if v >= n else v + n for v in pos]
            return self.lookup(pos + neg)
        raise TypeError(f"cannot resolve {x!r}")

    # ----------------------------------------------------------- products
    @cached_property
    def mul(self) -> np.ndarray:
        """Dense multiplication table ``mul[a, b] = a b``."""
        n = self.size
        if n > MUL_TABLE_LIMIT:
            raise SizeError(f"multiplication table of {n} elements not materialised")
        table = np.empty((n, n), dtype=np.int32)
        table[:, 0] = np.arange(n)
        for b in range(1, n):
            table[:, b] = self.right[table[:, self.parent[b]], self.parent_gen[b]]
        return table

    def product(self, a: int, b: int) -> int:
        if self.size <= MUL_TABLE_LIMIT:
            return int(self.mul[a, b])
        # action arrays compose as a then b: (ab)[p] = a[b[p]]
        return self.lookup(self.perms[a][self.perms[b]])

    def descents_right(self, w: int) -> frozenset[int]:
        return _unbits(int(self.dr[w]))

    def descents_left(self, w: int) -> frozenset[int]:
        return _unbits(int(self.dl[w]))

    # --------------------------------------------------------------- orders
    def le_R(self, u: int, w: int) -> bool:
        return int(self.length[u]) + int(self.length[self.product(int(self.inv[u]), w)]) == int(self.length[w])

    def le_L(self, u: int, w: int) -> bool:
        return int(self.length[u]) + int(self.length[self.product(w, int(self.inv[u]))]) == int(self.length[w])

    def below_R(self, w: int) -> np.ndarray:
        """Boolean mask of ``[1, w]_R``."""
        z = self.mul[self.inv, int(w)]
        return self.length + self.length[z] == self.length[w]

    def below_L(self, w: int) -> np.ndarray:
        z = self.mul[int(w), self.inv]
        return self.length + self.length[z] == self.length[w]

    def above_R(self, u: int) -> np.ndarray:
        z = self.mul[int(self.inv[u]), :]
        return self.length[u] + self.length[z] == self.length

    def above_L(self, u: int) -> np.ndarray:
        z = self.mul[:, int(self.inv[u])]
        return self.length[u] + self.length[z] == self.length

    @cached_property
    def bruhat_lower(self) -> np.ndarray:
        """``bruhat_lower[w, u]`` is true iff ``u <=_B w``."""
        n = self.size
        if n > BRUHAT_BITSET_LIMIT:
            raise SizeError("Bruhat bitset not materialised for this size")
        low = np.zeros((n, n), dtype=bool)
        low[0, 0] = True
        for w in range(1, n):
            v, i = int(self.parent[w]), int(self.parent_gen[w])
            # u <= w iff u <= v or u s_i <= v  (lifting with s_i a descent of w)
            low[w] = low[v] | low[v][self.right[:, i]]
        return low

    @cached_property
    def twosided_lower(self) -> np.ndarray:
        """``twosided_lower[w, u]`` is true iff ``w = x u y`` with lengths adding."""
        n = self.size
        if n > BRUHAT_BITSET_LIMIT:
            raise SizeError("two-sided order not materialised for this size")
        low = np.zeros((n, n), dtype=bool)
        for w in np.argsort(self.length, kind="stable"):
            w = int(w)
            low[w, w] = True
            for i in range(self.rank):
                for v in (int(self.right[w, i]), int(self.left[w, i])):
                    if self.length[v] < self.length[w]:
                        low[w] |= low[v]
        return low

    def le_LR(self, u: int, w: int) -> bool:
        return bool(self.twosided_lower[int(w), int(u)])

    @cached_property
    def coxeter_matrix(self) -> np.ndarray:
        """``m[i, j]`` = order of ``s_i s_j`` (0-based indices)."""
        r = self.rank
        m = np.ones((r, r), dtype=np.int64)
        for i in range(r):
            for j in range(r):
                if i == j:
                    continue
                x, k = 0, 0
                while True:
                    x = int(self.right[int(self.right[x, i]), j])
                    k += 1
                    if x == 0:
                        break
                m[i, j] = k
        return m

    def le_B(self, u: int, w: int) -> bool:
        if self.size <= BRUHAT_BITSET_LIMIT:
            return bool(self.bruhat_lower[int(w), int(u)])
        return self._le_B_lift(int(u), int(w))

    @lru_cache(maxsize=None)
    def _le_B_lift(self, u: int, w: int) -> bool:
        if self.length[u] > self.length[w]:
            return False
        if w == 0:
            return u == 0
        i = _lowest(int(self.dr[w]))
        ws = int(self.right[w, i])
        us = int(self.right[u, i])
        if self.dr[u] >> i & 1:
            return self._le_B_lift(us, ws)
        return self._le_B_lift(u, ws)

    def le_B_subword(self, u: int, w: int) -> bool:
        """Brute-force Bruhat test: ``u`` is a subword product of a reduced word of ``w``."""
        word = self.word(w)
        reach = {0}
        for i in word:
            reach |= {int(self.right[x, i - 1]) for x in reach}
        return int(u) in reach

    def le(self, u: int, w: int, order: str) -> bool:
        order = order.upper()
        if order == "R":
            return self.le_R(u, w)
        if order == "L":
            return self.le_L(u, w)
        if order == "B":
            return self.le_B(u, w)
        raise ValueError(f"unknown order {order!r}")

    # ---------------------------------------------------------- parabolics
    def coset_right(self, w: int, K: Iterable[int]) -> tuple[int, int]:
        """``(w^K, _K w)`` with ``w = w^K . _K w`` and ``w^K`` minimal in ``w W_K``."""
        mask, v = _bits(K), int(w)
        while True:
            d = int(self.dr[v]) & mask
            if not d:
                break
            v = int(self.right[v, _lowest(d)])
        return v, self.product(int(self.inv[v]), w)

    def coset_left(self, w: int, J: Iterable[int]) -> tuple[int, int]:
        """``(^J w, w_J)`` with ``w = w_J . ^J w`` and ``^J w`` minimal in ``W_J w``."""
        mask, v = _bits(J), int(w)
        while True:
            d = int(self.dl[v]) & mask
            if not d:
                break
            v = int(self.left[v, _lowest(d)])
        return v, self.product(w, int(self.inv[v]))

    def parabolic_w0(self, J: Iterable[int]) -> int:
        """Longest element of the parabolic subgroup ``W_J``."""
        mask, v = _bits(J), 0
        while True:
            nd = ~int(self.dr[v]) & mask
            if not nd:
                return v
            v = int(self.right[v, _lowest(nd)])

    # ------------------------------------------------------------ intervals
    def interval(self, a: int, b: int, order: str = "R") -> list[int]:
        order = order.upper()
        a, b = int(a), int(b)
        if order == "R":
            mask = self.above_R(a) & self.below_R(b)
        elif order == "L":
            mask = self.above_L(a) & self.below_L(b)
        elif order == "B":
            low = self.bruhat_lower
            mask = low[b] & low[:, a]
        else:
            raise ValueError(f"unknown order {order!r}")
        return [int(x) for x in np.flatnonzero(mask)]

    def interval_type(self, a: int, b: int, side: str = "R") -> int:
        side = side.upper()
        if not self.le(a, b, side):
            raise IncomparableError(f"{self.label(a)} is not below {self.label(b)} in {side} order")
        if side == "L":
            return self.product(b, int(self.inv[a]))
        return self.product(int(self.inv[a]), b)

    def _below(self, w: int, side: str) -> np.ndarray:
        return self.below_L(w) if side.upper() == "L" else self.below_R(w)

    def _above(self, w: int, side: str) -> np.ndarray:
        return self.above_L(w) if side.upper() == "L" else self.above_R(w)

    def weak_meet(self, u: int, v: int, side: str = "R") -> int:
        common = np.flatnonzero(self._below(u, side) & self._below(v, side))
        return int(common[np.argmax(self.length[common])])

    def weak_join(self, u: int, v: int, side: str = "R") -> int:
        common = np.flatnonzero(self._above(u, side) & self._above(v, side))
        return int(common[np.argmin(self.length[common])])

    def bits(self, subset: Iterable[int]) -> int:
        return _bits(subset)

    def unbits(self, mask: int) -> frozenset[int]:
        return _unbits(mask)

    def typeA_order(self) -> list[int]:
        """Element ids sorted lexicographically by one-line notation (type A),
        or in id order for other types."""
        if not self.is_type_a:
            return list(range(self.size))
        return sorted(range(self.size), key=lambda w: tuple(self.perms[w]))


def build_group(d: GroupDescriptor | str, max_elements: int = DEFAULT_MAX_ELEMENTS) -> CoxeterGroup:
    if isinstance(d, str):
        d = parse_descriptor(d)
    return CoxeterGroup(d, max_elements=max_elements)


def product(g: CoxeterGroup, a: int, b: int) -> int:
    return g.product(a, b)


def right_descents(g: CoxeterGroup, w: int) -> frozenset[int]:
    return g.descents_right(w)


def left_descents(g: CoxeterGroup, w: int) -> frozenset[int]:
    return g.descents_left(w)


def le_R(g: CoxeterGroup, u: int, w: int) -> bool:
    return g.le_R(u, w)


def le_L(g: CoxeterGroup, u: int, w: int) -> bool:
    return g.le_L(u, w)


def le_B(g: CoxeterGroup, u: int, w: int) -> bool:
    return g.le_B(u, w)


def min_coset_rep_right(g: CoxeterGroup, w: int, K: Iterable[int]) -> int:
    return g.coset_right(w, K)[0]


def min_coset_rep_left(g: CoxeterGroup, w: int, J: Iterable[int]) -> int:
    return g.coset_left(w, J)[0]


def interval(g: CoxeterGroup, a: int, b: int, order: str = "R") -> list[int]:
    return g.interval(a, b, order)


def interval_type(g: CoxeterGroup, a: int, b: int, side: str = "R") -> int:
    return g.interval_type(a, b, side)


def weak_meet(g: CoxeterGroup, u: int, v: int, side: str = "R") -> int:
    return g.weak_meet(u, v, side)


def weak_join(g: CoxeterGroup, u: int, v: int, side: str = "R") -> int:
    return g.weak_join(u, v, side)
