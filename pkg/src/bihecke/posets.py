"""Finite posets stored as per-node reachability bitsets (Python ints)."""

from __future__ import annotations

from itertools import combinations
from typing import Callable, Hashable, Iterable, Mapping, Sequence

import numpy as np

Node = Hashable
MAX_LOWER_SETS_NODES = 25


class Poset:
    """A finite poset on ``ground``.

    ``down[i]`` is the bitset of indices ``j`` with ``ground[j] <= ground[i]``
    and ``up[i]`` its transpose.  Construct with :meth:`from_leq`,
    :meth:`from_matrix` or :meth:`from_covers`.
    """

    def __init__(self, ground: Sequence[Node], down: Sequence[int]):
        self.ground = list(ground)
        self.index = {x: i for i, x in enumerate(self.ground)}
        if len(self.index) != len(self.ground):
            raise ValueError("duplicate poset nodes")
        n = len(self.ground)
        self.down = list(down)
        up = [0] * n
        for i, d in enumerate(self.down):
            if not d >> i & 1:
                raise ValueError("relation is not reflexive")
            for j in _iter_bits(d):
                up[j] |= 1 << i
        for i in range(n):
            if (self.down[i] & up[i]) != 1 << i:
                raise ValueError("relation is not antisymmetric")
        self.up = up
        self._mobius_rows: dict[int, dict[int, int]] = {}

    # ---------------------------------------------------------- builders
    @classmethod
    def from_leq(cls, ground: Sequence[Node], leq: Callable[[Node, Node], bool]) -> "Poset":
        ground = list(ground)
        down = []
        for y in ground:
            d = 0
            for j, x in enumerate(ground):
                if leq(x, y):
                    d |= 1 << j
            down.append(d)
        p = cls(ground, down)
        p._check_transitive()
        return p

    @classmethod
    def from_matrix(cls, ground: Sequence[Node], le: np.ndarray) -> "Poset":
        """``le[i, j]`` true iff ``ground[i] <= ground[j]``."""
        le = np.asarray(le, dtype=bool)
        down = [_mask_to_int(le[:, j]) for j in range(len(ground))]
        p = cls(ground, down)
        p._check_transitive()
        return p

    @classmethod
    def from_covers(cls, ground: Sequence[Node], covers: Iterable[tuple[Node, Node]]) -> "Poset":
        """Build from (lower, upper) pairs; the order is their reflexive-transitive closure."""
        ground = list(ground)
        idx = {x: i for i, x in enumerate(ground)}
        below: list[list[int]] = [[] for _ in ground]
        for a, b in covers:
            below[idx[b]].append(idx[a])
        down: list[int | None] = [None] * len(ground)
        state = [0] * len(ground)

        def visit(i: int) -> int:
            stack = [(i, iter(below[i]))]
            state[i] = 1
            while stack:
                node, it = stack[-1]
                nxt = next(it, None)
                if nxt is None:
                    d = 1 << node
                    for j in below[node]:
                        d |= down[j]  # type: ignore[operator]
                    down[node] = d
                    state[node] = 2
                    stack.pop()
                elif state[nxt] == 0:
                    state[nxt] = 1
                    stack.append((nxt, iter(below[nxt])))
                elif state[nxt] == 1:
                    raise ValueError("cover relation has a cycle")
            return down[i]  # type: ignore[return-value]

        for i in range(len(ground)):
            if state[i] == 0:
                visit(i)
        return cls(ground, down)  # type: ignore[arg-type]

    def _check_transitive(self) -> None:
        for i, d in enumerate(self.down):
            for j in _iter_bits(d):
                if self.down[j] & ~d:
                    raise ValueError("relation is not transitive")

    # ------------------------------------------------------------ basics
    def __len__(self) -> int:
        return len(self.ground)

    def __contains__(self, x: Node) -> bool:
        return x in self.index

    def __repr__(self) -> str:
        return f"Poset({len(self)} nodes, {len(self.covers)} covers)"

    def _i(self, x: Node) -> int:
        return self.index[x]

    def _nodes(self, mask: int) -> list[Node]:
        return [self.ground[j] for j in _iter_bits(mask)]

    def leq(self, x: Node, y: Node) -> bool:
        return bool(self.down[self._i(y)] >> self._i(x) & 1)

    def lt(self, x: Node, y: Node) -> bool:
        return x != y and self.leq(x, y)

    def comparable(self, x: Node, y: Node) -> bool:
        return self.leq(x, y) or self.leq(y, x)

    def lower_set(self, x: Node) -> list[Node]:
        return self._nodes(self.down[self._i(x)])

    def upper_set(self, x: Node) -> list[Node]:
        return self._nodes(self.up[self._i(x)])

    def minimal_elements(self) -> list[Node]:
        return [x for i, x in enumerate(self.ground) if self.down[i] == 1 << i]

    def maximal_elements(self) -> list[Node]:
        return [x for i, x in enumerate(self.ground) if self.up[i] == 1 << i]

    def bottom(self) -> Node | None:
        m = self.minimal_elements()
        return m[0] if len(m) == 1 else None

    def top(self) -> Node | None:
        m = self.maximal_elements()
        return m[0] if len(m) == 1 else None

    # ------------------------------------------------------------ covers
    @property
    def lower_cover_masks(self) -> list[int]:
        if not hasattr(self, "_lcov"):
            lcov = []
            for i, d in enumerate(self.down):
                strict = d & ~(1 << i)
                c = 0
                for j in _iter_bits(strict):
                    if self.up[j] & strict == 1 << j:
                        c |= 1 << j
                lcov.append(c)
            self._lcov = lcov
        return self._lcov

    @property
    def covers(self) -> list[tuple[Node, Node]]:
        """Hasse diagram as (lower, upper) pairs."""
        return [(self.ground[j], self.ground[i]) for i, c in enumerate(self.lower_cover_masks) for j in _iter_bits(c)]

    def lower_covers(self, x: Node) -> list[Node]:
        return self._nodes(self.lower_cover_masks[self._i(x)])

    def upper_covers(self, x: Node) -> list[Node]:
        i = self._i(x)
        return [self.ground[j] for j, c in enumerate(self.lower_cover_masks) if c >> i & 1]

    def rank(self, x: Node) -> int:
        """Length of the longest chain from a minimal element up to ``x``."""
        if not hasattr(self, "_ranks"):
            order = sorted(range(len(self)), key=lambda i: self.down[i].bit_count())
            r = [0] * len(self)
            for i in order:
                r[i] = max((r[j] + 1 for j in _iter_bits(self.lower_cover_masks[i])), default=0)
            self._ranks = r
        return self._ranks[self._i(x)]

    # -------------------------------------------------------- subposets
    def subposet(self, nodes: Iterable[Node]) -> "Poset":
        nodes = sorted(set(nodes), key=self._i)
        idx = [self._i(x) for x in nodes]
        pos = {i: k for k, i in enumerate(idx)}
        down = []
        for i in idx:
            d = 0
            for j in _iter_bits(self.down[i]):
                if j in pos:
                    d |= 1 << pos[j]
            down.append(d)
        return Poset(nodes, down)

    def interval(self, x: Node, y: Node) -> "Poset":
        mask = self.up[self._i(x)] & self.down[self._i(y)]
        if not mask:
            raise ValueError(f"{x!r} is not below {y!r}")
        return self.subposet(self._nodes(mask))

    # ----------------------------------------------------------- Möbius
    def mobius(self, x: Node, y: Node) -> int:
        i, j = self._i(x), self._i(y)
        if not self.down[j] >> i & 1:
            raise ValueError(f"mobius({x!r}, {y!r}): pair is not comparable")
        return self._mobius_row(i)[j]

    def _mobius_row(self, i: int) -> dict[int, int]:
        row = self._mobius_rows.get(i)
        if row is None:
            row = {}
            above = sorted(_iter_bits(self.up[i]), key=lambda k: self.down[k].bit_count())
            for k in above:
                if k == i:
                    row[k] = 1
                else:
                    strict = self.down[k] & self.up[i] & ~(1 << k)
                    row[k] = -sum(row[z] for z in _iter_bits(strict))
            self._mobius_rows[i] = row
        return row

    # ------------------------------------------------------ meets, joins
    def meet(self, x: Node, y: Node) -> Node | None:
        common = self.down[self._i(x)] & self.down[self._i(y)]
        return self._greatest(common)

    def join(self, x: Node, y: Node) -> Node | None:
        common = self.up[self._i(x)] & self.up[self._i(y)]
        return self._least(common)

    def meet_all(self, nodes: Iterable[Node]) -> Node | None:
        mask = -1
        for x in nodes:
            mask &= self.down[self._i(x)]
        if mask == -1:
            return self.top()
        return self._greatest(mask)

    def _greatest(self, mask: int) -> Node | None:
        for j in _iter_bits(mask):
            if self.down[j] & mask == mask:
                return self.ground[j]
        return None

    def _least(self, mask: int) -> Node | None:
        for j in _iter_bits(mask):
            if self.up[j] & mask == mask:
                return self.ground[j]
        return None

    # --------------------------------------------------------- predicates
    def is_meet_semilattice(self) -> bool:
        n = len(self)
        return all(self._greatest(self.down[a] & self.down[b]) is not None for a in range(n) for b in range(a + 1, n))

    def is_join_semilattice(self) -> bool:
        n = len(self)
        return all(self._least(self.up[a] & self.up[b]) is not None for a in range(n) for b in range(a + 1, n))

    def is_lattice(self) -> bool:
        return len(self) > 0 and self.is_meet_semilattice() and self.is_join_semilattice()

    def is_distributive(self) -> bool:
        """Lattice with ``x ∧ (y ∨ z) = (x ∧ y) ∨ (x ∧ z)`` for all triples."""
        if not self.is_lattice():
            return False
        g = self.ground
        for x in g:
            for y, z in combinations(g, 2):
                if self.meet(x, self.join(y, z)) != self.join(self.meet(x, y), self.meet(x, z)):
                    return False
        return True

    def is_boolean(self) -> bool:
        """Whether the poset is isomorphic to a Boolean lattice (subsets of its atoms)."""
        bot = self.bottom()
        if bot is None:
            return False
        atoms = self.upper_covers(bot)
        if len(self) != 2 ** len(atoms):
            return False
        atom_idx = [self._i(a) for a in atoms]
        image = {}
        for i, d in enumerate(self.down):
            key = sum(1 << k for k, a in enumerate(atom_idx) if d >> a & 1)
            if key in image:
                return False
            image[key] = i
        # x <= y iff atoms(x) ⊆ atoms(y)
        for kx, ix in image.items():
            for ky, iy in image.items():
                if (kx & ~ky == 0) != bool(self.down[iy] >> ix & 1):
                    return False
        return True

    def is_meet_distributive(self) -> bool:
        """Meet-semilattice in which, for every ``y``, the interval ``[x, y]``
        with ``x`` the meet of the lower covers of ``y`` is Boolean."""
        if not self.is_meet_semilattice():
            return False
        for i, y in enumerate(self.ground):
            low = self._nodes(self.lower_cover_masks[i])
            if not low:
                continue
            x = self.meet_all(low)
            if x is None or not self.interval(x, y).is_boolean():
                return False
        return True

    def join_irreducibles(self) -> list[Node]:
        return [self.ground[i] for i, c in enumerate(self.lower_cover_masks) if c.bit_count() == 1]

    def lower_sets(self) -> "Poset":
        """Lattice of down-closed subsets (as frozensets of nodes), ordered by inclusion."""
        n = len(self)
        if n > MAX_LOWER_SETS_NODES:
            raise ValueError(f"lower_sets limited to {MAX_LOWER_SETS_NODES} nodes, got {n}")
        ideals = {0}
        frontier = [0]
        while frontier:
            nxt = []
            for s in frontier:
                for i in range(n):
                    if not s >> i & 1 and (self.down[i] & ~(1 << i)) & ~s == 0:
                        t = s | 1 << i
                        if t not in ideals:
                            ideals.add(t)
                            nxt.append(t)
            frontier = nxt
        order = sorted(ideals, key=lambda s: (s.bit_count(), s))
        ground = [frozenset(self._nodes(s)) for s in order]
        down = []
        for s in order:
            down.append(sum(1 << k for k, t in enumerate(order) if t & ~s == 0))
        return Poset(ground, down)

    # ------------------------------------------------------------ export
    def to_dot(
        self,
        name: str = "poset",
        label: Callable[[Node], str] = str,
        colors: Mapping[tuple[Node, Node], str] | None = None,
    ) -> str:
        """DOT text: one node per element sorted by (rank, label), one edge per cover."""
        nodes = sorted(self.ground, key=lambda x: (self.rank(x), label(x)))
        lines = [f"digraph {_dot_id(name)} {{", "  rankdir=BT;"]
        for x in nodes:
            lines.append(f"  {_dot_id(label(x))};")
        edges = sorted(self.covers, key=lambda e: (self.rank(e[1]), label(e[1]), self.rank(e[0]), label(e[0])))
        for a, b in edges:
            attr = ""
            if colors and (a, b) in colors:
                attr = f" [color={_dot_id(colors[(a, b)])}]"
            lines.append(f"  {_dot_id(label(a))} -> {_dot_id(label(b))}{attr};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def _dot_id(s: str) -> str:
    return '"' + str(s).replace("\\", "\\\\").replace('"', '\\"') + '"'


def _iter_bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _mask_to_int(col: np.ndarray) -> int:
    packed = np.packbits(col.astype(np.uint8), bitorder="little")
    return int.from_bytes(packed.tobytes(), "little")


def chain(k: int) -> Poset:
    """The chain 0 < 1 < ... < k-1."""
    return Poset(list(range(k)), [(1 << (i + 1)) - 1 for i in range(k)])


def boolean_lattice(n: int) -> Poset:
    """Subsets of {0..n-1} encoded as ints, ordered by inclusion."""
    ground = list(range(2**n))
    return Poset(ground, [sum(1 << s for s in ground if s & ~t == 0) for t in ground])


def mobius(p: Poset, x: Node, y: Node) -> int:
    return p.mobius(x, y)


def meet(p: Poset, x: Node, y: Node) -> Node | None:
    return p.meet(x, y)


def join(p: Poset, x: Node, y: Node) -> Node | None:
    return p.join(x, y)


def is_meet_semilattice(p: Poset) -> bool:
    return p.is_meet_semilattice()


def is_lattice(p: Poset) -> bool:
    return p.is_lattice()


def is_distributive(p: Poset) -> bool:
    return p.is_distributive()


def is_meet_distributive(p: Poset) -> bool:
    return p.is_meet_distributive()


def join_irreducibles(p: Poset) -> list[Node]:
    return p.join_irreducibles()


def lower_sets(p: Poset) -> Poset:
    return p.lower_sets()
