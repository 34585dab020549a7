"""Table 1 rows and labelled matrix tables with their marginals.

A :class:`MatrixTable` is what the command line prints for ``cartan``,
``qcartan`` and ``decomposition``.  Its entries are coefficient lists, so an
ungraded integer ``c`` is stored as ``[c]`` and zero as ``[]``.  Rows and
columns follow :meth:`CoxeterGroup.typeA_order`: lexicographic one-line
notation in type A, element ids (BFS by length) otherwise.
"""

from __future__ import annotations

import csv
import io
import json
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from ..coxeter import CoxeterGroup, SizeError
from ..fmonoid import DEFAULT_MAX_MONOID, TransformationMonoid, bihecke, borel, borel_size
from . import cartan as RC
from .borel import decomposition_matrix
from .modules import dim_simple, simple_modules

TYPE_A_ORDER = "rows and columns in lexicographic order of one-line notation"
ID_ORDER = "rows and columns in element id order (by length, then action array)"


def order_note(g: CoxeterGroup) -> str:
    return TYPE_A_ORDER if g.is_type_a else ID_ORDER


# ---------------------------------------------------------------- Table 1
def format_multiset(dims: Counter) -> str:
    return " ".join(f"{d}^{k}" for d, k in sorted(dims.items()))


@dataclass
class Table1Row:
    name: str
    order: int
    n_mw0: int
    n_m: int
    dims: Counter
    total: int

    def format(self) -> str:
        return f"{self.name} {self.order} {self.n_mw0} {self.n_m} {format_multiset(self.dims)} {self.total}"

    def to_json(self) -> dict:
        return {
            "group": self.name,
            "W": self.order,
            "M_w0": self.n_mw0,
            "M": self.n_m,
            "dims": {str(d): k for d, k in sorted(self.dims.items())},
            "sum": self.total,
        }


def table1_row(
    g: CoxeterGroup,
    name: str | None = None,
    m: TransformationMonoid | None = None,
    max_elements: int = DEFAULT_MAX_MONOID,
    threads: int = 1,
    progress=None,
) -> Table1Row:
    """|W|, |M_{w0}|, |M|, the multiset of simple dimensions and their sum."""
    if m is None:
        m = bihecke(g, max_elements=max_elements, threads=threads, progress=progress)
    dims = Counter(dim_simple(g, w) for w in range(g.size))
    return Table1Row(
        name if name is not None else str(g.descriptor),
        g.size,
        borel_size(g, m, "w0"),
        len(m),
        dims,
        sum(d * k for d, k in dims.items()),
    )


# ------------------------------------------------------- matrix tables
@dataclass
class MatrixTable:
    """Square table of polynomial entries with optional marginal rows/columns."""

    title: str
    descriptor: str
    order: str
    labels: list[str]
    entries: list[list[list[int]]]
    right: dict[str, list[int]] = field(default_factory=dict)
    bottom: dict[str, list[int]] = field(default_factory=dict)
    poly: bool = False

    def to_json(self) -> dict:
        out = {
            "title": self.title,
            "group": self.descriptor,
            "order": self.order,
            "labels": self.labels,
            "entries": self.entries,
        }
        for k, v in self.right.items():
            out[f"right_{k.lower().rstrip('.')}"] = v
        for k, v in self.bottom.items():
            out[f"bottom_{k.lower().rstrip('.')}"] = v
        return out

    def render(self, fmt: str = "human") -> str:
        if fmt == "json":
            return json.dumps(self.to_json(), indent=1) + "\n"
        if fmt == "csv":
            return self._csv()
        if fmt == "human":
            return self._human()
        raise ValueError(f"format {fmt!r} is not available for matrix tables")

    def _cell(self, c: list[int], poly: bool) -> str:
        if poly:
            return RC.format_poly(c)
        return str(c[0]) if c else "0"

    def _csv(self) -> str:
        buf = io.StringIO()
        buf.write(f"# {self.title}\n# group: {self.descriptor}\n# order: {self.order}\n")
        if self.poly:
            buf.write("# entries: coefficient lists c0;c1;... of polynomials in q\n")
        w = csv.writer(buf, lineterminator="\n")
        w.writerow([""] + self.labels + list(self.right))
        for i, lab in enumerate(self.labels):
            cells = [";".join(map(str, c)) if self.poly else self._cell(c, False) for c in self.entries[i]]
            w.writerow([lab] + cells + [str(v[i]) for v in self.right.values()])
        for name, v in self.bottom.items():
            w.writerow([name] + [str(x) for x in v] + [""] * len(self.right))
        return buf.getvalue()

    def _human(self) -> str:
        rows = [[""] + self.labels + list(self.right)]
        for i, lab in enumerate(self.labels):
            rows.append([lab] + [self._cell(c, self.poly) for c in self.entries[i]] + [str(v[i]) for v in self.right.values()])
        for name, v in self.bottom.items():
            rows.append([name] + [str(x) for x in v] + [""] * len(self.right))
        widths = [max(len(r[k]) for r in rows) for k in range(len(rows[0]))]
        lines = [f"{self.title} of {self.descriptor}", f"({self.order})"]
        for r in rows:
            lines.append("  ".join(s.rjust(wd) for s, wd in zip(r, widths)).rstrip())
        return "\n".join(lines) + "\n"


def _entries(coeffs: Sequence[np.ndarray], order: Sequence[int]) -> list[list[list[int]]]:
    out = []
    for i in order:
        row = []
        for j in order:
            c = [int(C[i, j]) for C in coeffs]
            while c and c[-1] == 0:
                c.pop()
            row.append(c)
        out.append(row)
    return out


def _marginals(C1: np.ndarray, dims: np.ndarray) -> tuple[list[int], list[int]]:
    """Dimensions of projectives: along rows and along columns."""
    return [int(x) for x in C1 @ dims], [int(x) for x in dims @ C1]


def _table(
    g: CoxeterGroup,
    title: str,
    coeffs: Sequence[np.ndarray],
    dims: np.ndarray,
    name: str | None,
    with_simp: bool,
    poly: bool,
) -> MatrixTable:
    order = g.typeA_order()
    C1 = np.sum(coeffs, axis=0)
    rp, bp = _marginals(C1, dims)
    d = [int(dims[i]) for i in order]
    right, bottom = {}, {}
    if with_simp:
        right["Simp."] = d
    right["Proj."] = [rp[i] for i in order]
    if with_simp:
        bottom["Simp."] = d
    bottom["Proj."] = [bp[i] for i in order]
    return MatrixTable(
        title,
        name or str(g.descriptor),
        order_note(g),
        [g.label(i) for i in order],
        _entries(coeffs, order),
        right,
        bottom,
        poly,
    )


MONOIDS = ("M", "Mw0", "M1")


def _check_full_m_size(m: TransformationMonoid, slow: bool, modular: bool) -> None:
    n = len(m)
    if n > RC.FULL_M_DEFAULT_CAP and not slow:
        raise SizeError(f"the biHecke monoid has {n} elements, above the default limit {RC.FULL_M_DEFAULT_CAP}; use --slow")
    if n > RC.EXACT_CAP and not modular:
        raise SizeError(f"the biHecke monoid has {n} elements, above the exact limit {RC.EXACT_CAP}; use --modular")


def graded_cartan_of(
    g: CoxeterGroup,
    which: str = "M",
    m: TransformationMonoid | None = None,
    slow: bool = False,
    modular: bool = False,
    seed: int = 0,
    progress: Callable[[str], None] | None = None,
) -> tuple[RC.GradedMatrix, np.ndarray]:
    """q-Cartan matrix (id order) and the simple dimensions for ``M``, ``Mw0`` or ``M1``."""
    m = m if m is not None else bihecke(g, progress=progress)
    if which == "M":
        _check_full_m_size(m, slow, modular)
        simples = simple_modules(g)
        dims = np.array([s.dim for s in simples], dtype=np.int64)
        return RC.graded_cartan(m, simples, labels=g.labels, modular=modular, seed=seed, progress=progress), dims
    if which not in ("Mw0", "M1"):
        raise ValueError(f"unknown monoid {which!r}; expected one of {', '.join(MONOIDS)}")
    fixed = "w0" if which == "Mw0" else "1"
    m0 = borel(g, fixed, m=m)
    if len(m0) > RC.EXACT_CAP and not modular:
        raise SizeError(f"{which} has {len(m0)} elements, above the exact limit {RC.EXACT_CAP}; use --modular")
    G = RC.graded_cartan(m0, RC.borel_simple_reps(g, m0, fixed), labels=g.labels, modular=modular, seed=seed, progress=progress)
    return G, np.ones(g.size, dtype=np.int64)


def qcartan_table(g: CoxeterGroup, which: str = "M", name: str | None = None, **kw) -> MatrixTable:
    G, dims = graded_cartan_of(g, which, **kw)
    return _table(g, f"q-Cartan matrix of {which}", G.coeffs, dims, name, which == "M", True)


def cartan_table(g: CoxeterGroup, which: str = "M", name: str | None = None, m: TransformationMonoid | None = None, **kw) -> MatrixTable:
    """Ungraded Cartan matrix; the Borel submonoids use the lfix/rfix count."""
    if which == "M1":
        C, dims = RC.cartan_m1(g, borel(g, "1", m=m)), np.ones(g.size, dtype=np.int64)
    elif which == "Mw0":
        C, dims = RC.cartan_mw0(g, borel(g, "1", m=m)), np.ones(g.size, dtype=np.int64)
    else:
        G, dims = graded_cartan_of(g, which, m=m, **kw)
        C = G.at_one()
    return _table(g, f"Cartan matrix of {which}", [C], dims, name, which == "M", False)


def decomposition_table(g: CoxeterGroup, name: str | None = None) -> MatrixTable:
    """Rows: simples of ``M``; columns: simples of ``M_{w0}``; "Simp." = row sums."""
    D = decomposition_matrix(g)
    order = g.typeA_order()
    return MatrixTable(
        "Decomposition matrix of M over Mw0",
        name or str(g.descriptor),
        order_note(g),
        [g.label(i) for i in order],
        _entries([D], order),
        {"Simp.": [int(D[i].sum()) for i in order]},
        {},
    )
