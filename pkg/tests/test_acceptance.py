"""Acceptance suite.  Run with ``pytest tests/test_acceptance.py -s`` to see
one PASS/FAIL line per criterion."""

import json
import time
from pathlib import Path

from bihecke import build_group
from bihecke.blocks import cutting_poset
from bihecke.checks import Context, run_checks
from bihecke.fmonoid import bihecke, borel_size
from bihecke.reptheory import cartan as RC
from bihecke.reptheory import tables as T

GOLDEN = Path(__file__).parent / "golden"

# group, |W|, |M_w0|, |M|, simple dimensions (None: elided), sum
TABLE1 = [
    ("A1", 2, 2, 3, "1^2", 2),
    ("A2", 6, 8, 23, "1^4 2^2", 8),
    ("A3", 24, 71, 477, "1^8 2^4 3^4 4^6 5^2", 62),
    ("B2", 8, 14, 49, "1^4 2^2 3^2", 14),
    ("B3", 48, 498, 5455, "1^8 2^4 3^4 4^6 5^7 6^4 7^4 8^4 9^1 10^2 11^2 12^2", 246),
    ("G2", 12, 32, 153, "1^4 2^2 3^2 4^2 5^2", 32),
    ("A1xA1", 4, 4, 9, "1^4", 4),
    ("A4", 120, 1646, 31103, None, 770),
]
A4_HEAD = "1^16 2^10 3^8 4^16 5^16 6^6"
A4_TAIL = "20^6"


def i2_row(p):
    dims = "1^4 " + " ".join(f"{k}^2" for k in range(2, p))
    return (f"I2({p})", 2 * p, p * p - p + 2, (2 * p**3 + 4 * p) // 3 + 1, dims, p * p - p + 2)


TABLE1 += [i2_row(p) for p in range(3, 11)]


def report(n, title, failures, seconds):
    status = "FAIL" if failures else "PASS"
    print(f"\n{status}  {n}. {title} [{seconds:.1f} s]")
    for f in failures:
        print(f"      {f}")
    assert not failures, "; ".join(failures)


def test_1_table1_statistics():
    t0 = time.perf_counter()
    failures = []
    for name, order, n_mw0, n_m, dims, total in TABLE1:
        start = time.perf_counter()
        g = build_group(name)
        row = T.table1_row(g, name=name)
        spent = time.perf_counter() - start
        got = T.format_multiset(row.dims)
        if (row.order, row.n_mw0, row.n_m, row.total) != (order, n_mw0, n_m, total):
            failures.append(f"{name}: got {row.format()}")
        if dims is None:
            if not (got.startswith(A4_HEAD + " ") and got.endswith(" " + A4_TAIL)):
                failures.append(f"{name}: dimensions {got}")
        elif got != dims:
            failures.append(f"{name}: dimensions {got}, expected {dims}")
        budget = 60.0 if name in ("A4", "B3") else 1.0
        if spent > budget:
            failures.append(f"{name}: took {spent:.1f} s, budget {budget:.0f} s")
    report(1, "Table 1 statistics", failures, time.perf_counter() - t0)


def test_2_dihedral_closed_forms():
    t0 = time.perf_counter()
    failures = []
    for p in range(3, 13):
        g = build_group(f"I2({p})")
        m = bihecke(g)
        if 3 * len(m) != 2 * p**3 + 4 * p + 3:
            failures.append(f"|M(I2({p}))| = {len(m)}")
        if borel_size(g, m, "w0") != p * p - p + 2:
            failures.append(f"|M_w0(I2({p}))| = {borel_size(g, m, 'w0')}")
    spent = time.perf_counter() - t0
    if spent > 5:
        failures.append(f"took {spent:.1f} s, budget 5 s")
    report(2, "closed forms for I2(p), p = 3..12", failures, spent)


_A3_FULL = {}


def a3_full_qcartan():
    if "table" not in _A3_FULL:
        _A3_FULL["table"] = T.qcartan_table(build_group("A3"), "M", slow=True, modular=True)
    return _A3_FULL["table"]


def _compare(table, name):
    gold = json.loads((GOLDEN / f"{name}.json").read_text())
    got = table.to_json()
    return [f"{name}: {k} differs" for k in gold if got.get(k) != gold[k]]


def test_3_golden_matrices():
    t0 = time.perf_counter()
    failures = []
    for text in ("A1", "A2", "A3"):
        g = build_group(text)
        failures += _compare(T.qcartan_table(g, "Mw0"), f"cartan_mw0_{text}")
        failures += _compare(T.decomposition_table(g), f"decomposition_{text}")
    for text in ("A1", "A2"):
        failures += _compare(T.qcartan_table(build_group(text), "M"), f"cartan_M_{text}")
    start = time.perf_counter()
    failures += _compare(a3_full_qcartan(), "cartan_M_A3")
    if time.perf_counter() - start > 600:
        failures.append("A3 q-Cartan of M took more than 10 min")
    report(3, "golden q-Cartan and decomposition matrices", failures, time.perf_counter() - t0)


def _run(text, names, **kw):
    ctx = Context(build_group(text), **kw)
    return [f"{text} {r.name}: {r.status} {r.detail}".rstrip() for r in run_checks(ctx, names) if r.status != "pass"]


def test_4_structural_suites():
    t0 = time.perf_counter()
    failures = []
    for text in ("A3", "B2", "B3"):
        failures += _run(text, ["blocks.closure", "blocks.antimorphism"], samples=200)
    cutting = ["blocks.cutting_order", "blocks.cutting_intervals", "blocks.cutting_lattice"]
    for text in ["A2", "A3"] + [f"I2({p})" for p in range(3, 9)]:
        failures += _run(text, cutting)
    counts = [len(cutting_poset(build_group(f"A{k}")).poset.join_irreducibles()) for k in range(4)]
    if counts != [0, 1, 4, 16]:
        failures.append(f"join-irreducible counts {counts}")
    failures += _run("A3", ["blocks.matrix_blocks"])
    failures += _run("A5", ["blocks.matrix_blocks"], samples=500)
    monoid = ["fmonoid.left_order", "fmonoid.bruhat", "fmonoid.fiber_contraction", "fmonoid.images", "fmonoid.aperiodic"]
    failures += _run("A3", monoid)
    for text in ("A3", "B2"):
        failures += _run(text, ["fmonoid.e_w", "fmonoid.transversal", "reptheory.dim_simple"])
    for text in ("A2", "A3"):
        failures += _run(text, ["reptheory.whbihecke"])
    for text in ("A1", "A2", "A3"):
        failures += _run(text, ["fmonoid.m1_generators", "reptheory.m1_radical", "reptheory.lfix_rfix"])
    for text in ("A2", "A3"):
        failures += _run(text, ["reptheory.quiver"])
    g = build_group("I2(5)")
    edges = sorted((g.label(x), g.label(z)) for x, z in RC.quiver_m1(g))
    chains = sorted([("12", "1"), ("121", "12"), ("1212", "121"), ("21", "2"), ("212", "21"), ("2121", "212")])
    if edges != chains:
        failures.append(f"I2(5) quiver {edges}")
    spent = time.perf_counter() - t0
    if spent > 300:
        failures.append(f"took {spent:.0f} s, budget 300 s")
    report(4, "structural property suites", failures, spent)


def test_5_projective_2143():
    t0 = time.perf_counter()
    table = a3_full_qcartan()
    row = dict(zip(table.labels, table.entries[table.labels.index("2143")]))
    got = {lab: c for lab, c in row.items() if c}
    expected = {"2143": [1], "1243": [0, 1], "2134": [0, 1], "2341": [0, 1], "4123": [0, 1], "1234": [0, 0, 3]}
    failures = [] if got == expected else [f"[P_2143] = {got}"]
    report(5, "[P_2143] in the q-Cartan matrix of M(S4)", failures, time.perf_counter() - t0)
