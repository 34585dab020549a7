"""Command line front end: ``bihecke <subcommand> <group> [options]``.

Results go to standard output and progress messages to standard error.
Exit status is 0 on success, 1 when a computation fails or a check does not
hold, and 2 on a usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import re
import sys
from pathlib import Path

import numpy as np

from . import blocks as B
from .checks import Context, run_checks
from .coxeter import CoxeterGroup, SizeError, build_group
from .fmonoid import (
    DEFAULT_MAX_MONOID,
    TransformationMonoid,
    _monoid_cache,
    bihecke,
    borel,
    green,
    load_monoid,
    save_monoid,
)
from .posets import Poset
from .reptheory import tables as T
from .reptheory.cartan import InconsistentPrimes, SingularSystem
from .reptheory.modules import dim_simple, simple_basis

CACHE_ENV = "BIHECKE_CACHE_DIR"
CHECK_MONOID_CAP = 40000

TABLE1_DEFAULT = ["A1", "A2", "A3", "A4", "B2", "B3", "G2", "A1xA1"] + [f"I2({p})" for p in range(3, 11)]


class UsageError(Exception):
    pass


# ------------------------------------------------------------ plumbing
class Session:
    """Parsed options plus the group and (cached) monoid they refer to."""

    def __init__(self, args: argparse.Namespace):
        self.args = args
        self.fmt = args.format

    def log(self, msg: str) -> None:
        if self.args.progress:
            print(msg, file=sys.stderr, flush=True)

    def group(self, text: str) -> CoxeterGroup:
        try:
            return build_group(text)
        except SizeError:
            raise
        except ValueError as e:
            raise UsageError(str(e)) from None

    def element(self, g: CoxeterGroup, text: str) -> int:
        try:
            return g.element(text)
        except (ValueError, IndexError, KeyError) as e:
            raise UsageError(f"unknown element {text!r} of {g.descriptor}: {e}") from None

    def cache_path(self, g: CoxeterGroup) -> Path | None:
        d = self.args.cache_dir
        if not d:
            return None
        safe = re.sub(r"[^A-Za-z0-9]+", "_", str(g.descriptor)).strip("_")
        return Path(d) / f"{safe}.bhm"

    def monoid(self, g: CoxeterGroup) -> TransformationMonoid:
        cache = _monoid_cache(g)
        if "M" in cache:
            return cache["M"]
        path = self.cache_path(g)
        if path is not None and path.exists():
            self.log(f"loading {path}")
            cache["M"] = load_monoid(path, str(g.descriptor), g.size)
            return cache["M"]
        cap = self.args.max_elements or DEFAULT_MAX_MONOID
        m = bihecke(g, max_elements=cap, threads=self.args.threads, progress=lambda n: self.log(f"closure: {n} elements"))
        if path is not None:
            save_monoid(m, path, str(g.descriptor), g.size)
            self.log(f"saved {path}")
        return m

    def require_format(self, *allowed: str) -> None:
        if self.fmt not in allowed:
            raise UsageError(f"--format {self.fmt} is not available here (choose from {', '.join(allowed)})")


def _csv(rows) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return buf.getvalue()


def _json(obj) -> str:
    return json.dumps(obj, indent=1) + "\n"


def _aligned(rows: list[list[str]]) -> str:
    widths = [max(len(r[k]) for r in rows) for k in range(len(rows[0]))]
    return "".join("  ".join(s.ljust(w) for s, w in zip(r, widths)).rstrip() + "\n" for r in rows)


def _set(s) -> str:
    return "{" + ",".join(map(str, sorted(s))) + "}"


# ---------------------------------------------------------- subcommands
def cmd_group(s: Session, a) -> str:
    g = s.group(a.group)
    if s.fmt == "dot":
        if a.order == "B":
            le = g.bruhat_lower.T
        else:
            le = np.stack([g.below_R(w) if a.order == "R" else g.below_L(w) for w in range(g.size)], axis=1)
        return Poset.from_matrix(list(range(g.size)), le).to_dot(name=f"{a.order}_{g.descriptor}", label=g.label)
    rows = []
    for w in range(g.size):
        rows.append(
            {
                "id": w,
                "label": g.label(w),
                "length": int(g.length[w]),
                "word": g.word(w),
                "descents_right": sorted(g.descents_right(w)),
                "descents_left": sorted(g.descents_left(w)),
                "action": [int(x) for x in g.perms[w]],
            }
        )
    if s.fmt == "json":
        return _json({"group": str(g.descriptor), "order": g.size, "rank": g.rank, "w0": g.label(g.w0), "elements": rows})
    head = ["id", "label", "length", "word", "descents_right", "descents_left"]
    body = [[str(r["id"]), r["label"], str(r["length"]), ".".join(map(str, r["word"])) or "-", _set(r["descents_right"]), _set(r["descents_left"])] for r in rows]
    if s.fmt == "csv":
        return _csv([head] + body)
    return f"{g.descriptor}: order {g.size}, rank {g.rank}, w0 = {g.label(g.w0)}\n" + _aligned([head] + body)


def cmd_monoid(s: Session, a) -> str:
    s.require_format("human", "json")
    g = s.group(a.group)
    m = s.monoid(g)
    m1, mw0 = borel(g, "1", m=m), borel(g, "w0", m=m)
    summary = {"group": str(g.descriptor), "W": g.size, "M": len(m), "M1": len(m1), "Mw0": len(mw0), "idempotents": len(m.idempotents)}
    if not a.no_green:
        gs = green(m)
        census: dict[int, int] = {}
        for size in gs.class_sizes("J").values():
            census[size] = census.get(size, 0) + 1
        summary["J_classes"] = len(gs.class_sizes("J"))
        summary["regular_J_classes"] = gs.n_regular
        summary["J_class_census"] = {str(k): v for k, v in sorted(census.items())}
    if s.fmt == "json":
        return _json(summary)
    return "".join(f"{k}: {v}\n" for k, v in summary.items())


def cmd_blocks(s: Session, a) -> str:
    g = s.group(a.group)
    ws = [s.element(g, e) for e in a.elements] if a.elements else list(range(g.size))
    data = []
    for w in ws:
        bl = B.reduced_blocks(g, w) if a.reduced else B.all_blocks(g, w)
        data.append((w, bl))
    if s.fmt == "json":
        return _json({"group": str(g.descriptor), "blocks": {g.label(w): [b.to_json(g) for b in bl] for w, bl in data}})
    head = ["w", "K", "J", "cutting_point", "reduced", "trivial"]
    body = [[g.label(w), _set(b.K), _set(b.J), g.label(b.cutting_point), str(b.reduced).lower(), str(b.trivial).lower()] for w, bl in data for b in bl]
    if s.fmt == "csv":
        return _csv([head] + body)
    s.require_format("human")
    return _aligned([head] + body)


def cmd_cutting_poset(s: Session, a) -> str:
    g = s.group(a.group)
    cp = B.cutting_poset(g)
    covers = sorted(cp.poset.covers, key=lambda e: (int(g.length[e[1]]), g.label(e[1]), g.label(e[0])))
    if s.fmt == "dot":
        return cp.to_dot()
    if s.fmt == "json":
        return _json({"group": str(g.descriptor), "nodes": g.labels, "covers": [[g.label(u), g.label(w)] for u, w in covers]})
    if s.fmt == "csv":
        return _csv([["lower", "upper"]] + [[g.label(u), g.label(w)] for u, w in covers])
    return "".join(f"{g.label(u)} < {g.label(w)}\n" for u, w in covers)


def cmd_simples(s: Session, a) -> str:
    g = s.group(a.group)
    rows = [(g.label(w), dim_simple(g, w), [g.label(u) for u in simple_basis(g, w)]) for w in g.typeA_order()]
    if s.fmt == "json":
        return _json({"group": str(g.descriptor), "order": T.order_note(g), "simples": [{"w": w, "dim": d, "basis": b} for w, d, b in rows]})
    head = ["w", "dim", "basis"]
    body = [[w, str(d), " ".join(b)] for w, d, b in rows]
    if s.fmt == "csv":
        return _csv([head] + body)
    s.require_format("human")
    return _aligned([head] + body)


def _matrix_kw(s: Session, a) -> dict:
    return {"slow": a.slow, "modular": a.modular, "seed": a.seed, "progress": s.log}


def cmd_cartan(s: Session, a) -> str:
    s.require_format("human", "csv", "json")
    g = s.group(a.group)
    m = s.monoid(g)
    kw = _matrix_kw(s, a) if a.monoid == "M" else {}
    return T.cartan_table(g, a.monoid, name=a.group, m=m, **kw).render(s.fmt)


def cmd_qcartan(s: Session, a) -> str:
    s.require_format("human", "csv", "json")
    g = s.group(a.group)
    m = s.monoid(g)
    return T.qcartan_table(g, a.monoid, name=a.group, m=m, **_matrix_kw(s, a)).render(s.fmt)


def cmd_decomposition(s: Session, a) -> str:
    s.require_format("human", "csv", "json")
    g = s.group(a.group)
    return T.decomposition_table(g, name=a.group).render(s.fmt)


def cmd_table1(s: Session, a) -> str:
    s.require_format("human", "csv", "json")
    rows = []
    for text in a.groups or TABLE1_DEFAULT:
        g = s.group(text)
        s.log(f"table1: {text}")
        rows.append(T.table1_row(g, name=text, m=s.monoid(g)))
    if s.fmt == "json":
        return _json([r.to_json() for r in rows])
    if s.fmt == "csv":
        return _csv([["group", "W", "M_w0", "M", "dims", "sum"]] + [[r.name, r.order, r.n_mw0, r.n_m, T.format_multiset(r.dims), r.total] for r in rows])
    return "".join(r.format() + "\n" for r in rows)


def cmd_check(s: Session, a) -> str:
    s.require_format("human", "json")
    g = s.group(a.group)
    if s.args.cache_dir:
        s.monoid(g)
    ctx = Context(
        g,
        seed=a.seed,
        samples=a.samples,
        exhaustive_limit=a.exhaustive_limit,
        monoid_cap=a.max_elements or CHECK_MONOID_CAP,
        slow=a.slow,
        threads=a.threads,
        progress=s.log,
    )
    results = run_checks(ctx, a.only or None)
    if not results:
        raise UsageError(f"no check matches {a.only}")
    s.failed = any(r.status == "fail" for r in results)
    if s.fmt == "json":
        return _json([{"name": r.name, "status": r.status, "detail": r.detail, "seconds": round(r.seconds, 3)} for r in results])
    lines = []
    for r in results:
        extra = f"  {r.detail}" if r.detail else ""
        lines.append(f"{r.status.upper():4}  {r.name}{extra}")
    counts = {k: sum(r.status == k for r in results) for k in ("pass", "fail", "skip")}
    lines.append(f"{counts['pass']} passed, {counts['fail']} failed, {counts['skip']} skipped")
    return "\n".join(lines) + "\n"


# --------------------------------------------------------------- parser
def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["human", "csv", "json", "dot"], default="human", help="output format (default: human)")
    common.add_argument("--max-elements", type=int, default=None, metavar="N", help="cap on the number of monoid elements")
    common.add_argument("--slow", action="store_true", help="allow the full biHecke q-Cartan above 200 elements")
    common.add_argument("--modular", action="store_true", help="linear algebra modulo three random primes")
    common.add_argument("--threads", type=int, default=1, metavar="N", help="worker threads for the monoid closure")
    common.add_argument("--cache-dir", default=os.environ.get(CACHE_ENV), metavar="DIR", help=f"monoid cache directory (default: ${CACHE_ENV})")
    common.add_argument("--seed", type=int, default=0, help="seed for sampling and random primes")
    common.add_argument("--progress", action="store_true", help="report progress on standard error")

    p = argparse.ArgumentParser(prog="bihecke", description="Exact computations with biHecke monoids of finite Coxeter groups.")
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name, fn, help_, group=True):
        sp = sub.add_parser(name, parents=[common], help=help_)
        if group:
            sp.add_argument("group", help='group descriptor such as "A3", "B2", "I2(5)", "G2" or "A1xA1"')
        sp.set_defaults(fn=fn)
        return sp

    sp = add("group", cmd_group, "list the elements of W (dot: Hasse diagram of an order)")
    sp.add_argument("--order", choices=["R", "L", "B"], default="B", help="order drawn with --format dot")
    sp = add("monoid", cmd_monoid, "sizes of M, M_1, M_w0 and the J-class census")
    sp.add_argument("--no-green", action="store_true", help="skip Green's relations")
    sp = add("blocks", cmd_blocks, "blocks (K, J) of elements of W")
    sp.add_argument("elements", nargs="*", help="element labels (default: all)")
    sp.add_argument("--reduced", action="store_true", help="only reduced blocks")
    add("cutting-poset", cmd_cutting_poset, "covers of the cutting poset")
    add("simples", cmd_simples, "dimensions and bases of the simple modules")
    for name, fn, what in (("cartan", cmd_cartan, "Cartan matrix"), ("qcartan", cmd_qcartan, "q-Cartan matrix")):
        sp = add(name, fn, f"{what} of M, M_1 or M_w0")
        sp.add_argument("--monoid", choices=list(T.MONOIDS), default="M", help="which monoid (default: M)")
    add("decomposition", cmd_decomposition, "decomposition matrix of M over M_w0")
    sp = add("table1", cmd_table1, "rows |W| |M_w0| |M| dims sum", group=False)
    sp.add_argument("groups", nargs="*", help="group descriptors (default: the standard list)")
    sp = add("check", cmd_check, "run the structural checks")
    sp.add_argument("--only", nargs="*", metavar="NAME", help="run only checks with these names or module prefixes")
    sp.add_argument("--samples", type=int, default=200, help="random elements for groups above the exhaustive limit")
    sp.add_argument("--exhaustive-limit", type=int, default=48, metavar="N", help="largest |W| checked exhaustively")
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    if args.threads < 1:
        parser.print_usage(sys.stderr)
        print("bihecke: error: --threads must be at least 1", file=sys.stderr)
        return 2
    s = Session(args)
    s.failed = False
    try:
        out = args.fn(s, args)
    except UsageError as e:
        parser.print_usage(sys.stderr)
        print(f"bihecke: error: {e}", file=sys.stderr)
        return 2
    except (SizeError, ArithmeticError, SingularSystem, InconsistentPrimes, OSError, ValueError) as e:
        print(f"bihecke: error: {e}", file=sys.stderr)
        return 1
    sys.stdout.write(out)
    sys.stdout.flush()
    return 1 if s.failed else 0


if __name__ == "__main__":
    sys.exit(main())
