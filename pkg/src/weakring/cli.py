"""Command-line front end.

Exit codes: 0 success, 1 theorem violation, 2 usage or parse error, 3 budget.
"""

from __future__ import annotations

import argparse
import json
import re
import sys

from . import elements as el
from . import matgf
from . import predicates as pr
from . import structure as st
from . import theorems as th
from .errors import BudgetExceeded, InvalidExpr, OrderOverflow, StructuredUnsupported, WeakRingError
from .expr import parse
from .rings import Element, MatrixRing, ZnRing, build

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _build(text: str):
    try:
        return build(text)
    except (InvalidExpr, OrderOverflow, ValueError) as exc:
        raise UsageError(str(exc)) from exc


# -- element arguments -----------------------------------------------------

_GF_PREFIX = re.compile(r"^\s*gf\s*\(\s*(\d+)\s*\)\s*")


def parse_element(R, text: str) -> int:
    """An element index, or a matrix literal for M(k,Zn(n))."""
    text = text.strip()
    if re.fullmatch(r"\d+", text):
        i = int(text)
        if i >= R.order:
            raise UsageError(f"element index {i} out of range for {R.label} (order {R.order})")
        return i
    if not (isinstance(R, MatrixRing) and isinstance(R.base, ZnRing)):
        raise UsageError(f"cannot read element {text!r} of {R.label}")
    n, k = R.base.order, R.k
    m = _GF_PREFIX.match(text)
    if m:
        if int(m.group(1)) != n:
            raise UsageError(f"matrix over gf({m.group(1)}) given for {R.label}")
        text = text[m.end():]
    try:
        rows = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"bad matrix literal {text!r}") from exc
    if not (isinstance(rows, list) and len(rows) == k
            and all(isinstance(r, list) and len(r) == k and all(isinstance(x, int) for x in r) for r in rows)):
        raise UsageError(f"expected a {k}x{k} integer matrix")
    idx = 0
    for x in (x for r in rows for x in r):
        idx = idx * n + x % n
    return idx


def _show(R, x) -> str:
    if isinstance(x, matgf.MatrixGF):
        return matgf.format_matrix(x, with_field=False)
    i = x.index if isinstance(x, Element) else int(x)
    return R.format(i) if isinstance(R, MatrixRing) else str(i)


# -- commands --------------------------------------------------------------

def cmd_classify(args) -> int:
    R = _build(args.expr)
    rep = pr.classify(R)
    print(rep.to_json() if args.json else rep.render())
    return EXIT_OK


def cmd_decompose(args) -> int:
    R = _build(args.expr)
    a = Element(R, parse_element(R, args.element))
    decs = el.wnc_decompositions(a, "all" if args.all else "first")
    if args.json:
        print(json.dumps([{"sign": d.sign, "b": _show(R, d.nilpotent), "nilpotency_index": d.nilpotency_index,
                           "e": _show(R, d.idempotent)} for d in decs]))
        return EXIT_OK
    if not decs:
        print("none")
    for d in decs:
        print(f"- sign={d.sign} b={_show(R, d.nilpotent)} e={_show(R, d.idempotent)}")
    return EXIT_OK


def _listing(args, kind: str, members) -> int:
    R = _build(args.expr) if isinstance(args.expr, str) else args.expr
    members = [int(i) for i in members]
    if args.json:
        print(json.dumps({"ring": R.label, "kind": kind, "members": members, "size": len(members)}))
    else:
        print("{" + ",".join(str(i) for i in members) + "}")
        print(f"size={len(members)}")
    return EXIT_OK


def cmd_radical(args) -> int:
    R = _build(args.expr)
    st.require_scannable(R)
    args.expr = R
    return _listing(args, "radical", st.jacobson_radical(R).members)


def cmd_center(args) -> int:
    R = _build(args.expr)
    st.require_scannable(R)
    args.expr = R
    return _listing(args, "center", st.center(R).members)


def cmd_idempotents(args) -> int:
    R = _build(args.expr)
    args.expr = R
    return _listing(args, "idempotents", el._idempotents_of(R))


def load_catalog(path: str) -> list:
    """JSON array of {"label", "expr"}; labels unique, expressions parse and build."""
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read catalog {path}: {exc}") from exc
    if not isinstance(data, list):
        raise UsageError("catalog must be a JSON array")
    out, seen = [], set()
    for entry in data:
        if not (isinstance(entry, dict) and isinstance(entry.get("label"), str) and isinstance(entry.get("expr"), str)):
            raise UsageError(f"bad catalog entry {entry!r}")
        if entry["label"] in seen:
            raise UsageError(f"duplicate catalog label {entry['label']!r}")
        seen.add(entry["label"])
        try:
            str(parse(entry["expr"]))
        except InvalidExpr as exc:
            raise UsageError(f"{entry['label']}: {exc}") from exc
        _build(entry["expr"])
        out.append((entry["label"], entry["expr"]))
    return out


def cmd_verify(args) -> int:
    catalog = load_catalog(args.catalog) if args.catalog else None
    try:
        results = th.run_all(catalog, checks=args.check, workers=args.workers)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if args.json:
        print(th.results_to_json(results, timings=args.timings))
    else:
        for r in results:
            tail = r.reason if r.verdict == th.SKIPPED else (json.dumps(r.witness) if r.witness is not None else "")
            timing = f" [{r.runtime:.2f}s]" if args.timings else ""
            print(f"{r.verdict:<9} {r.check:<12} {r.ring}{timing}  {tail}".rstrip())
        s = th.summarize(results)
        print(f"summary: {len(results)} results, {s['confirmed']} confirmed, "
              f"{s['violated']} violated, {s['skipped']} skipped")
    return EXIT_VIOLATION if any(r.verdict == th.VIOLATED for r in results) else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="weakring", description="Weakly nil-clean finite rings")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("classify", help="all predicate flags and structural counts")
    c.add_argument("expr")
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_classify)

    d = sub.add_parser("decompose", help="decompositions a = b + e or b - e")
    d.add_argument("expr")
    d.add_argument("element", help="element index, or a matrix literal such as 'gf(3) [[1,0],[0,2]]'")
    d.add_argument("--all", action="store_true", help="list every decomposition, not just the first")
    d.add_argument("--json", action="store_true")
    d.set_defaults(func=cmd_decompose)

    v = sub.add_parser("verify", help="run the theorem checks")
    src = v.add_mutually_exclusive_group()
    src.add_argument("--default", action="store_true", help="use the built-in catalog (the default)")
    src.add_argument("--catalog", metavar="FILE", help='JSON array of {"label": ..., "expr": ...}')
    v.add_argument("--check", nargs="+", metavar="ID", choices=th.CHECK_IDS, help="restrict to these checks")
    v.add_argument("--json", action="store_true")
    v.add_argument("--workers", type=int, default=1)
    v.add_argument("--timings", action="store_true", help="include per-check runtimes")
    v.set_defaults(func=cmd_verify)

    for name, fn, what in (("radical", cmd_radical, "Jacobson radical"),
                           ("center", cmd_center, "center"),
                           ("idempotents", cmd_idempotents, "idempotents")):
        s = sub.add_parser(name, help=f"list the {what}")
        s.add_argument("expr")
        s.add_argument("--json", action="store_true")
        s.set_defaults(func=fn)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "workers", 1) < 1:
        print("error: --workers must be positive", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (BudgetExceeded, StructuredUnsupported) as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except WeakRingError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
