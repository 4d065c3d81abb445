"""Command-line front door: ``treeramsey run`` for suites and
``treeramsey query`` for single instances.

Exit codes: 0 success, 1 verification failure or operation error,
2 usage or parse error, 3 budget exceeded.
"""

from __future__ import annotations

import argparse
import sys

from . import jsonio
from .coloring import find_homogeneous_copy, tree_ramsey_threshold
from .enumkit import check_enumeration
from .forcing import check_sufficiency
from .hierarchy import select_monochromatic_cover
from .scatter import find_blocking_set, is_group_scattered, is_scattered
from .splitkit import cross_product, homogeneity_witness, refine
from .suites import SUITES, UnknownSuite, run_suite
from .treecore import BudgetExceeded

OK, FAIL, USAGE, BUDGET = 0, 1, 2, 3


def _emit(obj) -> None:
    sys.stdout.write(jsonio.dumps(obj) + "\n")


def cmd_run(args) -> int:
    try:
        rep = run_suite(args.suite, args.budget_ms, args.seed, keep_records=args.verbose)
    except UnknownSuite:
        _emit({"error": "unknown-suite", "suite": args.suite, "known": sorted(SUITES)})
        return USAGE
    for rec in rep.records:
        _emit({**rec, "suite": rep.suite, "seed": rep.seed})
    _emit(rep.summary(timing=args.timing))
    return {"ok": OK, "fail": FAIL, "budget-exceeded": BUDGET}[rep.status]


def cmd_suites(args) -> int:
    for name, crits in sorted(SUITES.items()):
        _emit({"suite": name, "criteria": [c.number for c in crits],
               "budget_ms": int(1000 * sum(c.limit_s for c in crits))})
    return OK


# ---------------------------------------------------------------------------
# queries; each takes the parsed document and the argparse namespace

def q_ramsey_threshold(doc, a):
    res = tree_ramsey_threshold(a.height, a.k, a.budget_ms, a.depth or 8)
    return {"height": res.height, "k": res.k, "threshold": res.threshold,
            "methods": [list(m) for m in res.method],
            "counterexamples": [{"depth": n, "coloring": jsonio.pair_coloring_to_json(c)}
                                for n, c in res.counterexamples]}


def q_find_copy(doc, a):
    col = jsonio.parse_pair_coloring(doc)
    hit = find_homogeneous_copy(col, a.height)
    if hit is None:
        return {"copy": None}
    tree, c = hit
    return {"copy": list(tree), "color": c}


def q_refine(doc, a):
    f = jsonio.parse_split(doc)
    g = refine(f)
    return {"split": jsonio.split_to_json(g), "fixed_point": g == f}


def q_cross(doc, a):
    f0 = jsonio.parse_split(doc.get("f0") if isinstance(doc, dict) else None, "f0")
    f1 = jsonio.parse_split(doc.get("f1"), "f1")
    return {"split": jsonio.split_to_json(cross_product(f0, f1))}


def q_witness(doc, a):
    f = jsonio.parse_split(jsonio._need(doc, "split", "document"), "split")
    sub = jsonio.parse_tree(jsonio._need(doc, "subtree", "document"), "subtree")
    h = homogeneity_witness(sub, f)
    return {"witness": None if h is None else jsonio.homomorphism_to_json(h, f.k)}


def q_blocking(doc, a):
    fam = jsonio.parse_family(doc)
    U = find_blocking_set(fam, a.l)
    return {"blocking_set": None if U is None else sorted(U, key=lambda x: (len(x), x))}


def q_scattered(doc, a):
    fam = jsonio.parse_family(doc)
    if a.k is not None:
        return {"group_scattered": is_group_scattered(fam, a.k, a.l), "k": a.k, "l": a.l}
    return {"scattered": is_scattered(fam, a.l), "l": a.l}


def q_select_cover(doc, a):
    h = jsonio.parse_hierarchy(doc)
    E = jsonio._node_list(doc.get("E", list(h.B)), "E")
    g = doc.get("g")
    if not isinstance(g, dict):
        raise jsonio.ParseError("g", "expected an object mapping nodes to colors")
    g = {jsonio._node(n, "g"): jsonio._int(c, f"g[{n!r}]") for n, c in g.items()}
    c, tree, sub = select_monochromatic_cover(h, E, g)
    return {"color": c, "tree": list(tree), "subcover": list(sub)}


def q_check_enum(doc, a):
    trace = jsonio.parse_trace(jsonio._need(doc, "trace", "document"))
    target = jsonio.parse_target(jsonio._need(doc, "target", "document"))
    ok, why = check_enumeration(trace, target)
    return {"ok": ok, "failure": None if why is None else list(why)}


def q_sufficiency(doc, a):
    q = jsonio.parse_condition(doc)
    ok, g = check_sufficiency(q)
    return {"sufficient": ok,
            "counterexample": None if g is None else ["".join(map(str, z)) for z in g.assignment]}


QUERIES = {
    "ramsey-threshold": (q_ramsey_threshold, False),
    "find-copy": (q_find_copy, True),
    "refine": (q_refine, True),
    "cross": (q_cross, True),
    "witness": (q_witness, True),
    "blocking": (q_blocking, True),
    "scattered": (q_scattered, True),
    "select-cover": (q_select_cover, True),
    "check-enum": (q_check_enum, True),
    "sufficiency": (q_sufficiency, True),
}


def cmd_query(args) -> int:
    fn, needs_file = QUERIES[args.subcommand]
    doc = None
    try:
        if needs_file:
            if not args.file:
                _emit({"error": "usage", "message": f"{args.subcommand} needs an instance file"})
                return USAGE
            doc = jsonio.load(args.file)
        out = fn(doc, args)
    except jsonio.ParseError as exc:
        _emit({"error": "parse-error", "where": exc.where, "message": str(exc)})
        return USAGE
    except OSError as exc:
        _emit({"error": "parse-error", "where": args.file, "message": str(exc)})
        return USAGE
    except BudgetExceeded as exc:
        _emit({"error": "budget-exceeded", "message": str(exc), "lower_bound": exc.lower_bound})
        return BUDGET
    except ValueError as exc:
        _emit({"error": getattr(exc, "code", type(exc).__name__), "message": str(exc)})
        return FAIL
    _emit(out)
    return OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="treeramsey", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    r = sub.add_parser("run", help="run a verification suite")
    r.add_argument("--suite", required=True)
    r.add_argument("--budget-ms", type=int, default=None)
    r.add_argument("--seed", type=int, default=0)
    r.add_argument("--verbose", action="store_true", help="one record per checked instance")
    r.add_argument("--timing", action="store_true", help="include wall time (breaks byte-stability)")
    r.set_defaults(func=cmd_run)

    s = sub.add_parser("suites", help="list registered suites")
    s.set_defaults(func=cmd_suites)

    q = sub.add_parser("query", help="run one operation on an instance file")
    q.add_argument("subcommand", choices=sorted(QUERIES))
    q.add_argument("file", nargs="?")
    q.add_argument("--l", type=int, default=1)
    q.add_argument("--k", type=int, default=None)
    q.add_argument("--height", type=int, default=2)
    q.add_argument("--depth", type=int, default=None, help="search depth cap for ramsey-threshold")
    q.add_argument("--budget-ms", type=int, default=None)
    q.add_argument("--seed", type=int, default=0)
    q.set_defaults(func=cmd_query)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "query" and args.subcommand == "ramsey-threshold" and args.k is None:
        args.k = 2
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
