"""Verification suites behind the acceptance criteria and ``treeramsey run``.

A criterion is a stream of instances plus a check that turns one instance
into one or more :class:`Record` values.  The runner maps checks over the
stream (optionally on worker threads, order preserved), enforces the time
budget, and stops early when the measured rate makes the declared instance
count impossible to reach within budget.
"""

from __future__ import annotations

import os
import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations, islice, product
from typing import Any, Callable, Iterable, Iterator

from . import generators as gen
from . import jsonio, oracles
from .coloring import (PairColoring, _pair_acceptor, find_homogeneous_copy, iter_perfect_copies,
                       pair_list, tree_ramsey_threshold)
from .enumkit import TargetSet, check_enumeration, extract_enumeration
from .forcing import (ColoringVectorClass, ForcingError, Precondition, check_positive_witness,
                      check_sufficiency, colored_on, make_condition, positive_witness,
                      predictors, product_class, root_condition, type2_parameters)
from .hierarchy import select_monochromatic_cover, validate_hierarchy
from .scatter import SetFamily, find_blocking_set, is_blocking_set, is_group_scattered, is_scattered
from .splitkit import (SplitError, allocate_triples, check_monotone, concatenate_witness,
                       coloring_from_staged_split, cross_product, diagonal_split_builder,
                       enumerate_splits, extend_homogeneous, homogeneity_witness, is_refined,
                       is_witness, project_witness, refine, split_weak_stability_verdict,
                       validate_split)
from .treecore import Antichain, BudgetExceeded, FiniteTree, full_tree_nodes, is_cover, leaves, node_key


@dataclass
class Record:
    check: str
    ok: bool
    instance: Any = None  # JSON-able value, or a zero-argument callable producing one
    note: str = ""

    def instance_json(self):
        return self.instance() if callable(self.instance) else self.instance


@dataclass
class Criterion:
    number: int
    suite: str
    title: str
    limit_s: float
    instances: Callable[[random.Random], Iterable]
    check: Callable[[Any], list]
    phases: tuple = ()  # ((label, instance count), ...) in stream order; enables projection


@dataclass
class SuiteReport:
    suite: str
    seed: int
    budget_ms: int
    instances: int = 0
    passed: int = 0
    failed: int = 0
    status: str = "ok"  # ok | fail | budget-exceeded
    counterexample: Any = None
    note: str = ""
    wall_ms: int | None = None
    records: list = field(default_factory=list)

    def summary(self, timing: bool = False) -> dict:
        out = {"record": "summary", "suite": self.suite, "seed": self.seed,
               "budget_ms": self.budget_ms, "instances": self.instances,
               "passed": self.passed, "failed": self.failed, "status": self.status,
               "counterexample": self.counterexample, "note": self.note}
        if timing:
            out["wall_ms"] = self.wall_ms
        return out


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("TREERAMSEY_THREADS", "1")))
    except ValueError:
        return 1


def _chunks(it: Iterable, size: int) -> Iterator[list]:
    it = iter(it)
    while True:
        block = list(islice(it, size))
        if not block:
            return
        yield block


# ---------------------------------------------------------------------------
# 1, 2: scatter duality and group scattering

FAMILIES = 52359  # families of 1…4 nonempty subsets of a 5-element universe


def _fam_json(fam):
    return {"members": [sorted(m) for m in fam]}


def check_scatter_duality(fam) -> list:
    family = SetFamily(fam)
    out = []
    for l in (1, 2, 3):
        scattered = is_scattered(family, l)
        U = find_blocking_set(family, l)
        ok = scattered == (U is None) and (U is None or (is_blocking_set(U, family) and len(U) <= l))
        out.append(Record("scatter-duality", ok, lambda fam=fam, l=l: {**_fam_json(fam), "l": l}))
    return out


def check_group_scatter(fam) -> list:
    family = SetFamily(fam)
    out = []
    for k in (1, 2):
        for l in (1, 2):
            grouped = is_group_scattered(family, k, l)
            flat = is_scattered(family, k * l)
            blocked = find_blocking_set(family, k * l) is not None
            ok = grouped == flat == (not blocked)
            out.append(Record("group-scatter", ok, lambda fam=fam, k=k, l=l: {**_fam_json(fam), "k": k, "l": l}))
    return out


# ---------------------------------------------------------------------------
# 3: split algebra against the raw-mapping oracle

SMALL_BASES = (
    (("",), 2),
    (("", "0", "1"), 2),
    (("",), 3),
    (("", "1", "10"), 2),
    (("", "0"), 3),
)
TARGET_SPLITS = 255 ** 4  # each of the four leaves of 2^{<3} takes any nonempty set of 8 vectors


def _split_ok(f) -> bool:
    return check_monotone(f)[0] and refine(f) == f and is_refined(f)


def split_algebra_instances(rng):
    for nodes, k in SMALL_BASES:
        yield ("small", FiniteTree(nodes), k)
    for f in enumerate_splits(FiniteTree(full_tree_nodes(3)), 2):
        yield ("split", f)
    yield ("oracle", FiniteTree(full_tree_nodes(3)), 2)


def check_split_algebra(inst) -> list:
    if inst[0] == "split":
        f = inst[1]
        return [Record("split-algebra", _split_ok(f), lambda: jsonio.split_to_json(f))]
    _, base, k = inst
    got = [f.values for f in enumerate_splits(base, k)]
    want = oracles.raw_split_oracle(base, k)
    ok = len(got) == len(set(got)) == len(want) and set(got) == want
    ok = ok and all(_split_ok(f) for f in enumerate_splits(base, k))
    return [Record("split-algebra-oracle", ok, {"tree": list(base), "k": k},
                   f"{len(got)} enumerated, {len(want)} by oracle")]


# ---------------------------------------------------------------------------
# 4: cross products

def _subsets(nodes) -> Iterator[FiniteTree]:
    ns = sorted(nodes, key=node_key)
    for r in range(len(ns) + 1):
        for c in combinations(ns, r):
            yield FiniteTree(c)


def cross_instances(rng, count: int = 1000):
    base = FiniteTree(full_tree_nodes(3))
    for _ in range(count):
        p = rng.choice((0.3, 0.6, 0.9))
        yield gen.random_split(rng, base, 2, p), gen.random_split(rng, base, 2, p)


def check_cross(pair) -> list:
    f0, f1 = pair
    inst = lambda: {"f0": jsonio.split_to_json(f0), "f1": jsonio.split_to_json(f1)}
    try:
        c = cross_product(f0, f1)
        validate_split(c.as_dict(), c.base, 4)
    except SplitError as exc:
        return [Record("cross-product", False, inst, str(exc))]
    if c.k != 4 or not is_refined(c):
        return [Record("cross-product", False, inst, "not refined")]
    for G in _subsets(c.base.nodes):
        w = homogeneity_witness(G, c)
        if w is None:
            continue
        for side, f in ((0, f0), (1, f1)):
            if not is_witness(G, f, project_witness(w, 2, side)) or homogeneity_witness(G, f) is None:
                return [Record("cross-product", False, inst, f"projection fails on {sorted(G)}")]
    return [Record("cross-product", True, inst)]


# ---------------------------------------------------------------------------
# 5: extension lemma

def extension_instances(rng, count: int = 1000):
    made = 0
    while made < count:
        depth = rng.choice((3, 4))
        f = gen.committed_split(rng, depth) if rng.random() < 0.7 else gen.random_split(rng, full_tree_nodes(depth), 2, 0.5)
        shallow = [n for n in full_tree_nodes(depth - 1)]
        if rng.random() < 0.5:
            F = FiniteTree([rng.choice(shallow)])
        else:
            roots = [n for n in full_tree_nodes(max(1, depth - 2))]
            r = rng.choice(roots)
            opts = [t for t in gen.local_height_two(r, 1) if all(len(x) < depth - 1 for x in t)]
            if not opts:
                continue
            F = rng.choice(opts)
        hF = homogeneity_witness(F, f)
        if hF is None:
            continue
        try:
            ext = extend_homogeneous(F, hF, f)
        except SplitError:
            continue
        made += 1
        yield f, F, hF, ext


def check_extension(inst) -> list:
    f, F, hF, ext = inst
    info = lambda: {"split": jsonio.split_to_json(f), "F": list(F), "B": list(ext.B)}
    hat = ext.hat
    n = 0
    for G in _subsets(hat.base.nodes):
        hG = homogeneity_witness(G, hat)
        if hG is None:
            continue
        n += 1
        U = F.union(G.nodes)
        if homogeneity_witness(U, f) is None:
            return [Record("extension-lemma", False, info, f"F∪G not homogeneous for G={sorted(G)}")]
        if not is_witness(U, f, concatenate_witness(F, hF, G, hG, ext)):
            return [Record("extension-lemma", False, info, f"concatenation fails for G={sorted(G)}")]
    return [Record("extension-lemma", True, info, f"{n} homogeneous G")]


# ---------------------------------------------------------------------------
# 6: hierarchy selection

def hierarchy_instances(rng):
    for t in gen.local_height_two(""):
        yield [[t]]
    yield from gen.hierarchies_two_layers()
    yield from gen.hierarchies_three_layers()


def check_hierarchy(raw) -> list:
    h = validate_hierarchy(raw)
    E = sorted(h.B, key=node_key)
    out = []
    for colors in product(range(h.k), repeat=len(E)):
        g = dict(zip(E, colors))
        info = lambda g=g: {"layers": [[list(t) for t in layer] for layer in h.layers], "g": g}
        want = oracles.selection_satisfiable(h.layers, E, g)
        try:
            c, tree, sub = select_monochromatic_cover(h, E, g)
            got = (tree in h.layers[c] and sub.nodes <= set(E) and is_cover(sub, tree)
                   and all(g[e] == c for e in sub))
        except ValueError:
            got = False
        out.append(Record("hierarchy-selection", got and want, info))
    return out


# ---------------------------------------------------------------------------
# 7: finite TT² threshold

def tt2_instances(rng):
    yield ("threshold",)
    for vals in product((0, 1), repeat=len(pair_list(3))):
        yield ("coloring", vals)
    yield ("counterexample",)


def check_tt2(inst) -> list:
    if inst[0] == "threshold":
        res = tree_ramsey_threshold(2, 2)
        bad = dict(res.counterexamples).get(2)
        ok = res.threshold == 3 and bad is not None and not oracles.has_height_two_copy(bad)
        return [Record("tt2-threshold", ok, {"height": 2, "k": 2}, f"threshold {res.threshold}")]
    if inst[0] == "coloring":
        col = PairColoring(3, 2, inst[1])
        hit = find_homogeneous_copy(col, 2)
        ok = hit is not None and oracles.has_height_two_copy(col)
        return [Record("tt2-coloring", ok, lambda: jsonio.pair_coloring_to_json(col))]
    col = PairColoring(2, 2, (0, 1))
    ok = find_homogeneous_copy(col, 2) is None and not oracles.has_height_two_copy(col)
    return [Record("tt2-counterexample", ok, jsonio.pair_coloring_to_json(col))]


# ---------------------------------------------------------------------------
# 8: staged-split translation

def staged_instances(rng, count: int = 150):
    for i in range(count):
        yield gen.staged_split(rng, (2, 3, 4)[i % 3])


def check_staged(staged) -> list:
    info = lambda: [jsonio.split_to_json(s) for s in staged.stages]
    col = coloring_from_staged_split(staged)
    final = staged.final
    seen = 0
    for height in range(2, col.depth + 1):
        for c in range(col.k):
            for img in iter_perfect_copies(col.domain(), height, _pair_acceptor(col, c)):
                seen += 1
                if homogeneity_witness(FiniteTree(img), final) is None:
                    return [Record("staged-translation", False, info, f"no witness on {sorted(img)}")]
    hit = find_homogeneous_copy(col, 2) if col.depth >= 2 else None
    if hit is not None and homogeneity_witness(hit[0], final) is None:
        return [Record("staged-translation", False, info, "least copy has no witness")]
    return [Record("staged-translation", True, info, f"{seen} homogeneous copies")]


# ---------------------------------------------------------------------------
# 9: diagonal builder

def diagonal_instances(rng):
    yield from gen.height_two_trees(4)


def check_diagonal(F) -> list:
    info = {"forbidden": [list(F)], "horizon": 4}
    try:
        f = diagonal_split_builder([F], 4)
        validate_split(f.as_dict(), f.base, 2)
    except SplitError as exc:
        return [Record("diagonal-builder", False, info, str(exc))]
    if not split_weak_stability_verdict(f).holds:
        return [Record("diagonal-builder", False, info, "not weakly stable")]
    s, r0, r1 = allocate_triples([F], 4)[0]
    rest = sorted(f.base.nodes - {s, r0, r1}, key=node_key)
    for r in range(len(rest) + 1):
        for extra in combinations(rest, r):
            if homogeneity_witness(FiniteTree((s, r0, r1) + extra), f) is not None:
                return [Record("diagonal-builder", False, info, f"witness on {list(extra)}")]
    return [Record("diagonal-builder", True, info)]


# ---------------------------------------------------------------------------
# 10: sufficiency kernel

def _vectors(depth: int, d: int) -> list:
    cols = list(gen.level_colorings(depth))
    return list(product(cols, repeat=d))


def _classes(depth: int, d: int, max_size: int = 3):
    vs = _vectors(depth, d)
    for size in range(1, max_size + 1):
        for combo in combinations(range(len(vs)), size):
            yield ColoringVectorClass(d, depth, [vs[i] for i in combo])


def _n_classes(n: int, max_size: int = 3) -> int:
    from math import comb
    return sum(comb(n, s) for s in range(1, max_size + 1))


def _n_vectors(depth: int, d: int) -> int:
    return (2 ** (2 ** depth - 1)) ** d


KERNEL_SLICES = ((1, 1), (1, 2), (2, 1), (2, 2), (3, 1), (3, 2))


def _n_products(depth: int) -> int:
    n = _n_vectors(depth, 1)
    # |Q0|·|Q1| ≤ 3 with both nonempty: (1,1), (1,2), (2,1), (1,3), (3,1)
    from math import comb
    return n * n + 2 * n * comb(n, 2) + 2 * n * comb(n, 3)


def _kernel_order():
    """Slices from cheapest to most expensive."""
    return [("class", 1, 1), ("class", 1, 2), ("product", 1), ("class", 2, 1), ("product", 2),
            ("conditions",), ("class", 2, 2), ("class", 3, 1), ("product", 3), ("class", 3, 2)]


CONDITION_SCENARIOS = 200


def kernel_phases() -> tuple:
    out = [("q0 over a constant class", 1)]
    for part in _kernel_order():
        if part[0] == "class":
            out.append((f"classes depth={part[1]} d={part[2]}", _n_classes(_n_vectors(part[1], part[2]))))
        elif part[0] == "product":
            out.append((f"products depth={part[1]}", _n_products(part[1])))
        else:
            out.append(("generated conditions", CONDITION_SCENARIOS))
    return tuple(out)


def kernel_instances(rng):
    yield ("q0-constant",)
    for part in _kernel_order():
        if part[0] == "class":
            for cls in _classes(part[1], part[2]):
                yield ("class", cls)
        elif part[0] == "product":
            depth = part[1]
            for Q0 in _classes(depth, 1):
                for Q1 in _classes(depth, 1):
                    if len(Q0) * len(Q1) <= 3:
                        yield ("product", Q0, Q1)
        else:
            for _ in range(CONDITION_SCENARIOS):
                yield ("condition", _condition_scenario(rng))


def _condition_scenario(rng):
    """Either a type-II extension of q⁰ or a one-slot condition whose F is a
    single node colored alike by the whole class."""
    depth = 3
    vs = _vectors(depth, 1)
    if rng.random() < 0.5:
        # families must be (2^{|E|·d}, 1)-group-scattered and each factor a
        # subclass of the base class for preservation to apply
        m = 3
        base = ColoringVectorClass(1, depth, rng.sample(vs, rng.randint(1, 3)))
        q = root_condition(base)
        universe = ["a", "b", "c", "d"]
        while True:
            fams = [rng.sample(universe, rng.randint(1, 2)) for _ in range(m)]
            if is_group_scattered(SetFamily(fams), 2 ** (len(q.E) * q.d), 1):
                break
        subs = [base.subclass(rng.sample(base.vectors, rng.randint(1, len(base)))) for _ in range(m)]
        t2 = type2_parameters(q, fams, 1, subs)
        return ("type2", q, t2.condition)
    cls = ColoringVectorClass(1, depth, rng.sample(vs, rng.randint(1, 3)))
    nodes = full_tree_nodes(depth)
    slots = {(0, (0,)): [], (1, (0,)): []}
    E = set()
    for _ in range(rng.randint(1, 3)):
        i = rng.randrange(2)
        # B stays below the frontier so a witness has room to grow
        xs = [x for x in nodes if len(x) < depth - 1 and colored_on([x], i, (0,), cls)]
        if not xs:
            continue
        x = rng.choice(xs)
        B = [x] if rng.random() < 0.5 or len(x) + 2 >= depth else [x + "0", x + "1"]
        if any(b in E or any(b.startswith(e) or e.startswith(b) for e in E) for b in B):
            continue
        E.update(B)
        slots[(i, (0,))].append((FiniteTree([x]), Antichain(B)))
    if not E:
        E.add("")
        slots[(rng.randrange(2), (0,))].append((FiniteTree(), Antichain([""])))
    return ("slots", None, make_condition(slots, [[0]], 1, sorted(E), cls))


def _witness_ok(q) -> tuple[bool, str]:
    try:
        w = positive_witness(q)
    except ForcingError as exc:
        return False, str(exc)
    return check_positive_witness(q, w)


def _pred_set(cls) -> frozenset:
    return frozenset(p.assignment for p in predictors(cls))


def check_kernel(inst) -> list:
    kind = inst[0]
    if kind == "q0-constant":
        zero = ColoringVectorClass(1, 3, [(next(gen.level_colorings(3)),)])
        q = root_condition(zero)
        ok = check_sufficiency(q)[0]
        w = positive_witness(q, levels=2)
        ok = ok and check_positive_witness(q, w)[0] and w.i == 0 and len(w.G) == 3
        return [Record("kernel-q0", ok, lambda: jsonio.condition_to_json(q))]
    if kind == "class":
        cls = inst[1]
        info = lambda: jsonio.class_to_json(cls)
        whole = _pred_set(cls)
        if not whole:
            return [Record("kernel-nonempty", False, info)]
        for size in range(1, len(cls)):
            for sub in combinations(cls.vectors, size):
                if not _pred_set(cls.subclass(sub)) <= whole:
                    return [Record("kernel-monotone", False, info)]
        out = [Record("kernel-class", True, info)]
        if cls.d == 1:
            q = root_condition(cls)
            ok = check_sufficiency(q)[0]
            wok, why = _witness_ok(q)
            out.append(Record("kernel-q0", ok and wok, lambda: jsonio.condition_to_json(q), why))
        return out
    if kind == "product":
        Q0, Q1 = inst[1], inst[2]
        P = product_class([Q0, Q1])
        p0, p1 = _pred_set(Q0), _pred_set(Q1)
        ok = True
        for a in _pred_set(P):
            if tuple(z[:1] for z in a) not in p0 or tuple(z[1:] for z in a) not in p1:
                ok = False
                break
        return [Record("kernel-product", ok, lambda: {"Q0": jsonio.class_to_json(Q0), "Q1": jsonio.class_to_json(Q1)})]
    _, (how, q0, q) = inst
    out = []
    if how == "type2" and q is not None:
        # preservation: the extension of a sufficient condition stays sufficient
        was = check_sufficiency(q0)[0]
        now = check_sufficiency(q)[0]
        out.append(Record("kernel-type2", (not was) or now, lambda: jsonio.condition_to_json(q)))
    if q is not None and check_sufficiency(q)[0]:
        wok, why = _witness_ok(q)
        out.append(Record("kernel-witness", wok, lambda: jsonio.condition_to_json(q), why))
    if not out:
        out.append(Record("kernel-condition", True, None, "not sufficient"))
    return out


# ---------------------------------------------------------------------------
# 11: enumeration extraction

def enumeration_instances(rng, count: int = 100):
    for i in range(count):
        mode = "singleton" if i % 2 == 0 else "blocking"
        b = rng.randint(1, 3)
        horizon = rng.randint(4, 7)
        S, per_level = gen.enumeration_scenario(rng, horizon, mode, b)
        yield horizon, S, per_level, mode, b


def check_enumeration_scenario(inst) -> list:
    horizon, S, per_level, mode, b = inst
    info = {"horizon": horizon, "members": S, "levels": {str(n): v for n, v in per_level.items()},
            "mode": mode, "b": b}
    trace = extract_enumeration(per_level, mode, b if mode == "blocking" else None)
    ok, why = check_enumeration(trace, TargetSet.from_members(horizon, S))
    ok = ok and trace.bound == (1 if mode == "singleton" else b)
    return [Record("enumeration-extraction", ok, info, "" if why is None else f"{why}")]


# ---------------------------------------------------------------------------
# registry and runner

CRITERIA = {
    1: Criterion(1, "scatter-duality", "scatter duality", 60,
                 lambda rng: gen.all_families(), check_scatter_duality, (("families", FAMILIES),)),
    2: Criterion(2, "scatter-duality", "group-scatter equivalence", 60,
                 lambda rng: gen.all_families(), check_group_scatter, (("families", FAMILIES),)),
    3: Criterion(3, "split-algebra", "split algebra against raw-mapping oracle", 120,
                 split_algebra_instances, check_split_algebra,
                 (("small bases", len(SMALL_BASES)), ("splits on 2^{<3}", TARGET_SPLITS), ("oracle on 2^{<3}", 1))),
    4: Criterion(4, "split-algebra", "cross product", 120, cross_instances, check_cross, (("pairs", 1000),)),
    5: Criterion(5, "extension-lemma", "extension lemma", 120, extension_instances, check_extension, (("instances", 1000),)),
    6: Criterion(6, "hierarchy-selection", "hierarchy selection", 60, hierarchy_instances, check_hierarchy),
    7: Criterion(7, "tt2-finite", "finite TT2 threshold", 10, tt2_instances, check_tt2, (("colorings", 1026),)),
    8: Criterion(8, "staged-translation", "staged-split translation", 120, staged_instances, check_staged, (("staged splits", 150),)),
    9: Criterion(9, "diagonal-builder", "diagonal builder", 30, diagonal_instances, check_diagonal),
    10: Criterion(10, "sufficiency-kernel", "sufficiency kernel", 120, kernel_instances, check_kernel,
                  kernel_phases()),
    11: Criterion(11, "enumeration-extraction", "enumeration extraction", 10,
                  enumeration_instances, check_enumeration_scenario, (("scenarios", 100),)),
}

SUITES: dict = {}
for _c in CRITERIA.values():
    SUITES.setdefault(_c.suite, []).append(_c)


class UnknownSuite(KeyError):
    pass


@dataclass
class CriterionResult:
    criterion: Criterion
    report: SuiteReport
    seconds: float

    @property
    def passed(self) -> bool:
        return self.report.status == "ok" and self.seconds < self.criterion.limit_s


class ProjectedOverrun(BudgetExceeded):
    """The measured rate shows a criterion cannot finish within budget."""


def _tally(report: SuiteReport, r: Record, keep: bool) -> None:
    report.instances += 1
    if r.ok:
        report.passed += 1
    else:
        report.failed += 1
        if report.counterexample is None:
            report.counterexample = {"check": r.check, "instance": r.instance_json(), "note": r.note}
    if keep:
        report.records.append({"record": "instance", "check": r.check, "ok": r.ok, "note": r.note})


def _run_one(crit: Criterion, report: SuiteReport, start: float, budget_s: float, seed: int,
             keep: bool, pool, chunk: int) -> None:
    deadline = start + budget_s
    rng = random.Random(seed * 1000 + crit.number)
    bounds = []
    acc = 0
    for label, size in crit.phases:
        bounds.append((acc, acc + size, label))
        acc += size
    phase, p_start, p_done0 = 0, time.monotonic(), 0
    done = 0
    for block in _chunks(crit.instances(rng), chunk):
        results = pool.map(crit.check, block) if pool else map(crit.check, block)
        for recs in results:
            for r in recs:
                _tally(report, r, keep)
        done += len(block)
        now = time.monotonic()
        if now > deadline:
            raise BudgetExceeded(f"criterion {crit.number}: budget spent after {done} instances",
                                 partial=done)
        while phase < len(bounds) and done >= bounds[phase][1]:
            phase, p_start, p_done0 = phase + 1, now, done
        if phase < len(bounds) and now - p_start > 1.0 and done > p_done0:
            lo, hi, label = bounds[phase]
            rest = (now - p_start) / (done - p_done0) * (hi - done)
            if now - start + rest > 1.25 * budget_s:
                raise ProjectedOverrun(
                    f"criterion {crit.number}: phase '{label}' has {hi - lo} instances; "
                    f"{done - lo} took {now - p_start:.1f}s, projected {rest:.3g}s more "
                    f"against a {budget_s:.0f}s budget", partial=done)


def _run(criteria, report: SuiteReport, budget_s: float, seed: int, keep: bool,
         chunk: int = 256) -> None:
    """Criteria run in order against one shared deadline.  A projected
    overrun stops only its own criterion; the suite still ends as
    budget-exceeded."""
    start = time.monotonic()
    threads = _threads()
    pool = ThreadPoolExecutor(threads) if threads > 1 else None
    overruns = []
    try:
        for crit in criteria:
            try:
                _run_one(crit, report, start, budget_s, seed, keep, pool, chunk)
            except ProjectedOverrun as exc:
                overruns.append(str(exc))
    finally:
        if pool:
            pool.shutdown(wait=False, cancel_futures=True)
    if overruns:
        raise BudgetExceeded("; ".join(overruns))


def run_criteria(criteria, name: str, budget_ms: int | None = None, seed: int = 0,
                 keep_records: bool = False) -> SuiteReport:
    if budget_ms is None:
        budget_ms = int(1000 * sum(c.limit_s for c in criteria))
    report = SuiteReport(name, seed, budget_ms)
    t0 = time.monotonic()
    try:
        _run(criteria, report, budget_ms / 1000, seed, keep_records)
        report.status = "ok" if report.failed == 0 else "fail"
    except BudgetExceeded as exc:
        report.status = "budget-exceeded"
        report.note = str(exc)
    report.wall_ms = int(1000 * (time.monotonic() - t0))
    return report


def run_suite(name: str, budget_ms: int | None = None, seed: int = 0,
              keep_records: bool = False) -> SuiteReport:
    if name not in SUITES:
        raise UnknownSuite(name)
    return run_criteria(SUITES[name], name, budget_ms, seed, keep_records)


def run_criterion(number: int, seed: int = 0) -> CriterionResult:
    crit = CRITERIA[number]
    t0 = time.monotonic()
    rep = run_criteria([crit], crit.suite, int(crit.limit_s * 1000), seed)
    return CriterionResult(crit, rep, time.monotonic() - t0)
