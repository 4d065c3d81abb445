"""JSON readers and writers for every instance format."""

from __future__ import annotations

import json
from typing import Any

from .coloring import LevelColoring, PairColoring, pair_list
from .enumkit import EnumerationTrace, TargetSet
from .forcing import ColoringVectorClass, Condition, make_condition
from .hierarchy import KHierarchy, validate_hierarchy
from .scatter import SetFamily
from .splitkit import Homomorphism, StagedSplit, TreeSplit, validate_split
from .treecore import Antichain, FiniteTree, full_tree_nodes


class ParseError(ValueError):
    def __init__(self, where: str, msg: str):
        super().__init__(f"{where}: {msg}")
        self.where = where


def loads(text: str, source: str = "<input>") -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{source} line {exc.lineno} column {exc.colno}", exc.msg) from None


def load(path: str) -> Any:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read(), path)


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def _need(obj, key: str, where: str):
    if not isinstance(obj, dict) or key not in obj:
        raise ParseError(where, f"missing field {key!r}")
    return obj[key]


def _int(x, where: str) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise ParseError(where, f"expected an integer, got {x!r}")
    return x


def _node(x, where: str) -> str:
    if not isinstance(x, str) or any(c not in "01" for c in x):
        raise ParseError(where, f"not a bit-string: {x!r}")
    return x


def _node_list(xs, where: str) -> list[str]:
    if not isinstance(xs, list):
        raise ParseError(where, "expected a list of nodes")
    out = [_node(x, f"{where}[{i}]") for i, x in enumerate(xs)]
    if len(set(out)) != len(out):
        dup = next(x for x in out if out.count(x) > 1)
        raise ParseError(where, f"duplicate node {dup!r}")
    return out


def parse_tree(obj, where: str = "tree") -> FiniteTree:
    nodes = obj if isinstance(obj, list) else _need(obj, "nodes", where)
    return FiniteTree(_node_list(nodes, f"{where}.nodes"))


def parse_antichain(obj, where: str) -> Antichain:
    nodes = obj if isinstance(obj, list) else _need(obj, "nodes", where)
    try:
        return Antichain(_node_list(nodes, where))
    except ValueError as exc:
        raise ParseError(where, str(exc)) from None


def tree_to_json(tree) -> dict:
    return {"nodes": list(tree)}


def parse_pair_coloring(obj, where: str = "coloring") -> PairColoring:
    k = _int(_need(obj, "k", where), f"{where}.k")
    depth = _int(_need(obj, "depth", where), f"{where}.depth")
    pairs = _need(obj, "pairs", where)
    if not isinstance(pairs, list):
        raise ParseError(f"{where}.pairs", "expected a list")
    mapping = {}
    for i, p in enumerate(pairs):
        w = f"{where}.pairs[{i}]"
        if not isinstance(p, list) or len(p) != 3:
            raise ParseError(w, "expected [sigma, tau, color]")
        s, t = _node(p[0], w), _node(p[1], w)
        c = _int(p[2], w)
        if (s, t) in mapping:
            raise ParseError(w, f"pair ({s!r}, {t!r}) listed twice")
        mapping[(s, t)] = c
    try:
        return PairColoring.from_mapping(depth, k, mapping)
    except ValueError as exc:
        raise ParseError(f"{where}.pairs", str(exc)) from None


def pair_coloring_to_json(c: PairColoring) -> dict:
    return {"k": c.k, "depth": c.depth,
            "pairs": [[s, t, v] for (s, t), v in zip(pair_list(c.depth), c.values)]}


def parse_level_coloring(obj, where: str = "coloring", depth: int | None = None,
                         k: int | None = None) -> LevelColoring:
    if isinstance(obj, dict) and "nodes" in obj and isinstance(obj["nodes"], dict):
        k = _int(obj.get("k", 2 if k is None else k), f"{where}.k")
        depth = _int(obj.get("depth", depth), f"{where}.depth")
        table = obj["nodes"]
    elif isinstance(obj, dict) and depth is not None:
        table = obj
        k = 2 if k is None else k
    else:
        raise ParseError(where, "expected a level coloring object")
    vals = []
    for n in full_tree_nodes(depth):
        if n not in table:
            raise ParseError(f"{where}.nodes", f"missing node {n!r}")
        vals.append(_int(table[n], f"{where}.nodes[{n!r}]"))
    extra = set(table) - set(full_tree_nodes(depth))
    if extra:
        raise ParseError(f"{where}.nodes", f"node outside horizon {sorted(extra)[0]!r}")
    try:
        return LevelColoring(depth, k, tuple(vals))
    except ValueError as exc:
        raise ParseError(where, str(exc)) from None


def level_coloring_to_json(c: LevelColoring) -> dict:
    return {"k": c.k, "depth": c.depth, "nodes": dict(zip(full_tree_nodes(c.depth), c.values))}


def _vec(x, where: str) -> tuple:
    if isinstance(x, str):
        if not x.isdigit():
            raise ParseError(where, f"bad color vector {x!r}")
        return tuple(int(c) for c in x)
    if isinstance(x, list):
        return tuple(_int(c, where) for c in x)
    raise ParseError(where, f"bad color vector {x!r}")


def vec_to_json(v: tuple, k: int):
    return "".join(str(d) for d in v) if k <= 10 else list(v)


def parse_split(obj, where: str = "split") -> TreeSplit:
    k = _int(_need(obj, "k", where), f"{where}.k")
    base = parse_tree(_need(obj, "tree", where), f"{where}.tree")
    values = _need(obj, "values", where)
    if not isinstance(values, dict):
        raise ParseError(f"{where}.values", "expected an object")
    raw = {}
    for n, vs in values.items():
        w = f"{where}.values[{n!r}]"
        _node(n, w)
        if not isinstance(vs, list):
            raise ParseError(w, "expected a list of vectors")
        raw[n] = [_vec(v, w) for v in vs]
    try:
        return validate_split(raw, base, k)
    except ValueError as exc:
        raise ParseError(where, str(exc)) from None


def split_to_json(f: TreeSplit) -> dict:
    return {"k": f.k, "tree": list(f.base),
            "values": {n: sorted(vec_to_json(v, f.k) for v in vs) for n, vs in f.values}}


def parse_staged(obj, where: str = "staged") -> StagedSplit:
    if not isinstance(obj, list):
        raise ParseError(where, "expected an array of splits")
    try:
        return StagedSplit(tuple(parse_split(s, f"{where}[{i}]") for i, s in enumerate(obj)))
    except ParseError:
        raise
    except ValueError as exc:
        raise ParseError(where, str(exc)) from None


def homomorphism_to_json(h: Homomorphism, k: int) -> dict:
    return {n: vec_to_json(v, k) for n, v in h.assignment}


def parse_family(obj, where: str = "family") -> SetFamily:
    members = _need(obj, "members", where)
    if not isinstance(members, list):
        raise ParseError(f"{where}.members", "expected a list")
    out = []
    for i, m in enumerate(members):
        w = f"{where}.members[{i}]"
        if not isinstance(m, list) or not all(isinstance(x, str) for x in m):
            raise ParseError(w, "expected a list of strings")
        out.append(m)
    try:
        return SetFamily(out)
    except ValueError as exc:
        raise ParseError(where, str(exc)) from None


def parse_hierarchy(obj, where: str = "hierarchy") -> KHierarchy:
    layers = _need(obj, "layers", where)
    if not isinstance(layers, list):
        raise ParseError(f"{where}.layers", "expected a list of layers")
    raw = []
    for i, layer in enumerate(layers):
        if not isinstance(layer, list):
            raise ParseError(f"{where}.layers[{i}]", "expected a list of trees")
        raw.append([parse_tree(t, f"{where}.layers[{i}][{j}]") for j, t in enumerate(layer)])
    try:
        return validate_hierarchy(raw)
    except ValueError as exc:
        raise ParseError(where, str(exc)) from None


def parse_scenario(obj, where: str = "scenario"):
    levels = _need(obj, "levels", where)
    if not isinstance(levels, dict):
        raise ParseError(f"{where}.levels", "expected an object")
    per_level = {}
    for n, fam in levels.items():
        w = f"{where}.levels[{n!r}]"
        try:
            lvl = int(n)
        except ValueError:
            raise ParseError(w, "level keys must be integers") from None
        if not isinstance(fam, list):
            raise ParseError(w, "expected a list of sets")
        per_level[lvl] = [_node_list(v, f"{w}[{i}]") for i, v in enumerate(fam)]
    mode = obj.get("mode", "singleton")
    if mode not in ("singleton", "blocking"):
        raise ParseError(f"{where}.mode", f"unknown mode {mode!r}")
    b = obj.get("b")
    if mode == "blocking":
        b = _int(b, f"{where}.b")
    return per_level, mode, b


def parse_trace(obj, where: str = "trace") -> EnumerationTrace:
    bound = _int(_need(obj, "bound", where), f"{where}.bound")
    entries = _need(obj, "entries", where)
    if not isinstance(entries, dict):
        raise ParseError(f"{where}.entries", "expected an object")
    out = []
    for n, xs in entries.items():
        out.append((int(n), frozenset(_node_list(xs, f"{where}.entries[{n!r}]"))))
    try:
        return EnumerationTrace(bound, tuple(sorted(out)))
    except ValueError as exc:
        raise ParseError(where, str(exc)) from None


def trace_to_json(t: EnumerationTrace) -> dict:
    return {"bound": t.bound, "entries": {str(n): sorted(s, key=lambda x: (len(x), x)) for n, s in t.entries}}


def parse_target(obj, where: str = "target") -> TargetSet:
    horizon = _int(_need(obj, "horizon", where), f"{where}.horizon")
    members = _node_list(_need(obj, "members", where), f"{where}.members")
    return TargetSet.from_members(horizon, members)


def parse_class(obj, where: str = "class") -> ColoringVectorClass:
    d = _int(_need(obj, "d", where), f"{where}.d")
    depth = _int(_need(obj, "depth", where), f"{where}.depth")
    vectors = _need(obj, "vectors", where)
    if not isinstance(vectors, list):
        raise ParseError(f"{where}.vectors", "expected a list")
    out = []
    for i, v in enumerate(vectors):
        w = f"{where}.vectors[{i}]"
        if not isinstance(v, list):
            raise ParseError(w, "expected a list of level colorings")
        out.append(tuple(parse_level_coloring(c, f"{w}[{j}]", depth=depth, k=2) for j, c in enumerate(v)))
    try:
        return ColoringVectorClass(d, depth, out)
    except ValueError as exc:
        raise ParseError(where, str(exc)) from None


def class_to_json(cls: ColoringVectorClass) -> dict:
    return {"d": cls.d, "depth": cls.depth,
            "vectors": [[level_coloring_to_json(c)["nodes"] for c in v] for v in cls.vectors]}


def parse_condition(obj, where: str = "condition") -> Condition:
    cls = parse_class(_need(obj, "class", where), f"{where}.class")
    d = _int(obj.get("d", cls.d), f"{where}.d")
    fam = _need(obj, "index_family", where)
    if not isinstance(fam, list):
        raise ParseError(f"{where}.index_family", "expected a list of index lists")
    index_family = [[_int(n, f"{where}.index_family") for n in I] for I in fam]
    E = parse_antichain(_need(obj, "E", where), f"{where}.E")
    slots: dict = {}
    for j, s in enumerate(_need(obj, "slots", where)):
        w = f"{where}.slots[{j}]"
        i = _int(_need(s, "i", w), f"{w}.i")
        I = tuple(sorted(_int(n, f"{w}.I") for n in _need(s, "I", w)))
        F = parse_tree(_need(s, "F", w), f"{w}.F")
        B = parse_antichain(_need(s, "B", w), f"{w}.B")
        slots.setdefault((i, I), []).append((F, B))
    for I in index_family:
        for i in (0, 1):
            slots.setdefault((i, tuple(sorted(I))), [])
    try:
        return make_condition(slots, index_family, d, E, cls)
    except ValueError as exc:
        raise ParseError(where, str(exc)) from None


def condition_to_json(q: Condition) -> dict:
    slots = []
    for i, I, F, B in q.slot_items():
        slots.append({"i": i, "I": sorted(I), "F": list(F), "B": list(B)})
    return {"class": class_to_json(q.cls), "d": q.d,
            "index_family": sorted(sorted(I) for I in q.index_family),
            "E": list(q.E), "slots": slots}
