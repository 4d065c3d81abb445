"""Pair and level colorings at a finite horizon, homogeneous-copy search,
stability verdicts and finite tree-Ramsey thresholds."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Iterable, Iterator

from .treecore import (BudgetExceeded, FiniteTree, as_nodes, compatible, full_tree_nodes, leaves,
                       node_key, tlen)


class ColoringError(ValueError):
    def __init__(self, code: str, detail: str = ""):
        super().__init__(f"{code}: {detail}" if detail else code)
        self.code = code


class _Vacuous:
    """Homogeneity verdict for trees without a compatible pair."""

    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self) -> str:
        return "VACUOUS"

    def __reduce__(self):
        return (_Vacuous, ())


VACUOUS = _Vacuous()


def pair_list(depth: int) -> tuple[tuple[str, str], ...]:
    """Strictly compatible pairs (σ, τ) of 2^{<depth}, grouped by τ in
    canonical order, then σ by length."""
    out = []
    for tau in full_tree_nodes(depth):
        for i in range(len(tau)):
            out.append((tau[:i], tau))
    return tuple(out)


@dataclass(frozen=True)
class PairColoring:
    depth: int
    k: int
    values: tuple  # colors aligned with pair_list(depth)
    _table: dict = field(default=None, compare=False, hash=False, repr=False)

    def __post_init__(self):
        pairs = pair_list(self.depth)
        if len(self.values) != len(pairs):
            raise ColoringError("wrong-pair-count", f"{len(self.values)} != {len(pairs)}")
        if self.k < 1 or any(not 0 <= c < self.k for c in self.values):
            raise ColoringError("color-out-of-range")
        object.__setattr__(self, "_table", dict(zip(pairs, self.values)))

    @classmethod
    def from_function(cls, depth: int, k: int, fn: Callable[[str, str], int]) -> "PairColoring":
        return cls(depth, k, tuple(fn(s, t) for s, t in pair_list(depth)))

    @classmethod
    def from_mapping(cls, depth: int, k: int, mapping: dict) -> "PairColoring":
        missing = [p for p in pair_list(depth) if p not in mapping]
        if missing:
            raise ColoringError("missing-pair", repr(missing[0]))
        extra = set(mapping) - set(pair_list(depth))
        if extra:
            raise ColoringError("pair-outside-horizon", repr(sorted(extra)[0]))
        return cls(depth, k, tuple(mapping[p] for p in pair_list(depth)))

    def __call__(self, sigma: str, tau: str) -> int:
        try:
            return self._table[(sigma, tau)]
        except KeyError:
            raise ColoringError("pair-outside-domain", f"({sigma!r}, {tau!r})") from None

    def domain(self) -> tuple[str, ...]:
        return full_tree_nodes(self.depth)


@dataclass(frozen=True)
class LevelColoring:
    depth: int
    k: int
    values: tuple  # colors aligned with full_tree_nodes(depth)

    def __post_init__(self):
        if len(self.values) != (1 << self.depth) - 1:
            raise ColoringError("wrong-node-count")
        if any(not 0 <= c < self.k for c in self.values):
            raise ColoringError("color-out-of-range")

    @classmethod
    def from_function(cls, depth: int, k: int, fn: Callable[[str], int]) -> "LevelColoring":
        return cls(depth, k, tuple(fn(s) for s in full_tree_nodes(depth)))

    def __call__(self, node: str) -> int:
        if len(node) >= self.depth:
            raise ColoringError("node-outside-horizon", repr(node))
        return self.values[(1 << len(node)) - 1 + (int(node, 2) if node else 0)]


@dataclass(frozen=True)
class StabilityVerdict:
    status: str  # "holds-at-horizon" | "fails-at-horizon" | "undetermined"
    witness: str | None = None
    detail: tuple = ()

    @property
    def holds(self) -> bool:
        return self.status == "holds-at-horizon"

    @property
    def fails(self) -> bool:
        return self.status == "fails-at-horizon"


def _check_inside(nodes: Iterable[str], depth: int) -> None:
    for n in nodes:
        if len(n) >= depth:
            raise ColoringError("tree-exceeds-horizon", repr(n))


def is_homogeneous(tree, coloring: PairColoring):
    """The common color of all compatible pairs of ``tree``, ``VACUOUS`` when
    there is no such pair, ``None`` when two pairs disagree."""
    ns = sorted(as_nodes(tree), key=node_key)
    _check_inside(ns, coloring.depth)
    seen = None
    for i, t in enumerate(ns):
        for s in ns[:i]:
            if len(s) < len(t) and t.startswith(s):
                c = coloring(s, t)
                if seen is None:
                    seen = c
                elif c != seen:
                    return None
    return VACUOUS if seen is None else seen


# ---------------------------------------------------------------------------
# perfect-copy search

def _strict_extensions(domain: tuple[str, ...]) -> dict[str, tuple[str, ...]]:
    return {x: tuple(y for y in domain if len(y) > len(x) and y.startswith(x)) for x in domain}


def _position_ancestors(height: int) -> list[tuple[int, ...]]:
    npos = (1 << height) - 1
    out = []
    for p in range(npos):
        chain = []
        q = p
        while q > 0:
            q = (q - 1) // 2
            chain.append(q)
        out.append(tuple(reversed(chain)))
    return out


def iter_perfect_copies(domain: Iterable[str], height: int,
                        accept: Callable[[tuple, str], bool],
                        roots: Iterable[str] | None = None) -> Iterator[tuple[str, ...]]:
    """Depth-first enumeration of perfect copies of 2^{<height} inside
    ``domain``.  Positions are filled in breadth-first order; ``accept`` sees
    the images of the copy-ancestors and the candidate, so constraints are
    propagated as soon as a node is placed.  Each copy is produced once."""
    dom = tuple(sorted(set(domain), key=node_key))
    if height <= 0:
        yield ()
        return
    ext = _strict_extensions(dom)
    npos = (1 << height) - 1
    anc = _position_ancestors(height)
    img: list = [None] * npos

    def rec(p: int):
        if p == npos:
            yield tuple(img)
            return
        x = img[(p - 1) // 2]
        right = p % 2 == 0
        for y in ext[x]:
            if right:
                left = img[p - 1]
                if node_key(y) <= node_key(left) or y.startswith(left):
                    continue
            if not accept(tuple(img[a] for a in anc[p]), y):
                continue
            img[p] = y
            yield from rec(p + 1)
        img[p] = None

    for r in (dom if roots is None else roots):
        if r in ext and accept((), r):
            img[0] = r
            yield from rec(1)


def _least_copy(domain, height, accept_for_color, colors):
    dom = tuple(sorted(set(domain), key=node_key))
    for r in dom:
        best = None
        for c in colors:
            acc = accept_for_color(c)
            for img in iter_perfect_copies(dom, height, acc, roots=(r,)):
                key = tuple(sorted((node_key(n) for n in img)))
                if best is None or key < best[0]:
                    best = (key, img, c)
        if best is not None:
            return FiniteTree(best[1]), best[2]
    return None


def _pair_acceptor(coloring: PairColoring, c: int):
    table = coloring._table

    def acc(ancestors, y):
        for a in ancestors:
            if table[(a, y)] != c:
                return False
        return True
    return acc


def find_homogeneous_copy(coloring: PairColoring, height: int, domain=None):
    """Canonically least perfect subtree of the given height whose
    compatible pairs all share one color, as ``(tree, color)``."""
    if height < 1:
        raise ColoringError("bad-height")
    dom = coloring.domain() if domain is None else tuple(domain)
    _check_inside(dom, coloring.depth)
    hit = _least_copy(dom, height, lambda c: _pair_acceptor(coloring, c), range(coloring.k))
    if hit is None:
        return None
    tree, c = hit
    if height == 1:
        # a single node has no pairs; report the least color for definiteness
        c = 0
    else:
        assert is_homogeneous(tree, coloring) == c
    return tree, c


def has_homogeneous_copy(coloring: PairColoring, height: int, domain=None) -> bool:
    dom = coloring.domain() if domain is None else tuple(domain)
    for c in range(coloring.k):
        for _ in iter_perfect_copies(dom, height, _pair_acceptor(coloring, c)):
            return True
    return False


def find_monochromatic_copy(coloring: LevelColoring, height: int):
    if height < 1:
        raise ColoringError("bad-height")
    dom = full_tree_nodes(coloring.depth)

    def for_color(c):
        return lambda ancestors, y: coloring(y) == c
    return _least_copy(dom, height, for_color, range(coloring.k))


# ---------------------------------------------------------------------------
# stability at the horizon

def stability_verdict(coloring: PairColoring, tree=None, weak: bool = True) -> StabilityVerdict:
    t = FiniteTree(coloring.domain() if tree is None else as_nodes(tree))
    _check_inside(t.nodes, coloring.depth)
    ordered = t.sorted()
    if not weak:
        frontier = leaves(t).nodes
        for s in ordered:
            cols = {coloring(s, x) for x in frontier if len(x) > len(s) and x.startswith(s)}
            if len(cols) > 1:
                return StabilityVerdict("fails-at-horizon", s, (("colors", tuple(sorted(cols))),))
        return StabilityVerdict("holds-at-horizon")

    tl = {n: tlen(t, n) for n in ordered}
    top = max(tl.values(), default=0)
    statuses = []
    for s in ordered:
        above = [x for x in ordered if len(x) > len(s) and x.startswith(s)]
        if not above:
            statuses.append((s, "holds"))
            continue
        informative, works_inf, works_any = [], [], []
        for n in range(tl[s], top + 1):
            level = [r for r in ordered if tl[r] == n and r.startswith(s)]
            spans, ok, nonvacuous = False, True, False
            for r in level:
                deeper = [x for x in above if len(x) > len(r) and x.startswith(r)]
                if not deeper:
                    continue
                nonvacuous = True
                if len({tl[x] for x in deeper}) >= 2:
                    spans = True
                if len({coloring(s, x) for x in deeper}) > 1:
                    ok = False
            if spans:
                informative.append(n)
                if ok:
                    works_inf.append(n)
            if nonvacuous and ok:
                works_any.append(n)
        if len(informative) >= 2 and not works_inf:
            statuses.append((s, "fails"))
        elif works_inf or (not informative and works_any):
            statuses.append((s, "holds"))
        else:
            statuses.append((s, "open"))
    failing = [s for s, st in statuses if st == "fails"]
    if failing:
        return StabilityVerdict("fails-at-horizon", failing[0], tuple(statuses))
    if any(st == "holds" for _, st in statuses):
        return StabilityVerdict("holds-at-horizon", None, tuple(statuses))
    return StabilityVerdict("undetermined", None, tuple(statuses))


# ---------------------------------------------------------------------------
# thresholds

@dataclass(frozen=True)
class ThresholdResult:
    height: int
    k: int
    threshold: int
    counterexamples: tuple  # (depth, PairColoring) for every depth below the threshold
    method: tuple  # (depth, "exhaustive" | "backtracking" | "trivial")


def _pair_count(n: int) -> int:
    return sum((1 << L) * L for L in range(n))


def _exhaustive_counterexample(n: int, height: int, k: int, deadline):
    for vals in product(range(k), repeat=_pair_count(n)):
        if deadline is not None and time.monotonic() > deadline:
            raise BudgetExceeded("threshold search over budget")
        col = PairColoring(n, k, vals)
        if not has_homogeneous_copy(col, height):
            return col
    return None


def _backtrack_counterexample(n: int, height: int, k: int, deadline):
    nodes = full_tree_nodes(n)
    table: dict = {}
    ticks = [0]

    class _Col:
        # lightweight view used while the coloring is still partial
        def __init__(self):
            self._table = table

    view = _Col()

    def copy_through(i: int) -> bool:
        dom = nodes[: i + 1]
        tau = nodes[i]
        for c in range(k):
            acc = _pair_acceptor(view, c)
            for img in iter_perfect_copies(dom, height, acc):
                if tau in img:
                    return True
        return False

    def rec(i: int, used: int):
        if i == len(nodes):
            return True
        tau = nodes[i]
        prefixes = [tau[:j] for j in range(len(tau))]
        for combo in product(range(k), repeat=len(prefixes)):
            # color-symmetry breaking: a new color may only appear as the next unused one
            u = used
            ok = True
            for c in combo:
                if c > u:
                    ok = False
                    break
                if c == u:
                    u += 1
            if not ok:
                continue
            ticks[0] += 1
            if deadline is not None and ticks[0] % 64 == 0 and time.monotonic() > deadline:
                raise BudgetExceeded("threshold search over budget")
            for s, c in zip(prefixes, combo):
                table[(s, tau)] = c
            if not copy_through(i) and rec(i + 1, min(u, k)):
                return True
            for s in prefixes:
                table.pop((s, tau), None)
        return False

    if rec(0, 0):
        return PairColoring(n, k, tuple(table[p] for p in pair_list(n)))
    return None


def tree_ramsey_threshold(height: int, k: int, budget_ms: int | None = None,
                          max_depth: int = 8) -> ThresholdResult:
    """Least n such that every k-coloring of compatible pairs of 2^{<n} has a
    homogeneous copy of 2^{<height}."""
    if height < 1 or k < 1:
        raise ColoringError("bad-arguments")
    deadline = None if budget_ms is None else time.monotonic() + budget_ms / 1000
    counter, methods = [], []
    for n in range(1, max_depth + 1):
        if n < height:
            counter.append((n, PairColoring(n, k, (0,) * _pair_count(n))))
            methods.append((n, "trivial"))
            continue
        try:
            if _pair_count(n) <= 20:
                bad = _exhaustive_counterexample(n, height, k, deadline)
                methods.append((n, "exhaustive"))
            else:
                bad = _backtrack_counterexample(n, height, k, deadline)
                methods.append((n, "backtracking"))
        except BudgetExceeded as exc:
            exc.lower_bound = n
            raise
        if bad is None:
            return ThresholdResult(height, k, n, tuple(counter), tuple(methods))
        counter.append((n, bad))
    raise BudgetExceeded(f"no threshold up to depth {max_depth}", lower_bound=max_depth + 1)
