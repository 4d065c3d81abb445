"""The k-tree-split algebra on finite base trees.

A split assigns to every base node ρ a nonempty set of color vectors of
length tlen(base, ρ); coordinate j of a vector belongs to the depth-j base
node on ρ's path, ρ included.  Vectors are tuples of ints.

On a finite base the union clause makes a split a function of its leaf
values, which several constructions below exploit.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Iterable, Iterator, Mapping

from .coloring import PairColoring
from .treecore import (Antichain, BudgetExceeded, FiniteTree, as_nodes, compatible,
                       full_tree_nodes, leaves, node_key, tlen)

Vector = tuple


class SplitError(ValueError):
    def __init__(self, code: str, node: str | None = None, detail: str = ""):
        msg = code if node is None else f"{code} at {node!r}"
        super().__init__(f"{msg}: {detail}" if detail else msg)
        self.code = code
        self.node = node


def as_vector(v) -> Vector:
    if isinstance(v, str):
        return tuple(int(c) for c in v)
    return tuple(int(c) for c in v)


def restrict(vectors: Iterable[Vector], n: int) -> frozenset:
    return frozenset(v[:n] for v in vectors)


@dataclass(frozen=True)
class _Shape:
    """Cached structure of a base tree."""

    order: tuple
    tl: dict
    children: dict
    leaf_set: frozenset
    cones: dict


_SHAPES: dict = {}


def shape(base: FiniteTree) -> _Shape:
    got = _SHAPES.get(base.nodes)
    if got is not None:
        return got
    order = base.sorted()
    tl = {n: tlen(base, n) for n in order}
    children = {n: [] for n in order}
    for n in order:
        p = base.parent(n)
        if p is not None:
            children[p].append(n)
    lv = frozenset(n for n in order if not children[n])
    cones = {n: tuple(m for m in order if m.startswith(n)) for n in order}
    sh = _Shape(order, tl, {n: tuple(c) for n, c in children.items()}, lv, cones)
    if len(_SHAPES) > 4096:
        _SHAPES.clear()
    _SHAPES[base.nodes] = sh
    return sh


@dataclass(frozen=True)
class TreeSplit:
    base: FiniteTree
    k: int
    values: tuple  # ((node, frozenset of vectors), ...) in canonical node order
    _map: dict = field(default=None, compare=False, hash=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "_map", dict(self.values))

    def __call__(self, node: str) -> frozenset:
        return self._map[node]

    def items(self):
        return self.values

    def tl(self, node: str) -> int:
        return shape(self.base).tl[node]

    def depth_of(self, node: str) -> int:
        return shape(self.base).tl[node] - 1

    def as_dict(self) -> dict:
        return dict(self._map)


def _make(base: FiniteTree, k: int, vals: Mapping) -> TreeSplit:
    order = shape(base).order
    return TreeSplit(base, k, tuple((n, frozenset(vals[n])) for n in order))


def validate_split(candidate: Mapping, base, k: int) -> TreeSplit:
    """Validate a raw node → vectors mapping.  Clauses are checked in the
    order emptiness, length, union, each over nodes in canonical order."""
    base = base if isinstance(base, FiniteTree) else FiniteTree(as_nodes(base))
    sh = shape(base)
    extra = [n for n in candidate if n not in base.nodes]
    if extra:
        raise SplitError("node-outside-base", sorted(extra, key=node_key)[0])
    vals = {}
    for n in sh.order:
        vs = frozenset(as_vector(v) for v in candidate.get(n, ()))
        if not vs:
            raise SplitError("empty-value-set", n)
        vals[n] = vs
    for n in sh.order:
        for v in sorted(vals[n]):
            if len(v) != sh.tl[n] or any(not 0 <= d < k for d in v):
                raise SplitError("wrong-vector-length", n, repr(v))
    for n in sh.order:
        kids = sh.children[n]
        if kids:
            u = frozenset().union(*(restrict(vals[c], sh.tl[n]) for c in kids))
            if u != vals[n]:
                raise SplitError("union-clause-violated", n)
    return _make(base, k, vals)


def split_from_leaves(base, k: int, leaf_values: Mapping) -> TreeSplit:
    """The unique split with the given leaf values."""
    base = base if isinstance(base, FiniteTree) else FiniteTree(as_nodes(base))
    sh = shape(base)
    vals: dict = {}
    for n in reversed(sh.order):
        if n in sh.leaf_set:
            vals[n] = frozenset(as_vector(v) for v in leaf_values[n])
        else:
            vals[n] = frozenset().union(*(restrict(vals[c], sh.tl[n]) for c in sh.children[n]))
    return validate_split(vals, base, k)


# ---------------------------------------------------------------------------
# constructions from colorings

def split_from_pair_coloring(coloring: PairColoring, base) -> TreeSplit:
    """Finite version of the split induced by a pair coloring: vectors at a
    base leaf are the color patterns ⟨C(p_j, τ)⟩ toward its base path over
    frontier nodes τ strictly above the leaf; inner nodes take unions."""
    base = base if isinstance(base, FiniteTree) else FiniteTree(as_nodes(base))
    sh = shape(base)
    frontier = [t for t in coloring.domain() if len(t) == coloring.depth - 1]
    for n in sh.order:
        if len(n) >= coloring.depth:
            raise SplitError("node-outside-horizon", n)
    leaf_values = {}
    for lf in sh.leaf_set:
        path = [p for p in sh.order if lf.startswith(p)]
        ext = [t for t in frontier if len(t) > len(lf) and t.startswith(lf)]
        if not ext:
            raise SplitError("node-without-frontier-extension", lf)
        leaf_values[lf] = {tuple(coloring(p, t) for p in path) for t in ext}
    return split_from_leaves(base, coloring.k, leaf_values)


# ---------------------------------------------------------------------------
# structural checks

def check_monotone(split: TreeSplit):
    """(True, None) when f(τ)↾tlen(ρ) ⊆ f(ρ) for all ρ ⪯ τ in the base,
    else (False, (ρ, τ))."""
    sh = shape(split.base)
    for r in sh.order:
        n = sh.tl[r]
        fr = split(r)
        for t in sh.cones[r]:
            if not restrict(split(t), n) <= fr:
                return False, (r, t)
    return True, None


def enumerate_splits(base, k: int, budget_ms: int | None = None,
                     max_count: int | None = None) -> Iterator[TreeSplit]:
    """All valid k-splits on ``base``, each exactly once.  Nodes are assigned
    level by level in canonical order; a node may only take vectors whose
    restriction lies in its parent's value, and the last child of a parent
    must complete the union clause."""
    base = base if isinstance(base, FiniteTree) else FiniteTree(as_nodes(base))
    sh = shape(base)
    order = sh.order
    parent = {n: base.parent(n) for n in order}
    last_child = {p: kids[-1] for p, kids in sh.children.items() if kids}
    deadline = None if budget_ms is None else time.monotonic() + budget_ms / 1000
    count = [0]
    vals: dict = {}
    covered: dict = {}

    def subsets(pool):
        pool = sorted(pool)
        for size in range(1, len(pool) + 1):
            for combo in combinations(pool, size):
                yield frozenset(combo)

    def rec(i: int):
        if i == len(order):
            count[0] += 1
            if max_count is not None and count[0] > max_count:
                raise BudgetExceeded("enumeration over count budget", partial=count[0] - 1)
            if deadline is not None and time.monotonic() > deadline:
                raise BudgetExceeded("enumeration over time budget", partial=count[0] - 1)
            yield _make(base, k, vals)
            return
        n = order[i]
        p = parent[n]
        L = sh.tl[n]
        if p is None:
            pool = [v for v in product(range(k), repeat=L)]
        else:
            pool = [pv + (d,) for pv in vals[p] for d in range(k)]
        for s in subsets(pool):
            if p is not None:
                before = covered[p]
                now = before | restrict(s, L - 1)
                if last_child[p] == n and now != vals[p]:
                    continue
                covered[p] = now
            vals[n] = s
            covered[n] = frozenset()
            yield from rec(i + 1)
            if p is not None:
                covered[p] = before
        vals.pop(n, None)

    yield from rec(0)


# ---------------------------------------------------------------------------
# homogeneity

@dataclass(frozen=True)
class Homomorphism:
    domain: FiniteTree
    assignment: tuple  # ((node, vector), ...) in canonical order

    def __call__(self, node: str) -> Vector:
        return dict(self.assignment)[node]

    def as_dict(self) -> dict:
        return dict(self.assignment)


def _sub_paths(sub: FiniteTree, split: TreeSplit):
    sh = shape(split.base)
    order = sub.sorted()
    paths = {}
    for r in order:
        paths[r] = [sh.tl[p] - 1 for p in order if r.startswith(p)]
    return order, paths


def is_witness(sub, split: TreeSplit, hom) -> bool:
    """Re-check a candidate homogeneity witness from scratch."""
    sub = sub if isinstance(sub, FiniteTree) else FiniteTree(as_nodes(sub))
    h = hom.as_dict() if isinstance(hom, Homomorphism) else dict(hom)
    if set(h) != set(sub.nodes):
        return False
    order, paths = _sub_paths(sub, split)
    for r in order:
        v = tuple(h[r])
        if len(v) != len(paths[r]):
            return False
        if not any(tuple(x[p] for p in paths[r]) == v for x in split(r)):
            return False
    for a in order:
        for b in order:
            if a != b and b.startswith(a) and tuple(h[b][:len(h[a])]) != tuple(h[a]):
                return False
    return True


def homogeneity_witness(sub, split: TreeSplit) -> Homomorphism | None:
    """A homomorphism on ``sub`` induced by ``split``, or None.

    Extension preservation only links a node with its nearest proper
    ancestor inside ``sub``, so the search is an exact bottom-up pass over
    the forest of ``sub``: keep the induced vectors of a node that every
    child can continue, then read off the least choice top-down."""
    sub = sub if isinstance(sub, FiniteTree) else FiniteTree(as_nodes(sub))
    bad = [n for n in sub if n not in split.base.nodes]
    if bad:
        raise SplitError("sub-not-inside-base", bad[0])
    order, paths = _sub_paths(sub, split)
    par = {r: sub.parent(r) for r in order}
    kids: dict = {r: [] for r in order}
    for r in order:
        if par[r] is not None:
            kids[par[r]].append(r)
    feasible = {}
    for r in reversed(order):
        cand = {tuple(x[p] for p in paths[r]) for x in split(r)}
        for c in kids[r]:
            heads = {w[:-1] for w in feasible[c]}
            cand &= heads
        if not cand:
            return None
        feasible[r] = cand
    h = {}
    for r in order:
        if par[r] is None:
            h[r] = min(feasible[r])
        else:
            hp = h[par[r]]
            h[r] = min(w for w in feasible[r] if w[:-1] == hp)
    return Homomorphism(sub, tuple((r, h[r]) for r in order))


# ---------------------------------------------------------------------------
# refinement and products

def _persists(split: TreeSplit, node: str, zeta: Vector) -> bool:
    sh = shape(split.base)
    n = len(zeta)
    for r1 in sh.cones[node]:
        if all(zeta in restrict(split(r2), n) for r2 in sh.cones[r1]):
            return True
    return False


def refine(split: TreeSplit) -> TreeSplit:
    sh = shape(split.base)
    vals = {r: frozenset(z for z in split(r) if _persists(split, r, z)) for r in sh.order}
    return validate_split(vals, split.base, split.k)


def is_refined(split: TreeSplit) -> bool:
    sh = shape(split.base)
    return all(_persists(split, r, z) for r in sh.order for z in split(r))


def pair_digit(a: int, b: int, k: int) -> int:
    return a * k + b


def cross_product(f0: TreeSplit, f1: TreeSplit) -> TreeSplit:
    """Arity-k² split of vector pairs that co-occur on a whole cone."""
    if f0.base != f1.base:
        raise SplitError("base-mismatch")
    if f0.k != f1.k:
        raise SplitError("arity-mismatch")
    k = f0.k
    sh = shape(f0.base)
    vals = {}
    for r in sh.order:
        n = sh.tl[r]
        out = set()
        for z0 in f0(r):
            for z1 in f1(r):
                for r1 in sh.cones[r]:
                    if all(z0 in restrict(f0(r2), n) and z1 in restrict(f1(r2), n)
                           for r2 in sh.cones[r1]):
                        out.add(tuple(pair_digit(a, b, k) for a, b in zip(z0, z1)))
                        break
        vals[r] = out
    return validate_split(vals, f0.base, k * k)


def project_witness(hom: Homomorphism, k: int, side: int) -> Homomorphism:
    """Coordinate projection of a witness for a product split."""
    pick = (lambda d: d // k) if side == 0 else (lambda d: d % k)
    return Homomorphism(hom.domain, tuple((r, tuple(pick(d) for d in v)) for r, v in hom.assignment))


# ---------------------------------------------------------------------------
# extension and growth

def _committed(split: TreeSplit, node: str, zeta: Vector) -> bool:
    n = len(zeta)
    return all(v[:n] == zeta for r in shape(split.base).cones[node] for v in split(r))


def _inducers(split: TreeSplit, F: FiniteTree, witness: dict, leaf: str) -> list:
    sh = shape(split.base)
    path = [sh.tl[p] - 1 for p in F.sorted() if leaf.startswith(p)]
    want = tuple(witness[leaf])
    return sorted(z for z in split(leaf) if tuple(z[p] for p in path) == want)


@dataclass(frozen=True)
class Extension:
    B: Antichain
    hat: TreeSplit
    bases: tuple  # ((leaf of F, ρ_σ, inducing vector), ...)

    def __iter__(self):
        return iter((self.B, self.hat))


def _check_extension_input(F, witness, split):
    F = F if isinstance(F, FiniteTree) else FiniteTree(as_nodes(F))
    if not F.nodes:
        raise SplitError("empty-tree")
    bad = [n for n in F if n not in split.base.nodes]
    if bad:
        raise SplitError("sub-not-inside-base", bad[0])
    h = witness.as_dict() if isinstance(witness, Homomorphism) else dict(witness)
    ref = refine(split)
    if not is_witness(F, ref, h):
        raise SplitError("witness-invalid")
    return F, h, ref


def extend_homogeneous(F, witness, split: TreeSplit) -> Extension:
    """For each leaf σ of F pick the canonically least ρ_σ ≻ σ whose whole
    cone is committed to an inducing vector of σ's witness value, and
    shift the split on those cones so it starts at ρ_σ."""
    F, h, ref = _check_extension_input(F, witness, split)
    sh = shape(split.base)
    chosen = []
    for lf in leaves(F):
        cands = _inducers(ref, F, h, lf)
        above = [r for r in sh.cones[lf] if r != lf]
        if not above:
            raise SplitError("no-base-for-leaf", lf, "leaf has no strict extension")
        pick = None
        for r in above:
            for z in cands:
                if _committed(split, r, z):
                    pick = (lf, r, z)
                    break
            if pick:
                break
        if pick is None:
            raise SplitError("no-base-for-leaf", lf)
        chosen.append(pick)
    return _build_extension(split, chosen)


def _build_extension(split: TreeSplit, chosen) -> Extension:
    sh = shape(split.base)
    vals = {}
    for _, r, z in chosen:
        d0 = sh.tl[r] - 1
        for r1 in sh.cones[r]:
            d1 = sh.tl[r1] - 1
            vals[r1] = {x[d0:d1 + 1] for x in split(r1) if x[:len(z)] == z}
    hat_base = FiniteTree(vals)
    hat = validate_split(vals, hat_base, split.k)
    return Extension(Antichain(r for _, r, _ in chosen), hat, tuple(chosen))


def concatenate_witness(F, hF, G, hG, ext: Extension) -> Homomorphism:
    """h_{F∪G}(τ) = h_F(σ)⌢h_G(τ) with σ the F-leaf below τ."""
    F = F if isinstance(F, FiniteTree) else FiniteTree(as_nodes(F))
    G = G if isinstance(G, FiniteTree) else FiniteTree(as_nodes(G))
    hf = hF.as_dict() if isinstance(hF, Homomorphism) else dict(hF)
    hg = hG.as_dict() if isinstance(hG, Homomorphism) else dict(hG)
    out = dict(hf)
    for t in G:
        lf = next(lf for lf, r, _ in ext.bases if t.startswith(r))
        out[t] = tuple(hf[lf]) + tuple(hg[t])
    U = F.union(G.nodes)
    return Homomorphism(U, tuple((n, out[n]) for n in U))


def grow_homogeneous(split: TreeSplit, size: int):
    """A perfect homogeneous F ⊆ base with |F| > size, or None.

    Starts from the least base node and repeatedly extends each leaf σ by
    the least incomparable pair above σ whose cones are committed to one
    vector inducing σ's witness value (the two-base form of the extension
    step, which is what keeps F perfect)."""
    ref = refine(split)
    sh = shape(split.base)
    if not sh.order:
        return None
    r0 = sh.order[0]
    F = FiniteTree([r0])
    h = {r0: (min(ref(r0))[sh.tl[r0] - 1],)}
    while len(F) <= size:
        new_nodes, new_h = [], {}
        for lf in leaves(F):
            best = None
            for z in _inducers(ref, F, h, lf):
                ok = [r for r in sh.cones[lf] if r != lf and _committed(split, r, z)]
                for a, b in combinations(ok, 2):
                    if not compatible(a, b):
                        cand = (node_key(a), node_key(b), z, a, b)
                        if best is None or cand < best:
                            best = cand
                        break
            if best is None:
                return None
            _, _, z, a, b = best
            for x in (a, b):
                new_nodes.append(x)
                new_h[x] = tuple(h[lf]) + (min(ref(x))[sh.tl[x] - 1],)
        F = F.union(new_nodes)
        h.update(new_h)
    hom = Homomorphism(F, tuple((n, h[n]) for n in F))
    assert is_witness(F, ref, hom)
    return F, hom


# ---------------------------------------------------------------------------
# staged splits, stability, diagonalisation

@dataclass(frozen=True)
class StagedSplit:
    stages: tuple

    def __post_init__(self):
        if not self.stages:
            raise SplitError("empty-staged-split")
        b, k = self.stages[0].base, self.stages[0].k
        for s in self.stages:
            if s.base != b or s.k != k:
                raise SplitError("stage-mismatch")

    @property
    def final(self) -> TreeSplit:
        return self.stages[-1]


def coloring_from_staged_split(staged: StagedSplit) -> PairColoring:
    """C(σ,ρ) = ξ(|σ|) for the first σ′ on (σ, ρ] whose stage-|ρ| value is a
    singleton {ξ}; 0 when there is none."""
    base = staged.stages[0].base
    horizon = 1 + max((len(n) for n in base), default=-1)
    if base.nodes != frozenset(full_tree_nodes(horizon)):
        raise SplitError("base-not-full")

    def color(s: str, r: str) -> int:
        if len(r) >= len(staged.stages):
            raise SplitError("stage-missing", r, f"stage {len(r)}")
        stage = staged.stages[len(r)]
        for L in range(len(s) + 1, len(r) + 1):
            v = stage(r[:L])
            if len(v) == 1:
                return next(iter(v))[len(s)]
        return 0

    return PairColoring.from_function(horizon, staged.stages[0].k, color)


def split_weak_stability_verdict(split: TreeSplit):
    """Per node ρ, the least T-length d past which every node of ρ's cone
    restricts to a single vector at ρ's length.  Holds when every node has
    such a d (reported as the maximum); otherwise undetermined, since a
    finite frontier can never refute a limit property of a split.

    A leaf whose own value has several vectors is left open: its deciding
    extensions lie past the horizon, as for frontier nodes of a coloring."""
    from .coloring import StabilityVerdict
    sh = shape(split.base)
    ds = []
    for r in sh.order:
        n = sh.tl[r]
        cone = sh.cones[r]
        if len(cone) == 1 and len(split(r)) > 1:
            continue
        top = max(sh.tl[x] for x in cone)
        found = None
        for d in range(n, top + 1):
            if all(len(restrict(split(x), n)) == 1 for x in cone if sh.tl[x] >= d):
                found = d
                break
        if found is None:
            return StabilityVerdict("undetermined", r, tuple(ds))
        ds.append((r, found))
    d = max((x for _, x in ds), default=0)
    return StabilityVerdict("holds-at-horizon", None, (("d", d),) + tuple(ds))


def allocate_triples(forbidden, horizon: int) -> list:
    """One triple (σ, ρ0, ρ1) per forbidden tree: ρ0, ρ1 incomparable strict
    extensions of σ inside the tree, |σ| at least the tree's index and not
    used by an earlier triple; canonically least such."""
    from .treecore import is_perfect
    used: set = set()
    out = []
    for e, F in enumerate(forbidden):
        ns = sorted(as_nodes(F), key=node_key)
        if is_perfect(ns) is None:
            raise SplitError("forbidden-not-perfect", None, repr(ns))
        if any(len(n) >= horizon for n in ns):
            raise SplitError("triple-allocation-failed", None, "tree exceeds horizon")
        pick = None
        for s in ns:
            if len(s) < e or len(s) in used:
                continue
            above = [x for x in ns if len(x) > len(s) and x.startswith(s)]
            for a, b in combinations(above, 2):
                if not compatible(a, b):
                    pick = (s, a, b)
                    break
            if pick:
                break
        if pick is None:
            raise SplitError("triple-allocation-failed", None, f"forbidden tree {e}")
        used.add(len(pick[0]))
        out.append(pick)
    return out


def diagonal_split_builder(forbidden, horizon: int) -> TreeSplit:
    """Singleton-leaved 2-split on 2^{<horizon}: every node above ρ_i of a
    chosen triple has digit i at coordinate |σ|, all other digits 0."""
    triples = allocate_triples(forbidden, horizon)
    base = FiniteTree(full_tree_nodes(horizon))
    leaf_values = {}
    for lf in leaves(base):
        v = [0] * horizon
        for s, r0, r1 in triples:
            if lf.startswith(r0):
                v[len(s)] = 0
            elif lf.startswith(r1):
                v[len(s)] = 1
        leaf_values[lf] = {tuple(v)}
    return split_from_leaves(base, 2, leaf_values)
