"""Finite-horizon kernel of the forcing conditions: coloring-vector classes,
density predictors, conditions and their sufficiency, positive witnesses and
the parameters of a type-II extension.

Everything lives on the full tree 2^{<depth}.  A coloring vector is a
d-tuple of 2-colorings of that tree; ζ(v, x) is the tuple of its colors at x.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, product
from typing import Iterable, Mapping, Sequence

from .coloring import LevelColoring
from .scatter import SetFamily, is_scattered
from .treecore import (Antichain, BudgetExceeded, FiniteTree, as_nodes, extends_tree,
                       full_tree_nodes, is_cover, is_perfect, leaves, node_key)


class ForcingError(ValueError):
    def __init__(self, code: str, detail: str = ""):
        super().__init__(f"{code}: {detail}" if detail else code)
        self.code = code


def zeta(vector: Sequence[LevelColoring], node: str) -> tuple:
    return tuple(c(node) for c in vector)


@dataclass(frozen=True)
class ColoringVectorClass:
    d: int
    depth: int
    vectors: tuple  # sorted, deduplicated tuple of d-tuples of LevelColoring

    def __init__(self, d: int, depth: int, vectors: Iterable[Sequence[LevelColoring]]):
        vs = set()
        for v in vectors:
            v = tuple(v)
            if len(v) != d:
                raise ForcingError("wrong-dimension", f"{len(v)} != {d}")
            for c in v:
                if c.depth != depth or c.k != 2:
                    raise ForcingError("wrong-coloring", "components must be 2-colorings at the class depth")
            vs.add(v)
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "depth", depth)
        object.__setattr__(self, "vectors", tuple(sorted(vs, key=lambda v: tuple(c.values for c in v))))

    def __len__(self) -> int:
        return len(self.vectors)

    def nodes(self) -> tuple[str, ...]:
        return full_tree_nodes(self.depth)

    def tree(self) -> FiniteTree:
        return FiniteTree(self.nodes())

    def subclass(self, vectors) -> "ColoringVectorClass":
        return ColoringVectorClass(self.d, self.depth, vectors)


def product_class(classes: Sequence[ColoringVectorClass]) -> ColoringVectorClass:
    depth = classes[0].depth
    if any(c.depth != depth for c in classes):
        raise ForcingError("depth-mismatch")
    d = sum(c.d for c in classes)
    vecs = [sum(parts, ()) for parts in product(*(c.vectors for c in classes))]
    return ColoringVectorClass(d, depth, vecs)


def is_somewhere_dense(X: Iterable[str], sigma: str, T) -> str | None:
    """Least ρ′ ⪰ σ in T such that every node of T∩[ρ′] extends into X."""
    t = T if isinstance(T, FiniteTree) else FiniteTree(as_nodes(T))
    xs = frozenset(as_nodes(X)) & t.nodes
    for r in t:
        if not r.startswith(sigma):
            continue
        if all(any(x.startswith(y) for x in xs) for y in t.nodes if y.startswith(r)):
            return r
    return None


@dataclass(frozen=True)
class Predictor:
    depth: int
    assignment: tuple  # ζ per node of 2^{<depth}, canonical order
    witness: tuple = field(compare=False)

    def __call__(self, node: str) -> tuple:
        return self.assignment[(1 << len(node)) - 1 + (int(node, 2) if node else 0)]

    def restrict_coordinates(self, lo: int, hi: int) -> tuple:
        return tuple(z[lo:hi] for z in self.assignment)


@lru_cache(maxsize=1 << 17)
def allowed_values(vector, depth: int) -> tuple:
    """Per node σ, the ζ whose color class is somewhere dense over σ."""
    T = FiniteTree(full_tree_nodes(depth))
    d = len(vector)
    zs = {}
    for x in T:
        zs.setdefault(zeta(vector, x), set()).add(x)
    out = []
    for s in T:
        out.append(tuple(z for z in product((0, 1), repeat=d)
                         if z in zs and is_somewhere_dense(zs[z], s, T) is not None))
    return tuple(out)


def certifies(vector, assignment: Sequence[tuple], depth: int) -> bool:
    T = FiniteTree(full_tree_nodes(depth))
    for s, z in zip(T, assignment):
        X = [x for x in T if zeta(vector, x) == tuple(z)]
        if is_somewhere_dense(X, s, T) is None:
            return False
    return True


def predictors(cls: ColoringVectorClass, max_count: int = 200_000) -> tuple[Predictor, ...]:
    """All density predictors of the class, sorted by assignment, each with
    the least certifying vector."""
    seen: dict = {}
    budget = 0
    tables = []
    for v in cls.vectors:
        allowed = allowed_values(v, cls.depth)
        size = 1
        for a in allowed:
            size *= len(a)
        budget += size
        if budget > max_count:
            raise BudgetExceeded(f"more than {max_count} predictors")
        tables.append((v, allowed))
    for v, allowed in tables:
        for assignment in product(*allowed):
            if assignment not in seen:
                seen[assignment] = v
    return tuple(Predictor(cls.depth, a, seen[a]) for a in sorted(seen))


def patch_predictor(g1: Predictor, E1, E2, h: Mapping[str, tuple]) -> Predictor:
    e1, e2 = as_nodes(E1), as_nodes(E2)
    for s in e2:
        ups = [t for t in e1 if t.startswith(s)]
        if not ups:
            raise ForcingError("precondition-violated", f"{s!r} not covered by E1")
        if not any(g1(t) == tuple(h[s]) for t in ups):
            raise ForcingError("precondition-violated", f"h({s!r}) not predicted above it")
    nodes = full_tree_nodes(g1.depth)
    assignment = tuple(tuple(h[s]) if s in e2 else z for s, z in zip(nodes, g1.assignment))
    return Predictor(g1.depth, assignment, g1.witness)


# ---------------------------------------------------------------------------
# conditions

def colored_on(F, i: int, I: Iterable[int], cls_or_vector) -> bool:
    vectors = cls_or_vector.vectors if isinstance(cls_or_vector, ColoringVectorClass) else [cls_or_vector]
    I = tuple(I)
    return all(v[n](x) == i for v in vectors for x in as_nodes(F) for n in I)


@dataclass(frozen=True)
class Precondition:
    F: FiniteTree
    B: Antichain
    i: int
    I: frozenset
    cls: ColoringVectorClass

    def __post_init__(self):
        if is_perfect(self.F) is None:
            raise ForcingError("not-perfect")
        if not is_cover(self.B, leaves(self.F), one_one=True):
            raise ForcingError("not-one-one-cover")
        if not colored_on(self.F, self.i, self.I, self.cls):
            raise ForcingError("not-colored")


@dataclass(frozen=True)
class Condition:
    slots: tuple  # (((i, I), ((F, B), ...)), ...) sorted
    index_family: frozenset  # of frozensets
    d: int
    E: Antichain
    cls: ColoringVectorClass

    def slot(self, i: int, I) -> tuple:
        return dict(self.slots).get((i, frozenset(I)), ())

    def slot_items(self):
        """(i, I, F, B) in canonical order."""
        for (i, I), pairs in self.slots:
            for F, B in pairs:
                yield i, I, F, B


def _slot_key(item):
    (i, I), _ = item
    return (i, tuple(sorted(I)))


def make_condition(slots, index_family: Iterable[Iterable[int]], d: int, E, cls) -> Condition:
    """Build a condition and check its structural clauses: d > 0 and 𝓘 ⊆
    P(d); a nonempty class of dimension d; every slot pair has F perfect,
    colored i on I by the class and B a cover of F; every B inside E.
    Sufficiency is checked separately by ``check_sufficiency``."""
    fam = frozenset(frozenset(I) for I in index_family)
    if d <= 0:
        raise ForcingError("bad-dimension", "d must be positive")
    if any(not I or any(not 0 <= n < d for n in I) for I in fam):
        raise ForcingError("bad-index-family", "index family outside P(d)")
    if not len(cls) or cls.d != d:
        raise ForcingError("bad-class", "class empty or of the wrong dimension")
    E = E if isinstance(E, Antichain) else Antichain(as_nodes(E))
    norm = []
    items = slots.items() if isinstance(slots, Mapping) else slots
    for (i, I), pairs in items:
        I = frozenset(I)
        if I not in fam:
            raise ForcingError("bad-index-family", f"slot index {sorted(I)} not in the index family")
        if i not in (0, 1):
            raise ForcingError("bad-slot", f"color {i}")
        ps = []
        for F, B in pairs:
            F = F if isinstance(F, FiniteTree) else FiniteTree(as_nodes(F))
            B = B if isinstance(B, Antichain) else Antichain(as_nodes(B))
            if is_perfect(F) is None:
                raise ForcingError("bad-slot", f"{F!r} not perfect")
            if not colored_on(F, i, I, cls):
                raise ForcingError("bad-slot", f"{F!r} not colored {i} on {sorted(I)}")
            if not is_cover(B, F):
                raise ForcingError("bad-slot", f"{B!r} does not cover {F!r}")
            if not B.nodes <= E.nodes:
                raise ForcingError("slot-outside-E", f"{B!r} not inside E")
            ps.append((F, B))
        ps.sort(key=lambda p: (p[0].key(), tuple(node_key(x) for x in p[1])))
        norm.append(((i, I), tuple(ps)))
    norm.sort(key=_slot_key)
    return Condition(tuple(norm), fam, d, E, cls)


def root_condition(cls: ColoringVectorClass) -> Condition:
    """q⁰: d = 1, 𝓘 = {{0}}, both slots {(∅, {ε})}, E = {ε}."""
    empty = (FiniteTree(), Antichain([""]))
    return make_condition({(0, (0,)): [empty], (1, (0,)): [empty]}, [{0}], 1, [""], cls)


def slot_for(q: Condition, g: Predictor):
    for i, I, F, B in q.slot_items():
        if all(g(s)[n] == i for s in B for n in I):
            return i, I, F, B
    return None


def check_sufficiency(q: Condition, max_count: int = 200_000):
    for g in predictors(q.cls, max_count):
        if slot_for(q, g) is None:
            return False, g
    return True, None


@dataclass(frozen=True)
class PositiveWitness:
    i: int
    I: frozenset
    F: FiniteTree
    B: Antichain
    vector: tuple
    G: FiniteTree


def _perfect_in(X: frozenset, root: str, height: int, T: FiniteTree) -> list[str] | None:
    """Perfect tree of the given height on X-nodes rooted at ``root``, using
    density of X below ``root``: each child of a node extends into X."""
    if height == 1:
        return [root]
    out = [root]
    for c in T.immediate_successors(root):
        ys = sorted((x for x in X if x.startswith(c)), key=node_key)
        if not ys:
            return None
        sub = _perfect_in(X, ys[0], height - 1, T)
        if sub is None:
            return None
        out.extend(sub)
    if len(T.immediate_successors(root)) != 2:
        return None
    return out


def _grow(q: Condition, g: Predictor, hit, levels: int):
    i, I, F, B = hit
    v = g.witness
    T = q.cls.tree()
    X = frozenset(x for x in T if all(v[n](x) == i for n in I))
    new: list[str] = []
    for lf in leaves(F):
        grown = None
        for b in sorted((x for x in B if x.startswith(lf)), key=node_key):
            Xg = [x for x in T if zeta(v, x) == g(b)]
            for cone in T:
                if not cone.startswith(b) or is_somewhere_dense(Xg, cone, T) != cone:
                    continue
                if not F.nodes:
                    starts = [min((x for x in X if x.startswith(cone)), key=node_key)]
                else:
                    kids = T.immediate_successors(cone)
                    if len(kids) != 2:
                        continue
                    starts = [min((x for x in X if x.startswith(c)), key=node_key) for c in kids]
                subs = [_perfect_in(X, s, levels, T) for s in starts]
                if all(sub is not None for sub in subs):
                    grown = [x for sub in subs for x in sub]
                    break
            if grown is not None:
                break
        if grown is None:
            return None
        new.extend(grown)
    return PositiveWitness(i, frozenset(I), F, B, v, F.union(new))


def positive_witness(q: Condition, levels: int = 1, max_count: int = 200_000) -> PositiveWitness:
    """Walk the predictors in order; for each, take the slot it selects and
    grow ``levels`` new levels above every leaf of F inside a cone of B
    where the predicted color is dense.  The first predictor whose growth
    fits under the horizon wins."""
    preds = predictors(q.cls, max_count)
    if not preds:
        raise ForcingError("empty-class")
    for g in preds:
        hit = slot_for(q, g)
        if hit is None:
            raise ForcingError("not-sufficient", "a predictor selects no slot")
        w = _grow(q, g, hit, levels)
        if w is not None:
            return w
    raise ForcingError("horizon-too-shallow", f"no predicted cone has room for {levels} level(s)")


def check_positive_witness(q: Condition, w: PositiveWitness) -> tuple[bool, str]:
    """Independent re-verification of a positive witness."""
    if (w.F, w.B) not in q.slot(w.i, w.I):
        return False, "slot"
    if w.vector not in q.cls.vectors:
        return False, "vector"
    if is_perfect(w.G) is None or w.G.nodes == w.F.nodes:
        return False, "perfection"
    if not extends_tree(w.G, w.F):
        return False, "extension"
    extra = w.G.nodes - w.F.nodes
    if not all(any(x.startswith(b) for b in w.B) for x in extra):
        return False, "cover"
    if not colored_on(extra, w.i, w.I, w.vector):
        return False, "coloring"
    return True, "ok"


@dataclass(frozen=True)
class TypeTwo:
    kernel: tuple  # 𝓚 as sorted tuple of frozensets
    product: ColoringVectorClass
    condition: Condition | None


def type2_parameters(q: Condition, families: Sequence[Iterable[str]], l_tilde: int,
                     subclasses: Sequence[ColoringVectorClass]) -> TypeTwo:
    """𝓚 = nonempty K ⊆ m with {V_k}_{k∈K} l̃-scattered, class* the product of
    the supplied subclasses, slots 𝓕*_{i, I×K} = 𝓕_{i,I}.  Coordinate (j, k)
    of the product sits at position k·d + j."""
    m = len(families)
    if len(subclasses) != m:
        raise ForcingError("subclass-count")
    fams = [frozenset(v) for v in families]
    if any(not v for v in fams):
        raise ForcingError("empty-family-member")
    kernel = []
    for size in range(1, m + 1):
        for K in combinations(range(m), size):
            if is_scattered(SetFamily(fams[k] for k in K), l_tilde):
                kernel.append(frozenset(K))
    prod = product_class(list(subclasses))
    if not kernel:
        return TypeTwo((), prod, None)
    d = q.d
    index = {}
    slots = {}
    for (i, I), pairs in q.slots:
        for K in kernel:
            IK = frozenset(k * d + j for j in I for k in K)
            index[IK] = True
            slots[(i, IK)] = list(pairs)
    for I in q.index_family:
        for K in kernel:
            index[frozenset(k * d + j for j in I for k in K)] = True
    cond = make_condition(slots, index, d * m, q.E, prod)
    return TypeTwo(tuple(sorted(kernel, key=lambda K: (len(K), sorted(K)))), prod, cond)
