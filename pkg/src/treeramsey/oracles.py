"""Brute-force reference implementations.

Each function here answers the same question as a library routine by the
most direct search available, with no shared search logic.  They are slow
on purpose and only meant for small instances.
"""

from __future__ import annotations

from itertools import combinations, product

from .coloring import PairColoring
from .forcing import ColoringVectorClass, zeta
from .splitkit import SplitError, validate_split
from .treecore import FiniteTree, as_nodes, node_key, tlen


def raw_split_oracle(base, k: int) -> set:
    """Every valid split on ``base``, found by validating every assignment
    of a nonempty vector set to every node."""
    base = base if isinstance(base, FiniteTree) else FiniteTree(as_nodes(base))
    order = base.sorted()
    pools = []
    for n in order:
        vecs = list(product(range(k), repeat=tlen(base, n)))
        pools.append([frozenset(c) for r in range(1, len(vecs) + 1) for c in combinations(vecs, r)])
    out = set()
    for choice in product(*pools):
        try:
            s = validate_split(dict(zip(order, choice)), base, k)
        except SplitError:
            continue
        out.add(s.values)
    return out


def raw_split_count(base, k: int) -> int:
    """Number of raw assignments ``raw_split_oracle`` would inspect."""
    ns = as_nodes(base)
    total = 1
    for n in ns:
        total *= 2 ** (k ** tlen(ns, n)) - 1
    return total


def has_height_two_copy(coloring: PairColoring) -> bool:
    """Some σ with two incomparable strict extensions of equal color toward σ."""
    dom = coloring.domain()
    for a in dom:
        above = [x for x in dom if len(x) > len(a) and x.startswith(a)]
        for b, c in combinations(above, 2):
            if not (b.startswith(c) or c.startswith(b)) and coloring(a, b) == coloring(a, c):
                return True
    return False


def homogeneous_subtrees(coloring: PairColoring, height: int) -> list:
    """Every perfect copy of 2^{<height} on which the coloring is constant,
    by checking every node set of the right size."""
    from .coloring import is_homogeneous, VACUOUS
    from .treecore import is_perfect
    dom = coloring.domain()
    out = []
    for combo in combinations(dom, (1 << height) - 1):
        if is_perfect(combo) == height:
            c = is_homogeneous(combo, coloring)
            if c is not None:
                out.append(FiniteTree(combo))
    return out


def selection_satisfiable(layers, E, g) -> bool:
    """Whether some layer-i tree has all its leaf cones meeting E-nodes of
    color i (the largest candidate sub-cover is E∩g⁻¹(i))."""
    for i, layer in enumerate(layers):
        keep = [e for e in E if g[e] == i]
        for t in layer:
            if all(any(e.startswith(n) for e in keep) for n in t):
                return True
    return False


def dense_somewhere(X, sigma: str, T) -> bool:
    """Some frontier node of T above σ lies in X.  On a full finite tree
    this is the same as X being dense over some node above σ."""
    ns = as_nodes(T)
    top = max(len(n) for n in ns)
    xs = set(as_nodes(X))
    return any(n in xs for n in ns if len(n) == top and n.startswith(sigma))


def predictor_assignments(cls: ColoringVectorClass) -> set:
    """All assignments node → ζ certified by some vector, by testing every
    assignment against every vector."""
    T = cls.tree()
    nodes = T.sorted()
    out = set()
    zetas = list(product((0, 1), repeat=cls.d))
    for v in cls.vectors:
        classes = {z: [x for x in nodes if zeta(v, x) == z] for z in zetas}
        for assignment in product(zetas, repeat=len(nodes)):
            if all(dense_somewhere(classes[z], s, T) for s, z in zip(nodes, assignment)):
                out.add(assignment)
    return out


def min_blocking_size(family) -> int | None:
    """Size of a smallest blocking set, by trying subsets of the universe."""
    uni = sorted(frozenset().union(*map(frozenset, family)))
    for r in range(0, len(uni) + 1):
        for U in combinations(uni, r):
            u = set(U)
            if all(u & set(m) for m in family):
                return r
    return None
