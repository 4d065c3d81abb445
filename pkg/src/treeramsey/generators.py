"""Seeded instance generators for the suites and property tests."""

from __future__ import annotations

import random
from itertools import combinations, combinations_with_replacement, product

from .coloring import LevelColoring
from .splitkit import StagedSplit, TreeSplit, restrict, shape, split_from_leaves
from .treecore import FiniteTree, full_tree_nodes, leaves, node_key


def nonempty_subsets(universe):
    u = list(universe)
    return [frozenset(c) for r in range(1, len(u) + 1) for c in combinations(u, r)]


def all_families(universe="abcde", max_d=4):
    """Every family (multiset) of 1…max_d nonempty subsets of the universe."""
    subs = sorted(nonempty_subsets(universe), key=lambda s: (len(s), sorted(s)))
    for d in range(1, max_d + 1):
        yield from combinations_with_replacement(subs, d)


def random_vector_set(rng: random.Random, length: int, k: int, p_single: float = 0.3,
                      prefix: tuple = ()) -> frozenset:
    """A random nonempty set of length-``length`` vectors extending ``prefix``."""
    free = length - len(prefix)
    pool = [prefix + t for t in product(range(k), repeat=free)]
    if rng.random() < p_single:
        return frozenset([rng.choice(pool)])
    size = rng.randint(1, min(len(pool), 4))
    return frozenset(rng.sample(pool, size))


def random_split(rng: random.Random, base, k: int = 2, p_single: float = 0.3) -> TreeSplit:
    base = base if isinstance(base, FiniteTree) else FiniteTree(base)
    sh = shape(base)
    vals = {lf: random_vector_set(rng, sh.tl[lf], k, p_single) for lf in sh.leaf_set}
    return split_from_leaves(base, k, vals)


def committed_split(rng: random.Random, depth: int, k: int = 2) -> TreeSplit:
    """A split on 2^{<depth} whose leaf sets share a random prefix along a
    random cut, so cones above the cut are committed early."""
    base = FiniteTree(full_tree_nodes(depth))
    sh = shape(base)
    cut_len = rng.randint(1, max(1, depth - 2))
    heads = {}
    vals = {}
    for lf in sorted(sh.leaf_set, key=node_key):
        c = lf[:cut_len]
        if c not in heads:
            heads[c] = tuple(rng.randrange(k) for _ in range(cut_len + 1))
        vals[lf] = random_vector_set(rng, sh.tl[lf], k, 0.5, heads[c] if rng.random() < 0.95 else ())
    return split_from_leaves(base, k, vals)


def staged_split(rng: random.Random, depth: int, k: int = 2) -> StagedSplit:
    """Stages 0…depth-1 plus the final split, all on 2^{<depth}.

    Stage s picks one vector ξ_ρ of the final value at every length-s node
    ρ and narrows the leaves below ρ to final vectors extending ξ_ρ (any
    vectors extending ξ_ρ when none do), so stage s puts the singleton
    {ξ_ρ} ⊆ final(ρ) at each length-s node."""
    base = FiniteTree(full_tree_nodes(depth))
    sh = shape(base)
    final = random_split(rng, base, k, 0.3)
    stages = []
    for s in range(depth):
        vals = {}
        for r in (n for n in sh.order if len(n) == s):
            xi = rng.choice(sorted(final(r)))
            for lf in sh.leaf_set:
                if not lf.startswith(r):
                    continue
                keep = {v for v in final(lf) if v[:len(xi)] == xi}
                vals[lf] = keep or {rng.choice(sorted(random_vector_set(rng, sh.tl[lf], k, 1.0, xi)))}
        stages.append(split_from_leaves(base, k, vals))
    stages.append(final)
    return StagedSplit(tuple(stages))


def height_two_trees(depth: int):
    """All perfect trees {σ, ρ0, ρ1} inside 2^{<depth}."""
    nodes = full_tree_nodes(depth)
    for s in nodes:
        above = [x for x in nodes if len(x) > len(s) and x.startswith(s)]
        for a, b in combinations(above, 2):
            if not (a.startswith(b) or b.startswith(a)):
                yield FiniteTree([s, a, b])


def local_height_two(root: str, reach: int = 2):
    """Height-2 perfect trees rooted at ``root`` with children at most
    ``reach`` levels above it."""
    above = [root + x for x in full_tree_nodes(reach + 1) if x]
    for a, b in combinations(above, 2):
        if not (a.startswith(b) or b.startswith(a)):
            yield FiniteTree([root, a, b])


def hierarchies_two_layers():
    """Raw layers of every 2-layer hierarchy whose trees are local
    height-2 trees: layer 0 rooted at ε, one layer-1 tree per leaf, rooted
    at a child of that leaf."""
    for t0 in local_height_two(""):
        lvs = leaves(t0).nodes
        lvs = sorted(lvs, key=node_key)
        options = [[t for c in (x + "0", x + "1") for t in local_height_two(c)] for x in lvs]
        for choice in product(*options):
            yield [[t0], list(choice)]


def hierarchies_three_layers(limit_first: int = 2, limit_second: int = 2):
    """A fixed sample of 3-layer hierarchies (leftmost shapes)."""
    t0s = list(local_height_two(""))[:limit_first]
    for t0 in t0s:
        lv0 = sorted(leaves(t0).nodes, key=node_key)
        opts1 = [list(local_height_two(x + "0"))[:limit_second] for x in lv0]
        for layer1 in product(*opts1):
            lv1 = sorted(set().union(*(leaves(t).nodes for t in layer1)), key=node_key)
            layer2 = [next(iter(local_height_two(x + "0"))) for x in lv1]
            yield [[t0], list(layer1), layer2]


def level_colorings(depth: int):
    nodes = full_tree_nodes(depth)
    for vals in product((0, 1), repeat=len(nodes)):
        yield LevelColoring(depth, 2, vals)


def random_level_coloring(rng: random.Random, depth: int) -> LevelColoring:
    return LevelColoring(depth, 2, tuple(rng.randrange(2) for _ in full_tree_nodes(depth)))


def enumeration_scenario(rng: random.Random, horizon: int, mode: str, b: int = 2):
    """A target set S below the horizon plus flagged families per level in
    which one flagged set lies inside S, the rest padded with noise.

    Returns (members of S, per-level families)."""
    S = set()
    per_level = {}
    for n in range(horizon):
        level = [x for x in full_tree_nodes(n + 1) if len(x) == n]
        size = 1 if mode == "singleton" else rng.randint(1, min(b, len(level)))
        targets = rng.sample(level, size)
        S.update(targets)
        S.update(x for x in level if rng.random() < 0.2)
        fam = [set(targets)]
        for _ in range(rng.randint(0, 4)):
            noise = {x for x in level if rng.random() < 0.4}
            if mode == "singleton":
                fam.append(noise | set(targets))
            else:
                fam.append(noise | {rng.choice(targets)})
        rng.shuffle(fam)
        per_level[n] = [sorted(v, key=node_key) for v in fam]
    return sorted(S, key=node_key), per_level
