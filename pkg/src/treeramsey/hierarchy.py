"""Layered hierarchies of finite perfect trees and monochromatic cover selection."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .treecore import Antichain, FiniteTree, as_nodes, is_cover, is_perfect, leaves, node_key


class HierarchyError(ValueError):
    def __init__(self, code: str, detail: str = ""):
        super().__init__(f"{code}: {detail}" if detail else code)
        self.code = code


def _tree(t) -> FiniteTree:
    return t if isinstance(t, FiniteTree) else FiniteTree(as_nodes(t))


def _root(t: FiniteTree) -> str:
    return t.sorted()[0]


@dataclass(frozen=True)
class KHierarchy:
    layers: tuple  # tuple of tuples of FiniteTree, each layer sorted by root
    leaf_layers: tuple  # B_i as Antichains

    @property
    def k(self) -> int:
        return len(self.layers)

    @property
    def B(self) -> Antichain:
        return self.leaf_layers[-1]


def validate_hierarchy(raw_layers: Iterable[Iterable]) -> KHierarchy:
    layers = []
    for i, layer in enumerate(raw_layers):
        trees = [_tree(t) for t in layer]
        for t in trees:
            if not t.nodes or is_perfect(t) is None:
                raise HierarchyError("layer-tree-not-perfect", f"layer {i}: {t!r}")
        trees.sort(key=lambda t: node_key(_root(t)))
        layers.append(tuple(trees))
    if not layers:
        raise HierarchyError("no-layers")
    if len(layers[0]) != 1:
        raise HierarchyError("layer-zero-not-single", str(len(layers[0])))
    leaf_layers = []
    for i, trees in enumerate(layers):
        for a in range(len(trees)):
            for b in range(a + 1, len(trees)):
                ra, rb = _root(trees[a]), _root(trees[b])
                if trees[a].nodes & trees[b].nodes or ra.startswith(rb) or rb.startswith(ra):
                    raise HierarchyError("overlapping-trees", f"layer {i}")
        if i > 0:
            prev = leaf_layers[-1]
            for t in trees:
                r = _root(t)
                if not any(r != x and r.startswith(x) for x in prev):
                    raise HierarchyError("orphan-tree", f"layer {i}: root {r!r}")
            for x in prev:
                if not any(_root(t) != x and _root(t).startswith(x) for t in trees):
                    raise HierarchyError("uncovered-leaf", repr(x))
        leaf_layers.append(Antichain(frozenset().union(*(leaves(t).nodes for t in trees))))
    return KHierarchy(tuple(layers), tuple(leaf_layers))


@dataclass(frozen=True)
class Selection:
    color: int
    tree: FiniteTree
    subcover: Antichain

    def __iter__(self):
        return iter((self.color, self.tree, self.subcover))


def select_monochromatic_cover(h: KHierarchy, E, g: Mapping[str, int]) -> Selection:
    """Try color i on the current layer-i tree; if some leaf cone holds no
    E-element of color i, descend into the least such cone with the next
    color.  Once colors 0…i-1 are ruled out inside a cone, everything of E
    there has color ≥ i, so the last layer always succeeds."""
    E = frozenset(as_nodes(E))
    if not is_cover(E, h.B):
        raise HierarchyError("precondition-violated", "E does not cover B")
    for e in E:
        if e not in g or not 0 <= g[e] < h.k:
            raise HierarchyError("precondition-violated", f"g({e!r}) not a color below {h.k}")
    tree = h.layers[0][0]
    for i in range(h.k):
        bad = None
        picked = set()
        for lf in leaves(tree):
            above = [e for e in E if e.startswith(lf) and g[e] == i]
            if not above:
                bad = lf
                break
            picked.update(above)
        if bad is None:
            out = Selection(i, tree, Antichain(picked))
            assert is_cover(out.subcover, tree) and all(g[e] == i for e in out.subcover)
            return out
        if i + 1 == h.k:
            break
        nxt = [t for t in h.layers[i + 1] if _root(t) != bad and _root(t).startswith(bad)]
        tree = nxt[0]
    raise HierarchyError("selection-failed", "coloring uses more colors than layers")
