"""Nodes, finite trees, antichains and the structural predicates on them.

Nodes are plain ``str`` bit-strings; ``""`` is the root.  A finite tree is
any finite set of nodes ordered by the prefix relation, not necessarily
closed under initial segments.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterable, Iterator

ROOT = ""


class TreeError(ValueError):
    """Raised with a short machine-readable ``code`` attribute."""

    def __init__(self, code: str, detail: str = ""):
        super().__init__(f"{code}: {detail}" if detail else code)
        self.code = code


class BudgetExceeded(RuntimeError):
    """A search ran out of its time or size budget."""

    def __init__(self, message: str, lower_bound: int | None = None, partial=None):
        super().__init__(message)
        self.lower_bound = lower_bound
        self.partial = partial


def node_key(node: str) -> tuple[int, str]:
    return (len(node), node)


def check_node(node: str) -> str:
    if not isinstance(node, str) or node.strip("01"):
        raise TreeError("bad-node", repr(node))
    return node


def canonical(nodes: Iterable[str]) -> tuple[str, ...]:
    return tuple(sorted(set(nodes), key=node_key))


def is_prefix(a: str, b: str) -> bool:
    """a ⪯ b"""
    return b.startswith(a)


def compatible(a: str, b: str) -> bool:
    return a.startswith(b) or b.startswith(a)


def full_tree_nodes(depth: int) -> tuple[str, ...]:
    """Nodes of 2^{<depth} in canonical order."""
    out = []
    for n in range(depth):
        out.extend("".join(bits) for bits in product("01", repeat=n))
    return tuple(out)


def node_index(node: str) -> int:
    """Position of ``node`` in the canonical enumeration of 2^{<ω}."""
    return (1 << len(node)) - 1 + (int(node, 2) if node else 0)


@dataclass(frozen=True)
class FiniteTree:
    nodes: frozenset

    def __init__(self, nodes: Iterable[str] = ()):
        ns = frozenset(check_node(n) for n in nodes)
        object.__setattr__(self, "nodes", ns)

    def __iter__(self) -> Iterator[str]:
        return iter(sorted(self.nodes, key=node_key))

    def __len__(self) -> int:
        return len(self.nodes)

    def __contains__(self, node: object) -> bool:
        return node in self.nodes

    def __repr__(self) -> str:
        return "FiniteTree(" + ", ".join(repr(n) for n in self) + ")"

    def sorted(self) -> tuple[str, ...]:
        return tuple(self)

    def key(self) -> tuple:
        return tuple(node_key(n) for n in self)

    def cone(self, node: str) -> "FiniteTree":
        """T ∩ [node]^⪯"""
        return FiniteTree(n for n in self.nodes if n.startswith(node))

    def union(self, other: Iterable[str]) -> "FiniteTree":
        return FiniteTree(self.nodes | frozenset(other))

    def proper_prefixes(self, node: str) -> list[str]:
        return [node[:i] for i in range(len(node)) if node[:i] in self.nodes]

    def immediate_successors(self, node: str) -> list[str]:
        """Tree nodes strictly above ``node`` with no tree node in between."""
        out = [n for n in self.nodes
               if len(n) > len(node) and n.startswith(node) and self.parent(n) == node]
        return sorted(out, key=node_key)

    def parent(self, node: str) -> str | None:
        """Longest proper prefix of ``node`` in the tree."""
        for i in range(len(node) - 1, -1, -1):
            if node[:i] in self.nodes:
                return node[:i]
        return None


@dataclass(frozen=True)
class Antichain:
    nodes: frozenset

    def __init__(self, nodes: Iterable[str] = ()):
        ns = frozenset(check_node(n) for n in nodes)
        for a in ns:
            for b in ns:
                if a != b and b.startswith(a):
                    raise TreeError("not-an-antichain", f"{a!r} ⪯ {b!r}")
        object.__setattr__(self, "nodes", ns)

    def __iter__(self) -> Iterator[str]:
        return iter(sorted(self.nodes, key=node_key))

    def __len__(self) -> int:
        return len(self.nodes)

    def __contains__(self, node: object) -> bool:
        return node in self.nodes

    def __repr__(self) -> str:
        return "Antichain(" + ", ".join(repr(n) for n in self) + ")"


def as_nodes(tree) -> frozenset:
    if isinstance(tree, (FiniteTree, Antichain)):
        return tree.nodes
    return frozenset(tree)


def tlen(tree, node: str) -> int:
    ns = as_nodes(tree)
    if node not in ns:
        raise TreeError("node-not-in-tree", repr(node))
    return 1 + sum(1 for i in range(len(node)) if node[:i] in ns)


def depth(tree, node: str) -> int:
    return tlen(tree, node) - 1


def leaves(tree) -> Antichain:
    ns = as_nodes(tree)
    if not ns:
        return Antichain([ROOT])
    out = [n for n in ns if not any(m != n and m.startswith(n) for m in ns)]
    return Antichain(out)


def is_perfect(tree) -> int | None:
    """Height h when the tree is order-isomorphic to 2^{<h}, else None."""
    t = tree if isinstance(tree, FiniteTree) else FiniteTree(as_nodes(tree))
    if not t.nodes:
        return 0
    roots = [n for n in t.nodes if t.parent(n) is None]
    if len(roots) != 1:
        return None
    heights = set()
    for n in t.nodes:
        succ = t.immediate_successors(n)
        if not succ:
            heights.add(tlen(t, n))
        elif len(succ) != 2:
            return None
    if len(heights) != 1:
        return None
    return heights.pop()


def is_l_branching(tree, node: str, l: int, strict: bool = False) -> bool:
    """Every node of the cone above ``node`` has at least ``l`` pairwise
    incompatible immediate successors.  Leaves are exempt unless ``strict``."""
    t = tree if isinstance(tree, FiniteTree) else FiniteTree(as_nodes(tree))
    cone = t.cone(node)
    if not cone.nodes:
        return False
    for s in cone:
        succ = t.immediate_successors(s)
        if not succ and not strict:
            continue
        # immediate successors are automatically pairwise incompatible
        if len(succ) < l:
            return False
    return True


def extends_tree(bigger, smaller) -> bool:
    big, small = as_nodes(bigger), as_nodes(smaller)
    if not small <= big:
        return False
    lv = leaves(small).nodes
    return all(any(n.startswith(x) for x in lv) for n in big - small)


def is_cover(candidate, tree, one_one: bool = False) -> bool:
    cand = as_nodes(candidate)
    ns = as_nodes(tree)
    if not all(any(c.startswith(n) for c in cand) for n in ns):
        return False
    if one_one:
        lv = leaves(ns).nodes
        # each candidate extends at most one leaf since leaves are incomparable;
        # covering plus equal size therefore forces a bijection
        if len(cand) != len(lv):
            return False
        if not all(any(c.startswith(x) for x in lv) for c in cand):
            return False
    return True


def is_prefix_closed(tree) -> bool:
    ns = as_nodes(tree)
    return all(n[:-1] in ns for n in ns if n)


def is_positive_measure(tree, r) -> bool:
    ns = as_nodes(tree)
    if not is_prefix_closed(ns):
        raise TreeError("tree-not-prefix-closed")
    r = Fraction(r)
    if not ns:
        return False
    height = max(len(n) for n in ns)
    counts = [0] * (height + 1)
    for n in ns:
        counts[len(n)] += 1
    return all(Fraction(c, 2 ** s) > r for s, c in enumerate(counts))


def subtree_nodes_above(tree, roots: Iterable[str]) -> frozenset:
    """tree ∩ [roots]^⪯"""
    rs = tuple(roots)
    return frozenset(n for n in as_nodes(tree) if any(n.startswith(r) for r in rs))
