"""Bounded enumerations at a finite horizon and their extraction from
flagged families."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Mapping

from .scatter import SetFamily, find_blocking_set
from .treecore import check_node, node_key


class EnumerationError(ValueError):
    def __init__(self, code: str, detail: str = ""):
        super().__init__(f"{code}: {detail}" if detail else code)
        self.code = code


@dataclass(frozen=True)
class TargetSet:
    horizon: int
    predicate: Callable[[str], bool]

    @classmethod
    def from_members(cls, horizon: int, members: Iterable[str]) -> "TargetSet":
        ms = frozenset(check_node(m) for m in members)
        return cls(horizon, ms.__contains__)

    def __contains__(self, node: str) -> bool:
        if len(node) >= self.horizon:
            raise EnumerationError("beyond-horizon", repr(node))
        return bool(self.predicate(node))


@dataclass(frozen=True)
class EnumerationTrace:
    bound: int
    entries: tuple  # ((n, frozenset), ...) for n = 0 … horizon-1

    def __post_init__(self):
        for n, s in self.entries:
            if len(s) > self.bound:
                raise EnumerationError("bound-violated", f"level {n}")

    @property
    def horizon(self) -> int:
        return 1 + max((n for n, _ in self.entries), default=-1)

    def __call__(self, n: int) -> frozenset:
        return dict(self.entries).get(n, frozenset())


def check_enumeration(trace: EnumerationTrace, S: TargetSet, raw_entries: Mapping | None = None):
    """(True, None) or (False, (n, clause)) for the least failing level.

    ``raw_entries`` lets callers check mappings that were never wrapped in a
    trace (the bound clause can then fail too)."""
    entries = dict(trace.entries) if raw_entries is None else {n: frozenset(v) for n, v in raw_entries.items()}
    horizon = trace.horizon if raw_entries is None else 1 + max(entries, default=-1)
    if horizon > S.horizon:
        raise EnumerationError("horizon-mismatch", f"{horizon} > {S.horizon}")
    for n in range(horizon):
        g = entries.get(n, frozenset())
        if len(g) > trace.bound:
            return False, (n, "bound")
        if not any(len(x) == n and x in S for x in g):
            return False, (n, "miss")
    return True, None


def extract_enumeration(per_level: Mapping[int, Iterable[Iterable[str]]], mode: str = "singleton",
                        b: int | None = None) -> EnumerationTrace:
    """singleton: g(n) = {least γ in every flagged set};
    blocking: g(n) = least blocking set of size ≤ b."""
    if mode not in ("singleton", "blocking"):
        raise EnumerationError("bad-mode", mode)
    if mode == "blocking" and (b is None or b < 0):
        raise EnumerationError("bad-bound")
    entries = []
    for n in sorted(per_level):
        fam = [frozenset(check_node(x) for x in v) for v in per_level[n]]
        if not fam:
            raise EnumerationError("empty-level", str(n))
        if mode == "singleton":
            common = frozenset.intersection(*fam)
            if not common:
                raise EnumerationError("no-common-element", f"level {n}")
            entries.append((n, frozenset([min(common, key=node_key)])))
        else:
            U = find_blocking_set(SetFamily(fam), b)
            if U is None:
                raise EnumerationError("no-blocking-set", f"level {n}")
            entries.append((n, U))
    return EnumerationTrace(1 if mode == "singleton" else b, tuple(entries))
