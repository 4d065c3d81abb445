"""Scattered families and blocking sets."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Iterator


class ScatterError(ValueError):
    def __init__(self, code: str, detail: str = ""):
        super().__init__(f"{code}: {detail}" if detail else code)
        self.code = code


def elem_key(x):
    return (len(x), x) if isinstance(x, str) else (0, x)


@dataclass(frozen=True)
class SetFamily:
    members: tuple  # of frozensets, indexed V_0 … V_{d-1}

    def __init__(self, members: Iterable[Iterable]):
        ms = tuple(frozenset(m) for m in members)
        if not ms:
            raise ScatterError("empty-family")
        for i, m in enumerate(ms):
            if not m:
                raise ScatterError("empty-member", str(i))
        object.__setattr__(self, "members", ms)

    def __len__(self) -> int:
        return len(self.members)

    def __getitem__(self, i):
        return self.members[i]

    def universe(self) -> tuple:
        return tuple(sorted(frozenset().union(*self.members), key=elem_key))

    def sub(self, indices: Iterable[int]) -> "SetFamily":
        return SetFamily(self.members[i] for i in sorted(indices))


def partitions(d: int, l: int) -> Iterator[tuple[frozenset, ...]]:
    """Every indexed partition W_0 … W_{l-1} of range(d), empty blocks allowed."""
    for labels in product(range(l), repeat=d):
        yield tuple(frozenset(i for i in range(d) if labels[i] == b) for b in range(l))


def is_blocking_set(U: Iterable, family: SetFamily) -> bool:
    u = frozenset(U)
    return all(m & u for m in family.members)


def find_blocking_set(family: SetFamily, l: int):
    """Canonically least blocking set of size ≤ l (smaller first, then
    lexicographic in element order), or None."""
    uni = family.universe()
    pos = {x: i for i, x in enumerate(uni)}
    masks = []
    for m in family.members:
        mm = 0
        for x in m:
            mm |= 1 << pos[x]
        masks.append(mm)
    # highest universe index occurring in each member, for pruning
    top = [mm.bit_length() - 1 for mm in masks]

    def search(size: int):
        chosen: list = []

        def rec(start: int, hit: int) -> bool:
            unhit = [j for j in range(len(masks)) if not hit >> j & 1]
            if not unhit:
                return True
            if len(chosen) == size:
                return False
            # every unhit member must still contain an element at index ≥ start
            if any(top[j] < start for j in unhit):
                return False
            for i in range(start, len(uni)):
                bit = 1 << i
                newly = 0
                for j in unhit:
                    if masks[j] & bit:
                        newly |= 1 << j
                if not newly:
                    continue
                chosen.append(i)
                if rec(i + 1, hit | newly):
                    return True
                chosen.pop()
            return False

        return [uni[i] for i in chosen] if rec(0, 0) else None

    for size in range(0, l + 1):
        got = search(size)
        if got is not None:
            return frozenset(got)
    return None


def _empty_meet_table(family: SetFamily) -> list[bool]:
    d = len(family)
    table = [False] * (1 << d)
    for mask in range(1, 1 << d):
        inter = None
        for i in range(d):
            if mask >> i & 1:
                inter = family.members[i] if inter is None else inter & family.members[i]
        table[mask] = not inter
    return table


def is_scattered(family: SetFamily, l: int) -> bool:
    """Every l-partition of the index set has a nonempty block whose
    members have empty intersection.  Checked partition by partition."""
    if l < 1:
        raise ScatterError("bad-l")
    d = len(family)
    empty = _empty_meet_table(family)
    for labels in product(range(l), repeat=d):
        blocks = [0] * l
        for i, b in enumerate(labels):
            blocks[b] |= 1 << i
        if not any(m and empty[m] for m in blocks):
            return False
    return True


def is_group_scattered(family: SetFamily, k: int, l: int) -> bool:
    """Every k-partition has a nonempty block whose subfamily is l-scattered."""
    if k < 1:
        raise ScatterError("bad-k")
    d = len(family)
    memo: dict = {}
    for labels in product(range(k), repeat=d):
        ok = False
        for b in range(k):
            idx = tuple(i for i in range(d) if labels[i] == b)
            if not idx:
                continue
            if idx not in memo:
                memo[idx] = is_scattered(family.sub(idx), l)
            if memo[idx]:
                ok = True
                break
        if not ok:
            return False
    return True
