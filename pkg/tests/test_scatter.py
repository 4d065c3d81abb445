from hypothesis import given, settings, strategies as st

from treeramsey import oracles
from treeramsey.scatter import (SetFamily, find_blocking_set, is_blocking_set, is_group_scattered,
                                is_scattered, partitions)

TRI = SetFamily([{"a", "b"}, {"b", "c"}, {"c", "a"}])

families = st.lists(st.frozensets(st.sampled_from("abcde"), min_size=1), min_size=1, max_size=4)


def test_blocking_examples():
    assert is_blocking_set({"a"}, SetFamily([{"a"}, {"a"}]))
    assert not is_blocking_set({"a"}, SetFamily([{"a"}, {"b"}]))
    assert not is_blocking_set(set(), SetFamily([{"a"}]))


def test_find_blocking_examples():
    assert find_blocking_set(SetFamily([{"a"}, {"a"}]), 1) == {"a"}
    assert find_blocking_set(TRI, 1) is None
    # canonical least of {a,b}, {a,c}, {b,c} in sorted order is {a,b}
    assert find_blocking_set(TRI, 2) == {"a", "b"}


def test_scattered_examples():
    assert is_scattered(SetFamily([{"a"}, {"b"}]), 1)
    assert not is_scattered(SetFamily([{"a"}, {"a"}]), 1)
    assert not is_scattered(TRI, 2)
    assert is_scattered(TRI, 1)


def test_group_scattered_examples():
    assert is_group_scattered(SetFamily([{"a"}, {"b"}]), 1, 1)
    assert not is_group_scattered(TRI, 2, 1)
    assert not is_group_scattered(SetFamily([{"a"}, {"b"}]), 2, 1)


def test_partitions_allow_empty_blocks():
    parts = list(partitions(2, 2))
    assert len(parts) == 4
    assert any(not blk for p in parts for blk in p)


@settings(max_examples=300, deadline=None)
@given(families, st.integers(1, 3))
def test_scattered_iff_no_small_blocking_set(fam, l):
    F = SetFamily(fam)
    U = find_blocking_set(F, l)
    assert is_scattered(F, l) == (U is None)
    least = oracles.min_blocking_size(fam)
    assert (U is not None) == (least is not None and least <= l)
    if U is not None:
        assert is_blocking_set(U, F) and len(U) == least


@settings(max_examples=200, deadline=None)
@given(families, st.integers(1, 2), st.integers(1, 2))
def test_group_scatter_matches_product(fam, k, l):
    F = SetFamily(fam)
    assert is_scattered(F, k * l) == is_group_scattered(F, k, l)


@settings(max_examples=200, deadline=None)
@given(families, st.integers(1, 3))
def test_blockable_stays_blockable(fam, l):
    F = SetFamily(fam)
    if not is_scattered(F, l):
        assert all(not is_scattered(F, m) for m in range(l, 6))
