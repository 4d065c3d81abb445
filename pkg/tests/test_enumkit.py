import random

import pytest
from hypothesis import given, settings, strategies as st

from treeramsey import generators as gen
from treeramsey.enumkit import (EnumerationError, EnumerationTrace, TargetSet, check_enumeration,
                                extract_enumeration)
from treeramsey.treecore import full_tree_nodes


def zeros(h):
    return EnumerationTrace(1, tuple((n, frozenset(["0" * n])) for n in range(h)))


def test_check_examples():
    everything = TargetSet(4, lambda x: True)
    assert check_enumeration(zeros(4), everything) == (True, None)
    holes = EnumerationTrace(1, ((0, frozenset([""])), (1, frozenset())))
    assert check_enumeration(holes, everything) == (False, (1, "miss"))
    ones = TargetSet(4, lambda x: x[:1] == "1")
    assert check_enumeration(zeros(4), ones) == (False, (0, "miss")) or \
        check_enumeration(zeros(4), TargetSet(4, lambda x: x == "" or x[0] == "1"))[1] == (1, "miss")
    assert check_enumeration(zeros(4), TargetSet(4, lambda x: x == "" or x[0] == "1")) == (False, (1, "miss"))


def test_check_horizon_and_bound():
    with pytest.raises(EnumerationError) as e:
        check_enumeration(zeros(5), TargetSet(4, lambda x: True))
    assert e.value.code == "horizon-mismatch"
    with pytest.raises(EnumerationError):
        EnumerationTrace(1, ((0, frozenset(["", "0"])),))
    ok, why = check_enumeration(zeros(2), TargetSet(3, lambda x: True), raw_entries={0: [""], 1: ["0", "1"]})
    assert (ok, why) == (False, (1, "bound"))


def test_target_rejects_beyond_horizon():
    with pytest.raises(EnumerationError):
        "000" in TargetSet(3, lambda x: True)


def test_extract_examples():
    full = {n: [[x for x in full_tree_nodes(n + 1) if len(x) == n]] for n in range(4)}
    tr = extract_enumeration(full, "singleton")
    assert [tr(n) for n in range(4)] == [{"0" * n} for n in range(4)]
    assert extract_enumeration({2: [["00", "01"], ["01", "11"]]})(2) == {"01"}
    tri = {2: [["00", "01"], ["01", "10"], ["10", "00"]]}
    assert extract_enumeration(tri, "blocking", 2)(2) == {"00", "01"}
    with pytest.raises(EnumerationError) as e:
        extract_enumeration(tri, "singleton")
    assert e.value.code == "no-common-element"
    with pytest.raises(EnumerationError) as e:
        extract_enumeration(tri, "blocking", 1)
    assert e.value.code == "no-blocking-set"


@settings(max_examples=150, deadline=None)
@given(st.randoms(use_true_random=False), st.sampled_from(["singleton", "blocking"]), st.integers(1, 3),
       st.integers(1, 6))
def test_extraction_soundness(rnd, mode, b, horizon):
    S, per_level = gen.enumeration_scenario(rnd, horizon, mode, b)
    tr = extract_enumeration(per_level, mode, b)
    bound = 1 if mode == "singleton" else b
    assert all(len(tr(n)) <= bound for n in range(horizon))
    assert check_enumeration(tr, TargetSet.from_members(horizon, S))[0]
