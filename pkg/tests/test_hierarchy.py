import random

import pytest
from hypothesis import given, settings, strategies as st

from treeramsey import generators as gen, oracles
from treeramsey.hierarchy import HierarchyError, select_monochromatic_cover, validate_hierarchy
from treeramsey.treecore import is_cover

TWO = [[["", "0", "1"]], [["00", "000", "001"], ["10", "100", "101"]]]


def test_validate_examples():
    h = validate_hierarchy(TWO)
    assert h.B.nodes == {"000", "001", "100", "101"} and h.k == 2
    with pytest.raises(HierarchyError) as e:
        validate_hierarchy([[["", "0"]]])
    assert e.value.code == "layer-tree-not-perfect"
    with pytest.raises(HierarchyError) as e:
        validate_hierarchy([[["", "0", "1"]], [["00", "000", "001"]]])
    assert e.value.code == "uncovered-leaf"
    with pytest.raises(HierarchyError) as e:
        validate_hierarchy([[["", "0", "1"]], [["00", "000", "001"], ["10", "100", "101"], ["0", "00", "01"]]])
    assert e.value.code in ("orphan-tree", "overlapping-trees")


def test_selection_examples():
    h = validate_hierarchy(TWO)
    E = sorted(h.B)
    i, F, sub = select_monochromatic_cover(h, E, {e: 0 for e in E})
    assert i == 0 and F.nodes == {"", "0", "1"} and sub.nodes == set(E)
    g = {e: 0 for e in E}
    g["000"] = g["001"] = 1
    i, F, sub = select_monochromatic_cover(h, E, g)
    assert (i, F.nodes, sub.nodes) == (1, {"00", "000", "001"}, {"000", "001"})
    g = {e: 0 for e in E}
    g["000"] = g["100"] = 1
    i, F, sub = select_monochromatic_cover(h, E, g)
    assert (i, F.nodes, sub.nodes) == (0, {"", "0", "1"}, {"001", "101"})


def test_selection_needs_cover():
    h = validate_hierarchy(TWO)
    with pytest.raises(HierarchyError) as e:
        select_monochromatic_cover(h, ["000"], {"000": 0})
    assert e.value.code == "precondition-violated"


ALL_TWO = list(gen.hierarchies_two_layers())


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(ALL_TWO), st.randoms(use_true_random=False))
def test_selection_sound_and_complete(layers, rnd):
    h = validate_hierarchy(layers)
    E = sorted(h.B)
    g = {e: rnd.randrange(2) for e in E}
    assert oracles.selection_satisfiable(h.layers, E, g)
    sel = select_monochromatic_cover(h, E, g)
    assert sel.tree in h.layers[sel.color]
    assert all(g[e] == sel.color for e in sel.subcover)
    assert is_cover(sel.subcover, sel.tree)
    assert select_monochromatic_cover(h, E, g) == sel


def test_three_layer_sample():
    rnd = random.Random(3)
    for layers in gen.hierarchies_three_layers():
        h = validate_hierarchy(layers)
        E = sorted(h.B)
        for _ in range(50):
            g = {e: rnd.randrange(3) for e in E}
            sel = select_monochromatic_cover(h, E, g)
            assert is_cover(sel.subcover, sel.tree) and all(g[e] == sel.color for e in sel.subcover)
