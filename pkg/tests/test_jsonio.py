import random

import pytest
from hypothesis import given, settings, strategies as st

from treeramsey import generators as gen, jsonio
from treeramsey.coloring import PairColoring, pair_list
from treeramsey.enumkit import EnumerationTrace
from treeramsey.forcing import ColoringVectorClass, root_condition
from treeramsey.treecore import FiniteTree, full_tree_nodes


def roundtrip(obj):
    return jsonio.loads(jsonio.dumps(obj))


@settings(max_examples=50, deadline=None)
@given(st.randoms(use_true_random=False))
def test_split_roundtrip(rnd):
    f = gen.random_split(rnd, full_tree_nodes(3), rnd.choice([2, 3]), 0.4)
    assert jsonio.parse_split(roundtrip(jsonio.split_to_json(f))) == f


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(0, 2), min_size=len(pair_list(3)), max_size=len(pair_list(3))))
def test_pair_coloring_roundtrip(vals):
    c = PairColoring(3, 3, tuple(vals))
    assert jsonio.parse_pair_coloring(roundtrip(jsonio.pair_coloring_to_json(c))) == c


def test_level_coloring_and_class_roundtrip():
    rnd = random.Random(2)
    cls = ColoringVectorClass(1, 3, [(gen.random_level_coloring(rnd, 3),) for _ in range(3)])
    assert jsonio.parse_class(roundtrip(jsonio.class_to_json(cls))) == cls
    q = root_condition(cls)
    assert jsonio.parse_condition(roundtrip(jsonio.condition_to_json(q))) == q


def test_trace_roundtrip():
    t = EnumerationTrace(2, ((0, frozenset([""])), (1, frozenset(["0", "1"]))))
    assert jsonio.parse_trace(roundtrip(jsonio.trace_to_json(t))) == t


def test_tree_and_family():
    assert jsonio.parse_tree({"nodes": ["", "0"]}) == FiniteTree(["", "0"])
    assert jsonio.parse_tree(["1"]).nodes == {"1"}
    fam = jsonio.parse_family({"members": [["0", "1"], ["1"]]})
    assert len(fam) == 2


def test_dumps_is_canonical():
    assert jsonio.dumps({"b": 1, "a": [1, 2]}) == '{"a":[1,2],"b":1}'


@pytest.mark.parametrize("text,where", [
    ('{"nodes": ["", "2"]}', "tree.nodes[1]"),
    ('{"nodes": ["", ""]}', "tree.nodes"),
    ('{"node": []}', "tree"),
])
def test_tree_errors(text, where):
    with pytest.raises(jsonio.ParseError) as e:
        jsonio.parse_tree(jsonio.loads(text))
    assert e.value.where == where


def test_syntax_error_has_position():
    with pytest.raises(jsonio.ParseError) as e:
        jsonio.loads('{"a": [1,\n 2', "x.json")
    assert "x.json" in e.value.where and "line 2" in e.value.where


def test_split_errors_are_parse_errors():
    bad = {"k": 2, "tree": ["", "0", "1"], "values": {"": ["0"], "0": ["10"], "1": ["00"]}}
    with pytest.raises(jsonio.ParseError):
        jsonio.parse_split(bad)
    with pytest.raises(jsonio.ParseError):
        jsonio.parse_split({"k": 2, "tree": [""], "values": {"": ["x"]}})


def test_scenario_and_mode():
    per, mode, b = jsonio.parse_scenario({"levels": {"1": [["0", "1"]]}, "mode": "blocking", "b": 2})
    assert per == {1: [["0", "1"]]} and (mode, b) == ("blocking", 2)
    with pytest.raises(jsonio.ParseError):
        jsonio.parse_scenario({"levels": {"1": []}, "mode": "other"})
