import random
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from treeramsey import oracles
from treeramsey.coloring import LevelColoring
from treeramsey.forcing import (ColoringVectorClass, ForcingError, certifies, check_positive_witness,
                                check_sufficiency, is_somewhere_dense, make_condition, patch_predictor,
                                positive_witness, predictors, product_class, root_condition,
                                type2_parameters)
from treeramsey.scatter import SetFamily, is_group_scattered
from treeramsey.treecore import FiniteTree, full_tree_nodes


def const(depth, c):
    return LevelColoring(depth, 2, (c,) * len(full_tree_nodes(depth)))


def lc(depth, fn):
    return LevelColoring(depth, 2, tuple(fn(x) for x in full_tree_nodes(depth)))


ALL2 = [LevelColoring(2, 2, (a, b, c)) for a in (0, 1) for b in (0, 1) for c in (0, 1)]
T3 = FiniteTree(full_tree_nodes(3))


def test_somewhere_dense_examples():
    front = [x for x in T3 if len(x) == 2]
    assert is_somewhere_dense(front, "", T3) == ""
    assert is_somewhere_dense(["0"], "0", T3) is None
    assert is_somewhere_dense([x for x in T3 if x.startswith("0")], "", T3) == "0"


def test_predictor_examples():
    cls = ColoringVectorClass(1, 3, [(const(3, 0),)])
    ps = predictors(cls)
    assert [p.assignment for p in ps] == [((0,),) * 7]


@pytest.mark.parametrize("size", [1, 2, 3])
def test_predictors_match_oracle(size):
    for vecs in combinations(ALL2, size):
        cls = ColoringVectorClass(1, 2, [(c,) for c in vecs])
        got = {p.assignment for p in predictors(cls)}
        assert got == oracles.predictor_assignments(cls)
        assert got
        for p in predictors(cls):
            assert p.witness in cls.vectors and certifies(p.witness, p.assignment, 2)


def test_predictors_monotone_in_class():
    rnd = random.Random(4)
    for _ in range(60):
        big = rnd.sample(ALL2, rnd.randint(1, 8))
        small = rnd.sample(big, rnd.randint(1, len(big)))
        a = {p.assignment for p in predictors(ColoringVectorClass(1, 2, [(c,) for c in small]))}
        b = {p.assignment for p in predictors(ColoringVectorClass(1, 2, [(c,) for c in big]))}
        assert a <= b


def test_product_predictors_split_coordinatewise():
    rnd = random.Random(5)
    for _ in range(20):
        q0 = ColoringVectorClass(1, 2, [(c,) for c in rnd.sample(ALL2, 2)])
        q1 = ColoringVectorClass(1, 2, [(c,) for c in rnd.sample(ALL2, 2)])
        p0 = {p.assignment for p in predictors(q0)}
        p1 = {p.assignment for p in predictors(q1)}
        for p in predictors(product_class([q0, q1])):
            assert p.restrict_coordinates(0, 1) in p0 and p.restrict_coordinates(1, 2) in p1


def test_patch_examples():
    cls = ColoringVectorClass(1, 3, [(lc(3, lambda x: int(x[:1] == "1")),)])
    for g1 in predictors(cls):
        assert patch_predictor(g1, ["0", "1"], ["0", "1"], {"0": g1("0"), "1": g1("1")}) == g1
        g2 = patch_predictor(g1, ["0", "1"], [""], {"": g1("0")})
        diff = [x for x in full_tree_nodes(3) if g1(x) != g2(x)]
        assert diff in ([], [""])
        assert certifies(g2.witness, g2.assignment, 3)
        with pytest.raises(ForcingError):
            patch_predictor(g1, ["0"], ["1"], {"1": g1("1")})


def test_sufficiency_examples():
    cls = ColoringVectorClass(1, 3, [(const(3, 0),), (const(3, 1),)])
    assert check_sufficiency(root_condition(cls)) == (True, None)
    assert not check_sufficiency(make_condition({}, [{0}], 1, [""], cls))[0]
    ones = ColoringVectorClass(1, 3, [(const(3, 1),)])
    q = make_condition({(0, (0,)): [(FiniteTree(), [""])]}, [{0}], 1, [""], ones)
    ok, g = check_sufficiency(q)
    assert not ok and set(g.assignment) == {(1,)}


def test_positive_witness_examples():
    cls = ColoringVectorClass(1, 3, [(const(3, 0),)])
    w = positive_witness(root_condition(cls), levels=2)
    assert (w.i, set(w.I)) == (0, {0}) and len(w.G) == 3
    assert check_positive_witness(root_condition(cls), w) == (True, "ok")
    right = ColoringVectorClass(1, 3, [(lc(3, lambda x: 0 if x[:1] == "1" else 1),)])
    w = positive_witness(root_condition(right), levels=2)
    assert w.i == 0 and all(x.startswith("1") for x in w.G)
    assert check_positive_witness(root_condition(right), w)[0]
    with pytest.raises(ForcingError) as e:
        positive_witness(root_condition(cls), levels=4)
    assert e.value.code == "horizon-too-shallow"


@settings(max_examples=80, deadline=None)
@given(st.lists(st.lists(st.integers(0, 1), min_size=7, max_size=7), min_size=1, max_size=3))
def test_root_condition_is_sufficient_and_witnessed(rows):
    cls = ColoringVectorClass(1, 3, [(LevelColoring(3, 2, tuple(r)),) for r in rows])
    q = root_condition(cls)
    assert check_sufficiency(q)[0]
    w = positive_witness(q)
    assert check_positive_witness(q, w) == (True, "ok")


def test_type2_examples():
    cls = ColoringVectorClass(1, 2, [(const(2, 0),)])
    q = root_condition(cls)
    t = type2_parameters(q, [["0"]], 1, [cls])
    assert t.kernel == () and t.condition is None
    t = type2_parameters(q, [["0"], ["1"]], 1, [cls, cls])
    assert frozenset({0, 1}) in t.kernel
    assert t.product.d == 2 and t.condition.d == 2


def test_type2_preserves_sufficiency():
    rnd = random.Random(6)
    checked = 0
    for _ in range(60):
        base = ColoringVectorClass(1, 2, [(c,) for c in rnd.sample(ALL2, 4)])
        q = root_condition(base)
        fams = [[x for x in ("a", "b", "c", "d") if rnd.random() < 0.3] or [rnd.choice("abcd")]
                for _ in range(3)]
        if not is_group_scattered(SetFamily(fams), 2, 1):
            continue
        subs = [base.subclass(rnd.sample(base.vectors, rnd.randint(1, 4))) for _ in fams]
        t = type2_parameters(q, fams, 1, subs)
        assert t.condition is not None
        assert check_sufficiency(t.condition)[0]
        checked += 1
    assert checked > 0
