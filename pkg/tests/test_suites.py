import random

import pytest

from treeramsey import suites
from treeramsey.treecore import BudgetExceeded


def test_every_criterion_registered_once():
    assert sorted(suites.CRITERIA) == list(range(1, 12))
    listed = sorted(c.number for cs in suites.SUITES.values() for c in cs)
    assert listed == list(range(1, 12))


@pytest.mark.parametrize("name", ["tt2-finite", "enumeration-extraction", "staged-translation"])
def test_small_suites_pass(name):
    rep = suites.run_suite(name, seed=1)
    assert rep.status == "ok" and rep.failed == 0 and rep.instances > 0


def test_unknown_suite():
    with pytest.raises(suites.UnknownSuite):
        suites.run_suite("nope")


def test_budget_exceeded_reports_partial_work():
    rep = suites.run_suite("scatter-duality", budget_ms=200)
    assert rep.status == "budget-exceeded" and rep.failed == 0


def test_checks_on_slices():
    fams = [({"a"}, {"b"}), ({"a", "b"}, {"b", "c"}, {"c", "a"}), ({"a"}, {"a"})]
    for fam in fams:
        assert all(r.ok for r in suites.check_scatter_duality(tuple(map(frozenset, fam))))
        assert all(r.ok for r in suites.check_group_scatter(tuple(map(frozenset, fam))))
    rng = random.Random(0)
    for inst in list(suites.cross_instances(rng, 5)):
        assert all(r.ok for r in suites.check_cross(inst))
    for inst in list(suites.extension_instances(rng, 20)):
        assert all(r.ok for r in suites.check_extension(inst))


def test_records_deterministic_for_seed():
    a = suites.run_suite("staged-translation", seed=4, keep_records=True)
    b = suites.run_suite("staged-translation", seed=4, keep_records=True)
    assert a.records == b.records and a.summary() == b.summary()


def test_threads_preserve_results(monkeypatch):
    base = suites.run_suite("enumeration-extraction", seed=2, keep_records=True)
    monkeypatch.setenv("TREERAMSEY_THREADS", "4")
    par = suites.run_suite("enumeration-extraction", seed=2, keep_records=True)
    assert base.records == par.records
