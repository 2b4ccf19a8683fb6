import pytest

from emrings.analysis import SearchCaps
from emrings.presets import preset_corpus
from emrings.theorems import CorpusEntry, _row, suite_failures, theorem_suite


def _by_name(reports):
    return {r.property: r for r in reports}


@pytest.fixture(scope="module")
def small_suite():
    entries = preset_corpus(["z2", "z4", "z6", "e1", "e1-idealization"])
    return theorem_suite(entries, SearchCaps())


def test_suite_zero_failures_on_small_corpus(small_suite):
    assert suite_failures(small_suite) == []


def test_suite_row_shape(small_suite):
    rows = _by_name(small_suite)
    # c7 on the idealization: Z4 is EM and Z4(+)Z4 is EM-graded
    c7 = rows["c7@e1-idealization"]
    assert c7.verdict == "true" and c7.bounds["sides"] == [True, True]
    # t3 on e1: EM-graded, so Armendariz-graded at the bounded degree
    t3 = rows["t3@e1"]
    assert t3.bounds["hypothesis"] is True and t3.bounds["conclusion"] is True
    # c2 on e1: not a crossed product, so vacuous
    assert rows["c2@e1"].bounds["hypothesis"] is False
    # t8 on z2: a field satisfies the no-homogeneous-zero-divisor condition
    t8 = rows["t8@z2"]
    assert t8.bounds["hypothesis"] is True and t8.bounds["conclusion"] is True


def test_row_semantics(z4, e1, e1_grading):
    entry = CorpusEntry("x", e1, e1_grading)
    vacuous = _row("tag", entry, False, None)
    assert vacuous.verdict == "true" and vacuous.bounds["hypothesis"] is False
    violated = _row("tag", entry, True, False, detail={"why": "test"})
    assert violated.verdict == "false"
    assert violated.witness["conclusion_failed"] is True
    skipped = _row("tag", entry, None, None, skipped="order cap")
    assert skipped.verdict == "true" and skipped.bounds["skipped"] == "order cap"


def test_t6_runs_on_product_preset():
    entries = preset_corpus(["prod-e1sm"])
    rows = _by_name(theorem_suite(entries, SearchCaps()))
    assert rows["t6@prod-e1sm"].bounds["sides"] == [True, True]
    assert not suite_failures(list(rows.values()))


def test_t11_only_on_idealizations(small_suite):
    rows = _by_name(small_suite)
    assert "t11@e1-idealization" in rows
    assert "t11@z6" not in rows


def test_suite_deterministic_across_jobs():
    entries = preset_corpus(["z6", "e1"])
    a = theorem_suite(entries, SearchCaps(jobs=1))
    b = theorem_suite(entries, SearchCaps(jobs=4))
    assert [r.to_dict(timing=False) for r in a] == [r.to_dict(timing=False) for r in b]
