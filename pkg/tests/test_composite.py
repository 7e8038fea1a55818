import pytest

from dcx import (
    CLASSES, NO, UNKNOWN, YES, YES_WINDOW, Certificate, DiscreteFunction, DiscreteSet, InconsistencyError,
    Verdict, classify_all, recheck, refute_or_search_composite,
)
from dcx.catalog import paper_example
from dcx.composite import check_consistency, propagate_inclusions


def ex(name):
    return paper_example(name).object


def test_report_covers_every_class():
    rep = classify_all(DiscreteSet(2, [(0, 0)]))
    assert set(rep.verdicts) == set(CLASSES)
    assert rep.status("sep") == YES and rep.status("M") == YES


def test_report_text_and_json():
    rep = classify_all(ex("fig1b"))
    lines = rep.to_text().splitlines()
    assert len(lines) == len(CLASSES)
    assert lines[0].split()[0] == CLASSES[0]
    by_class = {d["class"]: d for d in rep.to_json()}
    assert by_class["Lnat"]["status"] == NO and "witness" in by_class["Lnat"]


def test_no_verdicts_in_reports_recheck():
    for name in ("fig1a", "fig1b", "mm_line", "dmc_not_ddmc", "antidiag2", "diag2", "l2nat_set"):
        obj = ex(name)
        rep = classify_all(obj)
        for cls in CLASSES:
            v = rep[cls]
            if v.status == NO:
                assert recheck(obj, v.witness), (name, cls)


def test_composite_search_decisions():
    assert refute_or_search_composite(ex("antidiag2"), "L2nat").status == NO
    assert refute_or_search_composite(ex("diag2"), "M2nat").status == NO
    assert refute_or_search_composite(ex("l2nat_set"), "L2nat").status == YES
    # 16 points in the bounding box: beyond the default guard, decided at 16
    assert refute_or_search_composite(ex("common_bases"), "M2nat").status == UNKNOWN
    assert refute_or_search_composite(ex("common_bases"), "M2nat", guard=16).status == YES


def test_composite_guard_gives_unknown():
    S = ex("l2nat_set")
    assert refute_or_search_composite(S, "L2nat", guard=2).status == UNKNOWN


def test_propagation_from_unconditional_yes_only():
    v = {c: Verdict(UNKNOWN) for c in CLASSES}
    v["M"] = Verdict(YES)
    propagate_inclusions(v)
    assert v["Mnat"].status == YES and v["Mnat"].detail == {"via": "M"}
    assert v["M2nat"].status == YES
    w = {c: Verdict(UNKNOWN) for c in CLASSES}
    w["L"] = Verdict(YES_WINDOW)
    propagate_inclusions(w)
    assert all(w[c].status == UNKNOWN for c in CLASSES if c != "L")


def test_inconsistency_is_raised():
    v = {c: Verdict(UNKNOWN) for c in CLASSES}
    v["sep"] = Verdict(YES)
    v["Lnat"] = Verdict(NO, {"rule": "made_up"})
    with pytest.raises(InconsistencyError):
        check_consistency(v)


def test_supplied_certificate_is_used():
    entry = paper_example("l2_hyperplane")
    rep = classify_all(entry.object, entry.certificates)
    assert rep.status("L2") == YES_WINDOW


def test_bad_certificate_gives_witness():
    S = ex("l2nat_set")
    wrong = Certificate("minkowski", (DiscreteSet(3, [(0, 0, 0)]), DiscreteSet(3, [(0, 0, 0)])))
    rep = classify_all(S, {"L2nat": wrong})
    # the search still decides; the rejection is kept alongside
    assert rep.status("L2nat") == YES
    rejected = rep["L2nat"].detail["certificate_rejected"]
    assert rejected["rule"] == "recombination" and recheck(S, rejected, wrong)


def test_function_composites_are_unknown_without_certificate():
    f = DiscreteFunction(2, {(0, 0): 0, (1, 0): 1, (0, 1): 1, (2, 1): 5})
    rep = classify_all(f)
    assert rep.status("int") == NO and rep.status("L2nat") == NO


def test_exhaustive_refutation_rechecks():
    # passes the cheap refutations; only the full search rules it out
    S = DiscreteSet(3, [(0, 0, 0), (0, 0, 1), (0, 1, 0), (1, 1, 1)])
    v = refute_or_search_composite(S, "L2nat")
    assert v.status == NO and v.witness["rule"] == "no_decomposition"
    assert recheck(S, v.witness)
