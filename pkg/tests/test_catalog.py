import pytest

from dcx import CLASSES, YES, DiscreteSet, classify_all, check_pair, paper_example
from dcx.catalog import UnknownExample, catalog

REQUIRED = {"fig1a", "fig1a_max", "fig1b", "fig1b_max", "s_hat", "l_line", "mm_line", "dmc_not_ddmc",
            "ddmc_not_dmc", "quad_diag", "quad_sum", "l2nat_set", "l2_hyperplane", "antidiag2", "diag2",
            "antidiag3", "common_bases"}


def test_catalog_contents():
    assert REQUIRED <= set(catalog())
    for e in catalog().values():
        assert set(e.expected) <= set(CLASSES)
        assert e.provenance


@pytest.mark.parametrize("name", sorted(REQUIRED))
def test_expected_verdicts(name):
    e = paper_example(name)
    rep = classify_all(e.object, e.certificates)
    for cls, status in e.expected.items():
        assert rep.status(cls) == status, (name, cls)


@pytest.mark.parametrize("name", sorted(n for n in REQUIRED if paper_example(n).pairs))
def test_named_pairs_violate(name):
    e = paper_example(name)
    for cls, x, y in e.pairs:
        assert check_pair(e.object, cls, x, y) is not None


def test_entry_examples():
    e = paper_example("fig1a")
    assert (e.expected["mm"], e.expected["Mnat"], e.expected["sep"]) == ("Yes", "Yes", "No")
    pts = paper_example("ddmc_not_dmc").object
    assert len(pts) == 8 and {(0, 0, 0), (1, 0, 0)} <= pts.points
    a3 = paper_example("antidiag3").expected
    assert a3["M"] == a3["gdmc"] == a3["ddmc"] == YES


def test_fig1a_is_the_described_polymatroid():
    S = paper_example("fig1a").object
    assert len(S) == 52 and (3, 2, 1) in S.points and (3, 3, 0) not in S.points


def test_s_hat_has_constant_sum():
    S = paper_example("s_hat").object
    assert isinstance(S, DiscreteSet) and {sum(p) for p in S.points} == {6}


def test_unknown_id():
    with pytest.raises(UnknownExample):
        paper_example("nope")


def test_entry_json():
    data = paper_example("l2nat_set").to_json()
    assert data["id"] == "l2nat_set" and "L2nat" in data["certificates"]
    assert data["pairs"][0]["class"] == "gdmc"
