import itertools
import random

import pytest

from dcx import (
    INF, NO, YES, Box, box_ops, DiscreteSet, GenSpec, IntervalBounds, IntervalRank, LnatDescription, RankFunction,
    build_lnat_set, build_multimodular_set, d_transform, extract_interval_bounds, extract_interval_rank,
    extract_lnat_description, generate, is_m, is_mnat, is_multimodular, m_base_from_rho, polymatroid_from_rank,
    polymatroid_from_rho, rank_to_rho, rho_from_rank, validate_interval_rank,
)
from dcx.catalog import catalog, paper_example
from dcx.descriptions import DescriptionError, intervals
from dcx.lattice_core import EmptyResult, maximal_elements

FIG1A_R = IntervalRank(3, {(1, 1): 3, (2, 2): 3, (3, 3): 3, (1, 2): 5, (2, 3): 5, (1, 3): 6})


def ex(name):
    return paper_example(name).object


def box_set(lo, hi):
    return DiscreteSet(len(lo), Box(lo, hi).points())


# -- L-natural descriptions -------------------------------------------------------------

def test_extract_line():
    d = extract_lnat_description(DiscreteSet(3, [(t, t, t) for t in range(-3, 4)]))
    assert d.alpha == (-3, -3, -3) and d.beta == (3, 3, 3)
    assert all(d.gamma[i][j] == 0 for i in range(3) for j in range(3))
    assert d.is_triangle_closed()


def test_extract_box():
    lo, hi = (-1, 0, 2), (1, 2, 3)
    d = extract_lnat_description(box_set(lo, hi))
    assert d.alpha == lo and d.beta == hi
    assert all(d.gamma[i][j] == hi[j] - lo[i] for i in range(3) for j in range(3) if i != j)


def test_extract_rejects_non_lnat():
    with pytest.raises(DescriptionError):
        extract_lnat_description(ex("fig1b"))


def test_build_examples():
    zero = LnatDescription((0, 0), (0, 0), ((0, 0), (0, 0)))
    assert build_lnat_set(zero, Box.cube(2, 3)) == DiscreteSet(2, [(0, 0)])
    diag = LnatDescription((0, 0), (2, 2), ((0, 0), (0, 0)))
    assert build_lnat_set(diag, Box.cube(2, 3)) == DiscreteSet(2, [(0, 0), (1, 1), (2, 2)])


def test_negative_cycle_is_empty():
    bad = LnatDescription((0, 0), (2, 2), ((0, -1), (0, 0)))
    with pytest.raises(EmptyResult):
        build_lnat_set(bad, Box.cube(2, 3))


def test_round_trip_on_transformed_fig1a():
    T = d_transform(ex("fig1a"), "to_lnat")
    d = extract_lnat_description(T)
    assert d.is_triangle_closed()
    assert build_lnat_set(d, Box.cube(3, 9)) == T


def test_round_trip_on_lnat_catalog_sets():
    from dcx import is_lnat

    for e in catalog().values():
        S = e.object if isinstance(e.object, DiscreteSet) else e.object.domain
        if is_lnat(S).status == YES:
            assert build_lnat_set(extract_lnat_description(S), Box.cube(S.dim, 6)) == S


def test_lnat_round_trip_generated():
    for k in range(60):
        S = generate(GenSpec("lnat_set", 1 + k % 4, 2, seed=k))
        assert build_lnat_set(extract_lnat_description(S), Box.cube(S.dim, 2)) == S


# -- interval bounds ---------------------------------------------------------------------

def test_fig1a_interval_bounds():
    b = extract_interval_bounds(ex("fig1a")).bounds
    assert [b[(i, i)][1] for i in (1, 2, 3)] == [3, 3, 3]
    assert b[(1, 2)][1] == 5 and b[(2, 3)][1] == 5 and b[(1, 3)][1] == 6
    assert all(lo == 0 for lo, _ in b.values())
    assert set(b) == set(intervals(3))


def test_fig1b_max_bounds():
    b = extract_interval_bounds(ex("fig1b_max")).bounds
    assert all(b[(i, i)] == (1, 3) for i in (1, 2, 3))
    assert b[(1, 3)] == (6, 6)


def test_alternating_line_bounds():
    b = extract_interval_bounds(paper_example("mm_line").object.domain).bounds
    assert b[(1, 2)] == (0, 0) and b[(2, 3)] == (0, 0)


def test_extract_bounds_rejects_non_multimodular():
    with pytest.raises(DescriptionError):
        extract_interval_bounds(ex("fig1b"))


def test_bounds_round_trip_generated():
    for k in range(60):
        S = generate(GenSpec("mm_set", 1 + k % 4, 2, seed=k))
        window, _ = box_ops(S)
        assert build_multimodular_set(extract_interval_bounds(S), window) == S


def test_inconsistent_bounds_rejected():
    with pytest.raises(DescriptionError):
        IntervalBounds(2, {(1, 1): (3, 1)})


# -- interval rank tables -----------------------------------------------------------------

def test_validate_examples():
    assert validate_interval_rank(FIG1A_R).status == YES
    bad = IntervalRank(3, dict(FIG1A_R.r, **{}) | {(1, 3): 11})
    v = validate_interval_rank(bad)
    assert v.status == NO and (v.witness["a"], v.witness["b"]) == (1, 3)
    assert validate_interval_rank(IntervalRank(3, {k: 0 for k in intervals(3)})).status == YES


def test_rho_examples():
    assert rho_from_rank(FIG1A_R, {1, 3}) == 6
    assert rho_from_rank(FIG1A_R, {2, 3}) == 5
    assert rho_from_rank(FIG1A_R, set()) == 0


def test_rank_to_rho_is_a_rank_function():
    assert rank_to_rho(FIG1A_R).check().status == YES


def test_polymatroid_from_fig1a_rank():
    assert polymatroid_from_rank(FIG1A_R) == ex("fig1a")


def test_m_base_gives_maximal_elements():
    assert m_base_from_rho(rank_to_rho(FIG1A_R)) == ex("fig1a_max")


def test_zero_rank():
    rho = RankFunction(2, {frozenset(X): 0 for k in range(3) for X in itertools.combinations((1, 2), k)})
    assert polymatroid_from_rho(rho) == DiscreteSet(2, [(0, 0)])


def test_rho_and_rank_routes_agree():
    checked = 0
    for k in range(60):
        r = generate(GenSpec("interval_rank", 1 + k % 4, 2, seed=k))
        rho = rank_to_rho(r)
        if rho.properties()["monotone"]:
            checked += 1
            assert polymatroid_from_rho(rho) == polymatroid_from_rank(r)
    assert checked > 20


def test_run_sum_rho_is_submodular_but_not_always_monotone():
    r = IntervalRank(3, {(1, 1): 2, (2, 2): 0, (3, 3): 1, (1, 2): 2, (2, 3): 1, (1, 3): 2})
    assert validate_interval_rank(r).status == YES
    props = rank_to_rho(r).properties()
    assert props == {"normalized": True, "monotone": False, "submodular": True}
    # rho({1,3}) = 3 exceeds rho(N) = 2, yet the polymatroid itself is unaffected
    S = polymatroid_from_rank(r)
    assert is_mnat(S).status == YES and is_multimodular(S).status == YES


def test_run_sum_rho_submodular_up_to_six():
    for k in range(60):
        r = generate(GenSpec("interval_rank", 1 + k % 6, 2, seed=k))
        p = rank_to_rho(r).properties()
        assert p["normalized"] and p["submodular"]


def test_rho_check_failures():
    rho = RankFunction(2, {frozenset(): 0, frozenset({1}): 2, frozenset({2}): 2, frozenset({1, 2}): 5})
    v = rho.check()
    assert v.status == NO and v.witness["rule"] == "rho_submodular"


# -- the characterization of multimodular polymatroids ----------------------------------

def test_generated_rank_tables_give_mnat_multimodular_sets():
    for k in range(40):
        r = generate(GenSpec("interval_rank", 1 + k % 3, 2, seed=k))
        S = polymatroid_from_rank(r)
        assert is_mnat(S).status == YES and is_multimodular(S).status == YES
        assert polymatroid_from_rank(extract_interval_rank(S)) == S


def test_converse_direction_on_random_sets():
    rng = random.Random(11)
    hits = 0
    for _ in range(300):
        n = rng.randint(1, 3)
        pts = {(0,) * n} | {tuple(rng.randint(0, 2) for _ in range(n)) for _ in range(rng.randint(0, 6))}
        S = DiscreteSet(n, pts)
        if is_mnat(S).status == YES and is_multimodular(S).status == YES:
            hits += 1
            assert polymatroid_from_rank(extract_interval_rank(S)) == S
    assert hits > 20


def test_maximal_elements_corollary():
    for k in range(30):
        S = generate(GenSpec("mm_polymatroid", 3, 2, seed=k))
        top = maximal_elements(S)
        assert is_m(top).status == YES and is_multimodular(top).status == YES
    # the converse fails: fig1b_max is M-convex and multimodular, fig1b is not multimodular
    assert maximal_elements(ex("fig1b")) == ex("fig1b_max")
    assert is_multimodular(ex("fig1b_max")).status == YES and is_multimodular(ex("fig1b")).status == NO
