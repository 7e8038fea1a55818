import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from dcx import DiscreteFunction, DiscreteSet, cell_hull_equal, convex_hull, indicator, local_extension_value, lp_solve
from dcx.catalog import paper_example
from dcx.geometry import HPolytope, Infeasible, in_convex_hull, lp_box

from strategies import points

H = Fraction(1, 2)


def facets(poly):
    return set(poly.facets)


def test_triangle_hull():
    assert facets(convex_hull([(0, 0), (1, 0), (0, 1)])) == {((-1, 0), 0), ((0, -1), 0), ((1, 1), 1)}


def test_fig1a_hull_inequalities():
    hull = convex_hull(paper_example("fig1a").object.sorted_points())
    want = {((1, 1, 0), 5), ((0, 1, 1), 5), ((1, 1, 1), 6)}
    want |= {(tuple(1 if k == i else 0 for k in range(3)), 3) for i in range(3)}
    want |= {(tuple(-1 if k == i else 0 for k in range(3)), 0) for i in range(3)}
    assert facets(hull) == want


def test_singleton_hull_is_equality_pairs():
    hull = convex_hull([(2, -1, 4)])
    assert len(hull.equalities()) == 3
    assert hull.contains((2, -1, 4)) and not hull.contains((2, -1, 5))


def test_lower_dimensional_hull():
    hull = convex_hull([(0, 0, 0), (1, 1, 1), (2, 2, 2), (0, 1, 0)])
    assert hull.contains((1, 1, 1)) and hull.contains((H, 1, H))
    assert not hull.contains((1, 0, 1))


@given(st.integers(2, 4).flatmap(lambda n: st.lists(points(n, -2, 2), min_size=1, max_size=9, unique=True)))
def test_qhull_route_matches_brute_force(pts):
    assert facets(convex_hull(pts)) == facets(convex_hull(pts, "brute"))


@given(st.integers(2, 3).flatmap(lambda n: st.lists(points(n, -2, 2), min_size=1, max_size=8, unique=True)))
def test_hull_lattice_points_match_membership(pts):
    hull = convex_hull(pts)
    n = len(pts[0])
    box = [range(-2, 3)] * n
    import itertools
    for z in itertools.product(*box):
        assert hull.contains(z) == in_convex_hull(pts, z)


def test_lp_examples():
    hull = convex_hull(paper_example("fig1a").object.sorted_points())
    val, x = lp_solve((1, 1, 1), hull, "max")
    assert val == 6 and sum(x) == 6 and hull.contains(x)
    assert lp_solve((1, 1), convex_hull([(3, -2)]), "min") == (1, [3, -2])
    assert lp_solve((1, 0), convex_hull([(0, 0), (2, 1)]), "max")[0] == 2


def test_lp_infeasible():
    with pytest.raises(Infeasible):
        lp_box([1], [([1], -1)])


def test_lp_matches_vertex_enumeration():
    rng = random.Random(7)
    for _ in range(500):
        n = rng.randint(2, 3)
        pts = [tuple(rng.randint(-3, 3) for _ in range(n)) for _ in range(rng.randint(1, 7))]
        c = [Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(n)]
        sense = rng.choice(("min", "max"))
        val, x = lp_solve(c, convex_hull(pts), sense)
        direct = (min if sense == "min" else max)(sum(a * b for a, b in zip(c, p)) for p in pts)
        assert val == direct
        assert sum(a * b for a, b in zip(c, x)) == val


def test_local_extension_examples():
    sq = DiscreteFunction(1, {(t,): t * t for t in range(-3, 4)})
    assert local_extension_value(sq, (H,)) == H
    assert local_extension_value(sq, (2,)) == 4
    S = indicator(DiscreteSet(3, [(0, 0, 0), (0, 1, 1), (1, 1, 0), (1, 2, 1)]))
    assert local_extension_value(S, (H, 1, H)) == 0


def test_local_extension_infeasible_is_inf():
    f = indicator(DiscreteSet(2, [(0, 0), (1, 1)]))
    assert local_extension_value(f, (H, H)) == 0
    assert local_extension_value(f, (1, 0)) == float("inf")


def test_cell_hull_witness():
    S = DiscreteSet(2, [(0, 0), (2, 1)])
    assert cell_hull_equal(S, (1, 0)) == (1, H)
    # the witness lies in conv(S) and in the cell but not in the hull of the cell's points of S
    w = cell_hull_equal(S, (0, 0))
    assert in_convex_hull(S.sorted_points(), w)
    assert all(0 <= c <= 1 for c in w)
    assert not in_convex_hull([p for p in S.points if all(0 <= c <= 1 for c in p)], w)
    box = DiscreteSet(2, [(0, 0), (0, 1), (1, 0), (1, 1)])
    assert cell_hull_equal(box, (0, 0)) is True


def test_hpolytope_json_round_trip():
    hull = convex_hull([(0, 0), (3, 1), (1, 2)])
    assert HPolytope.from_json(hull.to_json()).facets == tuple(
        (tuple(Fraction(v) for v in a), Fraction(b)) for a, b in hull.facets)
