import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from dcx import (
    INF, Box, DiscreteFunction, DiscreteSet, argmin_set, box_ops, d_transform, directed_rounding,
    indicator, infimal_convolution, intersect, join_meet, midpoint_roundings, minkowski_sum,
    mnat_to_m_lift, pointwise_sum, supports, tilt,
)
from dcx.lattice_core import DimensionMismatch, EmptyResult, LatticeError, cumulative, differences

from strategies import discrete_functions, discrete_sets, points


def box_set(lo, hi):
    B = Box(lo, hi)
    return DiscreteSet(B.dim, B.points())


def square(r=2):
    return DiscreteFunction(1, {(t,): t * t for t in range(-r, r + 1)})


# -- pointwise operations -----------------------------------------------------------------

@pytest.mark.parametrize("x,y,expected", [
    ((1, 2), (2, 1), ((2, 2), (1, 1))),
    ((0, 0, 0), (2, 1, -1), ((2, 1, 0), (0, 0, -1))),
    ((4, -1), (4, -1), ((4, -1), (4, -1))),
])
def test_join_meet_examples(x, y, expected):
    assert join_meet(x, y) == expected


@pytest.mark.parametrize("x,y,expected", [
    ((1, 2, 3), (2, 2, 2), ((2, 2, 3), (1, 2, 2))),
    ((3, 0, 3), (2, 2, 2), ((3, 1, 3), (2, 1, 2))),
    ((5, -5), (5, -5), ((5, -5), (5, -5))),
])
def test_midpoint_roundings_examples(x, y, expected):
    assert midpoint_roundings(x, y) == expected


def test_directed_rounding_examples():
    assert directed_rounding((0, 0, 0), (2, 1, -1)) == (1, 0, 0)
    assert directed_rounding((2, 1, -1), (0, 0, 0)) == (1, 1, -1)
    assert directed_rounding((3, 3), (3, 3)) == (3, 3)


def test_supports_examples():
    assert supports((1, -1, 0)) == ({0}, {1})
    assert supports((0, 0, 0)) == (set(), set())
    assert supports((2, 1, -1)) == ({0, 1}, {2})


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        join_meet((1, 2), (1, 2, 3))


@given(st.integers(1, 4).flatmap(lambda n: st.tuples(points(n, -9, 9), points(n, -9, 9))))
def test_join_meet_sum(xy):
    x, y = xy
    j, m = join_meet(x, y)
    assert tuple(a + b for a, b in zip(j, m)) == tuple(a + b for a, b in zip(x, y))


@given(st.integers(1, 4).flatmap(lambda n: st.tuples(points(n, -9, 9), points(n, -9, 9))))
def test_midpoint_roundings_properties(xy):
    x, y = xy
    up, down = midpoint_roundings(x, y)
    assert all(u - d in (0, 1) for u, d in zip(up, down))
    assert tuple(u + d for u, d in zip(up, down)) == tuple(a + b for a, b in zip(x, y))


@given(st.integers(1, 4).flatmap(lambda n: st.tuples(points(n, -9, 9), points(n, -9, 9))))
def test_directed_rounding_pairs_with_reverse(xy):
    # mu~(x,y) + mu~(y,x) = x + y
    x, y = xy
    a, b = directed_rounding(x, y), directed_rounding(y, x)
    assert tuple(p + q for p, q in zip(a, b)) == tuple(p + q for p, q in zip(x, y))


# -- D transform -------------------------------------------------------------------------

def test_d_transform_examples():
    assert cumulative((1, 1, 1)) == (1, 2, 3)
    assert cumulative((1, -1, 1)) == (1, 0, 1)
    assert differences((1, 2, 3)) == (1, 1, 1)


@given(st.one_of(discrete_sets(), discrete_functions()))
def test_d_transform_round_trip(obj):
    back = d_transform(d_transform(obj, "to_lnat"), "from_lnat")
    assert back == obj


def test_d_transform_round_trip_generated():
    from dcx import GenSpec, generate

    kinds = ("lnat_set", "mm_set", "mnat", "noise", "sep")
    for k in range(1000):
        obj = generate(GenSpec(kinds[k % 5], 1 + k % 4, 2, seed=k))
        assert d_transform(d_transform(obj, "from_lnat"), "to_lnat") == obj


def test_d_transform_bad_direction():
    with pytest.raises(ValueError):
        d_transform(DiscreteSet(1, [(0,)]), "sideways")


# -- tilt and argmin ---------------------------------------------------------------------

def test_tilt_examples():
    f = square()
    assert tilt(f, (0,)) == f
    assert tilt(tilt(f, (Fraction(3, 2),)), (Fraction(-3, 2),)) == f
    assert tilt(f, (1,)).entries[(2,)] == 2


def test_argmin_examples():
    assert argmin_set(square()) == DiscreteSet(1, [(0,)])
    sq = indicator(box_set((0, 0), (1, 1)))
    assert argmin_set(tilt(sq, (1, 0))) == DiscreteSet(2, [(1, 0), (1, 1)])
    const = DiscreteFunction(2, {(0, 0): 7, (1, 5): 7})
    assert argmin_set(const) == const.domain


@given(discrete_sets())
def test_argmin_of_indicator(S):
    assert argmin_set(indicator(S)) == S


@given(discrete_functions(), st.lists(st.fractions(-3, 3, max_denominator=2), min_size=3, max_size=3))
def test_argmin_of_tilt_is_minimal(f, p):
    g = tilt(f, p[: f.dim])
    A = argmin_set(g)
    best = min(g.entries.values())
    assert all(g.entries[x] == best for x in A.points)
    assert all(v > best for x, v in g.entries.items() if x not in A.points)


# -- sets and functions ------------------------------------------------------------------

def test_infinity_semantics():
    assert INF + 5 == INF
    assert INF > Fraction(10 ** 30)
    assert DiscreteFunction(1, {(0,): 3})((4,)) == math.inf


def test_minkowski_examples():
    S1 = DiscreteSet(3, [(0, 0, 0), (0, 1, 1)])
    S2 = DiscreteSet(3, [(0, 0, 0), (1, 1, 0)])
    assert minkowski_sum(S1, S2) == DiscreteSet(3, [(0, 0, 0), (0, 1, 1), (1, 1, 0), (1, 2, 1)])
    assert minkowski_sum(S1, DiscreteSet(3, [(0, 0, 0)])) == S1


@pytest.mark.parametrize("a,b", [((0, 0), (1, 2)), ((-1, 0), (0, 0)), ((2, 2), (2, 3))])
def test_minkowski_of_boxes(a, b):
    got = minkowski_sum(box_set((0, 0), (1, 1)), box_set(a, b))
    assert got == box_set(a, tuple(c + 1 for c in b))


def test_infimal_convolution_examples():
    sq = square(3)
    assert infimal_convolution(sq, sq).entries[(2,)] == 2
    S1 = DiscreteSet(2, [(0, 0), (1, 0)])
    S2 = DiscreteSet(2, [(0, 0), (0, 1), (3, 3)])
    assert infimal_convolution(indicator(S1), indicator(S2)) == indicator(minkowski_sum(S1, S2))
    assert infimal_convolution(sq, indicator(DiscreteSet(1, [(0,)]))) == sq


def test_pointwise_sum_and_intersection():
    f = square()
    zero = DiscreteFunction(1, {(t,): 0 for t in range(-5, 6)})
    assert pointwise_sum(f, zero) == f
    S = DiscreteSet(2, [(0, 0), (1, 0)])
    assert intersect(S, S) == S
    with pytest.raises(EmptyResult):
        intersect(S, DiscreteSet(2, [(5, 5)]))
    with pytest.raises(EmptyResult):
        pointwise_sum(f, DiscreteFunction(1, {(9,): 0}))


def test_common_bases_arise_as_intersection():
    B1 = DiscreteSet(4, [(1, 1, 0, 0), (1, 0, 0, 1), (0, 1, 1, 0), (0, 0, 1, 1)])
    B2 = DiscreteSet(4, [(1, 1, 0, 0), (1, 0, 1, 0), (0, 1, 0, 1), (0, 0, 1, 1)])
    assert intersect(B1, B2) == DiscreteSet(4, [(1, 1, 0, 0), (0, 0, 1, 1)])


def test_box_ops_examples():
    assert box_ops(box_set((0, 0), (1, 1))) == (Box((0, 0), (1, 1)), True)
    assert box_ops(DiscreteSet(2, [(1, 0), (0, 1)])) == (Box((0, 0), (1, 1)), False)
    assert box_ops(DiscreteSet(3, [(1, 2, 3)])) == (Box((1, 2, 3), (1, 2, 3)), True)


def test_mnat_lift_has_constant_sum():
    S = DiscreteSet(2, [(0, 0), (1, 0), (1, 2)])
    lifted = mnat_to_m_lift(S)
    assert lifted.dim == 3 and {sum(p) for p in lifted.points} == {0}


def test_empty_set_rejected():
    with pytest.raises(LatticeError):
        DiscreteSet(2, [])


def test_wrong_point_dimension_rejected():
    with pytest.raises(LatticeError):
        DiscreteSet(2, [(1, 2, 3)])
