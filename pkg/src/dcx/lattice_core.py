"""Integer-lattice points, finite sets and functions with exact rational values.

Points are plain tuples of ints.  Values are :class:`fractions.Fraction`;
the value ``+inf`` is represented by :data:`INF` (``math.inf``), which
compares above every rational and absorbs addition.  It is the only
non-rational value that ever appears, and it is never produced by
arithmetic on finite values.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence, Union

INF = math.inf

_I64_MAX = 2**63 - 1
_I64_MIN = -(2**63)

Point = tuple
Number = Union[int, Fraction]


class LatticeError(ValueError):
    """Base error for malformed lattice objects."""


class DimensionMismatch(LatticeError):
    pass


class EmptyResult(LatticeError):
    """An operation would produce an empty set or function domain."""


class CoordinateOverflow(OverflowError):
    pass


def _check_point(x: Sequence[int], dim: int) -> Point:
    if len(x) != dim:
        raise DimensionMismatch(f"point {tuple(x)} does not have dimension {dim}")
    out = []
    for c in x:
        if isinstance(c, bool) or not isinstance(c, int):
            c = _as_int(c)
        if c > _I64_MAX or c < _I64_MIN:
            raise CoordinateOverflow(f"coordinate {c} exceeds 64-bit range")
        out.append(c)
    return tuple(out)


def _as_int(c) -> int:
    # numpy integers and integral Fractions are accepted; anything else is not
    try:
        v = int(c)
    except (TypeError, ValueError):
        raise LatticeError(f"non-integer coordinate {c!r}") from None
    if v != c:
        raise LatticeError(f"non-integer coordinate {c!r}")
    return v


def as_value(v) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, bool):
        raise LatticeError("boolean is not a function value")
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, str):
        return Fraction(v)
    if isinstance(v, float):
        if math.isinf(v) or math.isnan(v):
            raise LatticeError("+inf is expressed by omission, not as a stored value")
        return Fraction(v)
    return Fraction(v)


def _same_dim(a: int, b: int) -> None:
    if a != b:
        raise DimensionMismatch(f"dimensions differ: {a} vs {b}")


@dataclass(frozen=True)
class Box:
    """The integer box ``[lower, upper]``."""

    lower: Point
    upper: Point

    def __post_init__(self):
        lo = _check_point(self.lower, len(self.lower))
        hi = _check_point(self.upper, len(lo))
        if any(a > b for a, b in zip(lo, hi)):
            raise LatticeError(f"box lower {lo} exceeds upper {hi}")
        object.__setattr__(self, "lower", lo)
        object.__setattr__(self, "upper", hi)

    @property
    def dim(self) -> int:
        return len(self.lower)

    def __contains__(self, x) -> bool:
        return all(a <= c <= b for a, c, b in zip(self.lower, x, self.upper))

    def contains_box(self, other: "Box") -> bool:
        return other.lower in self and other.upper in self

    def size(self) -> int:
        return math.prod(b - a + 1 for a, b in zip(self.lower, self.upper))

    def points(self) -> Iterator[Point]:
        return itertools.product(*(range(a, b + 1) for a, b in zip(self.lower, self.upper)))

    @classmethod
    def cube(cls, dim: int, radius: int) -> "Box":
        return cls((-radius,) * dim, (radius,) * dim)


@dataclass(frozen=True)
class DiscreteSet:
    """A finite nonempty subset of Z^dim."""

    dim: int
    points: frozenset

    def __init__(self, dim: int, points: Iterable[Sequence[int]]):
        if dim < 1:
            raise LatticeError("dimension must be at least 1")
        pts = frozenset(_check_point(p, dim) for p in points)
        if not pts:
            raise EmptyResult("a discrete set must be nonempty")
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "points", pts)

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(sorted(self.points))

    def __contains__(self, x) -> bool:
        return tuple(x) in self.points

    def sorted_points(self) -> list:
        return sorted(self.points)


@dataclass(frozen=True)
class DiscreteFunction:
    """A function Z^dim -> Q u {+inf} with finite effective domain.

    ``entries`` maps each point of the effective domain to its value; every
    other point has value ``+inf``.  ``window`` optionally records the box
    inside which the object is meant to be inspected (used by the
    translation-invariant classes).
    """

    dim: int
    entries: Mapping
    window: Box | None = field(default=None)

    def __init__(self, dim: int, entries, window: Box | None = None):
        if dim < 1:
            raise LatticeError("dimension must be at least 1")
        items = entries.items() if isinstance(entries, Mapping) else entries
        ent = {}
        for x, v in items:
            ent[_check_point(x, dim)] = as_value(v)
        if not ent:
            raise EmptyResult("the effective domain must be nonempty")
        if window is not None:
            if window.dim != dim:
                raise DimensionMismatch("window dimension differs from function dimension")
            outside = [x for x in ent if x not in window]
            if outside:
                raise LatticeError(f"domain point {min(outside)} lies outside the window")
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "entries", _FrozenDict(ent))
        object.__setattr__(self, "window", window)

    def __call__(self, x) -> Fraction | float:
        return self.entries.get(tuple(x), INF)

    def __len__(self) -> int:
        return len(self.entries)

    @property
    def domain(self) -> DiscreteSet:
        return DiscreteSet(self.dim, self.entries.keys())

    def sorted_points(self) -> list:
        return sorted(self.entries)

    def is_constant(self) -> bool:
        vals = iter(self.entries.values())
        first = next(vals)
        return all(v == first for v in vals)

    def with_window(self, window: Box | None) -> "DiscreteFunction":
        return DiscreteFunction(self.dim, self.entries, window)


class _FrozenDict(dict):
    """Read-only dict so DiscreteFunction stays hashable-by-identity and immutable."""

    def _readonly(self, *a, **k):
        raise TypeError("DiscreteFunction entries are immutable")

    __setitem__ = __delitem__ = clear = pop = popitem = setdefault = update = _readonly

    def __hash__(self):
        return hash(frozenset(self.items()))


Obj = Union[DiscreteSet, DiscreteFunction]


def as_function(obj: Obj) -> DiscreteFunction:
    """Sets become their indicator functions; functions pass through."""
    if isinstance(obj, DiscreteFunction):
        return obj
    if isinstance(obj, DiscreteSet):
        return indicator(obj)
    raise TypeError(f"expected DiscreteSet or DiscreteFunction, got {type(obj).__name__}")


# -- point operations -------------------------------------------------------


def join_meet(x: Sequence[int], y: Sequence[int]) -> tuple[Point, Point]:
    _same_dim(len(x), len(y))
    return (tuple(max(a, b) for a, b in zip(x, y)), tuple(min(a, b) for a, b in zip(x, y)))


def midpoint_roundings(x: Sequence[int], y: Sequence[int]) -> tuple[Point, Point]:
    """Return (ceil((x+y)/2), floor((x+y)/2)) componentwise."""
    _same_dim(len(x), len(y))
    up = tuple(-((-(a + b)) // 2) for a, b in zip(x, y))
    down = tuple((a + b) // 2 for a, b in zip(x, y))
    return up, down


def directed_rounding(x: Sequence[int], y: Sequence[int]) -> Point:
    """Round the midpoint towards x: up where x_i >= y_i, down where x_i <= y_i."""
    _same_dim(len(x), len(y))
    return tuple(-((-(a + b)) // 2) if a >= b else (a + b) // 2 for a, b in zip(x, y))


def supports(x: Sequence[int]) -> tuple[frozenset, frozenset]:
    """Positive and negative supports, as 0-based index sets."""
    return (
        frozenset(i for i, c in enumerate(x) if c > 0),
        frozenset(i for i, c in enumerate(x) if c < 0),
    )


def sub(x: Sequence[int], y: Sequence[int]) -> Point:
    return tuple(a - b for a, b in zip(x, y))


def add(x: Sequence[int], y: Sequence[int]) -> Point:
    return tuple(a + b for a, b in zip(x, y))


def unit(dim: int, i: int) -> Point:
    return tuple(1 if k == i else 0 for k in range(dim))


def linf(x: Sequence[int], y: Sequence[int]) -> int:
    return max(abs(a - b) for a, b in zip(x, y))


def cumulative(x: Sequence[int]) -> Point:
    """D^{-1} x: prefix sums."""
    return tuple(itertools.accumulate(x))


def differences(y: Sequence[int]) -> Point:
    """D y: (y1, y2 - y1, ..., yn - y_{n-1})."""
    return tuple(b - a for a, b in zip((0,) + tuple(y[:-1]), y))


# -- object operations ------------------------------------------------------


def _map_points(obj: Obj, fn) -> Obj:
    if isinstance(obj, DiscreteSet):
        return DiscreteSet(obj.dim, (fn(p) for p in obj.points))
    return DiscreteFunction(obj.dim, {fn(p): v for p, v in obj.entries.items()})


def d_transform(obj: Obj, direction: str) -> Obj:
    """Move between an object and its image under the bidiagonal map D.

    ``to_lnat`` sends each domain point x to D^{-1} x (prefix sums);
    ``from_lnat`` sends y to D y (consecutive differences).  Windows are
    not carried over: D does not map boxes to boxes.
    """
    if direction == "to_lnat":
        return _map_points(obj, cumulative)
    if direction == "from_lnat":
        return _map_points(obj, differences)
    raise ValueError(f"unknown direction {direction!r}")


def tilt(f: DiscreteFunction, p: Sequence) -> DiscreteFunction:
    """f[-p](x) = f(x) - <p, x>."""
    _same_dim(f.dim, len(p))
    pv = [as_value(c) for c in p]
    return DiscreteFunction(
        f.dim,
        {x: v - sum(c * xi for c, xi in zip(pv, x)) for x, v in f.entries.items()},
        f.window,
    )


def argmin_set(f: DiscreteFunction) -> DiscreteSet:
    best = min(f.entries.values())
    return DiscreteSet(f.dim, (x for x, v in f.entries.items() if v == best))


def indicator(S: DiscreteSet, window: Box | None = None) -> DiscreteFunction:
    return DiscreteFunction(S.dim, {x: 0 for x in S.points}, window)


def minkowski_sum(S1: DiscreteSet, S2: DiscreteSet) -> DiscreteSet:
    _same_dim(S1.dim, S2.dim)
    return DiscreteSet(S1.dim, {add(x, y) for x in S1.points for y in S2.points})


def infimal_convolution(f1: DiscreteFunction, f2: DiscreteFunction) -> DiscreteFunction:
    _same_dim(f1.dim, f2.dim)
    out: dict = {}
    for y, a in f1.entries.items():
        for z, b in f2.entries.items():
            x = add(y, z)
            v = a + b
            if x not in out or v < out[x]:
                out[x] = v
    return DiscreteFunction(f1.dim, out)


def pointwise_sum(f1: DiscreteFunction, f2: DiscreteFunction) -> DiscreteFunction:
    _same_dim(f1.dim, f2.dim)
    common = {x: v + f2.entries[x] for x, v in f1.entries.items() if x in f2.entries}
    if not common:
        raise EmptyResult("pointwise sum has empty effective domain")
    return DiscreteFunction(f1.dim, common)


def intersect(S1: DiscreteSet, S2: DiscreteSet) -> DiscreteSet:
    _same_dim(S1.dim, S2.dim)
    common = S1.points & S2.points
    if not common:
        raise EmptyResult("intersection is empty")
    return DiscreteSet(S1.dim, common)


def bounding_box(points: Iterable[Sequence[int]]) -> Box:
    pts = list(points)
    dim = len(pts[0])
    return Box(
        tuple(min(p[i] for p in pts) for i in range(dim)),
        tuple(max(p[i] for p in pts) for i in range(dim)),
    )


def box_ops(S: DiscreteSet) -> tuple[Box, bool]:
    """Bounding box of S and whether S fills it."""
    box = bounding_box(S.points)
    return box, box.size() == len(S)


def mnat_to_m_lift(f: Obj) -> Obj:
    """Prepend x0 = -x(N) to every domain point."""

    def lift(x):
        return (-sum(x),) + tuple(x)

    if isinstance(f, DiscreteSet):
        return DiscreteSet(f.dim + 1, (lift(p) for p in f.points))
    return DiscreteFunction(f.dim + 1, {lift(x): v for x, v in f.entries.items()})


def maximal_elements(S: DiscreteSet) -> DiscreteSet:
    pts = S.sorted_points()
    keep = [
        p for p in pts
        if not any(q != p and all(a <= b for a, b in zip(p, q)) for q in pts)
    ]
    return DiscreteSet(S.dim, keep)


def restrict(f: DiscreteFunction, S: DiscreteSet) -> DiscreteFunction:
    """f + indicator(S)."""
    return pointwise_sum(f, indicator(S))


def linear_function(coeffs: Sequence, points: Iterable[Sequence[int]], const=0) -> DiscreteFunction:
    pts = list(points)
    cs = [as_value(c) for c in coeffs]
    return DiscreteFunction(
        len(cs), {tuple(x): as_value(const) + sum(c * a for c, a in zip(cs, x)) for x in pts}
    )
