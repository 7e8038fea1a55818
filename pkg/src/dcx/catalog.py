"""Worked examples with their stated classifications.

Each entry carries only the verdicts stated for it; classes on which the
source is silent are left out.  ``pairs`` lists explicit (class, x, y) pairs
at which the defining inequality of ``class`` is known to fail.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .classifiers import NO, YES, YES_WINDOW
from .composite import Certificate
from .lattice_core import Box, DiscreteFunction, DiscreteSet, indicator

WINDOW_RADIUS = 3


class UnknownExample(KeyError):
    pass


@dataclass(frozen=True)
class CatalogEntry:
    id: str
    object: object
    expected: dict
    provenance: str
    certificates: dict = field(default_factory=dict)
    pairs: tuple = ()

    def to_json(self) -> dict:
        from .io import certificate_to_json, object_to_json

        out = {
            "id": self.id,
            "provenance": self.provenance,
            "object": object_to_json(self.object),
            "expected": dict(self.expected),
        }
        if self.certificates:
            out["certificates"] = {c: certificate_to_json(k) for c, k in self.certificates.items()}
        if self.pairs:
            out["pairs"] = [{"class": c, "x": list(x), "y": list(y)} for c, x, y in self.pairs]
        return out


def _box_points(lo, hi):
    return itertools.product(*(range(a, b + 1) for a, b in zip(lo, hi)))


def _fig1a():
    return DiscreteSet(3, (x for x in _box_points((0, 0, 0), (3, 3, 3))
                           if x[0] + x[1] <= 5 and x[1] + x[2] <= 5 and sum(x) <= 6))


def _fig1b():
    return DiscreteSet(3, (x for x in _fig1a().points if x[0] + x[2] <= 5))


def _line(direction, radius=WINDOW_RADIUS):
    n = len(direction)
    w = Box.cube(n, radius)
    pts = [tuple(t * d for d in direction) for t in range(-radius, radius + 1)]
    return indicator(DiscreteSet(n, [p for p in pts if p in w]), w)


def _quadratic(form, n=3, radius=WINDOW_RADIUS):
    return DiscreteFunction(n, {x: form(x) for x in Box.cube(n, radius).points()})


def _hyperplane(radius):
    w = Box.cube(4, radius)
    return indicator(DiscreteSet(4, (x for x in w.points() if x[0] + x[1] - x[2] - x[3] == 0)), w)


def _plane_part(eqs, radius):
    w = Box.cube(4, radius)
    pts = (x for x in w.points() if all(x[i] == x[j] for i, j in eqs))
    return indicator(DiscreteSet(4, pts), w)


def _entries():
    fig1a = _fig1a()
    fig1b = _fig1b()
    fig1a_max = DiscreteSet(3, [(3, 0, 3), (1, 2, 3), (3, 2, 1), (1, 3, 2),
                                (2, 3, 1), (2, 1, 3), (2, 2, 2), (3, 1, 2)])
    fig1b_max = DiscreteSet(3, (x for x in _box_points((1, 1, 1), (3, 3, 3)) if sum(x) == 6))
    s_hat = DiscreteSet(4, (x + (6 - sum(x),) for x in fig1b.points))
    big = 2 * WINDOW_RADIUS
    yield CatalogEntry(
        "fig1a", fig1a,
        {"Mnat": YES, "mm": YES, "sep": NO, "Lnat": NO, "int": YES},
        "polymatroid with interval bounds r(i,i)=3, r(1,2)=r(2,3)=5, r(1,3)=6; "
        "M-natural and multimodular but not separable",
    )
    yield CatalogEntry(
        "fig1a_max", fig1a_max,
        {"M": YES, "M2": YES, "mm": YES, "gdmc": NO, "ddmc": NO},
        "maximal elements of the fig1a polymatroid; M-convex, not midpoint convex",
        pairs=(("gdmc", (3, 0, 3), (2, 2, 2)), ("ddmc", (3, 0, 3), (2, 2, 2))),
    )
    yield CatalogEntry(
        "fig1b", fig1b,
        {"Mnat": YES, "Lnat": NO, "mm": NO},
        "fig1a cut by x1 + x3 <= 5; M-natural, neither L-natural nor multimodular",
        pairs=(("Lnat", (1, 2, 3), (2, 2, 2)),),
    )
    yield CatalogEntry(
        "fig1b_max", fig1b_max,
        {"M": YES, "mm": YES},
        "maximal elements of the fig1b polymatroid",
    )
    yield CatalogEntry(
        "s_hat", s_hat,
        {"M": YES, "Lnat": NO, "mm": NO},
        "fig1b lifted to four coordinates with x4 = 6 - (x1 + x2 + x3); "
        "M-convex but not multimodular",
        pairs=(("Lnat", (1, 2, 3, 0), (2, 2, 2, 0)), ("mm", (2, 0, 3, 1), (3, 1, 2, 0))),
    )
    yield CatalogEntry(
        "l_line", _line((1, 1, 1)),
        {"L": YES_WINDOW, "Lnat": YES, "Mnat": NO, "mm": NO},
        "the line t(1,1,1), truncated to the window [-3,3]^3",
    )
    yield CatalogEntry(
        "mm_line", _line((1, -1, 1)),
        {"mm": YES, "Lnat": NO, "Mnat": NO},
        "the line t(1,-1,1), truncated to the window [-3,3]^3; multimodular only",
    )
    yield CatalogEntry(
        "dmc_not_ddmc", DiscreteSet(3, [(0, 0, 0), (1, 1, 0), (1, 0, -1), (2, 1, -1)]),
        {"gdmc": YES, "ddmc": NO},
        "four-point set, globally but not directed discrete midpoint convex",
        pairs=(("ddmc", (0, 0, 0), (2, 1, -1)),),
    )
    yield CatalogEntry(
        "ddmc_not_dmc", DiscreteSet(3, [(0, 0, 0), (1, 0, 0), (1, 1, 1), (2, 1, 1),
                                       (1, 1, -1), (2, 1, -1), (1, 1, 0), (2, 1, 0)]),
        {"ddmc": YES, "gdmc": NO},
        "eight-point set, directed but not globally discrete midpoint convex",
        pairs=(("gdmc", (0, 0, 0), (2, 1, -1)),),
    )
    yield CatalogEntry(
        "quad_diag",
        _quadratic(lambda x: (x[0] - x[1]) ** 2 + (x[0] + x[2]) ** 2 + (x[1] + x[2]) ** 2),
        {"ddmc": YES, "gdmc": NO},
        "(x1 - x2)^2 + (x1 + x3)^2 + (x2 + x3)^2 on [-3,3]^3",
        pairs=(("gdmc", (0, 0, 0), (2, 1, -1)),),
    )
    yield CatalogEntry(
        "quad_sum", _quadratic(lambda x: (x[0] + x[1]) ** 2),
        {"ddmc": YES, "gdmc": NO},
        "(x1 + x2)^2 on [-3,3]^3",
        pairs=(("gdmc", (1, 0, 0), (0, 1, 2)),),
    )
    yield CatalogEntry(
        "l2nat_set", DiscreteSet(3, [(0, 0, 0), (0, 1, 1), (1, 1, 0), (1, 2, 1)]),
        {"L2nat": YES, "gdmc": NO, "ddmc": NO},
        "Minkowski sum of two L-natural segments; not midpoint convex",
        certificates={"L2nat": Certificate("minkowski", (
            DiscreteSet(3, [(0, 0, 0), (0, 1, 1)]), DiscreteSet(3, [(0, 0, 0), (1, 1, 0)])))},
        pairs=(("gdmc", (0, 0, 0), (1, 2, 1)), ("ddmc", (0, 0, 0), (1, 2, 1))),
    )
    yield CatalogEntry(
        "l2_hyperplane", _hyperplane(WINDOW_RADIUS),
        {"L2": YES_WINDOW, "gdmc": NO, "ddmc": NO},
        "hyperplane x1 + x2 - x3 - x4 = 0 in the window [-3,3]^4, the Minkowski sum of "
        "{x1 = x3, x2 = x4} and {x1 = x4, x2 = x3}",
        certificates={"L2": Certificate("minkowski", (
            _plane_part(((0, 2), (1, 3)), big), _plane_part(((0, 3), (1, 2)), big)))},
        pairs=(("gdmc", (0, 0, 0, 0), (2, 2, 1, 3)), ("ddmc", (0, 0, 0, 0), (2, 2, 1, 3))),
    )
    yield CatalogEntry(
        "antidiag2", DiscreteSet(2, [(1, 0), (0, 1)]),
        {"Mnat": YES, "M2nat": YES, "mm": YES, "gdmc": YES, "ddmc": YES,
         "sep": NO, "L2nat": NO, "L2": NO},
        "{(1,0),(0,1)}: M-natural and midpoint convex but not L2-natural",
    )
    yield CatalogEntry(
        "diag2", DiscreteSet(2, [(0, 0), (1, 1)]),
        {"gdmc": YES, "ddmc": YES, "M2nat": NO, "Mnat": NO},
        "{(0,0),(1,1)}: midpoint convex but not M2-natural",
    )
    yield CatalogEntry(
        "antidiag3", DiscreteSet(2, [(2, 0), (1, 1), (0, 2)]),
        {"M": YES, "Mnat": YES, "M2nat": YES, "mm": YES, "gdmc": YES, "ddmc": YES, "sep": NO},
        "{(2,0),(1,1),(0,2)}: M-convex and midpoint convex",
    )
    yield CatalogEntry(
        "common_bases", DiscreteSet(4, [(1, 1, 0, 0), (0, 0, 1, 1)]),
        {"M2": YES, "gdmc": YES, "ddmc": YES},
        "two common bases of a pair of matroids on four elements",
        certificates={"M2": Certificate("intersection", (
            DiscreteSet(4, [(1, 1, 0, 0), (1, 0, 0, 1), (0, 1, 1, 0), (0, 0, 1, 1)]),
            DiscreteSet(4, [(1, 1, 0, 0), (1, 0, 1, 0), (0, 1, 0, 1), (0, 0, 1, 1)])))},
    )


CATALOG: dict[str, CatalogEntry] = {}


def catalog() -> dict[str, CatalogEntry]:
    if not CATALOG:
        CATALOG.update((e.id, e) for e in _entries())
    return CATALOG


def paper_example(id: str) -> CatalogEntry:
    try:
        return catalog()[id]
    except KeyError:
        raise UnknownExample(f"unknown example id {id!r}; known: {', '.join(sorted(catalog()))}") from None
