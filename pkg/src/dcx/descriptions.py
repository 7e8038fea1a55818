"""Polyhedral descriptions: L-natural (alpha, beta, gamma) systems, consecutive-interval
bounds of multimodular sets, interval rank tables r(a, b) and rank functions rho.

Index conventions: descriptions use 0-based coordinates internally; interval
ranks and rank-function subsets use 1-based element names, matching the JSON
formats.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .classifiers import NO, YES, Verdict, is_lnat, is_multimodular
from .lattice_core import INF, Box, DiscreteSet, EmptyResult, LatticeError

NEG_INF = -math.inf


class DescriptionError(LatticeError):
    pass


# -- L-natural sets ------------------------------------------------------------


@dataclass(frozen=True)
class LnatDescription:
    """alpha_i <= x_i <= beta_i and x_j - x_i <= gamma[i][j]."""

    alpha: tuple
    beta: tuple
    gamma: tuple

    @property
    def dim(self) -> int:
        return len(self.alpha)

    def extended(self) -> list[list]:
        """gamma~ on indices 0..n, with index 0 standing for the constant 0."""
        n = self.dim
        g = [[INF] * (n + 1) for _ in range(n + 1)]
        g[0][0] = 0
        for i in range(n):
            g[i + 1][0] = -self.alpha[i]
            g[0][i + 1] = self.beta[i]
            for j in range(n):
                g[i + 1][j + 1] = 0 if i == j else self.gamma[i][j]
        return g

    def is_triangle_closed(self) -> bool:
        g = self.extended()
        m = len(g)
        return all(g[i][j] + g[j][k] >= g[i][k]
                   for i in range(m) for j in range(m) for k in range(m)
                   if g[i][j] != INF and g[j][k] != INF)

    def closure(self) -> "LnatDescription":
        """Shortest-path closure of gamma~; raises EmptyResult on a negative cycle."""
        g = self.extended()
        m = len(g)
        for k in range(m):
            for i in range(m):
                if g[i][k] == INF:
                    continue
                for j in range(m):
                    if g[k][j] != INF and g[i][k] + g[k][j] < g[i][j]:
                        g[i][j] = g[i][k] + g[k][j]
        if any(g[i][i] < 0 for i in range(m)):
            raise EmptyResult("the difference system has a negative cycle")
        n = self.dim
        return LnatDescription(
            tuple(-g[i + 1][0] for i in range(n)),
            tuple(g[0][i + 1] for i in range(n)),
            tuple(tuple(g[i + 1][j + 1] for j in range(n)) for i in range(n)),
        )

    def to_json(self) -> dict:
        def enc(v):
            return "+inf" if v == INF else "-inf" if v == NEG_INF else int(v)
        return {"alpha": [enc(v) for v in self.alpha], "beta": [enc(v) for v in self.beta],
                "gamma": [[enc(v) for v in row] for row in self.gamma]}

    @classmethod
    def from_json(cls, data: dict) -> "LnatDescription":
        def dec(v):
            return INF if v == "+inf" else NEG_INF if v == "-inf" else int(v)
        return cls(tuple(dec(v) for v in data["alpha"]), tuple(dec(v) for v in data["beta"]),
                   tuple(tuple(dec(v) for v in row) for row in data["gamma"]))


def extract_lnat_description(S: DiscreteSet) -> LnatDescription:
    if is_lnat(S, "a").status != YES:
        raise DescriptionError("set is not L-natural-convex")
    pts = list(S.points)
    n = S.dim
    alpha = tuple(min(p[i] for p in pts) for i in range(n))
    beta = tuple(max(p[i] for p in pts) for i in range(n))
    gamma = tuple(tuple(0 if i == j else max(p[j] - p[i] for p in pts) for j in range(n)) for i in range(n))
    return LnatDescription(alpha, beta, gamma)


def _dfs(n, bounds_for):
    """Enumerate integer vectors coordinate by coordinate; bounds_for(prefix) -> (lo, hi)."""
    out = []
    prefix = []

    def rec():
        k = len(prefix)
        if k == n:
            out.append(tuple(prefix))
            return
        lo, hi = bounds_for(prefix)
        for v in range(lo, hi + 1):
            prefix.append(v)
            rec()
            prefix.pop()

    rec()
    return out


def build_lnat_set(desc: LnatDescription, window: Box) -> DiscreteSet:
    """All window points satisfying the description."""
    d = desc.closure()
    n = d.dim

    def bounds(prefix):
        k = len(prefix)
        lo = max(window.lower[k], d.alpha[k])
        hi = min(window.upper[k], d.beta[k])
        for i, xi in enumerate(prefix):
            if d.gamma[i][k] != INF:
                hi = min(hi, xi + d.gamma[i][k])
            if d.gamma[k][i] != INF:
                lo = max(lo, xi - d.gamma[k][i])
        return int(lo), int(hi)

    pts = _dfs(n, bounds)
    if not pts:
        raise EmptyResult("no window point satisfies the description")
    return DiscreteSet(n, pts)


# -- consecutive-interval descriptions ---------------------------------------------------


def intervals(n: int):
    """All consecutive intervals I(a, b), 1 <= a <= b <= n."""
    return [(a, b) for a in range(1, n + 1) for b in range(a, n + 1)]


@dataclass(frozen=True)
class IntervalBounds:
    """a_I <= x(I) <= b_I for consecutive intervals I = I(a, b)."""

    n: int
    bounds: dict

    def __post_init__(self):
        for key, (lo, hi) in self.bounds.items():
            if lo > hi:
                raise DescriptionError(f"interval {key}: lower bound {lo} exceeds upper bound {hi}")

    def to_json(self) -> dict:
        def enc(v):
            return "+inf" if v == INF else "-inf" if v == NEG_INF else int(v)
        return {"n": self.n, "bounds": [{"a": a, "b": b, "lo": enc(lo), "hi": enc(hi)}
                                        for (a, b), (lo, hi) in sorted(self.bounds.items())]}


def extract_interval_bounds(S: DiscreteSet) -> IntervalBounds:
    if is_multimodular(S).status != YES:
        raise DescriptionError("set is not multimodular")
    bounds = {}
    for a, b in intervals(S.dim):
        sums = [sum(p[a - 1:b]) for p in S.points]
        bounds[(a, b)] = (min(sums), max(sums))
    return IntervalBounds(S.dim, bounds)


def _prefix_bounds_builder(n, bounds: dict, window: Box):
    """Enumerate through prefix sums y_k = x_1 + ... + x_k; every constraint is a difference bound."""

    def ybounds(prefix):
        # prefix holds y_1..y_{k}; choose y_{k+1}
        k = len(prefix)
        ys = [0] + prefix
        lo = ys[k] + window.lower[k]
        hi = ys[k] + window.upper[k]
        for a in range(1, k + 2):
            key = (a, k + 1)
            if key in bounds:
                blo, bhi = bounds[key]
                if blo != NEG_INF:
                    lo = max(lo, ys[a - 1] + blo)
                if bhi != INF:
                    hi = min(hi, ys[a - 1] + bhi)
        return int(lo), int(hi)

    ys = _dfs(n, ybounds)
    return [tuple(b - a for a, b in zip((0,) + y[:-1], y)) for y in ys]


def build_multimodular_set(bounds: IntervalBounds, window: Box) -> DiscreteSet:
    pts = _prefix_bounds_builder(bounds.n, bounds.bounds, window)
    if not pts:
        raise EmptyResult("interval bounds are infeasible inside the window")
    return DiscreteSet(bounds.n, pts)


# -- interval rank tables --------------------------------------------------------------


@dataclass(frozen=True)
class IntervalRank:
    """r(a, b) for 1 <= a <= b <= n."""

    n: int
    r: dict

    def __post_init__(self):
        missing = [k for k in intervals(self.n) if k not in self.r]
        if missing:
            raise DescriptionError(f"interval rank table is missing r{missing[0]}")

    def __call__(self, a: int, b: int) -> int:
        return self.r[(a, b)]

    def to_json(self) -> dict:
        return {"n": self.n, "r": [{"a": a, "b": b, "v": v} for (a, b), v in sorted(self.r.items())]}

    @classmethod
    def from_json(cls, data: dict) -> "IntervalRank":
        return cls(int(data["n"]), {(int(e["a"]), int(e["b"])): int(e["v"]) for e in data["r"]})


def validate_interval_rank(r: IntervalRank) -> Verdict:
    n = r.n
    for a in range(1, n + 1):
        if r(a, a) < 0:
            return Verdict(NO, {"rule": "rank_nonnegative", "a": a, "b": a,
                                "inequality": "r(a,a) >= 0", "lhs": str(r(a, a)), "rhs": "0"})
    for width in range(1, n):
        for a in range(1, n - width + 1):
            b = a + width
            low = max(r(a, b - 1), r(a + 1, b))
            if r(a, b) < low:
                return Verdict(NO, {"rule": "rank_monotone", "a": a, "b": b,
                                    "inequality": "max(r(a,b-1), r(a+1,b)) <= r(a,b)",
                                    "lhs": str(low), "rhs": str(r(a, b))})
            inner = r(a + 1, b - 1) if a + 1 <= b - 1 else 0
            up = r(a, b - 1) + r(a + 1, b) - inner
            if r(a, b) > up:
                return Verdict(NO, {"rule": "rank_submodular", "a": a, "b": b,
                                    "inequality": "r(a,b) <= r(a,b-1) + r(a+1,b) - r(a+1,b-1)",
                                    "lhs": str(r(a, b)), "rhs": str(up)})
    return Verdict(YES)


def runs(X) -> list[tuple[int, int]]:
    """Maximal consecutive runs of a set of 1-based indices, as (a, b) pairs."""
    out = []
    for k in sorted(X):
        if out and out[-1][1] == k - 1:
            out[-1] = (out[-1][0], k)
        else:
            out.append((k, k))
    return out


def rho_from_rank(r: IntervalRank, X) -> int:
    return sum(r(a, b) for a, b in runs(X))


@dataclass(frozen=True)
class RankFunction:
    """rho: subsets of {1..n} -> Z, stored on every subset as a frozenset key."""

    n: int
    values: dict

    def __call__(self, X) -> int:
        return self.values[frozenset(X)]

    def subsets(self):
        ground = range(1, self.n + 1)
        return [frozenset(c) for k in range(self.n + 1) for c in itertools.combinations(ground, k)]

    def check(self) -> Verdict:
        """Normalized, monotone nondecreasing and submodular, checked exhaustively."""
        if self(()) != 0:
            return Verdict(NO, {"rule": "rho_normalized", "X": [], "inequality": "rho(empty) = 0",
                                "lhs": str(self(())), "rhs": "0"})
        subs = self.subsets()
        for X in subs:
            for i in range(1, self.n + 1):
                if i not in X and self(X | {i}) < self(X):
                    return Verdict(NO, {"rule": "rho_monotone", "X": sorted(X), "i": i,
                                        "inequality": "rho(X) <= rho(X + i)",
                                        "lhs": str(self(X)), "rhs": str(self(X | {i}))})
        for X, Y in itertools.combinations(subs, 2):
            lhs = self(X) + self(Y)
            rhs = self(X | Y) + self(X & Y)
            if lhs < rhs:
                return Verdict(NO, {"rule": "rho_submodular", "X": sorted(X), "Y": sorted(Y),
                                    "inequality": "rho(X)+rho(Y) >= rho(X u Y)+rho(X n Y)",
                                    "lhs": str(lhs), "rhs": str(rhs)})
        return Verdict(YES)

    def properties(self) -> dict:
        """Each rank-function property on its own, checked exhaustively."""
        subs = self.subsets()
        return {
            "normalized": self(()) == 0,
            "monotone": all(self(X) <= self(X | {i}) for X in subs for i in range(1, self.n + 1)),
            "submodular": all(self(X) + self(Y) >= self(X | Y) + self(X & Y)
                              for X, Y in itertools.combinations(subs, 2)),
        }

    def to_json(self) -> dict:
        return {"n": self.n, "rho": [{"X": sorted(X), "v": v}
                                     for X, v in sorted(self.values.items(), key=lambda kv: (len(kv[0]), sorted(kv[0])))]}

    @classmethod
    def from_json(cls, data: dict) -> "RankFunction":
        return cls(int(data["n"]), {frozenset(int(i) for i in e["X"]): int(e["v"]) for e in data["rho"]})


def rank_to_rho(r: IntervalRank) -> RankFunction:
    if validate_interval_rank(r).status != YES:
        raise DescriptionError("invalid interval rank table")
    rf = RankFunction(r.n, {})
    return RankFunction(r.n, {X: rho_from_rank(r, X) for X in rf.subsets()})


def polymatroid_from_rank(r: IntervalRank) -> DiscreteSet:
    """Integer points of {x >= 0 : x(I(a,b)) <= r(a,b) for all a <= b}."""
    v = validate_interval_rank(r)
    if v.status != YES:
        raise DescriptionError(f"invalid interval rank table: {v.witness}")
    n = r.n
    bounds = {(a, b): (0 if a == b else NEG_INF, r(a, b)) for a, b in intervals(n)}
    window = Box((0,) * n, tuple(r(i, i) for i in range(1, n + 1)))
    return DiscreteSet(n, _prefix_bounds_builder(n, bounds, window))


def _rho_points(rho: RankFunction, lower, upper, base: bool):
    n = rho.n
    subs = [X for X in rho.subsets() if X]
    pts = []
    for x in itertools.product(*(range(a, b + 1) for a, b in zip(lower, upper))):
        if base and sum(x) != rho(range(1, n + 1)):
            continue
        if all(sum(x[i - 1] for i in X) <= rho(X) for X in subs):
            pts.append(x)
    return pts


def polymatroid_from_rho(rho: RankFunction) -> DiscreteSet:
    """Integer points of {x >= 0 : x(X) <= rho(X)}."""
    if rho.check().status != YES:
        raise DescriptionError("rho is not a normalized monotone submodular function")
    n = rho.n
    return DiscreteSet(n, _rho_points(rho, [0] * n, [rho({i}) for i in range(1, n + 1)], False))


def m_base_from_rho(rho: RankFunction) -> DiscreteSet:
    """Integer points of the base polyhedron {x : x(X) <= rho(X), x(N) = rho(N)}."""
    if rho.check().status != YES:
        raise DescriptionError("rho is not a normalized monotone submodular function")
    n = rho.n
    N = set(range(1, n + 1))
    lower = [rho(N) - rho(N - {i}) for i in range(1, n + 1)]
    upper = [rho({i}) for i in range(1, n + 1)]
    return DiscreteSet(n, _rho_points(rho, lower, upper, True))


def extract_interval_rank(S: DiscreteSet) -> IntervalRank:
    """r(a, b) = max x(I(a, b)) over S."""
    return IntervalRank(S.dim, {(a, b): max(sum(p[a - 1:b]) for p in S.points) for a, b in intervals(S.dim)})
