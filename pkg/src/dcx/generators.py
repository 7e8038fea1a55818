"""Seeded construction of objects in each class.

Every generator constructs an object and then runs the matching recognizer.
Exact constructions that fail verification raise :class:`GenerationError`;
constructions that are only likely to succeed retry with the same stream.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from . import classifiers as C
from .descriptions import (
    INF,
    IntervalRank,
    LnatDescription,
    RankFunction,
    build_lnat_set,
    m_base_from_rho,
    polymatroid_from_rank,
    polymatroid_from_rho,
    validate_interval_rank,
)
from .lattice_core import (
    Box,
    DiscreteFunction,
    DiscreteSet,
    d_transform,
)

MAX_DIM = 8


class GenerationError(RuntimeError):
    pass


@dataclass(frozen=True)
class GenSpec:
    cls: str
    dim: int
    radius: int = 2
    value_range: tuple = (0, 4)
    seed: int = 0
    max_dim: int = field(default=MAX_DIM, compare=False)

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("dimension must be at least 1")
        if self.dim > self.max_dim:
            raise ValueError(f"dimension {self.dim} exceeds the limit {self.max_dim}")
        if self.radius < 0:
            raise ValueError("radius must be nonnegative")
        if self.value_range[0] > self.value_range[1]:
            raise ValueError("empty value range")

    def rng(self) -> random.Random:
        return random.Random(f"{self.cls}:{self.dim}:{self.radius}:{self.value_range}:{self.seed}")

    @property
    def window(self) -> Box:
        return Box.cube(self.dim, self.radius)


def _verify(obj, verdict, what):
    if not verdict.positive:
        raise GenerationError(f"generated {what} failed verification: {verdict.witness}")
    return obj


def _convex_sequence(rng, length, value_range):
    """Values of a univariate discrete convex function on `length` consecutive integers."""
    lo, hi = value_range
    slopes = sorted(rng.randint(-hi, hi) for _ in range(max(0, length - 1)))
    vals = [rng.randint(lo, hi)]
    for s in slopes:
        vals.append(vals[-1] + s)
    return vals


def _convex_univariate(rng, span, value_range):
    """A convex function on [-span, span] as a dict."""
    vals = _convex_sequence(rng, 2 * span + 1, value_range)
    return {t: v for t, v in zip(range(-span, span + 1), vals)}


# -- separable -------------------------------------------------------------------------


def gen_separable(spec: GenSpec) -> DiscreteFunction:
    rng = spec.rng()
    R = spec.radius
    parts = []
    for _ in range(spec.dim):
        a = rng.randint(-R, R)
        b = rng.randint(a, R)
        parts.append((a, _convex_sequence(rng, b - a + 1, spec.value_range)))
    box = Box(tuple(a for a, _ in parts), tuple(a + len(v) - 1 for a, v in parts))
    f = DiscreteFunction(spec.dim, {x: sum(v[c - a] for c, (a, v) in zip(x, parts)) for x in box.points()})
    return _verify(f, C.is_separable(f), "separable function")


# -- L-natural -------------------------------------------------------------------------


def random_lnat_description(rng, n, R, p_inf=0.3) -> LnatDescription:
    p = [rng.randint(-R, R) for _ in range(n)]
    alpha = tuple(max(-R, c - rng.randint(0, R)) for c in p)
    beta = tuple(min(R, c + rng.randint(0, R)) for c in p)
    gamma = tuple(tuple(0 if i == j else (INF if rng.random() < p_inf else p[j] - p[i] + rng.randint(0, R))
                        for j in range(n)) for i in range(n))
    return LnatDescription(alpha, beta, gamma)


def gen_lnat_set(spec: GenSpec) -> DiscreteSet:
    rng = spec.rng()
    desc = random_lnat_description(rng, spec.dim, spec.radius)
    # p satisfies every constraint, so the system is feasible and the window holds p
    S = build_lnat_set(desc, spec.window)
    return _verify(S, C.is_lnat(S, "a"), "L-natural set")


def _two_separable(rng, n, R, value_range, dense=True):
    """sum phi_i(x_i) + sum psi_ij(x_j - x_i), each univariate convex."""
    phis = [_convex_univariate(rng, R, value_range) for _ in range(n)]
    psis = {}
    for i in range(n):
        for j in range(i + 1, n):
            if dense or rng.random() < 0.5:
                psis[(i, j)] = _convex_univariate(rng, 2 * R, value_range)

    def f(x):
        return sum(phis[i][x[i]] for i in range(n)) + sum(p[x[j] - x[i]] for (i, j), p in psis.items())

    return f


def gen_lnat_function(spec: GenSpec, retries: int = 20) -> DiscreteFunction:
    rng = spec.rng()
    for _ in range(retries):
        desc = random_lnat_description(rng, spec.dim, spec.radius)
        S = build_lnat_set(desc, spec.window)
        h = _two_separable(rng, spec.dim, spec.radius, spec.value_range)
        f = DiscreteFunction(spec.dim, {x: h(x) for x in S.points})
        if C.is_lnat(f, "a").status == C.YES:
            return f
    raise GenerationError("retry budget exhausted for an L-natural function")


def gen_l(spec: GenSpec) -> DiscreteFunction:
    """An L-convex function truncated to the window: difference constraints plus a
    function of the differences and a linear term along 1."""
    rng = spec.rng()
    n, R = spec.dim, spec.radius
    if R < 1:
        raise GenerationError("an L-convex window needs radius >= 1 to exercise translation")
    # p + 1 stays in the window, so the invariance is exercised at least once
    p = [rng.randint(-R, R - 1) for _ in range(n)]
    gamma = tuple(tuple(0 if i == j else (INF if rng.random() < 0.3 else p[j] - p[i] + rng.randint(0, R))
                        for j in range(n)) for i in range(n))
    desc = LnatDescription((-INF,) * n, (INF,) * n, gamma)
    S = build_lnat_set(desc, spec.window)
    psis = {(i, j): _convex_univariate(rng, 2 * R, spec.value_range) for i in range(n) for j in range(i + 1, n)
            if rng.random() < 0.7}
    slope = rng.randint(-2, 2)
    f = DiscreteFunction(n, {x: slope * sum(x) + sum(ps[x[j] - x[i]] for (i, j), ps in psis.items())
                             for x in S.points}, spec.window)
    return _verify(f, C.is_l(f), "L-convex function")


# -- M-natural / M ---------------------------------------------------------------------------


def random_rank_function(rng, n, R, terms=None) -> RankFunction:
    """rho(X) = sum_k min(c_k, w_k(X)) with nonnegative weights: normalized, monotone, submodular."""
    terms = terms if terms is not None else rng.randint(1, n + 1)
    caps = []
    for _ in range(terms):
        w = [rng.choice((0, 1, 1, 2)) for _ in range(n)]
        caps.append((rng.randint(1, max(1, R) + 1), w))
    rf = RankFunction(n, {})
    vals = {X: sum(min(c, sum(w[i - 1] for i in X)) for c, w in caps) for X in rf.subsets()}
    rho = RankFunction(n, vals)
    v = rho.check()
    if v.status != C.YES:
        raise GenerationError(f"capped modular sum is not a rank function: {v.witness}")
    return rho


def _shift(S: DiscreteSet, rng, R) -> DiscreteSet:
    t = [rng.randint(-R, 0) for _ in range(S.dim)]
    return DiscreteSet(S.dim, (tuple(a + b for a, b in zip(p, t)) for p in S.points))


def gen_mnat_set(spec: GenSpec) -> DiscreteSet:
    rng = spec.rng()
    rho = random_rank_function(rng, spec.dim, spec.radius)
    S = _shift(polymatroid_from_rho(rho), rng, spec.radius)
    return _verify(S, C.is_mnat(S), "M-natural set")


def gen_m_base(spec: GenSpec) -> DiscreteSet:
    rng = spec.rng()
    rho = random_rank_function(rng, spec.dim, spec.radius)
    S = _shift(m_base_from_rho(rho), rng, spec.radius)
    return _verify(S, C.is_m(S), "M-convex set")


def _separable_on(rng, S: DiscreteSet, value_range):
    lo = [min(p[i] for p in S.points) for i in range(S.dim)]
    hi = [max(p[i] for p in S.points) for i in range(S.dim)]
    phis = [_convex_sequence(rng, b - a + 1, value_range) for a, b in zip(lo, hi)]
    return DiscreteFunction(S.dim, {x: sum(ph[c - a] for c, a, ph in zip(x, lo, phis)) for x in S.points})


def gen_mnat_function(spec: GenSpec) -> DiscreteFunction:
    """Separable convex plus the indicator of a generated M-natural set."""
    rng = spec.rng()
    rho = random_rank_function(rng, spec.dim, spec.radius)
    S = _shift(polymatroid_from_rho(rho), rng, spec.radius)
    f = _separable_on(rng, S, spec.value_range)
    return _verify(f, C.is_mnat(f), "M-natural function")


def gen_m_function(spec: GenSpec) -> DiscreteFunction:
    """Separable convex plus the indicator of a generated M-convex set."""
    rng = spec.rng()
    rho = random_rank_function(rng, spec.dim, spec.radius)
    S = _shift(m_base_from_rho(rho), rng, spec.radius)
    f = _separable_on(rng, S, spec.value_range)
    return _verify(f, C.is_m(f), "M-convex function")


# -- multimodular ------------------------------------------------------------------------------


def gen_multimodular_set(spec: GenSpec) -> DiscreteSet:
    """Image of a generated L-natural set under D."""
    S = d_transform(gen_lnat_set(spec), "from_lnat")
    return _verify(S, C.is_multimodular(S), "multimodular set")


def gen_multimodular_function(spec: GenSpec) -> DiscreteFunction:
    f = d_transform(gen_lnat_function(spec), "from_lnat")
    return _verify(f, C.is_multimodular(f), "multimodular function")


# -- interval ranks --------------------------------------------------------------------------


def gen_interval_rank(spec: GenSpec) -> IntervalRank:
    """Staged construction: diagonal first, then each band between its two bounds."""
    rng = spec.rng()
    n = spec.dim
    r = {}
    for a in range(1, n + 1):
        r[(a, a)] = rng.randint(0, max(0, spec.radius))
    for width in range(1, n):
        for a in range(1, n - width + 1):
            b = a + width
            low = max(r[(a, b - 1)], r[(a + 1, b)])
            inner = r[(a + 1, b - 1)] if width > 1 else 0
            high = r[(a, b - 1)] + r[(a + 1, b)] - inner
            r[(a, b)] = rng.randint(low, high)
    table = IntervalRank(n, r)
    v = validate_interval_rank(table)
    if v.status != C.YES:
        raise GenerationError(f"staged interval rank failed validation: {v.witness}")
    return table


def gen_mm_polymatroid(spec: GenSpec) -> DiscreteSet:
    S = polymatroid_from_rank(gen_interval_rank(spec))
    if not (C.is_mnat(S).positive and C.is_multimodular(S).positive):
        raise GenerationError("polymatroid from an interval rank is not M-natural and multimodular")
    return S


# -- negative controls ----------------------------------------------------------------------------


def gen_noise(spec: GenSpec, density: float = 0.5) -> DiscreteFunction:
    rng = spec.rng()
    lo, hi = spec.value_range
    pts = [x for x in spec.window.points() if rng.random() < density]
    if not pts:
        pts = [tuple(rng.randint(-spec.radius, spec.radius) for _ in range(spec.dim))]
    return DiscreteFunction(spec.dim, {x: rng.randint(lo, hi) for x in pts})


def perturb(f: DiscreteFunction, rng: random.Random, k: int = 1, amount: int = 3) -> DiscreteFunction:
    """Change up to k values by a random nonzero amount (keeps the domain)."""
    ent = dict(f.entries)
    for x in rng.sample(sorted(ent), min(k, len(ent))):
        ent[x] = ent[x] + rng.choice([d for d in range(-amount, amount + 1) if d])
    return DiscreteFunction(f.dim, ent, f.window)


GENERATORS = {
    "sep": gen_separable,
    "lnat_set": gen_lnat_set,
    "lnat": gen_lnat_function,
    "l": gen_l,
    "mnat_set": gen_mnat_set,
    "mnat": gen_mnat_function,
    "m_set": gen_m_base,
    "m": gen_m_function,
    "mm_set": gen_multimodular_set,
    "mm": gen_multimodular_function,
    "mm_polymatroid": gen_mm_polymatroid,
    "noise": gen_noise,
}

# class each generator targets, as a ClassReport code
TARGET_CLASS = {
    "sep": "sep", "lnat_set": "Lnat", "lnat": "Lnat", "l": "L", "mnat_set": "Mnat", "mnat": "Mnat",
    "m_set": "M", "m": "M", "mm_set": "mm", "mm": "mm", "mm_polymatroid": "Mnat",
}


def generate(spec: GenSpec):
    if spec.cls == "interval_rank":
        return gen_interval_rank(spec)
    if spec.cls not in GENERATORS:
        raise ValueError(f"no generator for class {spec.cls!r}")
    return GENERATORS[spec.cls](spec)
