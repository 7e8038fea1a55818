"""Recognizers for the discrete convexity classes.

Every recognizer takes a :class:`DiscreteFunction` (sets are accepted and
replaced by their indicator functions) and returns a :class:`Verdict`.  A
``No`` verdict always carries a witness dict whose ``rule`` names the
violated inequality; :func:`dcx.rules.recheck` re-evaluates it exactly.

Pair scans run over dom f x dom f with numpy on a scaled integer grid (see
:mod:`dcx._grid`).  The first violating pair in lexicographic order is then
re-evaluated by the exact evaluator in :mod:`dcx.rules`, which builds the
witness.  If the two disagree, that is an internal error and is raised.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import rules
from ._grid import Grid, two_point_ok
from .geometry import CellTester, NeighborhoodLP, convex_hull, neighborhood
from .lattice_core import (
    INF,
    DiscreteFunction,
    DiscreteSet,
    as_function,
    bounding_box,
    d_transform,
    differences,
)

YES = "Yes"
NO = "No"
YES_WINDOW = "YesWithinWindow"
UNKNOWN = "Unknown"

CLASSES = ("sep", "int", "L", "L2", "Lnat", "L2nat", "M", "M2", "Mnat", "M2nat", "mm", "gdmc", "ddmc")
LNAT_VARIANTS = ("a", "b", "c", "d", "e", "f")


class InconsistencyError(RuntimeError):
    """Two decision routes disagreed; never reconciled silently."""


@dataclass(frozen=True)
class Verdict:
    status: str
    witness: dict | None = None
    detail: dict | None = field(default=None)

    def __post_init__(self):
        if self.status == NO and self.witness is None:
            raise ValueError("a No verdict needs a witness")

    @property
    def positive(self) -> bool:
        return self.status in (YES, YES_WINDOW)

    def to_json(self, cls: str | None = None) -> dict:
        out = {}
        if cls is not None:
            out["class"] = cls
        out["status"] = self.status
        if self.witness is not None:
            out["witness"] = self.witness
        if self.detail is not None:
            out["detail"] = self.detail
        return out


def _no(witness, **detail) -> Verdict:
    return Verdict(NO, witness, detail or None)


def _yes(**detail) -> Verdict:
    return Verdict(YES, None, detail or None)


@lru_cache(maxsize=8)
def _grid(f: DiscreteFunction) -> Grid:
    return Grid(f)


def _exact(f, pair, evaluator, *args):
    x, y = pair
    w = evaluator(f, x, y, *args)
    if w is None:
        raise InconsistencyError(f"scan flagged {evaluator.__name__} at {x}, {y} but exact check passed")
    return w


def _pair_points(g: Grid, hit):
    return g.points[hit[0]], g.points[hit[1]]


# -- pair kernels -------------------------------------------------------------


def _k_midpoint(g):
    def kernel(X, Y, vx, vy):
        S = X + Y
        return ~two_point_ok(g, -((-S) // 2), S // 2, vx, vy)
    return kernel


def _k_linf(g, kernel, lo=None, hi=None):
    def wrapped(X, Y, vx, vy):
        d = np.abs(X - Y).max(axis=-1)
        m = np.ones(d.shape, dtype=bool)
        if lo is not None:
            m &= d >= lo
        if hi is not None:
            m &= d <= hi
        return m & kernel(X, Y, vx, vy)
    return wrapped


def _k_directed(g):
    def kernel(X, Y, vx, vy):
        S = X + Y
        up, down = -((-S) // 2), S // 2
        a = np.where(X >= Y, up, down)
        b = np.where(Y >= X, up, down)
        return ~two_point_ok(g, a, b, vx, vy)
    return kernel


def _k_submodular(g):
    def kernel(X, Y, vx, vy):
        return ~two_point_ok(g, np.maximum(X, Y), np.minimum(X, Y), vx, vy)
    return kernel


def _k_domain_midpoint(g):
    def kernel(X, Y, vx, vy):
        S = X + Y
        fa, _ = g.lookup(-((-S) // 2))
        fb, _ = g.lookup(S // 2)
        return ~(fa & fb)
    return kernel


def _k_argmax(g):
    def kernel(X, Y, vx, vy):
        D = X - Y
        top = D.max(axis=-1, keepdims=True)
        A = (D == top).astype(np.int64)
        bad = ~two_point_ok(g, X - A, Y + A, vx, vy)
        return bad & (top[..., 0] > 0)
    return kernel


# -- separable ----------------------------------------------------------------


def is_separable(f) -> Verdict:
    f = as_function(f)
    box = bounding_box(f.entries)
    if box.size() != len(f):
        z = next(p for p in box.points() if p not in f.entries)
        return _no({"rule": "separable_domain", "z": list(z), "box_lower": list(box.lower),
                    "box_upper": list(box.upper), "inequality": "dom f is a box"})
    g = _grid(f)
    shape = tuple(int(v) for v in g.hi - g.lo + 1)
    V = g.val.reshape(shape)
    n = f.dim
    for i in range(n):
        if shape[i] < 3:
            continue
        lo = [slice(None)] * n
        mid = [slice(None)] * n
        hi = [slice(None)] * n
        lo[i], mid[i], hi[i] = slice(0, -2), slice(1, -1), slice(2, None)
        bad = V[tuple(lo)] + V[tuple(hi)] < 2 * V[tuple(mid)]
        if bad.any():
            idx = np.argwhere(bad)[0]
            idx[i] += 1
            x = tuple(int(c) for c in idx + g.lo)
            return _no(_exact(f, (x, i), lambda f_, x_, i_: rules.separable_axis(f_, x_, i_)))
    for i, j in itertools.combinations(range(n), 2):
        if shape[i] < 2 or shape[j] < 2:
            continue
        def sl(di, dj):
            s = [slice(None)] * n
            s[i] = slice(di, shape[i] - 1 + di)
            s[j] = slice(dj, shape[j] - 1 + dj)
            return tuple(s)
        mixed = V[sl(1, 1)] - V[sl(1, 0)] - V[sl(0, 1)] + V[sl(0, 0)]
        bad = mixed != 0
        if bad.any():
            x = tuple(int(c) for c in np.argwhere(bad)[0] + g.lo)
            w = rules.separable_mixed(f, x, i, j)
            if w is None:
                raise InconsistencyError("mixed difference scan disagrees with exact check")
            return _no(w)
    return _yes(parts=separable_parts(f))


def separable_parts(f: DiscreteFunction) -> list[dict]:
    """phi_1(t) = f(lo with x_1 = t); phi_i(t) = f(lo with x_i = t) - f(lo) for i > 1."""
    box = bounding_box(f.entries)
    base = f(box.lower)
    parts = []
    for i in range(f.dim):
        vals = []
        for t in range(box.lower[i], box.upper[i] + 1):
            p = list(box.lower)
            p[i] = t
            v = f(tuple(p)) - (base if i else 0)
            vals.append(str(v))
        parts.append({"i": i + 1, "lower": box.lower[i], "values": vals})
    return parts


# -- submodularity ----------------------------------------------------------------


def is_submodular(f) -> Verdict:
    f = as_function(f)
    g = _grid(f)
    hit = g.first_violation(_k_submodular(g), upper_only=True)
    if hit is None:
        return _yes()
    return _no(_exact(f, _pair_points(g, hit), rules.submodular))


def is_translation_submodular(f, mu_range: str = "nonneg") -> Verdict:
    """f(x)+f(y) >= f((x - mu 1) v y) + f(x ^ (y + mu 1)) over ordered dom pairs.

    ``mu_range="nonneg"`` ranges mu over 0 .. max_i(x_i - y_i) (the useful
    range; larger mu give x and y back); ``"all"`` also takes negative mu.
    """
    f = as_function(f)
    g = _grid(f)
    span = int((g.hi - g.lo).max()) if g.N else 0
    mus = range(0, span + 1) if mu_range == "nonneg" else range(-span, span + 1)
    # negative mu can leave the window, where a windowed object says nothing
    clip = f.window if mu_range == "all" else None

    def kernel_for(mu):
        def kernel(X, Y, vx, vy):
            a = np.maximum(X - mu, Y)
            b = np.minimum(X, Y + mu)
            bad = ~two_point_ok(g, a, b, vx, vy)
            if clip is not None:
                lo, hi = np.array(clip.lower), np.array(clip.upper)
                inside = ((a >= lo) & (a <= hi) & (b >= lo) & (b <= hi)).all(axis=-1)
                bad &= inside
            return bad
        return kernel

    best = None
    for mu in mus:
        hit = g.first_violation(kernel_for(mu))
        if hit is not None and (best is None or hit < best[0]):
            best = (hit, mu)
    if best is None:
        return _yes(mu_range=mu_range)
    x, y = _pair_points(g, best[0])
    w = rules.translation_submodular(f, x, y, best[1])
    if w is None:
        raise InconsistencyError("translation-submodular scan disagrees with exact check")
    return _no(w)


# -- L-natural ------------------------------------------------------------------


def _midpoint_scan(f, rule=rules.midpoint, lo=None, hi=None):
    g = _grid(f)
    kernel = _k_midpoint(g)
    if lo is not None or hi is not None:
        kernel = _k_linf(g, kernel, lo, hi)
    hit = g.first_violation(kernel, upper_only=True)
    if hit is None:
        return None
    return _exact(f, _pair_points(g, hit), rule)


def is_lnat(f, variant: str = "a") -> Verdict:
    """L-natural convexity by one of six equivalent characterizations.

    a: discrete midpoint convexity over all pairs;
    b: dom f is closed under midpoint roundings, and midpoint convexity for
       pairs at l-inf distance <= 2;
    c: integral convexity plus submodularity;
    d: translation-submodularity with mu >= 0;
    e: f(x)+f(y) >= f(x - 1_A) + f(y + 1_A) with A = argmax(x_i - y_i);
    f: submodularity of f~(x0, x) = f(x - x0 1), x0 in [-d, d] with d the
       l-inf diameter of dom f (pairs with larger x0 gaps are trivial).
    """
    f = as_function(f)
    if variant == "a":
        w = _midpoint_scan(f)
        return _yes(variant="a") if w is None else _no(w, variant="a")
    if variant == "b":
        g = _grid(f)
        hit = g.first_violation(_k_domain_midpoint(g), upper_only=True)
        if hit is not None:
            return _no(_exact(f, _pair_points(g, hit), rules.domain_midpoint), variant="b")
        w = _midpoint_scan(f, hi=2)
        return _yes(variant="b") if w is None else _no(w, variant="b")
    if variant == "c":
        # both conjuncts must hold; the cheap pairwise one goes first
        v = is_submodular(f)
        if v.status == NO:
            return _no(v.witness, variant="c")
        v = is_integrally_convex(f)
        return _yes(variant="c") if v.status == YES else _no(v.witness, variant="c")
    if variant == "d":
        v = is_translation_submodular(f, "nonneg")
        return _yes(variant="d") if v.status == YES else _no(v.witness, variant="d")
    if variant == "e":
        g = _grid(f)
        hit = g.first_violation(_k_argmax(g))
        if hit is None:
            return _yes(variant="e")
        return _no(_exact(f, _pair_points(g, hit), rules.argmax_step), variant="e")
    if variant == "f":
        return _lnat_lifted(f)
    raise ValueError(f"unknown variant {variant!r}")


def _lnat_lifted(f: DiscreteFunction) -> Verdict:
    g0 = _grid(f)
    d = int((g0.hi - g0.lo).max())
    lifted = {}
    for x0 in range(-d, d + 1):
        for x, v in f.entries.items():
            lifted[(x0,) + tuple(c + x0 for c in x)] = v
    F = DiscreteFunction(f.dim + 1, lifted)
    g = Grid(F)

    def kernel(X, Y, vx, vy):
        comparable = np.all(X <= Y, axis=-1) | np.all(Y <= X, axis=-1)
        return ~comparable & ~two_point_ok(g, np.maximum(X, Y), np.minimum(X, Y), vx, vy)

    hit = g.first_violation(kernel, upper_only=True)
    if hit is None:
        return _yes(variant="f", x0_range=[-d, d])
    x, y = _pair_points(g, hit)
    w = rules.lifted_submodular(f, x, y)
    if w is None:
        raise InconsistencyError("lifted submodularity scan disagrees with exact check")
    return _no(w, variant="f", x0_range=[-d, d])


def is_global_dmc(f) -> Verdict:
    f = as_function(f)
    w = _midpoint_scan(f, rules.global_midpoint, lo=2)
    return _yes() if w is None else _no(w)


def is_directed_dmc(f) -> Verdict:
    f = as_function(f)
    g = _grid(f)
    hit = g.first_violation(_k_directed(g), upper_only=True)
    if hit is None:
        return _yes()
    return _no(_exact(f, _pair_points(g, hit), rules.directed_midpoint))


# -- integral convexity -------------------------------------------------------------


def set_integral_convexity(S: DiscreteSet):
    """None if S is integrally convex, else a witness dict (rule ``cell_hull``)."""
    box = bounding_box(S.points)
    if box.size() == len(S):
        return None
    tester = CellTester(S, convex_hull(S.points))
    ranges = [range(lo, max(lo, hi - 1) + 1) for lo, hi in zip(box.lower, box.upper)]
    for cell in itertools.product(*ranges):
        z = tester.check(cell)
        if z is not None:
            f = as_function(S)
            w = rules.cell_point(f, z)
            if w is None:
                raise InconsistencyError(f"cell test flagged {z} but the exact recheck passed")
            w["cell"] = list(cell)
            return w
    return None


def _antipodal_bound(f, z):
    """Least (f(u) + f(2z - u)) / 2 over antipodal neighbor pairs of z in dom f."""
    best = INF
    for u in neighborhood(z):
        v = tuple(int(2 * c - a) for c, a in zip(z, u))
        if u > v:
            continue
        fu, fv = f(u), f(v)
        if fu != INF and fv != INF:
            val = (fu + fv) / 2
            if best == INF or val < best:
                best = val
    return best


def _extension_exceeds(f, z, bound) -> bool:
    """True when the local convex extension at z is strictly above bound."""
    anti = _antipodal_bound(f, z)
    if anti != INF and anti <= bound:
        return False
    if sum(1 for c in z if c.denominator != 1) <= 2:
        return anti == INF or anti > bound
    gens = [y for y in neighborhood(z) if y in f.entries]
    ext = NeighborhoodLP(z, gens, [f.entries[y] for y in gens]).solve()
    return ext == INF or ext > bound


def is_integrally_convex(f) -> Verdict:
    f = as_function(f)
    w = set_integral_convexity(f.domain)
    if w is not None:
        return _no(w)
    if f.is_constant():
        return _yes()
    g = _grid(f)
    lo2 = 2 * g.lo
    shape2 = 2 * (g.hi - g.lo) + 1
    strides2 = np.ones(f.dim, dtype=np.int64)
    for i in range(f.dim - 2, -1, -1):
        strides2[i] = strides2[i + 1] * shape2[i + 1]
    size2 = int(np.prod(shape2))
    big = np.iinfo(np.int64).max if g.val.dtype != object else None
    minsum = np.full(size2, big if big is not None else 0, dtype=g.val.dtype)
    seen = np.zeros(size2, dtype=bool)
    cols = np.arange(g.N)

    def pairs_in_block(s, t):
        X = g.P[s:t, None, :]
        Y = g.P[None, :, :]
        d = np.abs(X - Y).max(axis=-1)
        m = (d == 2) & (cols[None, :] > np.arange(s, t)[:, None])
        keys = ((X + Y - lo2) * strides2).sum(axis=-1)
        sums = g.pv[s:t, None] + g.pv[None, :]
        return m, keys, sums

    for s, t in g.block_rows():
        m, keys, sums = pairs_in_block(s, t)
        k, v = keys[m], sums[m]
        if big is None:
            for kk, vv in zip(k.tolist(), v.tolist()):
                if not seen[kk] or vv < minsum[kk]:
                    minsum[kk] = vv
                    seen[kk] = True
        else:
            np.minimum.at(minsum, k, v)
            seen[k] = True
    failing = {}
    for key in np.flatnonzero(seen).tolist():
        rem = key
        coords = []
        for st in strides2.tolist():
            coords.append(rem // st)
            rem %= st
        z = tuple(Fraction(int(c) + int(l), 2) for c, l in zip(coords, lo2))
        bound = Fraction(int(minsum[key]), 2 * g.scale)
        if _extension_exceeds(f, z, bound):
            failing[key] = z
    if not failing:
        return _yes()
    fkeys = np.array(sorted(failing), dtype=np.int64)
    for s, t in g.block_rows():
        m, keys, _ = pairs_in_block(s, t)
        m &= np.isin(keys, fkeys)
        for r, c in np.argwhere(m):
            x, y = g.points[s + int(r)], g.points[int(c)]
            w = rules.local_extension_pair(f, x, y)
            if w is not None:
                return _no(w)
    raise InconsistencyError("a failing midpoint was found but no pair reproduces it")


# -- L ---------------------------------------------------------------------------------


def is_l(f) -> Verdict:
    """L-convexity inside the window: L-natural plus f(x + 1) = f(x) + r.

    Never returns plain Yes: translation invariance is a statement about all
    of Z^n, and only the window is inspected.
    """
    f = as_function(f)
    if f.window is None:
        # a finite object with no window is literally bounded, so it cannot be invariant
        x = next(p for p in f.sorted_points() if tuple(c + 1 for c in p) not in f.entries)
        return _no({"rule": "finite_object", "inner": rules.translation_pair(f, x),
                    "inequality": "f(x+1) = f(x) + r (no window: object is bounded)"})
    v = is_lnat(f, "a")
    if v.status == NO:
        return _no(v.witness)
    win = f.window
    r = None
    first = None
    exercised = False
    for x in f.sorted_points():
        for sgn in (1, -1):
            x1 = tuple(c + sgn for c in x)
            if x1 not in win:
                continue
            if x1 not in f.entries:
                w = rules.translation_pair(f, x if sgn == 1 else x1, None) if sgn == 1 else \
                    {"rule": "translation", "x": list(x1), "x1": list(x),
                     "inequality": "f(x+1) = f(x) + r", "lhs": rules.fmt(f(x)), "rhs": "+inf"}
                return _no(w)
            if sgn == 1:
                exercised = True
                rx = f(x1) - f(x)
                if r is None:
                    r, first = rx, x
                elif rx != r:
                    return _no(rules.translation_pair(f, first, x))
    if not exercised:
        return Verdict(UNKNOWN, None, {"reason": "no x with x and x+1 both in dom f inside the window"})
    return Verdict(YES_WINDOW, None, {"r": str(r), "window": {"lower": list(win.lower), "upper": list(win.upper)}})


# -- M-natural / M -------------------------------------------------------------------------


def _k_exchange(g, n):
    eye = np.eye(n, dtype=np.int64)

    def kernel(X, Y, vx, vy):
        bad = np.zeros(np.broadcast_shapes(X.shape[:-1], Y.shape[:-1]), dtype=bool)
        for i in range(n):
            active = X[..., i] > Y[..., i]
            if not active.any():
                continue
            ok = two_point_ok(g, X - eye[i], Y + eye[i], vx, vy)
            for j in range(n):
                if j == i:
                    continue
                cand = X[..., j] < Y[..., j]
                if not cand.any():
                    continue
                d = eye[j] - eye[i]
                ok |= cand & two_point_ok(g, X + d, Y - d, vx, vy)
            bad |= active & ~ok
        return bad
    return kernel


def is_mnat(f) -> Verdict:
    f = as_function(f)
    g = _grid(f)
    hit = g.first_violation(_k_exchange(g, f.dim))
    if hit is None:
        return _yes()
    x, y = _pair_points(g, hit)
    for i in range(f.dim):
        w = rules.exchange(f, x, y, i)
        if w is not None:
            return _no(w)
    raise InconsistencyError(f"exchange scan flagged {x}, {y} but the exact check passed")


def _sum_witness(f):
    pts = f.sorted_points()
    s0 = sum(pts[0])
    other = next((p for p in pts if sum(p) != s0), None)
    if other is None:
        return None
    return rules.component_sum(f, pts[0], other)


def is_m(f) -> Verdict:
    f = as_function(f)
    v = is_mnat(f)
    if v.status == NO:
        return v
    w = _sum_witness(f)
    if w is not None:
        return _no(w)
    return _yes(component_sum=sum(f.sorted_points()[0]))


# -- multimodular ------------------------------------------------------------------------------


def hajek_directions(n: int) -> list[tuple]:
    """-e_1, e_1 - e_2, ..., e_{n-1} - e_n, e_n."""
    out = [tuple(-int(k == 0) for k in range(n))]
    for i in range(n - 1):
        out.append(tuple(int(k == i) - int(k == i + 1) for k in range(n)))
    out.append(tuple(int(k == n - 1) for k in range(n)))
    return out


def is_multimodular(f, route: str = "primary") -> Verdict:
    """Multimodularity.

    ``primary``: L-natural convexity (midpoint form) of g = f o D.
    ``direct``: the inequality f(z+d)+f(z+d') >= f(z)+f(z+d+d') over the
    direction set {-e_1, e_1-e_2, ..., e_n} and quadruples inside dom f;
    applies only when dom f is a box (Unknown otherwise).
    ``both``: run both and raise InconsistencyError if decisive routes disagree.
    """
    f = as_function(f)
    if route == "primary":
        return _mm_primary(f)
    if route == "direct":
        return _mm_direct(f)
    if route == "both":
        a, b = _mm_primary(f), _mm_direct(f)
        if b.status != UNKNOWN and a.status != b.status:
            raise InconsistencyError(f"multimodular routes disagree: primary {a.status}, direct {b.status}")
        return a
    raise ValueError(f"unknown route {route!r}")


def _mm_primary(f):
    gfun = d_transform(f, "to_lnat")
    g = _grid(gfun)
    hit = g.first_violation(_k_midpoint(g), upper_only=True)
    if hit is None:
        return _yes(route="primary")
    u, v = _pair_points(g, hit)
    w = rules.transformed_midpoint(f, differences(u), differences(v))
    if w is None:
        raise InconsistencyError("transformed midpoint scan disagrees with exact check")
    return _no(w, route="primary")


def _mm_direct(f):
    box = bounding_box(f.entries)
    if box.size() != len(f):
        return Verdict(UNKNOWN, None, {"route": "direct", "reason": "dom f is not a box"})
    g = _grid(f)
    shape = tuple(int(v) for v in g.hi - g.lo + 1)
    V = g.val.reshape(shape)
    n = f.dim
    dirs = hajek_directions(n)
    best = None
    for d, d2 in itertools.combinations(dirs, 2):
        shifts = [(0,) * n, d, d2, tuple(a + b for a, b in zip(d, d2))]
        # z ranges over points where all four shifted points stay in the box
        lo = [max(-min(s[i] for s in shifts), 0) for i in range(n)]
        hi = [shape[i] - 1 - max(max(s[i] for s in shifts), 0) for i in range(n)]
        if any(a > b for a, b in zip(lo, hi)):
            continue

        def view(s):
            return V[tuple(slice(lo[i] + s[i], hi[i] + s[i] + 1) for i in range(n))]

        bad = view(shifts[1]) + view(shifts[2]) < view(shifts[0]) + view(shifts[3])
        if bad.any():
            z = tuple(int(c) for c in np.argwhere(bad)[0] + np.array(lo) + g.lo)
            if best is None or z < best[0]:
                best = (z, d, d2)
    if best is None:
        return _yes(route="direct")
    w = rules.hajek(f, *best)
    if w is None:
        raise InconsistencyError("direct multimodular scan disagrees with exact check")
    return _no(w, route="direct")
