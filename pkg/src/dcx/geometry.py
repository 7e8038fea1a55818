"""Exact rational polyhedral routines at small dimension.

Everything here works over :class:`fractions.Fraction`.  Qhull (via scipy) is
used only to propose candidate facets of a convex hull; every facet is then
recomputed and verified exactly, so floating point never reaches a result.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .lattice_core import INF, DiscreteFunction, DiscreteSet

MAX_DIM = 8


class Infeasible(Exception):
    pass


class Unbounded(Exception):
    pass


# -- linear algebra -----------------------------------------------------------


def _rref(rows: list[list[Fraction]], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    m = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        pv = m[r][c]
        m[r] = [v / pv for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                fac = m[i][c]
                m[i] = [a - fac * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def nullspace(rows: list[Sequence], ncols: int) -> list[list[Fraction]]:
    """Basis of {a : row . a = 0 for every row}."""
    red, pivots = _rref([[Fraction(v) for v in r] for r in rows], ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [Fraction(0)] * ncols
        vec[fc] = Fraction(1)
        for row, pc in zip(red, pivots):
            vec[pc] = -row[fc]
        basis.append(vec)
    return basis


def primitive(vec: Sequence[Fraction]) -> tuple[int, ...]:
    """Scale a rational vector to the primitive integer vector with the same direction."""
    den = 1
    for v in vec:
        den = den * Fraction(v).denominator // math.gcd(den, Fraction(v).denominator)
    ints = [int(Fraction(v) * den) for v in vec]
    g = 0
    for v in ints:
        g = math.gcd(g, v)
    if g == 0:
        return tuple(ints)
    return tuple(v // g for v in ints)


def _dot(a, x):
    return sum(ai * xi for ai, xi in zip(a, x))


# -- exact simplex -------------------------------------------------------------


def simplex_standard(c: Sequence, A: list[Sequence], b: Sequence) -> tuple[Fraction, list[Fraction]]:
    """Minimize c.x subject to A x = b, x >= 0, exactly.

    Two-phase tableau method with Bland's rule.  Raises :class:`Infeasible`
    or :class:`Unbounded`.
    """
    m, n = len(A), len(c)
    T = []
    for i in range(m):
        row = [Fraction(v) for v in A[i]] + [Fraction(b[i])]
        if row[-1] < 0:
            row = [-v for v in row]
        T.append(row)
    # columns: 0..n-1 real, n..n+m-1 artificial, last = rhs
    for i in range(m):
        T[i] = T[i][:n] + [Fraction(int(i == k)) for k in range(m)] + [T[i][n]]
    basis = [n + i for i in range(m)]
    width = n + m

    def pivot(r, col):
        pv = T[r][col]
        if pv != 1:
            T[r] = [v / pv for v in T[r]]
        prow = T[r]
        for i in range(m):
            if i != r:
                fac = T[i][col]
                if fac != 0:
                    T[i] = [a - fac * p for a, p in zip(T[i], prow)]
        basis[r] = col

    def run(cost, allowed):
        while True:
            # reduced costs: cost_j - sum_i cost_basis[i] * T[i][j]
            enter = None
            for j in range(width):
                if j not in allowed or j in basis:
                    continue
                rc = cost[j] - sum(cost[basis[i]] * T[i][j] for i in range(m) if T[i][j] != 0)
                if rc < 0:
                    enter = j
                    break
            if enter is None:
                return
            best = None
            for i in range(m):
                a = T[i][enter]
                if a > 0:
                    ratio = T[i][-1] / a
                    if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                        best = (ratio, i)
            if best is None:
                raise Unbounded()
            pivot(best[1], enter)

    if m:
        phase1 = [Fraction(0)] * n + [Fraction(1)] * m
        run(phase1, set(range(width)))
        if sum(T[i][-1] for i in range(m) if basis[i] >= n) != 0:
            raise Infeasible()
        # drive zero-level artificials out of the basis, dropping redundant rows
        i = 0
        while i < m:
            if basis[i] >= n:
                col = next((j for j in range(n) if T[i][j] != 0), None)
                if col is None:
                    del T[i]
                    del basis[i]
                    m -= 1
                    continue
                pivot(i, col)
            i += 1
    cost = [Fraction(v) for v in c] + [Fraction(0)] * (width - n)
    run(cost, set(range(n)))
    x = [Fraction(0)] * n
    for i in range(m):
        if basis[i] < n:
            x[basis[i]] = T[i][-1]
    return _dot(c, x), x


def lp_box(c, ineqs, upper=None, eqs=()) -> tuple[Fraction, list[Fraction]]:
    """Minimize c.z subject to a.z <= b for (a, b) in ineqs, a.z = b for eqs,
    and 0 <= z <= upper (upper optional, per coordinate)."""
    n = len(c)
    rows, rhs = [], []
    nslack = len(ineqs) + (n if upper is not None else 0)
    k = 0
    for a, bb in ineqs:
        row = list(a) + [0] * nslack
        row[n + k] = 1
        k += 1
        rows.append(row)
        rhs.append(bb)
    if upper is not None:
        for i in range(n):
            row = [0] * (n + nslack)
            row[i] = 1
            row[n + k] = 1
            k += 1
            rows.append(row)
            rhs.append(upper[i])
    for a, bb in eqs:
        rows.append(list(a) + [0] * nslack)
        rhs.append(bb)
    val, x = simplex_standard(list(c) + [0] * nslack, rows, rhs)
    return val, x[:n]


# -- polytopes -----------------------------------------------------------------


@dataclass(frozen=True)
class HPolytope:
    """{x : a.x <= b for every (a, b) in facets}.  Equalities appear as pairs."""

    dim: int
    facets: tuple = field(default=())

    def contains(self, x: Sequence) -> bool:
        return all(_dot(a, x) <= b for a, b in self.facets)

    def equalities(self) -> list[tuple]:
        fs = set(self.facets)
        out = []
        for a, b in self.facets:
            neg = (tuple(-v for v in a), -b)
            if neg in fs and (a, b) > neg:
                out.append((a, b))
        return sorted(out)

    def to_json(self) -> dict:
        return {"facets": [{"a": [str(Fraction(v)) for v in a], "b": str(Fraction(b))} for a, b in self.facets]}

    @classmethod
    def from_json(cls, data: dict) -> "HPolytope":
        facets = tuple((tuple(Fraction(v) for v in f["a"]), Fraction(f["b"])) for f in data["facets"])
        dim = len(facets[0][0]) if facets else 0
        return cls(dim, facets)


def _affine_frame(points: list[tuple]):
    """Return (rank, pivot coordinates, equalities as (a, b)) for aff(points)."""
    n = len(points[0])
    p0 = points[0]
    diffs = [[Fraction(a - b) for a, b in zip(p, p0)] for p in points[1:]]
    red, pivots = _rref(diffs, n) if diffs else ([], [])
    eqs = []
    for vec in nullspace(red, n) if red else nullspace([[0] * n], n):
        a = primitive(vec)
        eqs.append((a, _dot(a, p0)))
    return len(pivots), pivots, eqs


def _facets_bruteforce(proj: list[tuple], r: int) -> set:
    """All facet inequalities of conv(proj) in R^r (proj full-dimensional), exactly."""
    out = set()
    m = len(proj)
    for combo in itertools.combinations(range(m), r):
        base = proj[combo[0]]
        rows = [[q - p for q, p in zip(proj[k], base)] for k in combo[1:]]
        ns = nullspace(rows, r)
        if len(ns) != 1:
            continue
        f = _oriented_facet(primitive(ns[0]), proj, base)
        if f is not None:
            out.add(f)
    return out


def _oriented_facet(a: tuple, proj: list[tuple], on: tuple):
    b = _dot(a, on)
    vals = [_dot(a, p) for p in proj]
    if all(v <= b for v in vals):
        return (a, b)
    if all(v >= b for v in vals):
        return (tuple(-v for v in a), -b)
    return None


def _facets_qhull(proj: list[tuple], r: int) -> set | None:
    try:
        import numpy as np
        from scipy.spatial import ConvexHull
        from scipy.spatial import QhullError
    except ImportError:  # pragma: no cover
        return None
    try:
        hull = ConvexHull(np.array(proj, dtype=float), qhull_options="Qt")
    except (QhullError, ValueError):
        return None
    out = set()
    for simplex in hull.simplices:
        base = proj[simplex[0]]
        rows = [[q - p for q, p in zip(proj[k], base)] for k in simplex[1:]]
        ns = nullspace(rows, r)
        if len(ns) != 1:
            return None
        f = _oriented_facet(primitive(ns[0]), proj, base)
        if f is None:
            return None
        out.add(f)
    return out


def convex_hull(points, method: str = "auto") -> HPolytope:
    """Exact H-representation of conv(points).

    ``method`` is ``"auto"`` (Qhull candidates, exactly verified, with brute
    force as fallback) or ``"brute"`` (exact enumeration of all facet
    hyperplanes; slow, used as an oracle).
    """
    pts = sorted({tuple(int(c) for c in p) for p in points})
    if not pts:
        raise ValueError("convex hull of an empty point set")
    n = len(pts[0])
    if n > MAX_DIM:
        raise ValueError(f"dimension {n} exceeds {MAX_DIM}")
    r, pivots, eqs = _affine_frame(pts)
    facets = set()
    for a, b in eqs:
        facets.add((a, b))
        facets.add((tuple(-v for v in a), -b))
    if r >= 1:
        proj = [tuple(p[c] for c in pivots) for p in pts]
        if r == 1:
            lo, hi = min(q[0] for q in proj), max(q[0] for q in proj)
            inner = {((1,), hi), ((-1,), -lo)}
        elif len(proj) == r + 1 or method == "brute":
            inner = _facets_bruteforce(proj, r)
        else:
            inner = _facets_qhull(proj, r)
            if inner is None:
                inner = _facets_bruteforce(proj, r)
        for a, b in inner:
            full = [0] * n
            for c, v in zip(pivots, a):
                full[c] = v
            facets.add((tuple(full), b))
    # hull facets have primitive integer normals and integer offsets
    return HPolytope(n, tuple(sorted((tuple(int(v) for v in a), int(b)) for a, b in facets)))


def lp_solve(objective: Sequence, polytope: HPolytope, sense: str = "min"):
    """Optimize over a bounded HPolytope.  Returns (value, optimizer) or raises Infeasible."""
    if polytope.dim > MAX_DIM:
        raise ValueError(f"dimension {polytope.dim} exceeds {MAX_DIM}")
    n = polytope.dim
    sign = 1 if sense == "min" else -1
    if sense not in ("min", "max"):
        raise ValueError(f"unknown sense {sense!r}")
    # free variables split as x = u - v
    c = [sign * Fraction(v) for v in objective] + [-sign * Fraction(v) for v in objective]
    ineqs = [(list(a) + [-v for v in a], b) for a, b in polytope.facets]
    try:
        val, z = lp_box(c, ineqs)
    except Unbounded:
        raise RuntimeError("LP over a polytope reported unbounded; polytope is not bounded") from None
    x = [z[i] - z[n + i] for i in range(n)]
    return sign * val, x


# -- local convex extension -------------------------------------------------------


@dataclass
class NeighborhoodLP:
    """min sum(lambda_y f(y)) over convex combinations of generators equal to target."""

    target: tuple
    generators: list
    costs: list

    def solve(self):
        if not self.generators:
            return INF
        n = len(self.target)
        m = len(self.generators)
        A = [[g[i] for g in self.generators] for i in range(n)] + [[1] * m]
        b = list(self.target) + [1]
        try:
            val, _ = simplex_standard(self.costs, A, b)
        except Infeasible:
            return INF
        return val


def neighborhood(z: Sequence[Fraction]) -> list[tuple]:
    axes = []
    for c in z:
        c = Fraction(c)
        if c.denominator == 1:
            axes.append((int(c),))
        else:
            fl = math.floor(c)
            axes.append((fl, fl + 1))
    return list(itertools.product(*axes))


def local_extension_value(f: DiscreteFunction, z: Sequence):
    """Value of the local convex extension of f at the rational point z."""
    z = tuple(Fraction(c) for c in z)
    gens = [y for y in neighborhood(z) if y in f.entries]
    frac = [i for i, c in enumerate(z) if c.denominator != 1]
    if len(frac) <= 2 and all(z[i].denominator == 2 for i in frac):
        return _half_integer_extension(f, z, frac)
    return NeighborhoodLP(z, gens, [f.entries[y] for y in gens]).solve()


def _half_integer_extension(f, z, frac):
    """Closed forms for half-integral z with at most two fractional coordinates.

    For k fractional coordinates the feasible convex combinations are the
    antipodal pairs of the k-cube (k <= 2), so the minimum is over those.
    """
    base = [math.floor(c) for c in z]
    if not frac:
        return f(tuple(base))
    best = INF
    corners = list(itertools.product((0, 1), repeat=len(frac)))
    for bits in corners:
        if bits[0] == 1:
            continue
        u, v = list(base), list(base)
        for k, i in enumerate(frac):
            u[i] += bits[k]
            v[i] += 1 - bits[k]
        fu, fv = f(tuple(u)), f(tuple(v))
        if fu != INF and fv != INF:
            val = (fu + fv) / 2
            if best == INF or val < best:
                best = val
    return best


# -- per-cell hull comparison -------------------------------------------------------


class CellTester:
    """Compares conv(S) and conv(S n C) inside unit cells C, with caching.

    ``check(lower)`` returns ``None`` when conv(S) n C = conv(S n vert C), and
    otherwise a rational point of conv(S) n C outside conv(S n vert C).
    """

    def __init__(self, S: DiscreteSet, hull: HPolytope | None = None):
        self.S = S
        self.dim = S.dim
        self.hull = hull if hull is not None else convex_hull(S.points)
        self.offsets = list(itertools.product((0, 1), repeat=self.dim))
        self._cache: dict = {}
        self._vhull: dict = {}

    def check(self, lower: Sequence[int]):
        n = self.dim
        lower = tuple(lower)
        present = tuple(tuple(a + o for a, o in zip(lower, off)) in self.S.points for off in self.offsets)
        if all(present):
            return None
        cutting = []
        for a, b in self.hull.facets:
            rb = b - _dot(a, lower)
            hi = sum(v for v in a if v > 0)
            lo = sum(v for v in a if v < 0)
            if lo > rb:
                return None  # cell misses conv(S) entirely, so V is empty too
            if hi > rb:
                cutting.append((a, rb))
        key = (present, tuple(cutting))
        if key in self._cache:
            rel = self._cache[key]
        else:
            rel = self._check_relative(present, cutting)
            self._cache[key] = rel
        if rel is None:
            return None
        return tuple(Fraction(a) + c for a, c in zip(lower, rel))

    def _check_relative(self, present, cutting):
        n = self.dim
        verts = [off for off, p in zip(self.offsets, present) if p]
        if not cutting:
            missing = [off for off, p in zip(self.offsets, present) if not p]
            return tuple(Fraction(v) for v in missing[0])
        ones = [1] * n
        if not verts:
            try:
                _, z = lp_box([0] * n, cutting, ones)
            except Infeasible:
                return None
            return tuple(z)
        if present not in self._vhull:
            self._vhull[present] = _ordered_constraints(convex_hull(verts))
        for g, h in self._vhull[present]:
            if sum(v for v in g if v > 0) <= h:
                continue  # implied by the cell itself
            try:
                val, z = lp_box([-v for v in g], cutting, ones)
            except Infeasible:
                return None
            if -val > h:
                return tuple(z)
        return None


def _ordered_constraints(P: HPolytope) -> list:
    # equalities first (both orientations), then the remaining facets
    eq = P.equalities()
    eqset = set()
    out = []
    for a, b in eq:
        out.append((a, b))
        out.append((tuple(-v for v in a), -b))
        eqset.update(out[-2:])
    out.extend(f for f in P.facets if f not in eqset)
    return out


def cell_hull_equal(S: DiscreteSet, cell_lower: Sequence[int], hull: HPolytope | None = None):
    """True if conv(S) n C = conv(S n vert C) for the unit cell C at cell_lower,
    else a rational witness point in the difference."""
    res = CellTester(S, hull).check(cell_lower)
    return True if res is None else res


def in_convex_hull(points: list[tuple], z: Sequence) -> bool:
    """Exact membership of z in conv(points), via LP feasibility."""
    if not points:
        return False
    n = len(z)
    m = len(points)
    A = [[p[i] for p in points] for i in range(n)] + [[1] * m]
    try:
        simplex_standard([0] * m, A, list(z) + [1])
    except Infeasible:
        return False
    return True
