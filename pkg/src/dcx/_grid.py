"""Dense integer grid over the bounding box of a function, for vectorized pair scans.

Values are scaled by the LCM of their denominators so every comparison is an
exact integer comparison.  Off-domain cells carry ``fin == False`` and value 0.
Pair scans return the first violating pair in lexicographic order of the
sorted domain, so the caller can rebuild an exact witness for that pair.
"""

from __future__ import annotations

import math

import numpy as np

from .lattice_core import DiscreteFunction

_SAFE = 2**60


class Grid:
    def __init__(self, f: DiscreteFunction):
        self.f = f
        self.points = f.sorted_points()
        self.P = np.array(self.points, dtype=np.int64).reshape(len(self.points), f.dim)
        self.n = f.dim
        self.N = len(self.points)
        self.lo = self.P.min(axis=0)
        self.hi = self.P.max(axis=0)
        shape = self.hi - self.lo + 1
        self.strides = np.ones(self.n, dtype=np.int64)
        for i in range(self.n - 2, -1, -1):
            self.strides[i] = self.strides[i + 1] * shape[i + 1]
        size = int(np.prod(shape))
        den = 1
        for v in f.entries.values():
            den = den * v.denominator // math.gcd(den, v.denominator)
        self.scale = den
        ints = [int(f.entries[p] * den) for p in self.points]
        big = max((abs(v) for v in ints), default=0)
        dtype = np.int64 if 4 * big < _SAFE else object
        self.val = np.zeros(size, dtype=dtype)
        self.fin = np.zeros(size, dtype=bool)
        idx = self.index(self.P)
        self.val[idx] = np.array(ints, dtype=dtype)
        self.fin[idx] = True
        self.pv = self.val[idx]

    def index(self, Q: np.ndarray) -> np.ndarray:
        return ((Q - self.lo) * self.strides).sum(axis=-1)

    def lookup(self, Q: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """(finite mask, scaled values) at the points Q (shape (..., n))."""
        inside = np.all((Q >= self.lo) & (Q <= self.hi), axis=-1)
        idx = np.where(inside, self.index(np.where(inside[..., None], Q, self.lo)), 0)
        fin = inside & self.fin[idx]
        return fin, self.val[idx]

    def block_rows(self):
        """Yield (start, stop) row blocks sized to keep (B, N, n) arrays modest."""
        per = max(1, 2_000_000 // max(1, self.N * self.n))
        for s in range(0, self.N, per):
            yield s, min(self.N, s + per)

    def first_violation(self, kernel, upper_only: bool = False):
        """Scan all pairs (x_i, y_j) and return the first (i, j) where kernel flags a violation.

        ``kernel(X, Y)`` receives X of shape (B, 1, n) and Y of shape (1, N, n)
        together with the value arrays, and returns a (B, N) boolean array.
        """
        Y = self.P[None, :, :]
        vy = self.pv[None, :]
        cols = np.arange(self.N)
        for s, t in self.block_rows():
            X = self.P[s:t, None, :]
            vx = self.pv[s:t, None]
            bad = kernel(X, Y, vx, vy)
            if upper_only:
                bad &= cols[None, :] > np.arange(s, t)[:, None]
            if bad.any():
                r, c = np.argwhere(bad)[0]
                return s + int(r), int(c)
        return None


def two_point_ok(grid: Grid, A, B, vx, vy):
    """Mask where f(A) + f(B) <= f(x) + f(y) holds (x, y in dom)."""
    fa, va = grid.lookup(A)
    fb, vb = grid.lookup(B)
    return fa & fb & (va + vb <= vx + vy)
