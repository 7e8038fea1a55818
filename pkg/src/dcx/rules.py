"""Exact evaluation of the defining inequalities at explicit points.

Each evaluator takes a function and the points named by a witness and
returns a witness dict when the inequality is violated there, else ``None``.
Recognizers use these to build witnesses for pairs found by the vectorized
scan, and :func:`recheck` uses them to confirm a witness independently.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .lattice_core import (
    INF,
    DiscreteFunction,
    cumulative,
    differences,
    directed_rounding,
    join_meet,
    linf,
    midpoint_roundings,
    supports,
    unit,
)


def fmt(v) -> str:
    return "+inf" if v == INF else str(Fraction(v))


def parse_value(s: str):
    return INF if s == "+inf" else Fraction(s)


def _total(*vals):
    if any(v == INF for v in vals):
        return INF
    return sum(vals)


def _two_point(f, rule, x, y, a, b, **extra):
    x, y = tuple(x), tuple(y)
    lhs = _total(f(x), f(y))
    if lhs == INF:
        return None
    rhs = _total(f(a), f(b))
    if rhs <= lhs:
        return None
    w = {"rule": rule, "x": list(x), "y": list(y), "a": list(a), "b": list(b)}
    w.update(extra)
    w.update({"inequality": "f(x)+f(y) >= f(a)+f(b)", "lhs": fmt(lhs), "rhs": fmt(rhs)})
    return w


def midpoint(f, x, y):
    up, down = midpoint_roundings(x, y)
    return _two_point(f, "midpoint", x, y, up, down)


def global_midpoint(f, x, y):
    if linf(x, y) < 2:
        return None
    up, down = midpoint_roundings(x, y)
    return _two_point(f, "global_midpoint", x, y, up, down)


def directed_midpoint(f, x, y):
    return _two_point(f, "directed_midpoint", x, y, directed_rounding(x, y), directed_rounding(y, x))


def submodular(f, x, y):
    j, m = join_meet(x, y)
    return _two_point(f, "submodular", x, y, j, m)


def translation_submodular(f, x, y, mu):
    a = tuple(max(xi - mu, yi) for xi, yi in zip(x, y))
    b = tuple(min(xi, yi + mu) for xi, yi in zip(x, y))
    return _two_point(f, "translation_submodular", x, y, a, b, mu=mu)


def argmax_step(f, x, y):
    diff = [a - b for a, b in zip(x, y)]
    top = max(diff)
    if top <= 0:
        return None
    A = [i for i, d in enumerate(diff) if d == top]
    a = tuple(c - (i in A) for i, c in enumerate(x))
    b = tuple(c + (i in A) for i, c in enumerate(y))
    return _two_point(f, "argmax_step", x, y, a, b, A=A)


def domain_midpoint(f, x, y):
    """Both roundings of the midpoint must lie in dom f."""
    x, y = tuple(x), tuple(y)
    if x not in f.entries or y not in f.entries:
        return None
    up, down = midpoint_roundings(x, y)
    missing = [list(p) for p in (up, down) if p not in f.entries]
    if not missing:
        return None
    return {"rule": "domain_midpoint", "x": list(x), "y": list(y), "a": list(up), "b": list(down),
            "missing": missing, "inequality": "roundings of (x+y)/2 lie in dom f"}


def exchange(f, x, y, i):
    x, y = tuple(x), tuple(y)
    lhs = _total(f(x), f(y))
    if lhs == INF:
        return None
    pos, neg = supports([a - b for a, b in zip(x, y)])
    if i not in pos:
        return None
    n = len(x)
    best = INF
    cands = []
    for j in [None] + sorted(neg):
        d = tuple(-u for u in unit(n, i))
        if j is not None:
            d = tuple(a + b for a, b in zip(d, unit(n, j)))
        a = tuple(p + q for p, q in zip(x, d))
        b = tuple(p - q for p, q in zip(y, d))
        v = _total(f(a), f(b))
        cands.append({"j": 0 if j is None else j + 1, "a": list(a), "b": list(b), "value": fmt(v)})
        if v < best:
            best = v
    if best <= lhs:
        return None
    return {"rule": "exchange", "x": list(x), "y": list(y), "i": i + 1, "candidates": cands,
            "inequality": "f(x)+f(y) >= min_j f(x-e_i+e_j)+f(y+e_i-e_j)",
            "lhs": fmt(lhs), "rhs": fmt(best)}


def lifted_value(f, p):
    x0 = p[0]
    return f(tuple(c - x0 for c in p[1:]))


class _Lifted:
    """f~(x0, x) = f(x - x0 * 1), evaluated on demand."""

    def __init__(self, f):
        self.f = f

    def __call__(self, p):
        return lifted_value(self.f, tuple(p))


def lifted_submodular(f, x, y):
    w = submodular(_Lifted(f), x, y)
    if w is not None:
        w["rule"] = "lifted_submodular"
    return w


def hajek(f, z, d, d2):
    z = tuple(z)
    p1 = tuple(a + b for a, b in zip(z, d))
    p2 = tuple(a + b for a, b in zip(z, d2))
    p12 = tuple(a + b + c for a, b, c in zip(z, d, d2))
    lhs = _total(f(p1), f(p2))
    rhs = _total(f(z), f(p12))
    if lhs == INF or rhs <= lhs:
        return None
    return {"rule": "hajek", "z": list(z), "d": list(d), "d2": list(d2),
            "inequality": "f(z+d)+f(z+d') >= f(z)+f(z+d+d')", "lhs": fmt(lhs), "rhs": fmt(rhs)}


def transformed_midpoint(f, x, y):
    """Midpoint inequality for g = f o D at D^{-1}x, D^{-1}y, reported in both coordinates."""
    gx, gy = cumulative(x), cumulative(y)
    g = lambda p: f(differences(p))  # noqa: E731
    w = _two_point(g, "transformed_midpoint", gx, gy, *midpoint_roundings(gx, gy))
    if w is None:
        return None
    w["tx"], w["ty"] = w.pop("x"), w.pop("y")
    w["ta"], w["tb"] = w.pop("a"), w.pop("b")
    w["x"], w["y"] = list(x), list(y)
    w["Dw_up"] = list(differences(w["ta"]))
    w["Dw_down"] = list(differences(w["tb"]))
    w["inequality"] = "g(u)+g(v) >= g(ceil((u+v)/2))+g(floor((u+v)/2)), g = f o D, u = D^-1 x, v = D^-1 y"
    return w


def separable_axis(f, x, i):
    x = tuple(x)
    lo = tuple(c - (k == i) for k, c in enumerate(x))
    hi = tuple(c + (k == i) for k, c in enumerate(x))
    a, b, c = f(lo), f(x), f(hi)
    if INF in (a, b, c) or a + c >= 2 * b:
        return None
    return {"rule": "separable_axis", "x": list(x), "i": i + 1,
            "inequality": "f(x-e_i)+f(x+e_i) >= 2 f(x)", "lhs": fmt(a + c), "rhs": fmt(2 * b)}


def separable_mixed(f, x, i, j):
    x = tuple(x)
    ei = [int(k == i) for k in range(len(x))]
    ej = [int(k == j) for k in range(len(x))]
    pts = [x, tuple(a + b for a, b in zip(x, ei)), tuple(a + b for a, b in zip(x, ej)),
           tuple(a + b + c for a, b, c in zip(x, ei, ej))]
    vals = [f(p) for p in pts]
    if INF in vals:
        return None
    mixed = vals[3] - vals[1] - vals[2] + vals[0]
    if mixed == 0:
        return None
    return {"rule": "separable_mixed", "x": list(x), "i": i + 1, "j": j + 1,
            "inequality": "f(x+e_i+e_j)-f(x+e_i)-f(x+e_j)+f(x) = 0", "lhs": fmt(mixed), "rhs": "0"}


def local_extension_pair(f, x, y):
    from .geometry import local_extension_value

    if linf(x, y) != 2:
        return None
    x, y = tuple(x), tuple(y)
    if x not in f.entries or y not in f.entries:
        return None
    mid = tuple(Fraction(a + b, 2) for a, b in zip(x, y))
    ext = local_extension_value(f, mid)
    avg = (f(x) + f(y)) / 2
    if ext <= avg:
        return None
    return {"rule": "local_extension", "x": list(x), "y": list(y), "mid": [str(c) for c in mid],
            "inequality": "f~((x+y)/2) <= (f(x)+f(y))/2", "lhs": fmt(ext), "rhs": fmt(avg)}


def cell_point(f, z):
    """z lies in conv(dom f) but outside conv(dom f n N(z))."""
    from .geometry import in_convex_hull, neighborhood

    z = tuple(Fraction(c) for c in z)
    dom = list(f.entries)
    if not in_convex_hull(dom, z):
        return None
    local = [p for p in neighborhood(z) if p in f.entries]
    if in_convex_hull(local, z):
        return None
    return {"rule": "cell_hull", "point": [str(c) for c in z],
            "inequality": "z in conv(dom f) implies z in conv(dom f n N(z))"}


def translation_pair(f, x, x2=None):
    """Compare f(x+1)-f(x) with f(x2+1)-f(x2); with x2 None, require x+1 in dom."""
    x = tuple(x)
    one = lambda p: tuple(c + 1 for c in p)  # noqa: E731
    r1 = _diff(f(one(x)), f(x))
    if x2 is None:
        if r1 is None:
            return {"rule": "translation", "x": list(x), "x1": list(one(x)),
                    "inequality": "f(x+1) = f(x) + r", "lhs": fmt(f(one(x))), "rhs": fmt(f(x))}
        return None
    x2 = tuple(x2)
    r2 = _diff(f(one(x2)), f(x2))
    if r1 == r2 and r1 != "mismatch":
        return None
    return {"rule": "translation", "x": list(x), "y": list(x2), "r_x": str(r1), "r_y": str(r2),
            "inequality": "f(x+1)-f(x) = r for every x"}


def _diff(a, b):
    if a == INF and b == INF:
        return "both_inf"
    if a == INF or b == INF:
        return None if a == INF else "mismatch"
    return a - b


def component_sum(f, x, y):
    if sum(x) == sum(y) or tuple(x) not in f.entries or tuple(y) not in f.entries:
        return None
    return {"rule": "component_sum", "x": list(x), "y": list(y),
            "inequality": "x(N) constant on dom f", "lhs": str(sum(x)), "rhs": str(sum(y))}


_PAIR_RULES = {
    "midpoint": midpoint,
    "global_midpoint": global_midpoint,
    "directed_midpoint": directed_midpoint,
    "submodular": submodular,
    "argmax_step": argmax_step,
    "domain_midpoint": domain_midpoint,
    "lifted_submodular": lifted_submodular,
    "transformed_midpoint": transformed_midpoint,
    "local_extension": local_extension_pair,
    "component_sum": component_sum,
}

_CLASS_RULE = {
    "Lnat": "midpoint",
    "gdmc": "global_midpoint",
    "ddmc": "directed_midpoint",
    "mm": "transformed_midpoint",
    "submodular": "submodular",
    "int": "local_extension",
}


def check_pair(f: DiscreteFunction, cls: str, x: Sequence[int], y: Sequence[int]):
    """Evaluate the defining inequality of ``cls`` at the explicit pair (x, y).

    Returns a witness dict when the pair violates it, else ``None``.  For
    M-nat-convexity every i in supp+(x-y) is tried in order.
    """
    from .lattice_core import as_function

    f = as_function(f)
    if cls == "Mnat":
        pos, _ = supports([a - b for a, b in zip(x, y)])
        for i in sorted(pos):
            w = exchange(f, x, y, i)
            if w is not None:
                return w
        return None
    if cls not in _CLASS_RULE:
        raise ValueError(f"no pair inequality for class {cls!r}")
    return _PAIR_RULES[_CLASS_RULE[cls]](f, tuple(x), tuple(y))


def recheck(f, w: dict, certificate=None) -> bool:
    """Re-evaluate a witness against f; True when the violation is reproduced exactly.

    Witnesses rejecting a certificate (component_class, recombination) also
    need that certificate.
    """
    from .lattice_core import as_function

    f = as_function(f)
    rule = w["rule"]
    if rule in _PAIR_RULES:
        got = _PAIR_RULES[rule](f, tuple(w["x"]), tuple(w["y"]))
    elif rule == "translation_submodular":
        got = translation_submodular(f, tuple(w["x"]), tuple(w["y"]), w["mu"])
    elif rule == "exchange":
        got = exchange(f, tuple(w["x"]), tuple(w["y"]), w["i"] - 1)
    elif rule == "hajek":
        got = hajek(f, w["z"], w["d"], w["d2"])
    elif rule == "separable_axis":
        got = separable_axis(f, w["x"], w["i"] - 1)
    elif rule == "separable_mixed":
        got = separable_mixed(f, w["x"], w["i"] - 1, w["j"] - 1)
    elif rule == "separable_domain":
        z = tuple(w["z"])
        lo, hi = w["box_lower"], w["box_upper"]
        inside = all(a <= c <= b for a, c, b in zip(lo, z, hi))
        bb_ok = [min(p[i] for p in f.entries) for i in range(f.dim)] == lo and \
            [max(p[i] for p in f.entries) for i in range(f.dim)] == hi
        return inside and bb_ok and z not in f.entries
    elif rule == "cell_hull":
        got = cell_point(f, [Fraction(c) for c in w["point"]])
    elif rule == "translation":
        got = translation_pair(f, w["x"], w.get("y"))
    elif rule == "box_closure":
        x, y, z = tuple(w["x"]), tuple(w["y"]), tuple(w["z"])
        return (x in f.entries and y in f.entries and z not in f.entries
                and all(a <= c <= b for a, c, b in zip(x, z, y)))
    elif rule == "no_extreme_element":
        pts = list(f.entries)
        ext = tuple((max if w["which"] == "max" else min)(p[i] for p in pts) for i in range(f.dim))
        return list(ext) == w["z"] and ext not in f.entries
    elif rule in ("not_integrally_convex", "component_class", "recombination", "no_decomposition",
                  "not_lnat", "not_mnat", "not_m2nat", "not_l2nat", "nonconstant_sum", "finite_object"):
        return _recheck_composite(f, w, certificate)
    else:
        raise ValueError(f"unknown witness rule {rule!r}")
    return got is not None


def _recheck_composite(f, w, certificate=None):
    from . import classifiers as C
    from .composite import _component_verdict, _recombine, refute_or_search_composite

    rule = w["rule"]
    if rule in ("not_integrally_convex", "not_lnat", "not_mnat", "not_m2nat", "not_l2nat",
                "nonconstant_sum", "finite_object"):
        return recheck(f, w["inner"])
    if rule == "no_decomposition":
        v = refute_or_search_composite(f.domain, w["target"], guard=w.get("guard"))
        return v.status == "No"
    if certificate is None:
        raise ValueError(f"a {rule} witness can only be rechecked against its certificate")
    if rule == "component_class":
        part = certificate.parts[w["part"] - 1]
        return not _component_verdict(part, w["component_class"]).positive
    # recombination
    try:
        got = _recombine(certificate.kind, *certificate.parts)
    except Exception:
        return w["got"] == "empty"
    if w["point"] is None:
        return False
    z = tuple(w["point"])
    return fmt(got(z)) == w["got"] and fmt(f(z)) == w["expected"] and got(z) != f(z)
