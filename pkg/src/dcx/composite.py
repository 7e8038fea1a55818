"""Composite classes (L2, L2nat, M2, M2nat), certificates, and the full class report."""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass

from . import classifiers as C
from .classifiers import NO, UNKNOWN, YES, YES_WINDOW, InconsistencyError, Verdict
from .lattice_core import (
    DiscreteFunction,
    DiscreteSet,
    EmptyResult,
    as_function,
    bounding_box,
    infimal_convolution,
    intersect,
    minkowski_sum,
    pointwise_sum,
    supports,
)
from .rules import fmt

DEFAULT_GUARD = 14

CERT_KINDS = ("minkowski", "infimal_convolution", "pointwise_sum", "intersection")


def default_guard() -> int:
    env = os.environ.get("DCX_GUARD")
    return int(env) if env else DEFAULT_GUARD


@dataclass(frozen=True)
class Certificate:
    """A claimed decomposition of an object into two parts."""

    kind: str
    parts: tuple

    def __post_init__(self):
        if self.kind not in CERT_KINDS:
            raise ValueError(f"unknown certificate kind {self.kind!r}")
        if len(self.parts) != 2:
            raise ValueError("a certificate has exactly two parts")


_COMPONENT = {"L2": "L", "L2nat": "Lnat", "M2": "M", "M2nat": "Mnat"}
_KINDS_FOR = {
    "L2": ("minkowski", "infimal_convolution"),
    "L2nat": ("minkowski", "infimal_convolution"),
    "M2": ("intersection", "pointwise_sum"),
    "M2nat": ("intersection", "pointwise_sum"),
}


def _component_verdict(part, cls):
    if cls == "L":
        return C.is_l(part)
    if cls == "Lnat":
        return C.is_lnat(part, "a")
    if cls == "M":
        return C.is_m(part)
    return C.is_mnat(part)


def _recombine(kind, a, b):
    if kind == "minkowski":
        return as_function(minkowski_sum(as_function(a).domain, as_function(b).domain))
    if kind == "intersection":
        return as_function(intersect(as_function(a).domain, as_function(b).domain))
    if kind == "infimal_convolution":
        return infimal_convolution(as_function(a), as_function(b))
    return pointwise_sum(as_function(a), as_function(b))


def verify_certificate(obj, cert: Certificate, claimed_class: str) -> Verdict:
    """Check both parts against the component class, then the recombination."""
    if claimed_class not in _COMPONENT:
        raise ValueError(f"certificates apply to L2, L2nat, M2, M2nat, not {claimed_class!r}")
    if cert.kind not in _KINDS_FOR[claimed_class]:
        raise ValueError(f"certificate kind {cert.kind!r} does not define {claimed_class}")
    f = as_function(obj)
    comp = _COMPONENT[claimed_class]
    for k, part in enumerate(cert.parts):
        p = as_function(part)
        if p.dim != f.dim:
            raise ValueError("certificate part dimension differs from the object")
        v = _component_verdict(p, comp)
        if not v.positive:
            return C._no({"rule": "component_class", "part": k + 1, "component_class": comp,
                          "status": v.status, "inner": v.witness,
                          "inequality": f"part {k + 1} is {comp}-convex"})
    try:
        got = _recombine(cert.kind, *cert.parts)
    except EmptyResult:
        return C._no({"rule": "recombination", "point": None, "expected": "nonempty", "got": "empty",
                      "inequality": "recombined parts equal the object"})
    if f.window is not None:
        # windowed parts recombine beyond the window; compare inside it
        got_entries = {x: v for x, v in got.entries.items() if x in f.window}
    else:
        got_entries = dict(got.entries)
    diff = sorted(set(got_entries) ^ set(f.entries) |
                  {x for x in got_entries if x in f.entries and got_entries[x] != f.entries[x]})
    if diff:
        z = diff[0]
        return C._no({"rule": "recombination", "point": list(z), "expected": fmt(f(z)),
                      "got": fmt(got_entries.get(z, C.INF)),
                      "inequality": "recombined parts equal the object"})
    status = YES_WINDOW if comp == "L" else YES
    return Verdict(status, None, {"certificate": cert.kind})


# -- small exact set tests (pure python, for exhaustive search) -----------------------


def _lnat_set_fast(pts: frozenset) -> bool:
    for x, y in itertools.combinations(pts, 2):
        up = tuple(-((-(a + b)) // 2) for a, b in zip(x, y))
        down = tuple((a + b) // 2 for a, b in zip(x, y))
        if up not in pts or down not in pts:
            return False
    return True


def _mnat_set_fast(pts: frozenset, n: int) -> bool:
    for x in pts:
        for y in pts:
            if x == y:
                continue
            d = [a - b for a, b in zip(x, y)]
            pos, neg = supports(d)
            for i in pos:
                a = list(x)
                b = list(y)
                a[i] -= 1
                b[i] += 1
                if tuple(a) in pts and tuple(b) in pts:
                    continue
                ok = False
                for j in neg:
                    a[j] += 1
                    b[j] -= 1
                    if tuple(a) in pts and tuple(b) in pts:
                        ok = True
                    a[j] -= 1
                    b[j] += 1
                    if ok:
                        break
                if not ok:
                    return False
    return True


def box_closure_witness(S: DiscreteSet):
    """Least (x, y, z) with x <= y in S and z in [x, y] outside S, or None."""
    pts = S.sorted_points()
    for x in pts:
        for y in pts:
            if x == y or not all(a <= b for a, b in zip(x, y)):
                continue
            for z in itertools.product(*(range(a, b + 1) for a, b in zip(x, y))):
                if z not in S.points:
                    return {"rule": "box_closure", "x": list(x), "y": list(y), "z": list(z),
                            "inequality": "x <= y in S implies [x, y] in S"}
    return None


def _extreme_witness(S: DiscreteSet):
    pts = S.points
    for which, op in (("max", max), ("min", min)):
        z = tuple(op(p[i] for p in pts) for i in range(S.dim))
        if z not in pts:
            return {"rule": "no_extreme_element", "which": which, "z": list(z),
                    "inequality": f"componentwise {which} of S lies in S"}
    return None


def refute_or_search_composite(S, target: str, guard: int | None = None) -> Verdict:
    """Decide L2nat / M2nat membership of a set at desk scale.

    Cheap necessary conditions refute first.  Then a member of the simpler
    class is accepted with a trivial certificate.  Otherwise, if the bounding
    box holds at most ``guard`` lattice points, all decompositions inside the
    box are searched exhaustively.  Beyond the guard the answer is Unknown.
    """
    if isinstance(S, DiscreteFunction):
        S = S.domain
    guard = default_guard() if guard is None else guard
    if target == "M2nat":
        w = box_closure_witness(S)
        if w is not None:
            return C._no(w)
        if C.is_mnat(S).status == YES:
            return Verdict(YES, None, {"certificate": "intersection", "parts": "S and S"})
        v = C.is_integrally_convex(S)
        if v.status == NO:
            return C._no({"rule": "not_integrally_convex", "inner": v.witness,
                          "inequality": "M2nat sets are integrally convex"})
        return _search_m2nat(S, guard)
    if target == "L2nat":
        w = _extreme_witness(S)
        if w is not None:
            return C._no(w)
        if C.is_lnat(S, "a").status == YES:
            return Verdict(YES, None, {"certificate": "minkowski", "parts": "S and {0}"})
        v = C.is_integrally_convex(S)
        if v.status == NO:
            return C._no({"rule": "not_integrally_convex", "inner": v.witness,
                          "inequality": "L2nat sets are integrally convex"})
        return _search_l2nat(S, guard)
    raise ValueError(f"target must be L2nat or M2nat, not {target!r}")


def _guarded(S, guard):
    size = bounding_box(S.points).size()
    if size > guard:
        return Verdict(UNKNOWN, None, {"reason": "scale guard", "box_points": size, "guard": guard})
    return None


def _search_l2nat(S: DiscreteSet, guard: int) -> Verdict:
    g = _guarded(S, guard)
    if g is not None:
        return g
    lo = tuple(min(p[i] for p in S.points) for i in range(S.dim))
    rest = [p for p in S.sorted_points() if p != lo]
    cands = []
    for k in range(len(rest) + 1):
        for sub in itertools.combinations(rest, k):
            T = frozenset((lo,) + sub)
            if _lnat_set_fast(T):
                cands.append(T)
    target = S.points
    for i, T in enumerate(cands):
        S1 = frozenset(tuple(a - b for a, b in zip(p, lo)) for p in T)
        for U in cands[i:]:
            if len(S1) * len(U) < len(target):
                continue
            if frozenset(tuple(a + b for a, b in zip(p, q)) for p in S1 for q in U) == target:
                return Verdict(YES, None, {"certificate": "minkowski",
                                           "parts": [sorted(map(list, S1)), sorted(map(list, U))]})
    return C._no({"rule": "no_decomposition", "target": "L2nat", "guard": guard,
                  "searched": len(cands),
                  "inequality": "S = S1 + S2 with S1, S2 L-natural (exhaustive within the bounding box)"})


def _search_m2nat(S: DiscreteSet, guard: int) -> Verdict:
    g = _guarded(S, guard)
    if g is not None:
        return g
    box = bounding_box(S.points)
    extra = [p for p in box.points() if p not in S.points]
    supers = []
    for k in range(len(extra) + 1):
        for sub in itertools.combinations(extra, k):
            T = S.points | frozenset(sub)
            if _mnat_set_fast(T, S.dim):
                supers.append(T)
    for i, A in enumerate(supers):
        for B in supers[i:]:
            if A & B == S.points:
                return Verdict(YES, None, {"certificate": "intersection",
                                           "parts": [sorted(map(list, A)), sorted(map(list, B))]})
    return C._no({"rule": "no_decomposition", "target": "M2nat", "guard": guard,
                  "searched": len(supers),
                  "inequality": "S = S1 n S2 with S1, S2 M-natural (exhaustive within the bounding box)"})


# -- full report -------------------------------------------------------------------------

# A positive in the key class forces the listed classes not to be No.
INCLUSIONS = {
    "sep": ("Lnat", "Mnat", "mm"),
    "Lnat": ("int", "L2nat", "gdmc", "ddmc"),
    "Mnat": ("int", "M2nat"),
    "L": ("Lnat", "L2"),
    "L2": ("L2nat",),
    "L2nat": ("int",),
    "M": ("Mnat", "M2"),
    "M2": ("M2nat",),
    "M2nat": ("int",),
    "mm": ("int",),
    "gdmc": ("int",),
    "ddmc": ("int",),
}

# Positives in both classes of the pair force the third class not to be No.
INTERSECTIONS = (
    (("Lnat", "Mnat"), "sep"),
    (("mm", "Lnat"), "sep"),
    (("L2", "Lnat"), "L"),
    (("M2", "Mnat"), "M"),
)


class ClassReport:
    def __init__(self, verdicts: dict):
        self.verdicts = {c: verdicts[c] for c in C.CLASSES}

    def __getitem__(self, cls) -> Verdict:
        return self.verdicts[cls]

    def status(self, cls) -> str:
        return self.verdicts[cls].status

    def to_json(self) -> list:
        return [v.to_json(c) for c, v in self.verdicts.items()]

    def to_text(self) -> str:
        lines = []
        for c, v in self.verdicts.items():
            extra = ""
            if v.witness is not None:
                w = v.witness
                pts = ", ".join(f"{k}={w[k]}" for k in ("x", "y", "z", "point") if k in w and w[k] is not None)
                extra = f"  [{w['rule']}{': ' + pts if pts else ''}]"
            lines.append(f"{c:<6} {v.status}{extra}")
        return "\n".join(lines) + "\n"


def check_consistency(verdicts: dict) -> None:
    for a, implied in INCLUSIONS.items():
        if verdicts[a].positive:
            for b in implied:
                if verdicts[b].status == NO:
                    raise InconsistencyError(f"{a} is {verdicts[a].status} but {b} is No")
    for (a, b), c in INTERSECTIONS:
        if verdicts[a].positive and verdicts[b].positive and verdicts[c].status == NO:
            raise InconsistencyError(f"{a} and {b} hold but {c} is No")


def propagate_inclusions(verdicts: dict) -> None:
    """Upgrade Unknown to Yes where an unconditional Yes of a subclass implies it."""
    changed = True
    while changed:
        changed = False
        for a, implied in INCLUSIONS.items():
            if verdicts[a].status != YES:
                continue
            for b in implied:
                if verdicts[b].status == UNKNOWN:
                    verdicts[b] = Verdict(YES, None, {"via": a})
                    changed = True


def _constant_sum(f) -> bool:
    return C._sum_witness(f) is None


def classify_all(obj, certificates: dict | None = None, guard: int | None = None) -> ClassReport:
    """One verdict per class, cross-checked against the inclusion relations."""
    f = as_function(obj)
    set_like = f.is_constant()
    v = {}
    v["sep"] = C.is_separable(f)
    v["int"] = C.is_integrally_convex(f)
    v["Lnat"] = C.is_lnat(f, "a")
    v["L"] = C.is_l(f)
    v["Mnat"] = C.is_mnat(f)
    v["M"] = C.is_m(f)
    v["mm"] = C.is_multimodular(f)
    v["gdmc"] = C.is_global_dmc(f)
    v["ddmc"] = C.is_directed_dmc(f)

    def not_int(cls):
        return C._no({"rule": "not_integrally_convex", "inner": v["int"].witness,
                      "inequality": f"{cls} objects are integrally convex"})

    # L2nat
    if v["Lnat"].status == YES:
        v["L2nat"] = Verdict(YES, None, {"certificate": "trivial", "parts": "f and indicator of {0}"})
    elif v["int"].status == NO:
        v["L2nat"] = not_int("L2nat")
    elif set_like:
        v["L2nat"] = refute_or_search_composite(f.domain, "L2nat", guard)
    else:
        v["L2nat"] = Verdict(UNKNOWN, None, {"reason": "no recognition procedure for functions"})
    # L2
    if v["L"].status == YES_WINDOW:
        v["L2"] = Verdict(YES_WINDOW, None, {"certificate": "trivial", "r": v["L"].detail["r"]})
    elif f.window is None:
        # is_l reports a windowless object as bounded, which rules out L2 as well
        v["L2"] = C._no({"rule": "finite_object", "inner": v["L"].witness["inner"],
                         "inequality": "L2 objects are invariant along 1 (no window: object is bounded)"})
    elif v["L2nat"].status == NO:
        v["L2"] = C._no({"rule": "not_l2nat", "inner": v["L2nat"].witness,
                         "inequality": "L2 objects are L2nat"})
    else:
        v["L2"] = Verdict(UNKNOWN, None, {"reason": "no recognition procedure beyond certificates"})
    # M2nat
    if v["Mnat"].status == YES:
        v["M2nat"] = Verdict(YES, None, {"certificate": "trivial", "parts": "f and 0"})
    elif v["int"].status == NO:
        v["M2nat"] = not_int("M2nat")
    elif set_like:
        v["M2nat"] = refute_or_search_composite(f.domain, "M2nat", guard)
    else:
        v["M2nat"] = Verdict(UNKNOWN, None, {"reason": "no recognition procedure for functions"})
    # M2
    if v["M"].status == YES:
        v["M2"] = Verdict(YES, None, {"certificate": "trivial", "parts": "f and 0"})
    elif not _constant_sum(f):
        v["M2"] = C._no({"rule": "nonconstant_sum", "inner": C._sum_witness(f),
                         "inequality": "M2 objects have constant component sum"})
    elif v["M2nat"].status == NO:
        v["M2"] = C._no({"rule": "not_m2nat", "inner": v["M2nat"].witness,
                         "inequality": "M2 objects are M2nat"})
    elif set_like and v["M2nat"].status == YES:
        # with constant sum, each M-natural part cut by the hyperplane is M-convex
        v["M2"] = Verdict(YES, None, {"certificate": "intersection with the hyperplane x(N) = const",
                                      "via": "M2nat"})
    else:
        v["M2"] = Verdict(UNKNOWN, None, {"reason": "no recognition procedure for functions"})
    for cls, cert in (certificates or {}).items():
        cv = verify_certificate(f, cert, cls)
        if cv.positive:
            if v[cls].status == NO:
                raise InconsistencyError(f"certificate proves {cls} but the search said No")
            v[cls] = cv
        else:
            detail = dict(v[cls].detail or {})
            detail["certificate_rejected"] = cv.witness
            v[cls] = Verdict(v[cls].status, v[cls].witness, detail)
    propagate_inclusions(v)
    check_consistency(v)
    return ClassReport(v)
