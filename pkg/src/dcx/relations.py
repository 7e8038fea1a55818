"""Relation suites between the classes and the evidence-backed relations table.

Every suite returns a plain dict with ``passed`` (bool), counters, and a list
of ``failures`` holding serialized counterexamples.  Suites are deterministic
for a given seed.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction
from importlib import resources

from . import classifiers as C
from .catalog import catalog
from .classifiers import CLASSES, LNAT_VARIANTS, NO, YES, YES_WINDOW, InconsistencyError
from .composite import Certificate, classify_all, refute_or_search_composite, verify_certificate
from .generators import (
    GenerationError,
    GenSpec,
    _convex_univariate,
    gen_l,
    gen_lnat_function,
    gen_lnat_set,
    gen_m_base,
    gen_m_function,
    gen_mnat_function,
    gen_mnat_set,
    gen_multimodular_function,
    gen_multimodular_set,
    gen_noise,
    gen_separable,
    perturb,
)
from .lattice_core import (
    Box,
    DiscreteFunction,
    DiscreteSet,
    EmptyResult,
    argmin_set,
    as_function,
    box_ops,
    d_transform,
    indicator,
    intersect,
    minkowski_sum,
    tilt,
)

# -- recognizers and generators per class -------------------------------------------------

_DIRECT = {
    "sep": C.is_separable,
    "int": C.is_integrally_convex,
    "Lnat": lambda f: C.is_lnat(f, "a"),
    "L": C.is_l,
    "Mnat": C.is_mnat,
    "M": C.is_m,
    "mm": C.is_multimodular,
    "gdmc": C.is_global_dmc,
    "ddmc": C.is_directed_dmc,
}


def recognize(cls: str, obj, certificate: Certificate | None = None):
    """Verdict of one class.  Composite classes need a certificate or a set-sized search."""
    if cls in _DIRECT:
        return _DIRECT[cls](obj)
    if certificate is not None:
        return verify_certificate(obj, certificate, cls)
    return classify_all(obj)[cls]


def _trivial_certificate(cls, obj):
    f = as_function(obj)
    if cls in ("L2nat", "L2"):
        return Certificate("infimal_convolution", (f, indicator(DiscreteSet(f.dim, [(0,) * f.dim]))))
    # the effective domain of an M / M-natural function is M / M-natural
    return Certificate("pointwise_sum", (f, indicator(f.domain)))


def _spec(cls, rng, dims=(2, 3), radii=(1, 2)):
    return GenSpec(cls, rng.choice(dims), rng.choice(radii), seed=rng.randrange(10 ** 9))


def _rejection(cls, rng, tries=400):
    """Random small sets kept only when they pass the recognizer of cls."""
    for _ in range(tries):
        n = rng.choice((2, 3))
        box = Box((0,) * n, (2 if n == 2 else 1,) * n)
        pts = [x for x in box.points() if rng.random() < 0.5]
        if pts:
            S = DiscreteSet(n, pts)
            if _DIRECT[cls](S).status == YES:
                return S, None
    raise GenerationError(f"no {cls} set found by rejection")


def _gen_l2nat(rng):
    for _ in range(50):
        A = gen_lnat_set(_spec("lnat_set", rng, radii=(1,)))
        B = gen_lnat_set(GenSpec("lnat_set", A.dim, 1, seed=rng.randrange(10 ** 9)))
        S = minkowski_sum(A, B)
        if len(S) <= 400:
            return S, Certificate("minkowski", (A, B))
    raise GenerationError("L2-natural composition too large")


def _gen_m2(rng, base):
    gen = gen_m_base if base else gen_mnat_set
    for _ in range(200):
        n = rng.choice((2, 3))
        A = gen(GenSpec("m2", n, rng.choice((1, 2)), seed=rng.randrange(10 ** 9)))
        B = gen(GenSpec("m2", n, rng.choice((1, 2)), seed=rng.randrange(10 ** 9)))
        try:
            S = intersect(A, B)
        except EmptyResult:
            continue
        return S, Certificate("intersection", (A, B))
    raise GenerationError("no nonempty intersection found")


def _alternate(fn_gen, set_gen, cls):
    def gen(rng):
        g = fn_gen if rng.random() < 0.5 else set_gen
        return g(_spec(cls, rng)), None
    return gen


CLASS_GENERATORS = {
    "sep": lambda rng: (gen_separable(_spec("sep", rng)), None),
    "Lnat": _alternate(gen_lnat_function, gen_lnat_set, "lnat"),
    "L": lambda rng: (gen_l(_spec("l", rng)), None),
    "Mnat": _alternate(gen_mnat_function, gen_mnat_set, "mnat"),
    "M": _alternate(gen_m_function, gen_m_base, "m"),
    "mm": _alternate(gen_multimodular_function, gen_multimodular_set, "mm"),
    "L2nat": _gen_l2nat,
    "M2nat": lambda rng: _gen_m2(rng, base=False),
    "M2": lambda rng: _gen_m2(rng, base=True),
    "gdmc": lambda rng: _rejection("gdmc", rng),
    "ddmc": lambda rng: _rejection("ddmc", rng),
}


def _obj_json(obj):
    from .io import object_to_json

    return object_to_json(obj)


# -- inclusions ---------------------------------------------------------------------------

# Direct inclusions; the rest follow by transitivity.
INCLUSION_THEOREMS = (
    ("sep", "Lnat"), ("sep", "Mnat"), ("sep", "mm"),
    ("L", "Lnat"), ("L", "L2"), ("L2", "L2nat"), ("Lnat", "L2nat"),
    ("Lnat", "gdmc"), ("Lnat", "ddmc"),
    ("M", "Mnat"), ("M", "M2"), ("M2", "M2nat"), ("Mnat", "M2nat"),
    ("L2nat", "int"), ("M2nat", "int"), ("mm", "int"), ("gdmc", "int"), ("ddmc", "int"),
)
# no generator for L2 objects; these two rest on the definitions alone
CITED_INCLUSIONS = (("L", "L2"), ("L2", "L2nat"))


def inclusion_closure() -> set:
    rel = {(c, c) for c in CLASSES} | set(INCLUSION_THEOREMS)
    changed = True
    while changed:
        changed = False
        for (a, b), (c, d) in itertools.product(list(rel), repeat=2):
            if b == c and (a, d) not in rel:
                rel.add((a, d))
                changed = True
    return rel


def inclusion_trial(class_a: str, class_b: str, trials: int = 200, seed: int = 0) -> dict:
    """Generate class_a objects and check every one is in class_b."""
    if class_a not in CLASS_GENERATORS:
        raise ValueError(f"no generator for class {class_a!r}")
    rng = random.Random(f"inclusion:{class_a}:{class_b}:{seed}")
    failures = []
    for _ in range(trials):
        obj, cert = CLASS_GENERATORS[class_a](rng)
        src = recognize(class_a, obj, cert)
        if not src.positive:
            raise GenerationError(f"generated {class_a} object failed its own recognizer")
        if class_b in _DIRECT:
            v = recognize(class_b, obj)
        else:
            # a composite target: verify a (trivial or generated) certificate
            c = cert if cert is not None and class_b == class_a else _trivial_certificate(class_b, obj)
            v = verify_certificate(obj, c, class_b)
        if not v.positive:
            failures.append({"object": _obj_json(obj), "status": v.status, "witness": v.witness})
    return {"row": class_a, "column": class_b, "trials": trials, "failures": failures,
            "passed": not failures}


def inclusion_suite(trials: int = 200, seed: int = 0) -> dict:
    results = [inclusion_trial(a, b, trials, seed) for a, b in INCLUSION_THEOREMS
               if (a, b) not in CITED_INCLUSIONS]
    return {"name": "inclusions", "results": results, "passed": all(r["passed"] for r in results)}


# -- intersections -----------------------------------------------------------------------


def small_space(n: int = 2, side: int = 2):
    """All nonempty subsets of [0, side]^n, in mask order."""
    cells = list(Box((0,) * n, (side,) * n).points())
    for m in range(1, 1 << len(cells)):
        yield DiscreteSet(n, [c for k, c in enumerate(cells) if m >> k & 1])


_SPACE_CLASSES = ("sep", "Lnat", "Mnat", "M", "mm", "L2nat", "M2nat")


def _space_verdicts(S):
    out = {c: _DIRECT[c](S).status for c in ("sep", "Lnat", "Mnat", "M", "mm")}
    out["L2nat"] = YES if out["Lnat"] == YES else refute_or_search_composite(S, "L2nat", 16).status
    out["M2nat"] = YES if out["Mnat"] == YES else refute_or_search_composite(S, "M2nat", 16).status
    return out


# (A, B) -> conclusion about A n B inside the exhaustive space
EXHAUSTIVE_IDENTITIES = (
    ("mm", "Lnat", "box"),
    ("Lnat", "Mnat", "box"),
    ("mm", "L2nat", "box"),
    ("L2nat", "M2nat", "box"),
    ("Lnat", "M", "singleton"),
    ("Lnat", "M2nat", "box"),
    ("L2nat", "Mnat", "box"),
    ("L2nat", "M", "singleton"),
    ("sep", "M", "singleton"),
)


def intersection_exhaustive(class_a: str, class_b: str, conclusion: str, n: int = 2, side: int = 2,
                            cache: dict | None = None) -> dict:
    """A n B is exactly the conclusion family, over every nonempty subset of [0, side]^n."""
    exceptions = []
    both = members = 0
    for S in small_space(n, side):
        v = cache.setdefault(S.points, None) if cache is not None else None
        if v is None:
            v = _space_verdicts(S)
            if cache is not None:
                cache[S.points] = v
        in_ab = v[class_a] == YES and v[class_b] == YES
        is_c = box_ops(S)[1] if conclusion == "box" else len(S) == 1
        both += in_ab
        members += is_c
        if in_ab != is_c:
            exceptions.append({"points": [list(p) for p in S.sorted_points()],
                               class_a: v[class_a], class_b: v[class_b], conclusion: is_c})
    return {"row": class_a, "column": class_b, "conclusion": conclusion,
            "space": f"all nonempty subsets of [0,{side}]^{n}", "sets": 2 ** ((side + 1) ** n) - 1,
            "in_both": both, "in_conclusion": members, "exceptions": exceptions, "passed": not exceptions}


def mnat_mm_equivalence(n: int = 2, side: int = 2, cache: dict | None = None) -> dict:
    """In two variables M-natural and multimodular sets coincide."""
    exceptions = []
    for S in small_space(n, side):
        v = (cache or {}).get(S.points) or _space_verdicts(S)
        if (v["Mnat"] == YES) != (v["mm"] == YES):
            exceptions.append({"points": [list(p) for p in S.sorted_points()], "Mnat": v["Mnat"], "mm": v["mm"]})
    return {"row": "Mnat", "column": "mm", "conclusion": "equal", "exceptions": exceptions,
            "passed": not exceptions}


def _random_l_set(rng, n, radius):
    """{x : x_j - x_i <= c_ij} inside a window, feasible around a random anchor p."""
    w = Box.cube(n, radius)
    p = [rng.randint(-1, 1) for _ in range(n)]
    c = {(i, j): p[j] - p[i] + rng.choice((0, 0, 1))
         for i in range(n) for j in range(n) if i != j and rng.random() < 0.6}
    pts = [x for x in w.points() if all(x[j] - x[i] <= v for (i, j), v in c.items())]
    return indicator(DiscreteSet(n, pts), w)


def randomized_intersections(trials: int = 200, seed: int = 0, n: int = 3) -> dict:
    """mm n L2nat => box; L2 n Lnat => L (windowed); M2 n Mnat => M, on generated composites."""
    rng = random.Random(f"intersections:{n}:{seed}")
    out = []

    # mm n L2nat: Minkowski sums of generated L-natural sets, each with its certificate
    exc, hits = [], 0
    for _ in range(trials):
        A = gen_lnat_set(GenSpec("lnat_set", n, 1, seed=rng.randrange(10 ** 9)))
        B = gen_lnat_set(GenSpec("lnat_set", n, 1, seed=rng.randrange(10 ** 9)))
        S = minkowski_sum(A, B)
        cert = verify_certificate(S, Certificate("minkowski", (A, B)), "L2nat")
        if cert.status != YES:
            raise InconsistencyError("generated Minkowski certificate failed verification")
        if C.is_multimodular(S).status == YES:
            hits += 1
            if not box_ops(S)[1]:
                exc.append({"points": [list(p) for p in S.sorted_points()]})
    out.append({"identity": "mm n L2nat = box", "trials": trials, "in_both": hits, "exceptions": exc})

    # L2 n Lnat: windowed Minkowski sums of L sets with certified parts
    exc, hits, inconclusive = [], 0, 0
    radius = 2 if n == 3 else 1
    for _ in range(trials):
        A = _random_l_set(rng, n, 2 * radius)
        B = _random_l_set(rng, n, 2 * radius)
        w = Box.cube(n, radius)
        total = minkowski_sum(A.domain, B.domain)
        pts = [x for x in total.points if x in w]
        if not pts:
            continue
        f = indicator(DiscreteSet(n, pts), w)
        if verify_certificate(f, Certificate("minkowski", (A, B)), "L2").status != YES_WINDOW:
            raise InconsistencyError("windowed Minkowski certificate failed verification")
        if C.is_lnat(f, "a").status == YES:
            v = C.is_l(f)
            if v.status == C.UNKNOWN:
                # no step along 1 stays inside the window
                inconclusive += 1
                continue
            hits += 1
            if v.status != YES_WINDOW:
                exc.append({"points": [list(p) for p in f.sorted_points()], "L": v.status})
    out.append({"identity": "L2 n Lnat = L", "window": radius, "trials": trials, "in_both": hits,
                "inconclusive": inconclusive, "exceptions": exc})

    # M2 n Mnat: intersections of generated M-convex sets with their certificate
    exc, hits = [], 0
    for _ in range(trials):
        S, cert = _gen_m2(rng, base=True)
        if verify_certificate(S, cert, "M2").status != YES:
            raise InconsistencyError("generated intersection certificate failed verification")
        if C.is_mnat(S).status == YES:
            hits += 1
            if C.is_m(S).status != YES:
                exc.append({"points": [list(p) for p in S.sorted_points()]})
    out.append({"identity": "M2 n Mnat = M", "trials": trials, "in_both": hits, "exceptions": exc})

    # L n M = empty; L n Mnat = linear on the whole window
    exc, hits = [], 0
    for _ in range(trials):
        f = gen_l(GenSpec("l", n, 2, seed=rng.randrange(10 ** 9)))
        if C.is_m(f).positive:
            exc.append({"identity": "L n M", "object": _obj_json(f)})
        if C.is_mnat(f).status == YES:
            hits += 1
            if len(f) != f.window.size() or not _affine(f):
                exc.append({"identity": "L n Mnat", "object": _obj_json(f)})
        S = gen_m_base(GenSpec("m_set", n, 2, seed=rng.randrange(10 ** 9)))
        if C.is_l(S).positive:
            exc.append({"identity": "L n M", "object": _obj_json(S)})
    out.append({"identity": "L n M = none; L n Mnat = lin", "trials": trials, "in_both": hits,
                "exceptions": exc})

    for r in out:
        r["passed"] = not r["exceptions"]
    return {"name": "randomized_intersections", "results": out, "passed": all(r["passed"] for r in out)}


def _affine(f: DiscreteFunction) -> bool:
    base = min(f.entries)
    n = f.dim
    slopes = []
    for i in range(n):
        step = tuple(b + (k == i) for k, b in enumerate(base))
        if step not in f.entries:
            return n == 0
        slopes.append(f(step) - f(base))
    return all(f(x) == f(base) + sum(s * (a - b) for s, a, b in zip(slopes, x, base)) for x in f.entries)


def intersection_suite(trials: int = 200, seed: int = 0) -> dict:
    cache: dict = {}
    results = [intersection_exhaustive(a, b, c, cache=cache) for a, b, c in EXHAUSTIVE_IDENTITIES]
    results.append(mnat_mm_equivalence(cache=cache))
    rnd = randomized_intersections(trials, seed)
    fig = catalog()["fig1a"]
    rep = classify_all(fig.object)
    proper = {"identity": "mm n Mnat properly contains sep", "witness": "fig1a",
              "passed": rep.status("mm") == YES and rep.status("Mnat") == YES and rep.status("sep") == NO}
    return {"name": "intersections", "results": results + rnd["results"] + [proper],
            "passed": all(r["passed"] for r in results) and rnd["passed"] and proper["passed"]}


# -- argmin preservation ------------------------------------------------------------------


ARGMIN_CLASSES = ("sep", "Lnat", "Mnat", "mm", "M", "L")


def _random_p(rng, n):
    return [Fraction(rng.randint(-9, 9), rng.choice((1, 2, 3))) for _ in range(n)]


def argmin_preservation(cls: str, trials: int = 100, seed: int = 0) -> dict:
    if cls not in ARGMIN_CLASSES:
        raise ValueError(f"argmin suite covers {ARGMIN_CLASSES}, not {cls!r}")
    rng = random.Random(f"argmin:{cls}:{seed}")
    failures = []
    inconclusive = 0
    for _ in range(trials):
        f = as_function(CLASS_GENERATORS[cls](rng)[0])
        p = _random_p(rng, f.dim)
        if cls == "L":
            # a windowed L function has a minimizer set invariant along 1 only when <p, 1> = r
            r = C.is_l(f).detail["r"]
            p[-1] += Fraction(r) - sum(p)
        g = tilt(f, p)
        A = argmin_set(g)
        if cls == "L":
            v = C.is_l(indicator(A, f.window))
            if v.status == C.UNKNOWN:
                # the minimizer line leaves the window before any step along 1
                inconclusive += 1
                continue
        else:
            v = recognize(cls, A)
        if not v.positive:
            failures.append({"object": _obj_json(f), "p": [str(c) for c in p],
                             "argmin": [list(x) for x in A.sorted_points()], "witness": v.witness})
    return {"class": cls, "trials": trials, "inconclusive": inconclusive, "failures": failures,
            "passed": not failures}


def argmin_suite(trials: int = 100, seed: int = 0, classes=ARGMIN_CLASSES) -> dict:
    results = [argmin_preservation(c, trials, seed) for c in classes]
    return {"name": "argmin", "results": results, "passed": all(r["passed"] for r in results)}


# -- characterization equivalence ---------------------------------------------------------


def _equivalence_inputs(trials, seed):
    rng = random.Random(f"equivalence:{seed}")
    kinds = ("lnat", "perturbed", "noise", "lnat_set", "noise_set", "sep")
    for k in range(trials):
        kind = kinds[k % len(kinds)]
        n = rng.choice((2, 3, 4))
        radius = rng.choice((1, 2, 3)) if n < 4 else 1
        spec = GenSpec(kind, n, radius, seed=rng.randrange(10 ** 9))
        if kind == "lnat":
            yield kind, gen_lnat_function(spec)
        elif kind == "perturbed":
            yield kind, perturb(gen_lnat_function(spec), rng, k=rng.randint(1, 2))
        elif kind == "noise":
            yield kind, gen_noise(spec, density=rng.choice((0.3, 0.6, 1.0)))
        elif kind == "lnat_set":
            yield kind, gen_lnat_set(spec)
        elif kind == "noise_set":
            yield kind, gen_noise(spec, density=0.5).domain
        else:
            yield kind, gen_separable(spec)


def variant_statuses(obj) -> dict:
    return {v: C.is_lnat(obj, v).status for v in LNAT_VARIANTS}


def equivalence_suite(trials: int = 500, seed: int = 0, include_catalog: bool = True) -> dict:
    """All six L-natural characterizations agree on random, adversarial and catalog inputs."""
    disagreements = []
    counts = {YES: 0, NO: 0}
    inputs = list(_equivalence_inputs(trials, seed))
    if include_catalog:
        inputs += [(f"catalog:{e.id}", e.object) for e in catalog().values()
                   if len(as_function(e.object)) <= 400]
    for kind, obj in inputs:
        st = variant_statuses(obj)
        if len(set(st.values())) != 1:
            disagreements.append({"kind": kind, "statuses": st, "object": _obj_json(obj)})
        else:
            counts[st["a"]] = counts.get(st["a"], 0) + 1
    return {"name": "equivalence", "inputs": len(inputs), "counts": counts,
            "disagreements": disagreements, "passed": not disagreements}


# -- D-transform duality -----------------------------------------------------------------


def _interval_sum_function(rng, n, radius):
    """sum over random consecutive intervals I of a convex phi_I(x(I)), on a box."""
    box = Box.cube(n, radius)
    terms = []
    for a in range(n):
        for b in range(a, n):
            if rng.random() < 0.5:
                terms.append((a, b, _convex_univariate(rng, radius * n, (0, 3))))
    return DiscreteFunction(n, {x: sum(phi[sum(x[a:b + 1])] for a, b, phi in terms) for x in box.points()})


def duality_suite(trials: int = 300, seed: int = 0) -> dict:
    """is_multimodular by the direct inequality route agrees with is_lnat after D^-1."""
    rng = random.Random(f"duality:{seed}")
    disagreements = []
    counts = {YES: 0, NO: 0}
    for k in range(trials):
        n = rng.choice((2, 3, 4))
        radius = rng.choice((1, 2)) if n < 4 else 1
        f = _interval_sum_function(rng, n, radius)
        mode = k % 3
        if mode == 1:
            f = perturb(f, rng, k=1)
        elif mode == 2:
            f = gen_noise(GenSpec("noise", n, radius, seed=rng.randrange(10 ** 9)), density=1.0)
        direct = C.is_multimodular(f, route="direct").status
        dual = C.is_lnat(d_transform(f, "to_lnat"), "a").status
        counts[dual] = counts.get(dual, 0) + 1
        if direct != dual:
            disagreements.append({"object": _obj_json(f), "direct": direct, "lnat_of_transform": dual})
    return {"name": "duality", "trials": trials, "counts": counts, "disagreements": disagreements,
            "passed": not disagreements}


# -- relations table ----------------------------------------------------------------------

SYMBOLS = ("=", "<", ">", "^", "v")
COLUMN_WIDTH = 8
LABEL_WIDTH = 7
TITLE = "Inclusion and intersection relations between classes (row vs column)"
LEGEND = """\
<  row class is properly contained in the column class
>  row class properly contains the column class
^  no inclusion; the intersection contains every separable convex function
v  no inclusion; the intersection misses some separable convex function
*  relation marked as new
second line: the intersection of the two classes
  lin = linear functions on the whole lattice, point = functions on a single point,
  none = empty, >=C = contains C (converse open), >C = properly contains C
"""


def golden_table() -> str:
    return resources.files("dcx").joinpath("data/relations_table.txt").read_text(encoding="utf-8")


def parse_table(text: str) -> dict:
    """(row, column) -> (symbol, star, label) from the rendered layout."""
    lines = text.splitlines()
    header = lines[1].split()
    cells = {}
    k = 2
    while k < len(lines) and lines[k].strip() and lines[k].split()[0] in CLASSES:
        sym, lab = lines[k], lines[k + 1] if k + 1 < len(lines) else ""
        row = sym.split()[0]
        for j, col in enumerate(header):
            start = LABEL_WIDTH + j * COLUMN_WIDTH
            s = sym[start:start + COLUMN_WIDTH].strip()
            if not s:
                continue
            cells[(row, col)] = (s.rstrip("*"), s.endswith("*"), lab[start:start + COLUMN_WIDTH].strip())
        k += 3
    return cells


def _pool(guard: int = 16) -> dict:
    """Classified objects used as counterexamples: the catalog plus two derived sets."""
    objs = {e.id: (e.object, e.certificates) for e in catalog().values()}
    objs["unit_square"] = (DiscreteSet(2, Box((0, 0), (1, 1)).points()), {})
    objs["mm_not_m2nat"] = (DiscreteSet(4, [(0, 0, 1, 0), (0, 1, 0, 0), (0, 1, 0, 1),
                                          (1, 0, 0, 1), (1, 0, 1, 0)]), {})
    return {k: classify_all(o, certs, guard) for k, (o, certs) in objs.items()}


def _separates(pool, a, b):
    """First pool object (by id) in class a and not in class b."""
    for k in sorted(pool):
        if pool[k][a].positive and pool[k].status(b) == NO:
            return k
    return None


def table_cells(trials: int = 20, seed: int = 0) -> dict:
    """Derive each cell's symbol from evidence and check it against the golden table."""
    expected = parse_table(golden_table())
    closure = inclusion_closure()
    trial_results = {}
    if trials:
        for a, b in INCLUSION_THEOREMS:
            if (a, b) not in CITED_INCLUSIONS:
                trial_results[(a, b)] = inclusion_trial(a, b, trials, seed)
    for (a, b), r in trial_results.items():
        if not r["passed"]:
            raise InconsistencyError(f"inclusion {a} in {b} failed a trial")
    pool = _pool()
    order = {c: k for k, c in enumerate(CLASSES)}
    cells = {}
    for (row, col), (sym, star, label) in sorted(expected.items(), key=lambda kv: (order[kv[0][0]], order[kv[0][1]])):
        ev = {}
        if row == col:
            derived = "="
        else:
            ab, ba = (row, col) in closure, (col, row) in closure
            not_ab, not_ba = _separates(pool, row, col), _separates(pool, col, row)
            if (ab and not_ab) or (ba and not_ba):
                raise InconsistencyError(f"cell ({row}, {col}): an inclusion has a counterexample")
            ev.update({"row_not_in_column": not_ab, "column_not_in_row": not_ba})
            if ab:
                ev["inclusion"] = _inclusion_evidence(row, col, trial_results)
            if ba:
                ev["inclusion"] = _inclusion_evidence(col, row, trial_results)
            derived = None
            if ab and not_ba:
                derived = "<"
            elif ba and not_ab:
                derived = ">"
            elif not_ab and not_ba:
                if ("sep", row) in closure and ("sep", col) in closure:
                    derived = "^"
                else:
                    miss = next((k for k in sorted(pool) if pool[k].status("sep") == YES
                                 and (pool[k].status(row) == NO or pool[k].status(col) == NO)), None)
                    if miss is not None:
                        derived = "v"
                        ev["separable_outside"] = miss
        if derived is not None and derived != sym:
            raise InconsistencyError(f"cell ({row}, {col}): evidence gives {derived}, golden table {sym}")
        cells[(row, col)] = {"symbol": derived or sym, "star": star, "label": label,
                             "source": "evidence" if derived else "cited", "evidence": ev}
        if label:
            cells[(row, col)]["label_evidence"] = _label_evidence(row, col, label, pool)
    return cells


def _inclusion_evidence(a, b, trial_results):
    if (a, b) in trial_results:
        return f"trials: {trial_results[(a, b)]['trials']} generated {a} objects in {b}"
    if (a, b) in CITED_INCLUSIONS:
        return "by definition"
    return "by transitivity"


_LABEL_SUITES = {
    ("Lnat", "Mnat"): "intersections: Lnat n Mnat = box, exhaustive n=2",
    ("Lnat", "mm"): "intersections: mm n Lnat = box, exhaustive n=2",
    ("L2nat", "mm"): "intersections: mm n L2nat = box, exhaustive n=2 and randomized n=3",
    ("L2nat", "M2nat"): "intersections: L2nat n M2nat = box, exhaustive n=2",
    ("Lnat", "M"): "intersections: Lnat n M = singleton, exhaustive n=2",
    ("Lnat", "M2nat"): "intersections: Lnat n M2nat = box, exhaustive n=2",
    ("L2nat", "Mnat"): "intersections: L2nat n Mnat = box, exhaustive n=2",
    ("L2nat", "M"): "intersections: L2nat n M = singleton, exhaustive n=2",
    ("sep", "M"): "intersections: sep n M = singleton, exhaustive n=2",
    ("L2", "Lnat"): "intersections: L2 n Lnat = L, randomized n=3, windowed",
    ("M2", "Mnat"): "intersections: M2 n Mnat = M, randomized n=3",
    ("L", "M"): "intersections: L n M = none, randomized n=3, windowed",
    ("L", "Mnat"): "intersections: L n Mnat = lin, randomized n=3, windowed",
}


def _label_evidence(row, col, label, pool):
    if label.startswith(">") and not label.startswith(">="):
        inner = label[1:]
        hit = next((k for k in sorted(pool) if pool[k][row].positive and pool[k][col].positive
                    and pool[k].status(inner) == NO), None)
        return f"proper: {hit}" if hit else "cited"
    if label.startswith(">="):
        return "one-sided: inclusion by transitivity; converse open"
    return _LABEL_SUITES.get((row, col), "cited")


def render_table(cells: dict) -> str:
    cols = CLASSES
    out = [TITLE, " " * LABEL_WIDTH + "".join(c.ljust(COLUMN_WIDTH) for c in cols).rstrip()]
    for row in cols:
        sym = row.ljust(LABEL_WIDTH)
        lab = " " * LABEL_WIDTH
        for col in cols:
            c = cells.get((row, col))
            sym += ((c["symbol"] + ("*" if c["star"] else "")) if c else "").ljust(COLUMN_WIDTH)
            lab += (c["label"] if c else "").ljust(COLUMN_WIDTH)
        out += [sym.rstrip(), lab.rstrip(), ""]
    return "\n".join(out) + LEGEND


def table_report(trials: int = 20, seed: int = 0) -> dict:
    """Rendered table, per-cell evidence, and whether it matches the golden table byte for byte."""
    cells = table_cells(trials, seed)
    text = render_table(cells)
    return {"text": text, "matches_golden": text == golden_table(),
            "cells": [dict(row=r, column=c, **v) for (r, c), v in cells.items()]}


SUITES = {
    "inclusions": inclusion_suite,
    "intersections": intersection_suite,
    "argmin": argmin_suite,
    "equivalence": equivalence_suite,
    "duality": duality_suite,
}
