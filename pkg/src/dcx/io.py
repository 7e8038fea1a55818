"""JSON reading and writing for every exchanged object.

Parse failures raise :class:`ParseError` carrying a position: the line and
column for malformed JSON, or a JSON path such as ``$.points[2]`` for schema
violations.  Dimensions above ``max_dim`` raise :class:`ScaleGuardError`.
"""

from __future__ import annotations

import json
import math
from fractions import Fraction

from .composite import Certificate
from .descriptions import IntervalBounds, IntervalRank, LnatDescription, RankFunction
from .geometry import HPolytope
from .lattice_core import Box, DiscreteFunction, DiscreteSet, LatticeError

DEFAULT_MAX_DIM = 8


class ParseError(ValueError):
    def __init__(self, message: str, path: str = "$", line: int | None = None, col: int | None = None):
        self.path, self.line, self.col = path, line, col
        where = f"line {line} column {col}" if line is not None else path
        super().__init__(f"{where}: {message}")


class ScaleGuardError(ValueError):
    pass


def loads(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, line=e.lineno, col=e.colno) from None


def load_file(path: str):
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


def _default(o):
    if isinstance(o, Fraction):
        return str(o)
    if isinstance(o, (tuple, frozenset, set)):
        return sorted(o) if isinstance(o, (frozenset, set)) else list(o)
    if isinstance(o, Box):
        return {"lower": list(o.lower), "upper": list(o.upper)}
    if isinstance(o, float) and math.isinf(o):
        return "+inf" if o > 0 else "-inf"
    raise TypeError(f"cannot serialize {type(o).__name__}")


def _sanitize(o):
    # json.dumps would write inf as Infinity without consulting the default hook
    if isinstance(o, float) and math.isinf(o):
        return "+inf" if o > 0 else "-inf"
    if isinstance(o, dict):
        return {str(k): _sanitize(v) for k, v in o.items()}
    if isinstance(o, (list, tuple)):
        return [_sanitize(v) for v in o]
    return o


def dumps(data, indent: int | None = 2) -> str:
    return json.dumps(_sanitize(data), default=_default, indent=indent, sort_keys=False)


# -- schema helpers ---------------------------------------------------------------------


def _need(data, key, path):
    if not isinstance(data, dict):
        raise ParseError("expected an object", path)
    if key not in data:
        raise ParseError(f"missing key {key!r}", path)
    return data[key]


def _int(v, path):
    if isinstance(v, bool) or not isinstance(v, int):
        raise ParseError(f"expected an integer, got {json.dumps(v)}", path)
    return v


def _list(v, path):
    if not isinstance(v, list):
        raise ParseError("expected an array", path)
    return v


def _point(v, dim, path):
    coords = _list(v, path)
    if len(coords) != dim:
        raise ParseError(f"expected {dim} coordinates, got {len(coords)}", path)
    return tuple(_int(c, f"{path}[{k}]") for k, c in enumerate(coords))


def _value(v, path):
    if isinstance(v, bool):
        raise ParseError("expected a rational", path)
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, str):
        try:
            return Fraction(v)
        except (ValueError, ZeroDivisionError):
            pass
    raise ParseError(f"expected a rational \"p/q\", got {json.dumps(v)}", path)


def _dim(data, path, max_dim):
    dim = _int(_need(data, "dim", path), f"{path}.dim")
    if dim < 1:
        raise ParseError("dimension must be at least 1", f"{path}.dim")
    if dim > max_dim:
        raise ScaleGuardError(f"dimension {dim} exceeds the limit {max_dim}")
    return dim


# -- lattice objects ---------------------------------------------------------------------


def box_from_json(data, dim, path="$.window") -> Box:
    lo = _point(_need(data, "lower", path), dim, f"{path}.lower")
    hi = _point(_need(data, "upper", path), dim, f"{path}.upper")
    try:
        return Box(lo, hi)
    except LatticeError as e:
        raise ParseError(str(e), path) from None


def set_from_json(data, path="$", max_dim=DEFAULT_MAX_DIM) -> DiscreteSet:
    dim = _dim(data, path, max_dim)
    pts = _list(_need(data, "points", path), f"{path}.points")
    if not pts:
        raise ParseError("a set needs at least one point", f"{path}.points")
    return DiscreteSet(dim, [_point(p, dim, f"{path}.points[{k}]") for k, p in enumerate(pts)])


def function_from_json(data, path="$", max_dim=DEFAULT_MAX_DIM) -> DiscreteFunction:
    dim = _dim(data, path, max_dim)
    ents = _list(_need(data, "entries", path), f"{path}.entries")
    if not ents:
        raise ParseError("a function needs at least one finite entry", f"{path}.entries")
    out = {}
    for k, e in enumerate(ents):
        p = f"{path}.entries[{k}]"
        x = _point(_need(e, "x", p), dim, f"{p}.x")
        if x in out:
            raise ParseError(f"duplicate point {list(x)}", f"{p}.x")
        out[x] = _value(_need(e, "v", p), f"{p}.v")
    window = None
    if data.get("window") is not None:
        window = box_from_json(data["window"], dim, f"{path}.window")
    try:
        return DiscreteFunction(dim, out, window)
    except LatticeError as e:
        raise ParseError(str(e), path) from None


def object_from_json(data, path="$", max_dim=DEFAULT_MAX_DIM):
    if isinstance(data, dict) and "points" in data:
        return set_from_json(data, path, max_dim)
    if isinstance(data, dict) and "entries" in data:
        return function_from_json(data, path, max_dim)
    raise ParseError("expected a set {\"dim\", \"points\"} or a function {\"dim\", \"entries\"}", path)


def object_to_json(obj) -> dict:
    if isinstance(obj, DiscreteSet):
        return {"dim": obj.dim, "points": [list(p) for p in obj.sorted_points()]}
    out = {"dim": obj.dim}
    if obj.window is not None:
        out["window"] = {"lower": list(obj.window.lower), "upper": list(obj.window.upper)}
    out["entries"] = [{"x": list(x), "v": str(obj.entries[x])} for x in obj.sorted_points()]
    return out


def certificate_from_json(data, path="$", max_dim=DEFAULT_MAX_DIM) -> Certificate:
    kind = _need(data, "kind", path)
    parts = _list(_need(data, "parts", path), f"{path}.parts")
    if len(parts) != 2:
        raise ParseError("a certificate has exactly two parts", f"{path}.parts")
    try:
        return Certificate(kind, tuple(object_from_json(p, f"{path}.parts[{k}]", max_dim)
                                       for k, p in enumerate(parts)))
    except ValueError as e:
        if isinstance(e, (ParseError, ScaleGuardError)):
            raise
        raise ParseError(str(e), f"{path}.kind") from None


def certificate_to_json(cert: Certificate) -> dict:
    return {"kind": cert.kind, "parts": [object_to_json(p) for p in cert.parts]}


def classify_input_from_json(data, max_dim=DEFAULT_MAX_DIM):
    """An object, or {"object": ..., "certificates": {"L2": {...}, ...}}."""
    if isinstance(data, dict) and "object" in data:
        obj = object_from_json(data["object"], "$.object", max_dim)
        certs = {}
        for cls, c in (data.get("certificates") or {}).items():
            if cls not in ("L2", "L2nat", "M2", "M2nat"):
                raise ParseError(f"certificates apply to L2, L2nat, M2, M2nat, not {cls!r}",
                                 f"$.certificates.{cls}")
            certs[cls] = certificate_from_json(c, f"$.certificates.{cls}", max_dim)
        return obj, certs
    return object_from_json(data, "$", max_dim), {}


# -- descriptions ---------------------------------------------------------------------


def _wrap(fn, data, path):
    try:
        return fn(data)
    except (KeyError, TypeError, ValueError) as e:
        if isinstance(e, ParseError):
            raise
        raise ParseError(f"malformed record: {e}", path) from None


def rank_from_json(data, path="$") -> IntervalRank:
    n = _int(_need(data, "n", path), f"{path}.n")
    for k, e in enumerate(_list(_need(data, "r", path), f"{path}.r")):
        for key in ("a", "b", "v"):
            _int(_need(e, key, f"{path}.r[{k}]"), f"{path}.r[{k}].{key}")
    if n > DEFAULT_MAX_DIM:
        raise ScaleGuardError(f"dimension {n} exceeds the limit {DEFAULT_MAX_DIM}")
    return _wrap(IntervalRank.from_json, data, path)


def rho_from_json(data, path="$") -> RankFunction:
    n = _int(_need(data, "n", path), f"{path}.n")
    if n > DEFAULT_MAX_DIM:
        raise ScaleGuardError(f"dimension {n} exceeds the limit {DEFAULT_MAX_DIM}")
    for k, e in enumerate(_list(_need(data, "rho", path), f"{path}.rho")):
        _list(_need(e, "X", f"{path}.rho[{k}]"), f"{path}.rho[{k}].X")
        _int(_need(e, "v", f"{path}.rho[{k}]"), f"{path}.rho[{k}].v")
    return _wrap(RankFunction.from_json, data, path)


def lnat_description_from_json(data, path="$") -> LnatDescription:
    return _wrap(LnatDescription.from_json, data, path)


def _bound(v, path, default):
    if v == default:
        return math.inf if default == "+inf" else -math.inf
    return _int(v, path)


def interval_bounds_from_json(data, path="$") -> IntervalBounds:
    n = _int(_need(data, "n", path), f"{path}.n")
    if n > DEFAULT_MAX_DIM:
        raise ScaleGuardError(f"dimension {n} exceeds the limit {DEFAULT_MAX_DIM}")
    bounds = {}
    for k, e in enumerate(_list(_need(data, "bounds", path), f"{path}.bounds")):
        p = f"{path}.bounds[{k}]"
        a, b = _int(_need(e, "a", p), f"{p}.a"), _int(_need(e, "b", p), f"{p}.b")
        if not 1 <= a <= b <= n:
            raise ParseError(f"interval ({a}, {b}) is not within 1..{n}", p)
        bounds[(a, b)] = (_bound(_need(e, "lo", p), f"{p}.lo", "-inf"), _bound(_need(e, "hi", p), f"{p}.hi", "+inf"))
    return _wrap(lambda _: IntervalBounds(n, bounds), data, path)


def description_to_json(desc) -> dict:
    if isinstance(desc, (LnatDescription, IntervalBounds, IntervalRank, RankFunction, HPolytope)):
        return desc.to_json()
    raise TypeError(f"not a description: {type(desc).__name__}")


def report_to_json(report) -> list:
    return report.to_json()
