"""Command-line interface.

Exit codes: 0 success, 1 verdict contradiction (or a failed suite), 2 parse
error, 3 scale guard.
"""

from __future__ import annotations

import argparse
import sys

from . import io
from .classifiers import InconsistencyError
from .lattice_core import Box, CoordinateOverflow, DiscreteSet, LatticeError, as_function

EXIT_OK, EXIT_CONTRADICTION, EXIT_PARSE, EXIT_SCALE = 0, 1, 2, 3

GENERATOR_ALIASES = {"Lnat": "lnat", "L": "l", "Mnat": "mnat", "M": "m", "sep": "sep", "mm": "mm",
                     "interval_rank": "interval_rank", "rank": "interval_rank"}


def _read(path: str):
    if path == "-":
        return io.loads(sys.stdin.read())
    try:
        return io.load_file(path)
    except OSError as e:
        raise io.ParseError(f"cannot read {path}: {e.strerror}") from None


def _emit(data, fmt: str, text: str | None = None):
    if fmt == "text" and text is not None:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
    else:
        sys.stdout.write(io.dumps(data) + "\n")


def cmd_classify(args) -> int:
    from .composite import classify_all

    obj, certs = io.classify_input_from_json(_read(args.input), args.max_dim)
    report = classify_all(obj, certs, args.guard)
    _emit(report.to_json(), args.format, report.to_text())
    return EXIT_OK


def _as_set(obj) -> DiscreteSet:
    f = as_function(obj)
    if not f.is_constant():
        raise io.ParseError("describe expects a set (or a constant function)")
    return f.domain


def cmd_describe(args) -> int:
    from . import descriptions as D
    from .geometry import convex_hull

    data = _read(args.input)
    if args.build:
        if args.as_ == "hull":
            raise io.ParseError("hull descriptions are not built back into sets", "$")
        if args.as_ == "rank":
            table = io.rank_from_json(data)
            S = D.polymatroid_from_rank(table)
        elif args.as_ == "lnat":
            desc = io.lnat_description_from_json(data)
            S = D.build_lnat_set(desc.closure(), Box.cube(desc.dim, args.radius))
        else:
            bounds = io.interval_bounds_from_json(data)
            S = D.build_multimodular_set(bounds, Box.cube(bounds.n, args.radius))
        _emit(io.object_to_json(S), "json")
        return EXIT_OK
    S = _as_set(io.object_from_json(data, "$", args.max_dim))
    if args.as_ == "lnat":
        desc = D.extract_lnat_description(S)
    elif args.as_ == "mm":
        desc = D.extract_interval_bounds(S)
    elif args.as_ == "rank":
        desc = D.extract_interval_rank(S)
    else:
        desc = convex_hull(S.sorted_points())
    _emit(io.description_to_json(desc), "json")
    return EXIT_OK


def cmd_generate(args) -> int:
    from .generators import GENERATORS, GenSpec, generate

    cls = GENERATOR_ALIASES.get(args.cls, args.cls)
    if cls not in GENERATORS and cls != "interval_rank":
        known = ", ".join(sorted(set(GENERATORS) | {"interval_rank"}))
        raise io.ParseError(f"no generator for class {args.cls!r}; known: {known}", "--class")
    if args.dim > args.max_dim:
        raise io.ScaleGuardError(f"dimension {args.dim} exceeds the limit {args.max_dim}")
    spec = GenSpec(cls, args.dim, args.radius, tuple(args.value_range), args.seed, max_dim=args.max_dim)
    obj = generate(spec)
    _emit(obj.to_json() if cls == "interval_rank" else io.object_to_json(obj), "json")
    return EXIT_OK


def cmd_example(args) -> int:
    from .catalog import UnknownExample, catalog, paper_example

    if args.list:
        sys.stdout.write("".join(f"{k}\t{e.provenance}\n" for k, e in catalog().items()))
        return EXIT_OK
    try:
        entry = paper_example(args.id)
    except UnknownExample as e:
        raise io.ParseError(str(e.args[0]), "--id") from None
    _emit(entry.to_json(), "json")
    return EXIT_OK


def _suite_text(result: dict) -> str:
    lines = [f"suite {result['name']}: {'PASS' if result['passed'] else 'FAIL'}"]
    for r in result.get("results", []):
        label = r.get("identity") or r.get("class") or f"{r.get('row')} / {r.get('column')}"
        n = len(r.get("failures", r.get("exceptions", [])))
        extra = f" in_both={r['in_both']}" if "in_both" in r else ""
        lines.append(f"  {'PASS' if r['passed'] else 'FAIL'}  {label}{extra}  failures={n}")
    for key in ("counts", "inputs", "trials"):
        if key in result:
            lines.append(f"  {key}: {result[key]}")
    if "disagreements" in result:
        lines.append(f"  disagreements: {len(result['disagreements'])}")
    return "\n".join(lines) + "\n"


def cmd_suite(args) -> int:
    from .relations import SUITES

    names = list(SUITES) if args.name == "all" else [args.name]
    ok = True
    out = []
    for name in names:
        kw = {"seed": args.seed}
        if args.trials is not None:
            kw["trials"] = args.trials
        res = SUITES[name](**kw)
        ok &= res["passed"]
        out.append(res)
    if args.format == "text":
        sys.stdout.write("".join(_suite_text(r) for r in out))
    else:
        _emit(out if len(out) > 1 else out[0], "json")
    return EXIT_OK if ok else EXIT_CONTRADICTION


def cmd_table(args) -> int:
    from .relations import table_report

    rep = table_report(trials=args.trials, seed=args.seed)
    if args.format == "json":
        _emit({"matches_golden": rep["matches_golden"], "cells": rep["cells"]}, "json")
    else:
        sys.stdout.write(rep["text"])
    if not rep["matches_golden"]:
        sys.stderr.write("rendered table differs from the golden table\n")
        return EXIT_CONTRADICTION
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="dcx", description="Discrete convexity classes: recognize, describe, "
                                                         "generate, and cross-check.")
    p.add_argument("--max-dim", type=int, default=io.DEFAULT_MAX_DIM, help="largest accepted dimension")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("classify", help="classify a set or function given as JSON")
    c.add_argument("--in", dest="input", required=True, help="input file, or - for stdin")
    c.add_argument("--format", choices=("json", "text"), default="json")
    c.add_argument("--guard", type=int, default=None, help="composite search limit (bounding-box points)")
    c.set_defaults(run=cmd_classify)

    d = sub.add_parser("describe", help="extract (or with --build, construct) a polyhedral description")
    d.add_argument("--in", dest="input", required=True)
    d.add_argument("--as", dest="as_", choices=("lnat", "mm", "rank", "hull"), required=True)
    d.add_argument("--build", action="store_true", help="read a description and emit its set")
    d.add_argument("--radius", type=int, default=3, help="window radius for --build")
    d.set_defaults(run=cmd_describe)

    g = sub.add_parser("generate", help="emit a seeded random object of a class")
    g.add_argument("--class", dest="cls", required=True)
    g.add_argument("--dim", type=int, required=True)
    g.add_argument("--radius", type=int, default=2)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--value-range", type=int, nargs=2, default=(0, 4), metavar=("LO", "HI"))
    g.set_defaults(run=cmd_generate)

    e = sub.add_parser("example", help="emit a catalog entry")
    grp = e.add_mutually_exclusive_group(required=True)
    grp.add_argument("--id")
    grp.add_argument("--list", action="store_true")
    e.set_defaults(run=cmd_example)

    s = sub.add_parser("suite", help="run a relation suite")
    s.add_argument("--name", choices=("inclusions", "intersections", "argmin", "equivalence", "duality", "all"),
                   required=True)
    s.add_argument("--trials", type=int, default=None)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--format", choices=("json", "text"), default="json")
    s.set_defaults(run=cmd_suite)

    t = sub.add_parser("table", help="render the relations table from evidence")
    t.add_argument("--format", choices=("json", "text"), default="text")
    t.add_argument("--trials", type=int, default=20)
    t.add_argument("--seed", type=int, default=0)
    t.set_defaults(run=cmd_table)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.run(args)
    except io.ScaleGuardError as e:
        sys.stderr.write(f"scale guard: {e}\n")
        return EXIT_SCALE
    except io.ParseError as e:
        sys.stderr.write(f"parse error: {e}\n")
        return EXIT_PARSE
    except InconsistencyError as e:
        sys.stderr.write(f"contradiction: {e}\n")
        return EXIT_CONTRADICTION
    except CoordinateOverflow as e:
        sys.stderr.write(f"scale guard: {e}\n")
        return EXIT_SCALE
    except LatticeError as e:
        sys.stderr.write(f"parse error: {e}\n")
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
