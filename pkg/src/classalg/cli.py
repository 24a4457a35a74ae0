"""Command-line front end."""
from __future__ import annotations

import argparse
import json
import os
import sys

from .algebra import EXHAUSTIVE, FiniteModel, Sampling, check_homomorphism, first_homomorphism
from .errors import (
    AlgebraError,
    NotAHomomorphism,
    SurfaceSyntaxError,
    UnknownImplementation,
    UnknownTheory,
)
from .normal import normalize
from .numbers import REGISTRY, integers_to_ring, naturals_to_semiring, zmod
from .quote import Merge, NoVars, quote_equality, quote_expr
from .surface import identifiers, parse_equation, parse_surface, to_host, to_term
from .terms import VarContext
from .theories import BUILTIN_THEORIES, EquationalTheory, builtin_theory

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE, EXIT_INPUT = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _load_json(path: str):
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def load_theory(spec: str) -> EquationalTheory:
    if spec in BUILTIN_THEORIES:
        return builtin_theory(spec)
    if os.path.exists(spec):
        return EquationalTheory.from_json(_load_json(spec), name=os.path.basename(spec))
    raise UnknownTheory(f"unknown theory {spec!r}; built-ins are {', '.join(BUILTIN_THEORIES)}")


def _builtin_model(name: str, theory: str):
    if name.startswith("z") and name[1:].isdigit():
        k = int(name[1:])
        if k < 1:
            raise UsageError("z<k> needs k >= 1")
        return zmod(k, theory)
    return REGISTRY.impl(name).model()


def load_model(spec, theory: str = "semiring"):
    """A model from a JSON document, a JSON file, or ``builtin:NAME``."""
    if isinstance(spec, dict):
        return FiniteModel.from_json(spec)
    if spec.startswith("builtin:"):
        return _builtin_model(spec[len("builtin:"):], theory)
    return FiniteModel.from_json(_load_json(spec), name=os.path.basename(spec))


# -- subcommands -------------------------------------------------------------

def cmd_check(args, out) -> int:
    from .theories import check_in_variety

    th = load_theory(args.theory)
    model = load_model(args.model, args.theory)
    if args.samples is not None or not model.finite:
        strategy = Sampling(args.samples or 1000, args.seed)
    else:
        strategy = EXHAUSTIVE
    report = check_in_variety(model, th, strategy)
    if args.json:
        print(json.dumps(report.to_json(), indent=2, sort_keys=True), file=out)
    else:
        print("\n".join(report.lines()), file=out)
    return EXIT_OK if report.ok else EXIT_NEGATIVE


def cmd_decide(args, out) -> int:
    if args.theory not in BUILTIN_THEORIES:
        raise UnknownTheory(f"decide supports {', '.join(BUILTIN_THEORIES)}")
    lhs, rhs = parse_equation(args.equation)
    names = identifiers(lhs, rhs)
    monoid = args.theory in ("monoid", "comm_monoid")
    try:
        t1, t2 = to_term(lhs, names, monoid), to_term(rhs, names, monoid)
    except ValueError as e:
        raise SurfaceSyntaxError(str(e), 1, 1) from None
    ctx = VarContext.uniform(len(names))
    n1, n2 = normalize(args.theory, ctx, t1), normalize(args.theory, ctx, t2)
    equal = n1 == n2
    print("equal" if equal else "unequal", file=out)
    print(f"lhs: {n1.format(names)}", file=out)
    print(f"rhs: {n2.format(names)}", file=out)
    return EXIT_OK if equal else EXIT_NEGATIVE


def cmd_quote(args, out) -> int:
    trace = (lambda line: print(line, file=out)) if args.trace else None
    try:
        lhs = to_host(parse_surface(args.expr))
        rhs = to_host(parse_surface(args.equality)) if args.equality is not None else None
    except ValueError as e:
        raise SurfaceSyntaxError(str(e), 1, 1) from None
    if rhs is None:
        expr, fresh = quote_expr(NoVars(), lhs, trace=trace)
        print(f"heap: {Merge(NoVars(), fresh).sexpr()}", file=out)
        print(f"expr: {expr.sexpr()}", file=out)
    else:
        heap, ql, qr = quote_equality(lhs, rhs, trace=trace)
        print(f"heap: {heap.sexpr()}", file=out)
        print(f"lhs: {ql.sexpr()}", file=out)
        print(f"rhs: {qr.sexpr()}", file=out)
    return EXIT_OK


def _parse_map(spec, source):
    """``{sort: {elem: image}}`` or ``{sort: [[elem, image], ...]}``; JSON keys are
    matched against carrier elements by their string form."""
    maps = {}
    for s, entries in spec.items():
        pairs = entries.items() if isinstance(entries, dict) else entries
        by_str = {str(e): e for e in source.elements[s]}
        table = {}
        for k, v in pairs:
            key = k if k in source.index[s] else by_str.get(str(k), k)
            table[key] = v
        maps[s] = table
    return maps


def cmd_homo(args, out) -> int:
    data = _load_json(args.input)
    theory = data.get("theory", "monoid")
    src, tgt = load_model(data["source"], theory), load_model(data["target"], theory)
    if not (src.finite and tgt.finite):
        raise UsageError("homo needs finite source and target models")
    maps = _parse_map(data["map"], src)
    try:
        h = check_homomorphism(src, tgt, {s: m.__getitem__ for s, m in maps.items()})
    except (NotAHomomorphism, KeyError) as e:
        print(json.dumps({"homomorphism": False, "error": str(e)}, sort_keys=True), file=out)
        return EXIT_NEGATIVE
    report = first_homomorphism(h)
    print(json.dumps({"homomorphism": True, **report.to_json()}, indent=2, sort_keys=True), file=out)
    return EXIT_OK if report.verified else EXIT_NEGATIVE


def cmd_convert(args, out) -> int:
    src, dst = REGISTRY.impl(args.source), REGISTRY.impl(args.target)
    try:
        value = src.parse(args.value)
    except (ValueError, AlgebraError) as e:
        raise SurfaceSyntaxError(f"cannot read {args.value!r} as {src.name}: {e}", 1, 1) from None
    if src.kind == "naturals" and dst.kind in ("naturals", "integers"):
        result = naturals_to_semiring(value, dst, src)
    elif src.kind == "integers" and dst.kind == "integers":
        result = integers_to_ring(value, dst, src.base)
    else:
        raise UsageError(f"no conversion from {src.kind} ({src.name}) to {dst.kind} ({dst.name})")
    print(dst.format(result), file=out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="classalg", description="Universal algebra toolkit.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="check a model against an equational theory")
    c.add_argument("--theory", required=True, help="built-in name or theory JSON file")
    c.add_argument("--model", required=True, help="model JSON file or builtin:NAME (z<k>, peano, binary, ...)")
    c.add_argument("--samples", type=int, help="sample count (forces sampling)")
    c.add_argument("--seed", type=lambda x: int(x, 0), default=0xA15EB)
    c.add_argument("--json", action="store_true", help="print the report as JSON")
    c.set_defaults(func=cmd_check)

    d = sub.add_parser("decide", help="decide an identity in a free model")
    d.add_argument("--theory", required=True, choices=BUILTIN_THEORIES)
    d.add_argument("equation", help='e.g. "x*(y+1) = x*y + x"')
    d.set_defaults(func=cmd_decide)

    q = sub.add_parser("quote", help="reify a product expression")
    q.add_argument("expr")
    q.add_argument("--equality", help="right-hand side; quote both sides over one heap")
    q.add_argument("--trace", action="store_true", help="print resolution trace lines")
    q.set_defaults(func=cmd_quote)

    h = sub.add_parser("homo", help="first homomorphism theorem for a finite map")
    h.add_argument("--input", required=True, help="JSON with source, target, map (and optional theory)")
    h.set_defaults(func=cmd_homo)

    v = sub.add_parser("convert", help="convert a numeral between representations")
    v.add_argument("--from", dest="source", required=True)
    v.add_argument("--to", dest="target", required=True)
    v.add_argument("value")
    v.set_defaults(func=cmd_convert)
    return p


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return args.func(args, out)
    except (UsageError, UnknownTheory, UnknownImplementation) as e:
        print(f"classalg: error: {e}", file=err)
        return EXIT_USAGE
    except (OSError, json.JSONDecodeError, SurfaceSyntaxError, AlgebraError, KeyError, ValueError) as e:
        print(f"classalg: error: {e}", file=err)
        return EXIT_INPUT


def main():
    sys.exit(run())
