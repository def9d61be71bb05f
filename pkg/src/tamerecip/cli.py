"""Command-line front end.

Exit status: 0 success (or verdict true), 1 verdict false, 2 bad input,
3 unsupported geometry, 4 precision exhausted.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from typing import Any, Sequence

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

from .central_ext import SymbolCocycle, canonical_pair, commutator_of_lifts, splitting_certificate
from .gfield import FieldError, FiniteField, field_of_order, norm_to_base
from .graded import c2_det, c3_det, one_tate_report
from .laurent import PREC_CAP, PrecisionError, TwoLocalElement
from .reciprocity import SymbolReport, along_curve, around_point, global_product, weil_on_curve
from .scenes import random_conic, random_line
from .surface import ClosedPoint, Curve, RationalFunction, UnsupportedGeometry
from .symbols import KummerError, kummer_galois_order, kummer_map, nu_pair, tame1, tame2
from .textparse import ParseError, parse_field_element, parse_series, parse_two_local

EXIT_OK, EXIT_FALSE, EXIT_PARSE, EXIT_GEOMETRY, EXIT_PRECISION = 0, 1, 2, 3, 4

COMMANDS = ("symbol2", "tame1", "kummer", "c3", "point", "curve", "global", "weil",
            "commutator", "certify")


class InputError(ValueError):
    """Bad command-line or scene input."""


def parse_field(text: str) -> FiniteField:
    """``5``, ``9`` or ``3^2``."""
    text = str(text).strip()
    try:
        if "^" in text:
            p, d = text.split("^")
            return field_of_order(int(p) ** int(d))
        return field_of_order(int(text))
    except (ValueError, FieldError) as exc:
        raise InputError(f"bad field {text!r}: {exc}") from None


def parse_point(text: str, F: FiniteField) -> ClosedPoint:
    """A rational point ``x0,y0`` or projective ``X0:X1:X2``."""
    if ":" in text:
        parts = [parse_field_element(p, F).code for p in text.split(":")]
        if len(parts) != 3:
            raise InputError("projective point needs three coordinates")
        return ClosedPoint(F, F, parts)
    parts = [parse_field_element(p, F) for p in text.split(",")]
    if len(parts) != 2:
        raise InputError("affine point needs two coordinates")
    return ClosedPoint.affine(F, *parts)


def _need(args, *names):
    for n in names:
        if getattr(args, n, None) is None:
            raise InputError(f"missing --{n}")


def _value_doc(command: str, F: FiniteField, **fields) -> dict:
    doc = {"command": command, "field": F.descriptor()}
    doc.update(fields)
    return doc


def _rf(text: str, F: FiniteField) -> RationalFunction:
    return RationalFunction.parse(text, F)


def run_symbol2(args, F):
    _need(args, "f", "g", "h")
    f, g, h = (parse_two_local(s, F) for s in (args.f, args.g, args.h))
    v = tame2(f, g, h).value
    return _value_doc("symbol2", F, value=str(v), nu_fg=nu_pair(f, g), nu_gh=nu_pair(g, h),
                      nu_hf=nu_pair(h, f)), True


def run_tame1(args, F):
    _need(args, "f", "g")
    f, g = parse_series(args.f, F), parse_series(args.g, F)
    v = tame1(f, g)
    rep = one_tate_report(f, g, cap=args.cap)
    return _value_doc("tame1", F, value=str(v), determinant_value=str(rep.value),
                      window=rep.window, agree=rep.value == v), rep.value == v


def run_kummer(args, F):
    _need(args, "f", "g", "a", "m")
    f, g, a = (parse_two_local(s, F) for s in (args.f, args.g, args.a))
    v = kummer_map(f, g, a, args.m)
    return _value_doc("kummer", F, value=str(v), m=args.m,
                      galois_order=kummer_galois_order(a, args.m)), True


def run_c3(args, F):
    _need(args, "f", "g", "h")
    f, g, h = (parse_two_local(s, F) for s in (args.f, args.g, args.h))
    det = c3_det(f, g, h, cap=args.cap)
    sym = tame2(f, g, h).value
    line = c2_det(f, g, cap=args.cap)
    return _value_doc("c3", F, value=str(det), tame2=str(sym), agree=det == sym,
                      c2_grade=line.grade, cap=args.cap), det == sym


def run_point(args, F):
    _need(args, "point", "f", "g", "a")
    x = parse_point(args.point, F)
    return around_point(x, _rf(args.f, F), _rf(args.g, F), _rf(args.a, F)), None


def run_curve(args, F):
    _need(args, "curve", "f", "g", "a")
    C = Curve.parse(args.curve, F)
    return along_curve(C, _rf(args.f, F), _rf(args.g, F), _rf(args.a, F)), None


def run_global(args, F):
    _need(args, "f", "g", "a")
    return global_product(_rf(args.f, F), _rf(args.g, F), _rf(args.a, F)), None


def run_weil(args, F):
    _need(args, "f", "g")
    C = Curve.parse(args.curve, F) if args.curve else None
    return weil_on_curve(C, _rf(args.f, F), _rf(args.g, F)), None


def run_commutator(args, F):
    _need(args, "f", "g", "a")
    x, y, a = (parse_two_local(s, F) for s in (args.f, args.g, args.a))
    n = args.n or 2
    one = TwoLocalElement.constant(F, F.one)
    g1, g2 = canonical_pair(x, y, n, one)
    c = SymbolCocycle(a)
    v = commutator_of_lifts(g1, g2, c)
    expected = norm_to_base(tame2(x, y, a).value, F)
    return _value_doc("commutator", F, value=str(v), symbol=str(expected), n=n,
                      agree=v == expected), v == expected


def _random_samples(F: FiniteField, seed: int, count: int) -> list[RationalFunction]:
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        C = random_line(F, rng) if rng.random() < 0.7 else random_conic(F, rng)
        out.append(RationalFunction(F, rng.randrange(1, F.q), [(C, rng.choice([-1, 1]))]))
    return out


def run_certify(args, F):
    _need(args, "a")
    a = _rf(args.a, F)
    kind = args.kind or ("point" if args.point else "curve" if args.curve else "global")
    samples = None
    if args.samples:
        samples = [_rf(s, F) for s in args.samples.split(";")]
    if args.random:
        from .central_ext import default_generators
        samples = (samples or default_generators(a)) + _random_samples(F, args.seed, args.random)
    point = parse_point(args.point, F) if args.point else None
    curve = Curve.parse(args.curve, F) if args.curve else None
    return splitting_certificate(kind, a, point=point, curve=curve, samples=samples), None


RUNNERS = {
    "symbol2": run_symbol2, "tame1": run_tame1, "kummer": run_kummer, "c3": run_c3,
    "point": run_point, "curve": run_curve, "global": run_global, "weil": run_weil,
    "commutator": run_commutator, "certify": run_certify,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tamerecip",
                                description="Tame symbols and reciprocity laws on P^2 over F_q.")
    p.add_argument("command", nargs="?", choices=COMMANDS)
    p.add_argument("--scene", help="TOML scene file supplying any of the options")
    p.add_argument("--field", help="q or p^d (default 5)")
    p.add_argument("--f")
    p.add_argument("--g")
    p.add_argument("--h")
    p.add_argument("--a")
    p.add_argument("--m", type=int, help="Kummer exponent")
    p.add_argument("--n", type=int, help="matrix size for commutator")
    p.add_argument("--point", help="x0,y0 or X0:X1:X2")
    p.add_argument("--curve", help="curve polynomial in x, y, or 'inf'")
    p.add_argument("--kind", choices=("point", "curve", "global", "scalar"))
    p.add_argument("--samples", help="';'-separated sample functions for certify")
    p.add_argument("--random", type=int, default=0, help="extra random samples for certify")
    p.add_argument("--cap", type=int, default=PREC_CAP, help="precision cap")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", action="store_true", help="machine-readable output")
    return p


_SCENE_KEYS = {"command", "query", "field", "f", "g", "h", "a", "m", "n", "point", "curve",
               "kind", "samples", "random", "cap", "seed"}


def _apply_scene(args, path: str) -> None:
    try:
        with open(path, "rb") as fh:
            scene = tomllib.load(fh)
    except (OSError, tomllib.TOMLDecodeError) as exc:
        raise InputError(f"cannot read scene {path!r}: {exc}") from None
    unknown = set(scene) - _SCENE_KEYS
    if unknown:
        raise InputError(f"unknown scene keys: {', '.join(sorted(unknown))}")
    defaults = vars(build_parser().parse_args([]))
    for key, value in scene.items():
        key = "command" if key == "query" else key
        if getattr(args, key) == defaults[key]:
            if key == "field":
                value = str(value)
            setattr(args, key, value)


def _render(result, as_json: bool) -> str:
    if isinstance(result, SymbolReport):
        return result.to_json() if as_json else result.to_text()
    if as_json:
        return json.dumps(result, indent=2, sort_keys=True)
    lines = [f"{result['command']}: {result['value']}"]
    lines += [f"  {k} = {v}" for k, v in result.items() if k not in ("command", "value")]
    return "\n".join(lines)


def run(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code else EXIT_OK
    try:
        if args.scene:
            _apply_scene(args, args.scene)
        if args.command not in RUNNERS:
            raise InputError("no command given")
        F = parse_field(args.field or "5")
        result, ok = RUNNERS[args.command](args, F)
    except UnsupportedGeometry as exc:
        print(f"unsupported geometry: {exc}", file=sys.stderr)
        return EXIT_GEOMETRY
    except PrecisionError as exc:
        print(f"precision exhausted: {exc}", file=sys.stderr)
        return EXIT_PRECISION
    except (InputError, ParseError, KummerError, FieldError, ValueError,
            ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    print(_render(result, args.json), file=out)
    if isinstance(result, SymbolReport):
        ok = result.verdict
    return EXIT_OK if ok else EXIT_FALSE


def main() -> None:
    sys.exit(run())
