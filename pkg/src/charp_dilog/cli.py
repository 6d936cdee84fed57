"""Command-line surface: dilogarithm tables, regulator runs, cycle invariants,
and the seeded verification suites.

Exit codes: 0 success, 1 verification failure, 2 input error.  All randomness
flows from one seed (--seed, or CHARP_DILOG_SEED); identical configurations
print byte-identical reports.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

from .gf import BadPrime, Fq, FqElem, GFError
from .localfield import LocalFieldError
from .regulator import (
    GoodFunction,
    RegulatorInput,
    finite_point,
    infinity_point,
    rho_breakdown,
    rho_K_breakdown,
)
from .suites import SUITES, UnknownSuite, run_suite
from .tpoly import Trunc, TruncError
from . import bloch, cycles


class ParseError(Exception):
    """Malformed input file or option."""


def _field_from(p: int, ext) -> Fq:
    base = Fq(p)
    if not ext:
        return base
    return Fq(p, modulus=ext, base=base)


def _elem_to_json(x: FqElem):
    if x.field.base is None:
        return x.raw
    return [_elem_to_json(c) for c in x.coeffs()]


def _elem_from_json(field: Fq, data) -> FqElem:
    try:
        if isinstance(data, int):
            return field.from_int(data)
        if field.base is None:
            raise ParseError(f"prime-field element must be an int, got {data!r}")
        return field.from_coeffs([_elem_from_json(field.base, c) for c in data])
    except GFError as exc:
        raise ParseError(str(exc)) from exc


def _trunc_from_json(field: Fq, m: int, data) -> Trunc:
    """A truncated element, as a bare coefficient array or {"m":..,"coeffs":[..]}."""
    if isinstance(data, dict):
        if int(data.get("m", m)) != m:
            raise ParseError(f"element modulus {data.get('m')} does not match {m}")
        data = data.get("coeffs", [])
    if not isinstance(data, list):
        raise ParseError("truncated elements are coefficient arrays")
    if len(data) > m:
        raise ParseError(f"too many coefficients for modulus {m}")
    return Trunc(field, m, [_elem_from_json(field, c) for c in data])


def _trunc_to_json(x: Trunc):
    return [_elem_to_json(c) for c in x.coeffs]


def _load_json(path: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc


def _regulator_input_from_json(data: dict) -> RegulatorInput:
    try:
        p = int(data["p"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError("input needs an integer field 'p'") from exc
    try:
        field = _field_from(p, data.get("ext"))
    except (GFError, ValueError) as exc:
        raise ParseError(str(exc)) from exc
    points = []
    for entry in data.get("points", []):
        if entry == "inf":
            points.append(infinity_point())
            continue
        if not isinstance(entry, dict) or "poly" not in entry:
            raise ParseError("each point is 'inf' or an object with a 'poly' array")
        coeffs = [_trunc_from_json(field, 2, c) for c in entry["poly"]]
        try:
            points.append(finite_point(field, coeffs))
        except (ValueError, GFError) as exc:
            raise ParseError(f"bad point polynomial: {exc}") from exc
    fns = {}
    for key in ("f", "g", "h"):
        if key not in data:
            raise ParseError(f"missing function {key!r}")
        fn_data = data[key]
        unit = _trunc_from_json(field, 2, fn_data.get("unit", [1]))
        factors = tuple((int(i), int(e)) for i, e in fn_data.get("factors", []))
        fns[key] = GoodFunction(unit, factors)
    try:
        return RegulatorInput(field, tuple(points), fns["f"], fns["g"], fns["h"])
    except (ValueError, GFError) as exc:
        raise ParseError(str(exc)) from exc


def _cycle_from_json(data: dict) -> cycles.ParamCycle:
    try:
        p = int(data["p"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError("input needs an integer field 'p'") from exc
    try:
        field = _field_from(p, data.get("ext"))
    except (GFError, ValueError) as exc:
        raise ParseError(str(exc)) from exc
    coords = []
    for key in ("y1", "y2", "y3"):
        if key not in data:
            raise ParseError(f"missing coordinate {key!r}")
        coord = data[key]
        try:
            num = [_trunc_from_json(field, p, c) for c in coord["num"]]
            den = [_trunc_from_json(field, p, c) for c in coord["den"]]
        except (KeyError, TruncError) as exc:
            raise ParseError(f"bad coordinate {key}: {exc}") from exc
        if not num or not den:
            raise ParseError(f"coordinate {key} needs nonempty num and den")
        coords.append((num, den))
    return cycles.make_cycle(field, coords)


def _emit(rows: list[dict], fmt: str, out) -> None:
    if fmt == "json":
        json.dump(rows, out, indent=2, sort_keys=True)
        out.write("\n")
    elif fmt == "csv":
        if rows:
            writer = csv.DictWriter(out, fieldnames=list(rows[0].keys()))
            writer.writeheader()
            for row in rows:
                writer.writerow(row)
    else:
        for row in rows:
            out.write("  ".join(f"{k}={v}" for k, v in row.items()) + "\n")


def _default_seed() -> int:
    return int(os.environ.get("CHARP_DILOG_SEED", "0"))


def cmd_li1(args, out) -> int:
    field = _field_from(args.p, None)
    rows = []
    if args.x is not None:
        xs = [field.from_int(args.x)]
    else:
        xs = list(field.elements())
    for x in xs:
        rows.append({"x": _elem_to_json(x), "li1": _elem_to_json(bloch.pounds1(x))})
    _emit(rows, args.format, out)
    return 0


def _cmd_dilog(args, out, closed_form) -> int:
    field = _field_from(args.p, args.ext)
    x = Trunc(field, 2, [_elem_from_json(field, args.s), _elem_from_json(field, args.a)])
    sym = bloch.symbol(x)
    value = closed_form(sym)
    _emit([{"s": args.s, "a": args.a, "value": _elem_to_json(value)}], args.format, out)
    return 0


def cmd_rho_k(args, out, deep: bool = True) -> int:
    data = _load_json(args.input)
    inp = _regulator_input_from_json(data)
    fn = rho_K_breakdown if deep else rho_breakdown
    total, breakdown = fn(inp, lift_seed=args.seed)
    rows = [{"point": str(idx), "value": _elem_to_json(v)} for idx, v in breakdown]
    rows.append({"point": "total", "value": _elem_to_json(total)})
    _emit(rows, args.format, out)
    return 0


def cmd_cycle(args, out) -> int:
    data = _load_json(args.input)
    cyc = _cycle_from_json(data)
    report = cycles.admissibility_check(cyc)
    if not report.ok:
        rows = [{"failure": f.code, "coordinate": f.coordinate + 1, "detail": f.detail}
                for f in report.failures]
        _emit(rows, args.format, out)
        return 1
    pts = cycles.boundary(cyc)
    value = (cycles.ell_p_zero_cycle if args.deep else cycles.ell_zero_cycle)(pts, cyc.field)
    rows = []
    for pt in pts:
        rows.append({"face": f"({pt.face[0]},{pt.face[1]})", "at": repr(pt.where),
                     "sign": pt.sign})
    rows.append({"face": "total", "at": "", "sign": "", "value": _elem_to_json(value)})
    _emit(rows, args.format, out)
    return 0


def cmd_verify(args, out) -> int:
    results = []
    names = sorted(SUITES) if args.suite == "all" else [args.suite]
    for name in names:
        results.append(run_suite(name, args.p, trials=args.trials, seed=args.seed))
    if args.format == "json":
        json.dump([r.to_dict() for r in results], out, indent=2, sort_keys=True)
        out.write("\n")
    else:
        for r in results:
            status = "pass" if r.ok else "FAIL"
            out.write(f"{r.name} p={r.p} trials={r.trials} seed={r.seed} "
                      f"checks={r.checks} {status}\n")
            for note in r.notes:
                out.write(f"  note: {note}\n")
            for failure in r.failures:
                out.write(f"  counterexample: {json.dumps(failure, sort_keys=True)}\n")
    return 0 if all(r.ok for r in results) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="charp-dilog",
        description="Exact characteristic-p dilogarithms, regulators and cycle invariants.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, ext=False, seed=False, inp=False):
        sp.add_argument("--p", type=int, default=5, help="prime characteristic (>= 5)")
        sp.add_argument("--format", choices=("plain", "json", "csv"), default="plain")
        if ext:
            sp.add_argument("--ext", type=json.loads, default=None,
                            help="extension modulus coefficients over F_p, e.g. [2,0,1]")
        if seed:
            sp.add_argument("--seed", type=int, default=_default_seed())
        if inp:
            sp.add_argument("--input", required=True, help="JSON input file")

    sp = sub.add_parser("li1", help="table of the truncated-logarithm polynomial")
    common(sp)
    sp.add_argument("--x", type=int, default=None, help="single argument instead of a table")

    for name, help_text in (("li2", "additive dilogarithm at [s + a t]"),
                            ("li2p", "deep dilogarithm at [s + a t]")):
        sp = sub.add_parser(name, help=help_text)
        common(sp, ext=True)
        sp.add_argument("--s", type=json.loads, required=True)
        sp.add_argument("--a", type=json.loads, required=True)

    sp = sub.add_parser("rho-k", help="deep regulator of a good-function triple")
    common(sp, seed=True, inp=True)
    sp = sub.add_parser("rho", help="depth-3 regulator of a good-function triple")
    common(sp, seed=True, inp=True)

    sp = sub.add_parser("cycle", help="invariants of a parametrized cycle")
    cyc_sub = sp.add_subparsers(dest="cycle_command", required=True)
    for name, deep in (("rho-k", True), ("rho", False)):
        csp = cyc_sub.add_parser(name)
        common(csp, seed=True, inp=True)
        csp.set_defaults(deep=deep)

    sp = sub.add_parser("verify", help="run a seeded verification suite")
    sp.add_argument("suite", choices=sorted(SUITES) + ["all"])
    common(sp, seed=True)
    sp.add_argument("--trials", type=int, default=None)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    out = sys.stdout
    try:
        if args.command == "li1":
            return cmd_li1(args, out)
        if args.command == "li2":
            return _cmd_dilog(args, out, bloch.li2)
        if args.command == "li2p":
            return _cmd_dilog(args, out, bloch.li2p)
        if args.command == "rho-k":
            return cmd_rho_k(args, out, deep=True)
        if args.command == "rho":
            return cmd_rho_k(args, out, deep=False)
        if args.command == "cycle":
            return cmd_cycle(args, out)
        if args.command == "verify":
            return cmd_verify(args, out)
        raise AssertionError("unreachable")
    except (ParseError, BadPrime, UnknownSuite, TruncError, LocalFieldError,
            GFError, cycles.NotAdmissible, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
