"""Command-line interface.

Exit codes: 0 success, 2 usage or input error, 3 genericity failure,
4 table not in the image of the family, 5 a verified identity failed.

Set ``HESSINV_OUTPUT=json`` to make ``--json`` the default.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Optional

from . import campaigns
from .families import Case, CoeffTable, build_form, forward_map, verify_published_formulas
from .formio import parse_form, print_form
from .hessmap import Form, hessian
from .inversion import GenericityFailure, InversionResult, NotInImage, delta_discrepancy_report, invert, verify_h_nonzero

EXIT_OK, EXIT_USAGE, EXIT_GENERICITY, EXIT_NOT_IN_IMAGE, EXIT_IDENTITY = 0, 2, 3, 4, 5


class InputError(ValueError):
    pass


def _emit(args, text: str, record: dict) -> None:
    if args.json:
        print(json.dumps(record, indent=2, sort_keys=True))
    else:
        print(text)


def _frac(v: Fraction) -> str:
    return str(v)


def parse_params(spec: str, case: Case):
    values: Dict[str, Fraction] = {}
    for item in filter(None, (s.strip() for s in spec.split(","))):
        key, sep, value = item.partition("=")
        if not sep:
            raise InputError(f"parameter {item!r} is not of the form name=value")
        try:
            values[key.strip()] = Fraction(value.strip())
        except ValueError:
            raise InputError(f"bad rational {value!r} for parameter {key!r}") from None
    try:
        return case.params_type.from_mapping(values)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def parse_coeff_file(text: str, case: Case) -> CoeffTable:
    """Lines ``a1,a2,a3[,a4] : num[/den]``; '#' starts a comment; missing indices are 0."""
    entries = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        lhs, sep, rhs = line.partition(":")
        if not sep:
            raise InputError(f"line {lineno}: expected 'alpha : value'")
        try:
            alpha = tuple(int(s) for s in lhs.split(","))
            value = Fraction(rhs.strip())
        except ValueError:
            raise InputError(f"line {lineno}: cannot parse {line!r}") from None
        if alpha in entries:
            raise InputError(f"line {lineno}: duplicate index {alpha}")
        entries[alpha] = value
    try:
        return CoeffTable.for_case(case, entries)
    except KeyError as exc:
        raise InputError(exc.args[0]) from None


def format_coeff_file(table: CoeffTable) -> str:
    return "\n".join(f"{','.join(map(str, a))} : {v}" for a, v in table.entries.items())


def _read_form_arg(args, ring) -> Form:
    if args.file:
        text = Path(args.file).read_text(encoding="utf-8").strip()
    elif args.form is not None:
        text = args.form
    else:
        raise InputError("give a form as an argument or with --file")
    return parse_form(text, ring)


# -- commands -----------------------------------------------------------

def cmd_hess(args) -> int:
    ring = tuple(v.strip() for v in args.vars.split(","))
    f = _read_form_arg(args, ring)
    h = hessian(f)
    text = print_form(h)
    if h.is_zero():
        text += "\nZERO-HESSIAN: the Hessian determinant vanishes identically"
    _emit(args, text, {"hessian": print_form(h), "zero": h.is_zero(), "degree": h.degree, "vars": list(ring)})
    return EXIT_OK


def cmd_forward(args) -> int:
    case = Case(args.case)
    p = parse_params(args.params, case)
    table = forward_map(p)
    _emit(args, format_coeff_file(table), {
        "case": case.value,
        "params": {k: _frac(v) for k, v in p.as_dict().items()},
        "form": print_form(build_form(p)),
        "table": {",".join(map(str, a)): _frac(v) for a, v in table.entries.items()},
    })
    return EXIT_OK


def _invert_record(case: Case, result: Optional[InversionResult], diagnostics, error: Optional[str]) -> dict:
    return {
        "case": case.value,
        "params": {k: _frac(v) for k, v in result.params.as_dict().items()} if result else None,
        "diagnostics": {k: _frac(v) for k, v in diagnostics.items()},
        "consistent": bool(result and result.consistent),
        "error": error,
    }


def _render_invert(case: Case, result: Optional[InversionResult], diagnostics, error: Optional[str]) -> str:
    lines = []
    if result:
        names = ",".join(result.params.as_dict())
        values = ",".join(_frac(v) for v in result.params.as_tuple())
        lines.append(f"({names}) = ({values}), {'consistent' if result.consistent else 'INCONSISTENT'}")
    if error:
        lines.append(error)
    lines.extend(f"  {k} = {_frac(v)}" for k, v in diagnostics.items())
    if result and result.mismatched:
        shown = " ".join("(" + ",".join(map(str, a)) + ")" for a in result.mismatched[:5])
        lines.append(f"  mismatched entries: {shown}")
    return "\n".join(lines)


def cmd_invert(args) -> int:
    case = Case(args.case)
    sources = [s for s in (args.table, args.form, args.params) if s is not None]
    if len(sources) != 1:
        raise InputError("give exactly one of --table, --form, --params")
    if args.table is not None:
        table = parse_coeff_file(Path(args.table).read_text(encoding="utf-8"), case)
    elif args.form is not None:
        f = parse_form(args.form, case.form_vars, case.form_degree)
        table = CoeffTable.from_poly(hessian(f).poly, case.hessian_degree)
    else:
        table = forward_map(parse_params(args.params, case))

    try:
        result = invert(table)
    except GenericityFailure as exc:
        msg = f"GenericityFailure: {exc}"
        _emit(args, _render_invert(case, None, exc.diagnostics, msg), _invert_record(case, None, exc.diagnostics, msg))
        return EXIT_GENERICITY
    except NotInImage as exc:
        msg = f"NotInImage: {exc}"
        r = exc.result
        _emit(args, _render_invert(case, r, r.diagnostics, msg), _invert_record(case, r, r.diagnostics, msg))
        return EXIT_NOT_IN_IMAGE
    _emit(args, _render_invert(case, result, result.diagnostics, None),
          _invert_record(case, result, result.diagnostics, None))
    return EXIT_OK


def cmd_roundtrip(args) -> int:
    summary = campaigns.roundtrip_campaign(Case(args.case), args.samples, args.seed)
    _emit(args, summary.render(), summary.as_record())
    return EXIT_OK if summary.ok else EXIT_IDENTITY


def _formula_reports():
    return [verify_published_formulas(c) for c in (Case.CUBIC, Case.QUARTIC)]


def cmd_verify_tables(args) -> int:
    reports = _formula_reports()
    text = "; ".join(r.summary() for r in reports)
    if args.verbose:
        text += "\n" + "\n".join(r.render() for r in reports)
    _emit(args, text, {"reports": [r.as_record() for r in reports]})
    return EXIT_OK if all(r.ok for r in reports) else EXIT_IDENTITY


def cmd_delta_report(args) -> int:
    report = delta_discrepancy_report()
    probes = campaigns.delta_probe_campaign(args.probes, args.seed)
    record = report.as_record()
    record["probes"] = {"total": probes.probes, "agree": probes.agree, "degenerate": probes.degenerate}
    _emit(args, report.render() + "\n" + probes.render(), record)
    # the verdict itself is informational
    return EXIT_OK if probes.ok else EXIT_IDENTITY


def cmd_h_report(args) -> int:
    report = verify_h_nonzero()
    _emit(args, report.render(), report.as_record())
    return EXIT_OK if report.nonzero else EXIT_IDENTITY


def cmd_equivariance(args) -> int:
    results = campaigns.equivariance_campaign(args.samples, args.seed)
    _emit(args, "\n".join(s.render() for s in results), {"results": [s.as_record() for s in results]})
    return EXIT_OK if all(s.ok for s in results) else EXIT_IDENTITY


def cmd_verify_all(args) -> int:
    reports = _formula_reports()
    h = verify_h_nonzero()
    delta = delta_discrepancy_report()
    probes = campaigns.delta_probe_campaign(args.probes, args.seed)
    equiv = campaigns.equivariance_campaign(args.samples, args.seed)
    ok = all(r.ok for r in reports) and h.nonzero and probes.ok and all(s.ok for s in equiv)
    lines = ["; ".join(r.summary() for r in reports)]
    lines.append(f"H nonzero: {'yes' if h.nonzero else 'NO'} (witness {h.witness})")
    lines.append(f"delta display: {delta.verdict} (informational)")
    lines.append(probes.render())
    lines.extend(s.render() for s in equiv)
    lines.append("ALL IDENTITIES HOLD" if ok else "IDENTITY FAILURE")
    _emit(args, "\n".join(lines), {
        "formulas": [r.as_record() for r in reports],
        "h_nonzero": h.nonzero,
        "delta_verdict": delta.verdict,
        "probes_agree": probes.ok,
        "equivariance": [s.as_record() for s in equiv],
        "ok": ok,
    })
    return EXIT_OK if ok else EXIT_IDENTITY


# -- argument parsing --------------------------------------------------------

def _positive_int(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if n < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return n


def build_parser() -> argparse.ArgumentParser:
    json_default = os.environ.get("HESSINV_OUTPUT", "").lower() == "json"
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=json_default, help="structured JSON output")

    parser = argparse.ArgumentParser(prog="hessinv", description="Hessian maps of quartic curves and cubic surfaces")
    sub = parser.add_subparsers(dest="command", required=True)
    cases = [c.value for c in Case]

    p = sub.add_parser("hess", parents=[common], help="Hessian polynomial of a form")
    p.add_argument("form", nargs="?")
    p.add_argument("--file")
    p.add_argument("--vars", default="x,y,z", help="comma-separated ring variables (default x,y,z)")
    p.set_defaults(func=cmd_hess)

    p = sub.add_parser("forward", parents=[common], help="Hessian coefficient table of a family member")
    p.add_argument("--case", choices=cases, required=True)
    p.add_argument("--params", default="", help="e.g. a1=1,a2=-3/2")
    p.set_defaults(func=cmd_forward)

    p = sub.add_parser("invert", parents=[common], help="recover family parameters from a Hessian")
    p.add_argument("--case", choices=cases, required=True)
    p.add_argument("--table", help="coefficient file")
    p.add_argument("--form", help="family form whose Hessian is inverted")
    p.add_argument("--params", help="family parameters whose Hessian is inverted")
    p.set_defaults(func=cmd_invert)

    p = sub.add_parser("roundtrip", parents=[common], help="seeded forward/inverse campaign")
    p.add_argument("--case", choices=cases, required=True)
    p.add_argument("--samples", type=_positive_int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_roundtrip)

    p = sub.add_parser("verify-tables", parents=[common], help="check printed coefficient formulas")
    p.add_argument("-v", "--verbose", action="store_true")
    p.set_defaults(func=cmd_verify_tables)

    p = sub.add_parser("delta-report", parents=[common], help="system determinant vs displayed product")
    p.add_argument("--probes", type=_positive_int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_delta_report)

    p = sub.add_parser("h-report", parents=[common], help="show H is not identically zero")
    p.set_defaults(func=cmd_h_report)

    p = sub.add_parser("equivariance", parents=[common], help="seeded equivariance campaign")
    p.add_argument("--samples", type=_positive_int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_equivariance)

    p = sub.add_parser("verify-all", parents=[common], help="every identity check in one run")
    p.add_argument("--samples", type=_positive_int, default=20)
    p.add_argument("--probes", type=_positive_int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify_all)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        # FormSyntaxError, UnknownVariable, NotHomogeneous and InputError are ValueErrors
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
