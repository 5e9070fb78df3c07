"""Command-line entry point: ``upsilontor compute|bound|plot-data|validate|export``.

Exit codes: 0 success, 1 unparseable input, 2 invalid complex or knot,
3 internal consistency failure.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from .bounds import BOUNDS
from .complex import ComplexError, validate
from .dsl import BuildError, KnotSyntaxError, build, parse, to_text
from .filtration import HomologyRankError, WindowError, reduce
from .io import (ComplexFileError, ResultDocument, bound_to_json, dump_complex, dumps, plot_csv,
                 read_complex)
from .upsilon import ord_u, ord_v, scan, upsilon_tor_at

EXIT_PARSE, EXIT_INVALID, EXIT_INTERNAL = 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage; 2 is reserved for invalid knots here.
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_PARSE, f"{self.prog}: error: {message}\n")


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _emit(text: str, output):
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _knot(text: str):
    expr = parse(text)
    return to_text(expr), build(expr)


def cmd_compute(args) -> int:
    name, c = _knot(args.expr)
    s = scan(c)
    doc = ResultDocument(
        expression=name,
        upsilon_tor=s.total,
        ord_v=ord_v(c, s.total),
        ord_u=ord_u(c),
        even=s.even,
        odd=s.odd,
        windows=list(s.windows),
    )
    if args.at is not None:
        value = upsilon_tor_at(c, args.at)
        if value != s.total(args.at):
            raise AssertionError(f"pointwise value {value} at t={args.at} disagrees "
                                 f"with the piecewise function ({s.total(args.at)})")
        doc.at = (args.at, value)
    if args.format == "table":
        text = doc.to_table()
    else:
        text = dumps(doc.to_json())
    _emit(text, args.output)
    return 0


def cmd_bound(args) -> int:
    src, c0 = _knot(args.source)
    dst, c1 = _knot(args.target)
    report = BOUNDS[args.kind](c0, c1)
    if args.format == "table":
        lines = [f"{args.kind} bound {src} -> {dst}: {report.value}",
                 f"supremum {report.supremum} at t = {report.witness_t}"]
        for name, form in report.forms.items():
            lines.append(f"  {name}: sup {form.supremum} at t = {form.witness_t}, "
                         f"bound {form.value}")
        text = "\n".join(lines) + "\n"
    else:
        text = dumps(bound_to_json(report, src, dst))
    _emit(text, args.output)
    return 0


def cmd_plot_data(args) -> int:
    if args.samples < 2:
        raise UsageError("--samples must be at least 2")
    _, c = _knot(args.expr)
    _emit(plot_csv(scan(c).total, args.samples, args.quotient, args.precision), args.output)
    return 0


def cmd_export(args) -> int:
    name, c = _knot(args.expr)
    if not c.label:
        c = c.relabel(label=name)
    _emit(dump_complex(c), args.output)
    return 0


def cmd_validate(args) -> int:
    try:
        c = read_complex(args.path)
    except (OSError, ComplexFileError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    report = validate(c)
    if report.ok:
        try:
            reduce(c, 1, representatives=False)
        except HomologyRankError as exc:
            report.add("homology-rank", str(exc))
    doc = {"path": args.path, "valid": report.ok,
           "violations": [{"rule": r, "detail": d} for r, d in report.violations]}
    sys.stdout.write(dumps(doc))
    for rule, detail in report.violations:
        print(f"{rule}: {detail}", file=sys.stderr)
    return 0 if report.ok else EXIT_INVALID


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="upsilontor", description="Upsilon torsion functions of knot complexes.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("compute", help="torsion function, parity parts and orders")
    c.add_argument("expr")
    c.add_argument("--at", type=_rational, metavar="m/n")
    c.add_argument("--format", choices=("json", "table"), default="json")
    c.add_argument("--output", "-o")
    c.set_defaults(run=cmd_compute)

    b = sub.add_parser("bound", help="cobordism lower bound between two knots")
    b.add_argument("--from", dest="source", required=True)
    b.add_argument("--to", dest="target", required=True)
    b.add_argument("--kind", choices=sorted(BOUNDS), required=True)
    b.add_argument("--format", choices=("json", "table"), default="json")
    b.add_argument("--output", "-o")
    b.set_defaults(run=cmd_bound)

    d = sub.add_parser("plot-data", help="CSV samples of the torsion function")
    d.add_argument("expr")
    d.add_argument("--samples", type=int, default=201)
    d.add_argument("--quotient", action="store_true", help="emit f(t)/t instead of f(t)")
    d.add_argument("--precision", type=int, default=12)
    d.add_argument("--output", "-o")
    d.set_defaults(run=cmd_plot_data)

    v = sub.add_parser("validate", help="check a complex file")
    v.add_argument("path")
    v.set_defaults(run=cmd_validate)

    e = sub.add_parser("export", help="write the complex of a knot expression as JSON")
    e.add_argument("expr")
    e.add_argument("--output", "-o")
    e.set_defaults(run=cmd_export)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.run(args)
    except (KnotSyntaxError, UsageError) as exc:
        code, msg = EXIT_PARSE, str(exc)
    except (BuildError, ComplexError) as exc:
        code, msg = EXIT_INVALID, str(exc)
    except ValueError as exc:  # e.g. t outside [0, 2]
        code, msg = EXIT_INVALID, str(exc)
    except (AssertionError, WindowError) as exc:
        code, msg = EXIT_INTERNAL, f"internal error: {exc}"
    print(f"error: {msg}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
