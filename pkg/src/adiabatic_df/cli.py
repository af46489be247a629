"""Command line entry point.

Exit codes: 0 computed (whatever the verdict), 1 input error,
2 closed-form crosscheck mismatch when a crosscheck was requested.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import problem
from .errors import AdiabaticError, SchemaError

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_MISMATCH = 2


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="adiabatic-df",
        description="Adiabatic Donaldson-Futaki expansions for subbundle degenerations of P(E).",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in [
        ("df", "full expansion and stability verdict"),
        ("chi", "Riemann-Roch for sub (x) quot^* only"),
        ("slope", "slopes only"),
        ("crosscheck", "compare engine brackets with closed forms"),
    ]:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--input", required=True, type=Path, help="problem document (JSON)")
        p.add_argument("--output", type=Path, default=None, help="report path (default: stdout)")
        if name == "df":
            p.add_argument("--max-order", type=int, default=None, help="highest coefficient index used for the verdict")
            p.add_argument("--crosscheck", action="store_true", help="also run the closed-form crosscheck")
    return parser


def _emit(report, output: Path | None):
    text = json.dumps(report, indent=2) + "\n"
    if output is None:
        sys.stdout.write(text)
    else:
        output.write_text(text, encoding="utf-8")


def _fail(kind: str, violations):
    json.dump({"error": kind, "violations": [{"path": p, "message": m} for p, m in violations]}, sys.stderr, indent=2)
    sys.stderr.write("\n")
    return EXIT_INPUT


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        spec = problem.parse(args.input.read_text(encoding="utf-8"))
    except OSError as exc:
        return _fail("io", [(str(args.input), str(exc))])
    except SchemaError as exc:
        return _fail(type(exc).__name__, exc.violations)

    try:
        if args.command == "df":
            if args.max_order is not None and args.max_order < 0:
                return _fail("usage", [("--max-order", "must be non-negative")])
            want_cc = True if args.crosscheck else None
            report = problem.run(spec, max_order=args.max_order, with_crosscheck=want_cc)
            status = EXIT_OK
            if (want_cc or spec.options.crosscheck) and not problem.crosscheck_ok(report):
                status = EXIT_MISMATCH
        elif args.command == "chi":
            report = {
                "base": problem.base_report(spec),
                "subbundles": [
                    {"name": name, **problem.chi_entry(spec, inp)} for name, inp in problem.build_inputs(spec)
                ],
            }
            status = EXIT_OK
        elif args.command == "slope":
            report = {
                "base": problem.base_report(spec),
                "subbundles": [{"name": name, **problem.slope_entry(inp)} for name, inp in problem.build_inputs(spec)],
            }
            status = EXIT_OK
        else:
            entries = [{"name": name, **problem.crosscheck_entry(inp)} for name, inp in problem.build_inputs(spec)]
            report = {"subbundles": entries, "ok": all(e["ok"] for e in entries)}
            status = EXIT_OK if report["ok"] else EXIT_MISMATCH
    except AdiabaticError as exc:
        return _fail(type(exc).__name__, [("<input>", str(exc))])

    _emit(report, args.output)
    return status


if __name__ == "__main__":
    sys.exit(main())
