"""The `kindforge` command line interface.

Exit codes: 0 success, 1 inference failure, 2 parse failure, 3 internal
invariant breach.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .driver import (
    CATEGORIES,
    VERDICTS,
    InferenceResult,
    infer_file,
    run_corpus,
)
from .errors import (
    CyclicAbbreviation,
    DuplicateName,
    InternalError,
    KindforgeError,
    ParseError,
    UnknownTypeName,
)
from .syntax import pretty_constraint, pretty_kind, pretty_mult

_PARSE_ERRORS = (ParseError, DuplicateName, UnknownTypeName, CyclicAbbreviation)

EXIT_OK = 0
EXIT_INFERENCE = 1
EXIT_PARSE = 2
EXIT_INTERNAL = 3


def _exit_code(err: KindforgeError) -> int:
    if isinstance(err, _PARSE_ERRORS):
        return EXIT_PARSE
    if isinstance(err, InternalError):
        return EXIT_INTERNAL
    return EXIT_INFERENCE


def _solution_json(result: InferenceResult) -> dict:
    return {
        "kindVars": {
            f"k{i}": pretty_kind(k) for i, k in sorted(result.solution.kind_vars.items())
        },
        "multVars": {
            f"m{i}": pretty_mult(m) for i, m in sorted(result.solution.mult_vars.items())
        },
    }


def _annotations_json(result: InferenceResult) -> list:
    return [
        {
            "span": str(a.span),
            "category": a.category,
            "written": pretty_kind(a.written) if a.written is not None else None,
            "inferred": pretty_kind(a.inferred),
            "verdict": a.verdict,
        }
        for a in result.annotations
    ]


def _cmd_infer(args) -> int:
    try:
        result = infer_file(args.file, optimize=not args.no_optimize, explain=args.explain)
    except KindforgeError as err:
        print(f"{args.file}: {err}", file=sys.stderr)
        return _exit_code(err)
    if args.explain:
        for line in result.traces:
            print(line, file=sys.stderr)
    if args.json:
        payload = {
            "file": str(args.file),
            "solution": _solution_json(result),
            "annotations": _annotations_json(result),
        }
        print(json.dumps(payload, indent=2))
    else:
        print(f"{args.file}: ok")
        for i, k in sorted(result.solution.kind_vars.items()):
            print(f"  'k{i} = {pretty_kind(k)}")
        for i, m in sorted(result.solution.mult_vars.items()):
            print(f"  'm{i} = {pretty_mult(m)}")
        for a in result.annotations:
            written = pretty_kind(a.written) if a.written is not None else "-"
            print(
                f"  {a.span} {a.category}: written {written},"
                f" inferred {pretty_kind(a.inferred)} [{a.verdict}]"
            )
    if args.emit_annotated:
        Path(args.emit_annotated).write_text(result.emit(), encoding="utf-8")
    return EXIT_OK


def _cmd_corpus(args) -> int:
    directory = Path(args.dir)
    if not directory.is_dir():
        print(f"{directory}: not a directory", file=sys.stderr)
        return EXIT_PARSE
    summary, reports = run_corpus(directory)
    if args.report_dir:
        from .report import write_report

        created = write_report(summary, reports, args.report_dir)
        print(f"report written to {args.report_dir}: {', '.join(created)}", file=sys.stderr)
    if args.json:
        payload = {
            "files": [
                {"file": r.path, "ok": r.ok, "error": r.error} for r in reports
            ],
            "summary": {
                "total": summary.total,
                "filesOk": summary.files_ok,
                "filesFailed": summary.files_failed,
                "byCategory": {
                    cat: {v: summary.counts.get((cat, v), 0) for v in VERDICTS}
                    for cat in CATEGORIES
                },
            },
        }
        print(json.dumps(payload, indent=2))
    else:
        for r in reports:
            status = "ok" if r.ok else f"FAILED: {r.error}"
            print(f"{r.path}: {status}")
        print()
        header = f"{'category':<20}" + "".join(f"{v:>16}" for v in VERDICTS) + f"{'total':>8}"
        print(header)
        for cat in CATEGORIES:
            row = [summary.counts.get((cat, v), 0) for v in VERDICTS]
            print(f"{cat:<20}" + "".join(f"{n:>16}" for n in row) + f"{sum(row):>8}")
        print(
            f"{'total':<20}"
            + "".join(f"{summary.verdict_total(v):>16}" for v in VERDICTS)
            + f"{summary.total:>8}"
        )
    return EXIT_OK if summary.files_failed == 0 else EXIT_INFERENCE


def _cmd_dump(args) -> int:
    try:
        result = infer_file(args.file)
    except KindforgeError as err:
        print(f"{args.file}: {err}", file=sys.stderr)
        return _exit_code(err)
    for name, constraints in result.dumps:
        print(f"-- {name}")
        for c in constraints:
            line = pretty_constraint(c)
            if args.explain:
                line += f" -- {c.origin}"
            print(line)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kindforge",
        description="Kind and multiplicity inference for a calculus with context-free session types.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_infer = sub.add_parser("infer", help="infer kinds for one program")
    p_infer.add_argument("file")
    p_infer.add_argument("--emit-annotated", metavar="PATH", help="write the fully annotated program")
    p_infer.add_argument("--json", action="store_true", help="machine-readable output")
    p_infer.add_argument("--explain", action="store_true", help="print solver updates to stderr")
    p_infer.add_argument("--no-optimize", action="store_true", help="disable constraint removal")
    p_infer.set_defaults(func=_cmd_infer)

    p_corpus = sub.add_parser("corpus", help="infer every .fstk file in a directory")
    p_corpus.add_argument("dir")
    p_corpus.add_argument("--json", action="store_true", help="machine-readable output")
    p_corpus.add_argument(
        "--report-dir", metavar="DIR", help="write summary.csv, annotations.csv and a chart"
    )
    p_corpus.set_defaults(func=_cmd_corpus)

    p_dump = sub.add_parser("dump-constraints", help="print the generated constraints")
    p_dump.add_argument("file")
    p_dump.add_argument("--explain", action="store_true", help="append rule and position provenance")
    p_dump.set_defaults(func=_cmd_dump)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except KindforgeError as err:  # internal invariant breaches included
        print(str(err), file=sys.stderr)
        return _exit_code(err)


if __name__ == "__main__":
    raise SystemExit(main())
