"""Command-line interface: analyze, scan, gen, verify.

Exit codes: 0 clean, 1 at least one violation or failed audit, 2 usage or
input parse error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional

from .graphs import (
    GraphFormatError,
    NotCubicError,
    flower_snark,
    to_mgf,
)
from .report import (
    ALL_OPS,
    AnalyzeOptions,
    ReportAuditError,
    analyze,
    audit_report,
    parse_entry,
    read_corpus,
    report_lines,
    scan,
)


def _add_analysis_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("file", help="input graph file")
    parser.add_argument("--format", choices=("mgf", "graph6"), default="mgf",
                        help="input encoding (default: mgf)")
    parser.add_argument("--ops", default=None,
                        help="comma-separated operation list "
                             f"(subset of {','.join(ALL_OPS)}); replaces "
                             "the default set")
    parser.add_argument("--mu-upto", type=int, default=4, metavar="K",
                        help="compute mu_1..mu_K (default: 4)")
    parser.add_argument("--scc", action="store_true",
                        help="also run the exact shortest-cover search")
    parser.add_argument("--scc-dim-cap", type=int, default=10,
                        metavar="D", help="cycle space dimension cap for "
                                          "--scc (default: 10)")
    parser.add_argument("--fulkerson", action="store_true",
                        help="also search for a Fulkerson coloring")
    parser.add_argument("--budget-ms", type=int, default=None, metavar="N",
                        help="per-graph wall-clock budget; overruns are "
                             "recorded per field")
    parser.add_argument("--pm-cap", type=int, default=1_000_000, metavar="N",
                        help="abort matching enumeration beyond N matchings")
    parser.add_argument("--workers", type=int, default=1, metavar="N",
                        help="process pool size for scan (default: 1)")
    parser.add_argument("--timings", action="store_true",
                        help="include per-field timings (non-deterministic "
                             "output)")
    parser.add_argument("--out", default=None, help="write JSONL here "
                                                    "instead of stdout")


def _options_from_args(args: argparse.Namespace) -> AnalyzeOptions:
    if args.ops is not None:
        ops = tuple(op.strip() for op in args.ops.split(",") if op.strip())
    else:
        ops = AnalyzeOptions().ops
    options = AnalyzeOptions(
        ops=ops,
        mu_upto=args.mu_upto,
        pm_cap=args.pm_cap,
        budget_ms=args.budget_ms,
        scc_dim_cap=args.scc_dim_cap,
        timings=args.timings,
    )
    extra = []
    if args.scc:
        extra.append("scc")
    if args.fulkerson:
        extra.append("fulkerson")
    return options.with_ops(*extra) if extra else options


def _emit(lines, out_path: Optional[str]) -> None:
    if out_path is None:
        for line in lines:
            print(line)
    else:
        with open(out_path, "w") as fh:
            for line in lines:
                fh.write(line + "\n")


def _cmd_analyze(args: argparse.Namespace) -> int:
    options = _options_from_args(args)
    try:
        entries = read_corpus(args.file, args.format)
        if not entries:
            raise GraphFormatError("no graph found in input")
        G = parse_entry(entries[0][1], args.format)
    except (OSError, GraphFormatError, NotCubicError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    report = analyze(G, options, id=entries[0][0])
    _emit(report_lines(iter([report.to_dict()])), args.out)
    return 1 if report.violations else 0


def _cmd_scan(args: argparse.Namespace) -> int:
    options = _options_from_args(args)
    try:
        reports = scan(args.file, options, fmt=args.format,
                       workers=args.workers)
        collected: List[dict] = list(reports)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    _emit(report_lines(iter(collected)), args.out)
    summary = collected[-1]["summary"]
    return 1 if summary["violations"] else 0


def _cmd_gen(args: argparse.Namespace) -> int:
    if args.kind != "flower":
        print(f"error: unknown generator {args.kind!r}", file=sys.stderr)
        return 2
    if args.t < 5 or args.t % 2 == 0:
        print("error: flower snark parameter must be odd and >= 5",
              file=sys.stderr)
        return 2
    G = flower_snark(args.t)
    text = f"# flower_snark_J{args.t}\n" + to_mgf(G)
    if args.out is None:
        print(text, end="")
    else:
        with open(args.out, "w") as fh:
            fh.write(text)
    return 0


def _cmd_verify(args: argparse.Namespace) -> int:
    try:
        entries = dict(read_corpus(args.corpus, args.format))
        with open(args.report) as fh:
            lines = [json.loads(line) for line in fh if line.strip()]
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    failures = 0
    audited = 0
    for data in lines:
        if "summary" in data or ("error" in data and "n" not in data):
            continue
        name = data.get("id")
        if name not in entries:
            print(f"fail {name}: not present in corpus", file=sys.stderr)
            failures += 1
            continue
        try:
            G = parse_entry(entries[name], args.format)
            audit_report(G, data, pm_cap=args.pm_cap)
        except (GraphFormatError, NotCubicError, ReportAuditError) as exc:
            print(f"fail {name}: {exc}", file=sys.stderr)
            failures += 1
            continue
        audited += 1
    print(f"verified {audited} reports, {failures} failures")
    return 1 if failures else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="factorcover",
        description="1-factor covers, cores, and cycle covers of cubic "
                    "graphs: per-graph analysis and corpus scanning.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_analyze = sub.add_parser("analyze", help="report on a single graph")
    _add_analysis_flags(p_analyze)
    p_analyze.set_defaults(func=_cmd_analyze)

    p_scan = sub.add_parser("scan", help="report on every graph in a corpus")
    _add_analysis_flags(p_scan)
    p_scan.set_defaults(func=_cmd_scan)

    p_gen = sub.add_parser("gen", help="emit a generated graph as MGF")
    p_gen.add_argument("kind", choices=("flower",))
    p_gen.add_argument("t", type=int)
    p_gen.add_argument("--out", default=None)
    p_gen.set_defaults(func=_cmd_gen)

    p_verify = sub.add_parser("verify",
                              help="re-audit report witnesses against a "
                                   "corpus")
    p_verify.add_argument("report", help="JSONL report file from scan")
    p_verify.add_argument("corpus", help="corpus the report was built from")
    p_verify.add_argument("--format", choices=("mgf", "graph6"),
                          default="mgf")
    p_verify.add_argument("--pm-cap", type=int, default=1_000_000)
    p_verify.set_defaults(func=_cmd_verify)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
