"""qsrg-verify command line: analyze, verify, sweep, compare.

Exit codes: 0 success, 1 assertion failure (verify), 2 bad input or
construction error.
"""

from __future__ import annotations

import argparse
import csv
import io as _io
import json
import logging
import sys

from . import cayley, harness, io
from .corpus import DEFAULT_VERIFY_ORDER, HARD_ORDER_BOUND, ORACLE_SEED, group_from_spec
from .errors import QsrgError

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qsrg-verify", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, default_format="text"):
        sp.add_argument("--format", choices=("json", "csv", "text"), default=default_format)
        sp.add_argument("--jobs", type=int, default=1, help="worker processes")

    a = sub.add_parser("analyze", help="report on one Gamma_H(G)")
    a.add_argument("--group", required=True, help="Z<n> | D<n> | S<n> | AxB | @table-file")
    a.add_argument("--subgroup", default="", help="comma-separated generator indices")
    a.add_argument("--export-adjacency", metavar="PATH", help="also write the adjacency matrix")
    common(a)

    v = sub.add_parser("verify", help="check every theorem on the built-in corpus")
    v.add_argument("--max-order", type=int, default=DEFAULT_VERIFY_ORDER)
    v.add_argument("--theorem", action="append", choices=harness.THEOREM_TAGS, default=[])
    v.add_argument("--group", action="append", default=[], help="restrict to these groups")
    v.add_argument("--seed", type=int, default=ORACLE_SEED, help="seed of the randomized oracle check")
    v.add_argument("--inject-fault", action="store_true", help="flip one adjacency bit (self-test)")
    common(v)

    s = sub.add_parser("sweep", help="tabulate every (G, H) up to an order bound")
    s.add_argument("--max-order", type=int, default=DEFAULT_VERIFY_ORDER)
    s.add_argument("--group", action="append", default=[], help="restrict to these groups")
    common(s, "csv")

    c = sub.add_parser("compare", help="isospectrality and invariant certificates for two pairs")
    c.add_argument("first", help="GROUP[:g1,g2,...]")
    c.add_argument("second", help="GROUP[:g1,g2,...]")
    common(c)
    return p


def _emit(text: str) -> None:
    sys.stdout.write(text)
    if not text.endswith("\n"):
        sys.stdout.write("\n")
    sys.stdout.flush()


def _run(args) -> int:
    if args.command == "analyze":
        cfg = harness.RunConfig("analyze", args.group, args.subgroup, output_format=args.format)
        report = harness.analyze(cfg)
        if args.export_adjacency:
            group = group_from_spec(args.group)
            h = harness.groups.subgroup_generated(group, harness.parse_generators(args.subgroup))
            graph = cayley.gamma_graph(group, h)
            with open(args.export_adjacency, "w", encoding="utf-8") as fh:
                fh.write(io.export_adjacency(graph, group.name, list(h.elements)))
        if args.format == "json":
            _emit(json.dumps(report, indent=2, sort_keys=True))
        elif args.format == "csv":
            row = {k: report[k] for k in ("group", "n", "k", "ell", "normal", "kappa")}
            row["subgroup"] = "{" + ",".join(map(str, report["subgroup"]["elements"])) + "}"
            row["integral"] = report["integrality"]["is_integral"]
            row["spectrum"] = report["spectrum_text"]
            buf = _io.StringIO()
            w = csv.DictWriter(buf, fieldnames=list(row), lineterminator="\n")
            w.writeheader()
            w.writerow(row)
            _emit(buf.getvalue())
        else:
            _emit(harness.render_analyze_text(report))
        return EXIT_OK

    if args.command == "verify":
        cfg = harness.RunConfig(
            "verify",
            max_order=args.max_order,
            output_format=args.format,
            jobs=args.jobs,
            theorems=tuple(args.theorem),
            groups=tuple(args.group),
            seed=args.seed,
            inject_fault=args.inject_fault,
        )
        result = harness.verify(cfg)
        _emit(harness.render_verify(result, args.format))
        return EXIT_OK if result.ok else EXIT_FAIL

    if args.command == "sweep":
        cfg = harness.RunConfig(
            "sweep", max_order=args.max_order, output_format=args.format, jobs=args.jobs, groups=tuple(args.group)
        )
        _emit(harness.render_rows(harness.sweep(cfg), args.format))
        return EXIT_OK

    g1, h1 = harness.parse_pair(args.first)
    g2, h2 = harness.parse_pair(args.second)
    report = harness.compare_pairs(g1, h1, g2, h2)
    if args.format == "json":
        _emit(json.dumps(report, indent=2, sort_keys=True))
    elif args.format == "csv":
        buf = _io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["first", "second", "isospectral", "distinguishing_invariant"])
        w.writerow([args.first, args.second, report["isospectral"], report["distinguishing_invariant"] or ""])
        _emit(buf.getvalue())
    else:
        _emit(harness.render_compare_text(report))
    return EXIT_OK


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    if getattr(args, "max_order", 0) > HARD_ORDER_BOUND:
        print(f"error: --max-order is capped at {HARD_ORDER_BOUND}", file=sys.stderr)
        return EXIT_INPUT
    try:
        return _run(args)
    except (QsrgError, ValueError, OSError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
