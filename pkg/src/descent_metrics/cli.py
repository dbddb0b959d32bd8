"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 comparison budget exceeded,
3 a closed form disagreed with the exhaustive scan.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from typing import Optional, Sequence

from .classes import ClassSpec, enumerate_class, write_class
from .errors import BudgetExceeded, DescentMetricsError, OpenProblem
from .extremal import NOT_COVERED, hamming_witness, linf_witness_via_complement
from .perm import MetricKind, all_descent_sets
from .solver import (
    CSV_COLUMNS,
    DEFAULT_BUDGET,
    brute_max,
    budget_from_env,
    class_report,
    explore_linf,
    verify_sweep,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_BUDGET = 2
EXIT_DISAGREE = 3

ELIDE_DEFAULT = 24

log = logging.getLogger("descent_metrics")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _spec(args, *, proper: bool = False) -> ClassSpec:
    if args.s is None:
        raise UsageError("-s/--descents is required for this command")
    spec = ClassSpec.parse(args.n, args.s)
    if proper and not spec.s.is_proper_nonempty:
        raise UsageError(f"S must be nonempty and proper in [1, {args.n - 1}] for this command")
    return spec


def _budget(args) -> int:
    return args.budget if args.budget is not None else budget_from_env(DEFAULT_BUDGET)


def _write_csv(rows, out) -> None:
    writer = csv.DictWriter(out, fieldnames=list(CSV_COLUMNS), lineterminator="\n")
    writer.writeheader()
    for r in rows:
        writer.writerow(r)


def _dump_json(obj, out) -> None:
    json.dump(obj, out, indent=2, ensure_ascii=False)
    out.write("\n")


# ---------------------------------------------------------------------------


def cmd_enumerate(args, out) -> int:
    spec = _spec(args)
    write_class(spec, enumerate_class(spec), out)
    return EXIT_OK


def _set_label(s) -> str:
    return "∅" if s.is_empty else s.braces()


def render_table(n: int, *, elide: int = ELIDE_DEFAULT, budget: Optional[int] = None) -> str:
    """Descent sets of [n-1], their classes and max Hamming distance."""
    rows = []
    for s in all_descent_sets(n):
        spec = ClassSpec(n, s)
        members = [p.compact() for p in enumerate_class(spec)]
        shown = members if len(members) <= elide else members[:elide]
        text = "{" + ", ".join(shown)
        if len(shown) < len(members):
            text += f", ... (+{len(members) - len(shown)} more)"
        text += "}"
        if len(members) < 2:
            dist = "—"
        else:
            dist = str(brute_max(spec, MetricKind.HAMMING, budget=budget)[0])
        rows.append((_set_label(s), text, dist))
    head = ("S", f"D(S;{n})", "max d_H")
    widths = [max(len(r[c]) for r in [head, *rows]) for c in range(3)]
    lines = [f"# n={n}"]
    for r in [head, *rows]:
        lines.append(" | ".join(cell.ljust(w) for cell, w in zip(r, widths)).rstrip())
        if r is head:
            lines.append("-+-".join("-" * w for w in widths))
    return "\n".join(lines) + "\n"


def cmd_table(args, out) -> int:
    budget = _budget(args)
    if args.format == "text":
        out.write(render_table(args.n, elide=args.elide, budget=budget))
        return EXIT_OK
    reports = [class_report(ClassSpec(args.n, s), budget=budget) for s in all_descent_sets(args.n)]
    if args.format == "json":
        _dump_json([r.to_dict() for r in reports], out)
    else:
        _write_csv([r.csv_row() for r in reports], out)
    return EXIT_OK


def cmd_report(args, out) -> int:
    spec = _spec(args, proper=True)
    r = class_report(spec, budget=_budget(args))
    if args.format == "json":
        _dump_json(r.to_dict(), out)
    elif args.format == "csv":
        _write_csv([r.csv_row()], out)
    else:
        d = r.to_dict()
        for key in ("n", "S", "cardinality", "max_hamming", "predicted_hamming", "agree_hamming",
                    "max_linf", "predicted_linf", "agree_linf", "min_hamming", "min_linf"):
            out.write(f"{key}: {d[key]}\n")
        for name, w in (("witness_max_h", r.witness_max_h), ("witness_max_l", r.witness_max_l)):
            if w is not None:
                out.write(f"{name}: ({w.sigma}) ({w.rho})\n")
    if r.agree_hamming is False or r.agree_linf is False:
        return EXIT_DISAGREE
    return EXIT_OK


def cmd_verify(args, out) -> int:
    summary = verify_sweep(
        args.n_min, args.n_max, budget=_budget(args), threads=args.threads,
        progress=lambda msg: log.info(msg),
    )
    if args.format == "json":
        _dump_json(summary.to_dict(), out)
    else:
        out.write(summary.render() + "\n")
    if summary.disagreements:
        return EXIT_DISAGREE
    if summary.truncated:
        return EXIT_BUDGET
    return EXIT_OK


def cmd_explore(args, out) -> int:
    rows = explore_linf(args.n, budget=_budget(args), threads=args.threads)
    if args.format == "json":
        _dump_json([r.to_dict() for r in rows], out)
    elif args.format == "csv":
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["n", "S", "complement", "max_l", "covered_l", "pred_l"])
        for r in rows:
            writer.writerow([args.n, str(r.s), str(r.complement), r.max_linf,
                             str(r.covered).lower(), "" if r.predicted is None else r.predicted])
    else:
        out.write(f"# n={args.n} max l-inf per {{S, complement}} pair\n")
        for r in rows:
            mark = "covered" if r.covered else "open"
            out.write(f"{r.s.braces():<20} {r.complement.braces():<20} {r.max_linf:>3}  {mark}\n")
    return EXIT_OK


def cmd_witness(args, out) -> int:
    spec = _spec(args, proper=True)
    metric = MetricKind.parse(args.metric)
    if metric is MetricKind.HAMMING:
        pair = hamming_witness(spec)
    else:
        pair = linf_witness_via_complement(spec)
        if pair is NOT_COVERED:
            raise OpenProblem(
                f"no closed form for the max l-inf distance on {spec}: this family is an open "
                "problem; use `explore` for brute-force values"
            )
    if args.format == "json":
        _dump_json(pair.to_dict(), out)
    else:
        out.write("\n".join(pair.to_lines()) + "\n")
    return EXIT_OK


COMMANDS = {
    "enumerate": cmd_enumerate,
    "report": cmd_report,
    "table": cmd_table,
    "verify": cmd_verify,
    "explore": cmd_explore,
    "witness": cmd_witness,
}


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="descent-metrics",
        description="Hamming and l-infinity distances on permutations sharing a descent set.",
    )
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, *, needs_n=True, needs_s=False, formats=("text", "json", "csv")):
        if needs_n:
            p.add_argument("-n", type=int, required=True, help="permutation length")
        if needs_s:
            p.add_argument("-s", "--descents", dest="s", required=True,
                           help='comma-separated descent set, "" for the empty set')
        p.add_argument("--format", choices=formats, default="text")
        p.add_argument("--budget", type=int, default=None,
                       help=f"max pair comparisons (default {DEFAULT_BUDGET:.0e}, "
                            "or $DESCENT_METRICS_BUDGET)")
        p.add_argument("--threads", type=int, default=1)
        p.add_argument("-o", "--output", default=None, help="write to file instead of stdout")

    common(sub.add_parser("enumerate", help="list D(S;n)"), needs_s=True, formats=("text",))
    common(sub.add_parser("report", help="per-class report"), needs_s=True)
    p = sub.add_parser("table", help="all descent sets of [n-1] with max Hamming distance")
    common(p)
    p.add_argument("--elide", type=int, default=ELIDE_DEFAULT,
                   help="max members listed per row")
    p = sub.add_parser("verify", help="check the closed forms against exhaustive scans")
    common(p, needs_n=False, formats=("text", "json"))
    p.add_argument("--n-min", type=int, default=3)
    p.add_argument("--n-max", type=int, default=8)
    common(sub.add_parser("explore", help="brute max l-inf for every S (open problem data)"))
    p = sub.add_parser("witness", help="constructed pair attaining the max distance")
    common(p, needs_s=True, formats=("text", "json"))
    p.add_argument("--metric", required=True, choices=["hamming", "linf"])
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(message)s",
    )
    if getattr(args, "n", 1) is not None and getattr(args, "n", 1) < 1:
        parser.exit(EXIT_USAGE, "error: -n must be >= 1\n")

    buf = io.StringIO()
    try:
        code = COMMANDS[args.command](args, buf)
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (UsageError, DescentMetricsError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(buf.getvalue())
    else:
        sys.stdout.write(buf.getvalue())
    return code


if __name__ == "__main__":
    sys.exit(main())
