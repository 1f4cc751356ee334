"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 data error, 3 audit failure.
"""
from __future__ import annotations

import argparse
import sys
import warnings

from . import __version__
from .analysis import (AUDIT_TOL, ReportOptions, audit, compute_edge_reports, emit, summarize,
                       transfer_bands, write_csv)
from .errors import CurvatureError, ParameterError
from .generators import ModelSpec, generate
from .graph import load_edge_list, write_edge_list
from .local_stats import AlphaProfile

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_AUDIT = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _open_out(path):
    return sys.stdout if path in (None, "-") else open(path, "w", encoding="utf-8", newline="")


def _load(args):
    with warnings.catch_warnings():
        warnings.simplefilter("always")
        with open(args.graph, encoding="utf-8") as fh:
            g = load_edge_list(fh, dedup=args.dedup)
    if g.labels is not None and args.verbose:
        print(f"# remapped {len(g.labels)} vertex ids to 0..{len(g.labels) - 1}", file=sys.stderr)
    return g


def _write_vertex_map(g, out_path) -> None:
    """Record original vertex ids next to the output when the loader remapped them."""
    if g.labels is None or all(int(x) == k for k, x in enumerate(g.labels)):
        return
    if out_path in (None, "-"):
        print("warning: vertex ids were remapped; write to a file to keep the mapping",
              file=sys.stderr)
        return
    with open(f"{out_path}.vertex_map.csv", "w", encoding="utf-8") as fh:
        fh.write("vertex,original_id\n")
        for k, x in enumerate(g.labels):
            fh.write(f"{k},{int(x)}\n")


def cmd_generate(args) -> int:
    spec = ModelSpec.parse(args.model, args.params or "")
    if args.torus_metric:
        if spec.model != "RGG":
            raise ParameterError("--torus-metric applies to RGG only")
        spec = ModelSpec(spec.model, {**spec.params, "torus": True})
    g = generate(spec, args.seed)
    header = [f"model: {spec.model}", f"params: {spec.describe()}", f"seed: {args.seed}"]
    with _open_out(args.out) as fh:
        write_edge_list(g, fh, header)
    return EXIT_OK


def cmd_curvature(args) -> int:
    g = _load(args)
    opts = ReportOptions(exact_or=args.exact_or, profile=AlphaProfile.parse(args.alpha))
    reports = compute_edge_reports(g, opts)
    _write_vertex_map(g, args.out)
    out = _open_out(args.out)
    try:
        emit(reports, None, "csv", out)
    finally:
        if out is not sys.stdout:
            out.close()
    return EXIT_OK


def cmd_transfer(args) -> int:
    g = _load(args)
    level = None if args.per_edge else args.level
    table = transfer_bands(g, args.direction, level, AlphaProfile.parse(args.alpha))
    _write_vertex_map(g, args.out)
    out = _open_out(args.out)
    try:
        write_csv(table, ("u", "v", "direction", "input_level", "lower", "upper"), out)
    finally:
        if out is not sys.stdout:
            out.close()
    return EXIT_OK


def cmd_summarize(args) -> int:
    g = _load(args)
    opts = ReportOptions(exact_or=args.exact_or, profile=AlphaProfile.parse(args.alpha))
    reports = compute_edge_reports(g, opts)
    out = _open_out(args.out)
    try:
        emit(reports, summarize(reports), "json", out)
    finally:
        if out is not sys.stdout:
            out.close()
    return EXIT_OK


def cmd_audit(args) -> int:
    g = _load(args)
    reports = compute_edge_reports(g, ReportOptions(exact_or=True, profile=AlphaProfile.parse(args.alpha)))
    counts = audit(reports)
    failed = False
    for name, bad in counts.items():
        print(f"{'PASS' if bad == 0 else 'FAIL'}  {name}  ({bad} violations > {AUDIT_TOL:g})")
        failed |= bad > 0
    return EXIT_AUDIT if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="curvature-transfer",
                description="Edge curvature (Balanced Forman, Ollivier-Ricci) and transfer bounds.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    gen = sub.add_parser("generate", help="write a synthetic graph as an edge list")
    gen.add_argument("--model", required=True,
                     help="ER, BA, WS, RGG, Regular, HRG, SBM, Cycle, Grid, Torus, DaryTree, Complete")
    gen.add_argument("--params", default="", help="k=v,... (SBM block sizes as block_sizes=400;400)")
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--torus-metric", action="store_true", help="RGG on the periodic unit square")
    gen.add_argument("--out", default="-")
    gen.set_defaults(func=cmd_generate)

    def graph_command(name, helptext, func):
        c = sub.add_parser(name, help=helptext)
        c.add_argument("--graph", required=True, help="edge-list file")
        c.add_argument("--dedup", action="store_true", help="drop duplicate edges with a warning")
        c.add_argument("--alpha", default="default", help="idleness: default or const:<x>")
        c.add_argument("--verbose", action="store_true")
        c.set_defaults(func=func)
        return c

    cur = graph_command("curvature", "per-edge curvature and bounds as CSV", cmd_curvature)
    cur.add_argument("--exact-or", action="store_true", help="also solve exact OR curvature")
    cur.add_argument("--out", default="-")

    tr = graph_command("transfer", "per-edge transfer bands as CSV", cmd_transfer)
    tr.add_argument("--direction", required=True, choices=("bf2or", "or2bf"))
    lv = tr.add_mutually_exclusive_group(required=True)
    lv.add_argument("--level", type=float, help="evaluate every edge at this input level")
    lv.add_argument("--per-edge", action="store_true", help="use each edge's own curvature")
    tr.add_argument("--out", default="-")

    sm = graph_command("summarize", "summary statistics as JSON", cmd_summarize)
    sm.add_argument("--exact-or", action="store_true")
    sm.add_argument("--out", default="-")

    graph_command("audit", "check every soundness inequality against exact OR", cmd_audit)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParameterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (CurvatureError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
