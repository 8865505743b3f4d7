"""Command-line surface: rewriting, graph export, property checks, forest
translation, sequence enumeration, oracle counts, and cross-checks.

Exit codes: 0 success, 1 property failure or comparison mismatch, 2 usage
or input error.  Machine-readable output goes to standard output only.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Optional

from . import bridge, oracle, rewrite, sequences
from .forests import render_forest
from .posets import (
    DEFAULT_BUDGET,
    ExploredPoset,
    IncompleteExplorationError,
    poset_analysis,
)
from .terms import Term, TermError, parse_term, render_term


def _default_budget() -> int:
    raw = os.environ.get("MOCKINGBIRD_BUDGET")
    if raw is None:
        return DEFAULT_BUDGET
    try:
        value = int(raw)
    except ValueError:
        raise TermError(f"MOCKINGBIRD_BUDGET must be an integer, got {raw!r}")
    if value < 1:
        raise TermError("MOCKINGBIRD_BUDGET must be >= 1")
    return value


def export_graph(g: ExploredPoset, format: str = "json",
                 hasse_only: bool = False, label=None) -> str:
    """Serialize an explored poset as DOT or JSON; hasse_only drops
    self-loops and transitive edges (requires prior analysis)."""
    if not g.is_complete:
        raise IncompleteExplorationError("cannot export an incomplete graph")
    if label is None:
        label = str
    if hasse_only:
        if g.hasse_edges is None:
            raise IncompleteExplorationError("hasse export requires analysis")
        edges = sorted(g.hasse_edges)
    else:
        edges = sorted(g.step_edges)
    if format == "json":
        payload = g.to_json_dict(label)
        if hasse_only:
            payload["step_edges"] = []
            payload["hasse_edges"] = [list(e) for e in edges]
        else:
            payload["step_edges"] = [list(e) for e in payload["step_edges"]]
            if payload["hasse_edges"] is not None:
                payload["hasse_edges"] = [
                    list(e) for e in payload["hasse_edges"]]
        return json.dumps(payload, indent=2, sort_keys=True)
    if format == "dot":
        lines = ["digraph explored {"]
        for i, node in enumerate(g.nodes):
            lines.append(f'  n{i} [label="{label(node)}"];')
        for i, j in edges:
            lines.append(f"  n{i} -> n{j};")
        lines.append("}")
        return "\n".join(lines)
    raise TermError(f"unknown format {format!r}")


def _parse_with_system(args) -> tuple[rewrite.CLSystem, Term]:
    sys_text = args.system
    if not sys_text.startswith("builtin:") and os.path.exists(sys_text):
        with open(sys_text) as handle:
            sys_text = handle.read()
    system = rewrite.load_system(sys_text)
    term = parse_term(args.term, system.alphabet)
    return system, term


def _cmd_reduce(args) -> int:
    system, term = _parse_with_system(args)
    print(render_term(term))
    for _ in range(args.max_steps):
        successors = sorted(
            rewrite.step_successors(system, term) - {term},
            key=lambda t: render_term(t, "full"))
        if not successors:
            break
        term = successors[0]
        print(render_term(term))
    else:
        print("... step limit reached", file=sys.stderr)
    return 0


def _cmd_graph(args) -> int:
    system, term = _parse_with_system(args)
    g = rewrite.explore_component(system, term, "up", budget=args.budget)
    if g.is_complete:
        poset_analysis(g, check_lattice=len(g.nodes) <= 2000)
    elif args.hasse:
        print("error: budget exhausted, no Hasse diagram", file=sys.stderr)
        return 2
    print(export_graph(g, format=args.format, hasse_only=args.hasse,
                       label=render_term))
    return 0


def _cmd_check(args) -> int:
    system, term = _parse_with_system(args)
    g = rewrite.explore_component(system, term, "up", budget=args.budget)
    rows: list[tuple[str, str]] = []
    failed = False
    rows.append(("complete", str(g.is_complete)))
    if g.is_complete:
        poset_analysis(g, check_lattice=len(g.nodes) <= 2000)
        rows.append(("nodes", str(len(g.nodes))))
        rows.append(("acyclic", str(g.is_acyclic)))
        rows.append(("rooted (unique minimal)", str(len(g.minimal) == 1)))
        rows.append(("unique maximal", str(len(g.maximal) == 1)))
        lattice = "skipped (too large)" if g.is_lattice is None else str(g.is_lattice)
        rows.append(("lattice", lattice))
    else:
        failed = True
    for name, flag in sorted(rewrite.is_hierarchical(system).items()):
        rows.append((f"hierarchical[{name}]", str(flag)))
    probe = rewrite.local_confluence_probe(system, term,
                                           join_budget=args.join_budget)
    rows.append(("confluence pairs", str(probe.pairs_checked)))
    rows.append(("confluence joinable", str(probe.all_joinable)))
    if probe.failures or probe.inconclusive:
        failed = True
    width = max(len(name) for name, _ in rows)
    for name, value in rows:
        print(f"{name:<{width}}  {value}")
    return 1 if failed else 0


def _cmd_fr(args) -> int:
    term = parse_term(args.term, {"M"})
    print(render_forest(bridge.fr_map(term)))
    return 0


def _cmd_enumerate(args) -> int:
    if args.method == "recurrence":
        table = sequences.seq_by_recurrence(args.name, args.count,
                                            indexing=args.indexing)
    elif args.method == "series":
        table = sequences.seq_by_series(args.name, args.count,
                                        indexing=args.indexing)
    else:
        table = sequences.seq_by_oracle(args.name, args.count,
                                        indexing=args.indexing)
    if args.json:
        print(json.dumps(table.to_json_dict(), indent=2, sort_keys=True))
    else:
        print("[" + ",".join(str(v) for v in table.values) + "]")
    return 0


def _cmd_oracle(args) -> int:
    counts = oracle.oracle_poset_counts(args.d, with_intervals=args.intervals)
    payload = {
        "d": counts.d,
        "elements": str(counts.elements),
        "hasse_edges": str(counts.hasse_edges),
        "intervals": None if counts.intervals is None else str(counts.intervals),
        "cover_equals_step": counts.cover_equals_step,
    }
    print(json.dumps(payload, indent=2, sort_keys=True))
    return 0


def _cmd_crosscheck(args) -> int:
    report = sequences.crosscheck_all(max_d=args.max_d, gated=args.gated)
    if args.json:
        print(json.dumps(report.to_json_dict(), indent=2, sort_keys=True))
    else:
        for label, ok, detail in report.verdicts:
            status = "ok" if ok else "FAIL"
            suffix = f"  {detail}" if detail else ""
            print(f"{status:<4}  {label}{suffix}")
    return 0 if report.ok else 1


def _cmd_compare(args) -> int:
    bfile = sequences.load_bfile(args.bfile)
    count = min(len(bfile.values), args.count)
    if args.method == "series":
        table = sequences.seq_by_series(args.name, count,
                                        indexing=args.indexing)
    else:
        table = sequences.seq_by_recurrence(args.name, count,
                                            indexing=args.indexing)
    report = sequences.compare(bfile, table)
    if report.ok:
        note = f" ({report.warning})" if report.warning else ""
        print(f"match over {report.overlap} terms{note}")
        return 0
    print(f"mismatch at index {report.first_mismatch}: "
          f"b-file {bfile.values[report.first_mismatch]} vs "
          f"computed {table.values[report.first_mismatch]}")
    return 1


def _build_parser(budget: int) -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mockingbird",
        description="Combinatory-logic rewriting and lattice enumeration")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_system_args(p):
        p.add_argument("term")
        p.add_argument("--system", default="builtin:M",
                       help="builtin:NAME or a system file path")
        p.add_argument("--budget", type=int, default=budget)

    p = sub.add_parser("reduce", help="print a rewrite chain to a normal form")
    add_system_args(p)
    p.add_argument("--max-steps", type=int, default=1000)
    p.set_defaults(func=_cmd_reduce)

    p = sub.add_parser("graph", help="explore and export a component")
    add_system_args(p)
    p.add_argument("--format", choices=("dot", "json"), default="json")
    p.add_argument("--hasse", action="store_true",
                   help="export covering edges only (drops self-loops)")
    p.set_defaults(func=_cmd_graph)

    p = sub.add_parser("check", help="poset/lattice/confluence verdict table")
    add_system_args(p)
    p.add_argument("--join-budget", type=int, default=100_000)
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("fr", help="forest translation of a Mockingbird term")
    p.add_argument("term")
    p.set_defaults(func=_cmd_fr)

    p = sub.add_parser("enumerate", help="print a counting sequence")
    p.add_argument("name", choices=sequences.SEQUENCE_NAMES)
    p.add_argument("--method", choices=("recurrence", "series", "oracle"),
                   default="recurrence")
    p.add_argument("--count", type=int, default=8)
    p.add_argument("--indexing", choices=("mockingbird", "ladder"),
                   default="mockingbird")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_enumerate)

    p = sub.add_parser("oracle", help="explicit ladder-upset counts")
    p.add_argument("d", type=int)
    p.add_argument("--no-intervals", dest="intervals", action="store_false")
    p.set_defaults(func=_cmd_oracle)

    p = sub.add_parser("crosscheck", help="all-methods consistency check")
    p.add_argument("--max-d", type=int, default=12)
    p.add_argument("--gated", action="store_true",
                   help="include the streaming depth-5 oracle (minutes)")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_crosscheck)

    p = sub.add_parser("compare", help="b-file vs computed sequence")
    p.add_argument("bfile")
    p.add_argument("name", choices=sequences.SEQUENCE_NAMES)
    p.add_argument("--method", choices=("recurrence", "series"),
                   default="recurrence")
    p.add_argument("--count", type=int, default=64)
    p.add_argument("--indexing", choices=("mockingbird", "ladder"),
                   default="mockingbird")
    p.set_defaults(func=_cmd_compare)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    try:
        parser = _build_parser(_default_budget())
        args = parser.parse_args(argv)
        return args.func(args)
    except (TermError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
