"""Command-line entry point.

Exit codes: 0 success, 2 invalid input or domain error, 3 infeasible plan.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass
from pathlib import Path

from graphcheck.errors import (
    DomainError,
    GraphCheckError,
    InsufficientVertices,
    ParseError,
    SpecInvalid,
    SupportTooLarge,
)
from graphcheck.graph import Graph, RhgSpec, build_rhg, export_graph, load_graph
from graphcheck.noise import flip_counts
from graphcheck.protocol import TestPlan, compute_params, required_n_test, select_test_vertices, verify_params
from graphcheck.simulate import default_p_grid, format_csv, run_sweep

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_INFEASIBLE = 3

DEFAULT_DELTA = 1 / 3
DEFAULT_P_TH = 1.4e-2
DEFAULT_DEGREE = 4
DEFAULT_CELLS = (3, 3, 3)


class UsageError(GraphCheckError):
    """Invalid command-line or config-file input."""


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"{self.prog}: error: {message}\n")


def _write(text: str, output: str | None) -> None:
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


def _graph_from_args(cells, boundary: str, graph_path: str | None) -> Graph:
    if graph_path:
        try:
            return load_graph(Path(graph_path).read_bytes())
        except OSError as exc:
            raise UsageError(f"cannot read graph file: {exc}") from exc
    return build_rhg(RhgSpec(tuple(cells), boundary))


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_params(args) -> int:
    params = compute_params(args.delta, args.p_th, args.degree)
    report = verify_params(params)
    if args.json:
        _write(json.dumps({**params.as_dict(), "checks": report.as_dict()}, indent=2) + "\n", None)
        return EXIT_OK
    lines = [
        f"delta            {params.delta:.6g}",
        f"p_th             {params.p_th:.6g}",
        f"degree           {params.D}",
        f"N_test           {params.N_test}",
        f"p_goal           {params.p_goal:.6g}",
        f"measured_qubits  {params.measured_qubits}",
        f"reject check     {'pass' if report.reject_ok else 'FAIL'}  slack {report.reject_slack:+.6g}",
        f"accept check     {'pass' if report.accept_ok else 'FAIL'}  slack {report.accept_slack:+.6g}",
        f"linear bound     {'pass' if report.linear_accept_ok else 'fail'}  slack {report.linear_accept_slack:+.6g}",
    ]
    _write("\n".join(lines) + "\n", None)
    return EXIT_OK


def cmd_counts(args) -> int:
    stats = flip_counts(args.degree)
    rows = ["weight,commuting,anticommuting"]
    rows += [f"{w},{c},{a}" for w, c, a in stats.rows()]
    _write("\n".join(rows) + "\n", args.output)
    return EXIT_OK


def cmd_lattice(args) -> int:
    g = build_rhg(RhgSpec(tuple(args.cells), args.boundary))
    data = export_graph(g, args.format)
    if args.output:
        Path(args.output).write_bytes(data)
    else:
        sys.stdout.write(data.decode())
    return EXIT_OK


def _resolve_n_test(n_test, delta, p_th, degree) -> int:
    if n_test is not None:
        if n_test < 1:
            raise UsageError(f"--n-test must be positive, got {n_test}")
        return n_test
    return required_n_test(delta, p_th, degree)


def cmd_plan(args) -> int:
    n_test = _resolve_n_test(args.n_test, args.delta, args.p_th, args.degree)
    g = _graph_from_args(args.cells, args.boundary, args.graph)
    plan = select_test_vertices(g, args.degree, n_test)
    _write(plan.to_json() + "\n", args.output)
    return EXIT_OK


@dataclass
class SweepConfig:
    degree: int = DEFAULT_DEGREE
    delta: float = DEFAULT_DELTA
    p_th: float = DEFAULT_P_TH
    n_test: int | None = None
    p_values: list[float] | None = None
    trials: int = 10_000
    seed: int = 0
    cells: tuple[int, int, int] = DEFAULT_CELLS
    boundary: str = "periodic"
    graph: str | None = None
    output: str | None = None
    _fields = (
        "degree", "delta", "p_th", "n_test", "p_values", "trials",
        "seed", "cells", "boundary", "graph", "output",
    )

    @classmethod
    def from_sources(cls, config_path: str | None, overrides: dict) -> SweepConfig:
        values: dict = {}
        if config_path:
            try:
                doc = json.loads(Path(config_path).read_text())
            except (OSError, json.JSONDecodeError) as exc:
                raise UsageError(f"cannot load config {config_path}: {exc}") from exc
            if not isinstance(doc, dict):
                raise UsageError("config file must hold a JSON object")
            unknown = set(doc) - set(cls._fields)
            if unknown:
                raise UsageError(f"unknown config keys {sorted(unknown)}")
            values.update(doc)
        values.update({k: v for k, v in overrides.items() if v is not None})
        if "cells" in values:
            values["cells"] = tuple(values["cells"])
        config = cls(**values)
        config.validate()
        return config

    def validate(self) -> None:
        if not isinstance(self.trials, int) or self.trials < 1:
            raise UsageError(f"trials must be a positive integer, got {self.trials!r}")
        if self.p_values is not None:
            if not self.p_values:
                raise UsageError("p_values must not be empty")
            bad = [p for p in self.p_values if not (isinstance(p, (int, float)) and 0.0 <= p <= 1.0)]
            if bad:
                raise UsageError(f"p values outside [0, 1]: {bad}")
        if not isinstance(self.seed, int) or not 0 <= self.seed < 2**64:
            raise UsageError(f"seed must be a 64-bit unsigned integer, got {self.seed!r}")
        if self.n_test is not None and self.n_test < 1:
            raise UsageError(f"n_test must be positive, got {self.n_test}")


def cmd_simulate(args) -> int:
    overrides = {
        "degree": args.degree,
        "delta": args.delta,
        "p_th": args.p_th,
        "n_test": args.n_test,
        "p_values": args.p,
        "trials": args.trials,
        "seed": args.seed,
        "cells": args.cells,
        "boundary": args.boundary,
        "graph": args.graph,
        "output": args.output,
    }
    config = SweepConfig.from_sources(args.config, overrides)
    p_values = config.p_values
    if config.n_test is None or p_values is None:
        params = compute_params(config.delta, config.p_th, config.degree)
        n_test = config.n_test or params.N_test
        if p_values is None:
            p_values = default_p_grid(params.p_goal, params.p_th)
    else:
        n_test = config.n_test
    g = _graph_from_args(config.cells, config.boundary, config.graph)
    plan = select_test_vertices(g, config.degree, n_test)
    rows = run_sweep(plan, p_values, config.trials, config.seed)
    _write(format_csv(rows), config.output)
    return EXIT_OK


def cmd_oracle_check(args) -> int:
    from graphcheck.oracle import cross_validate, restrict_to_stabilizer, star_graph

    cases = []
    star = star_graph(4)
    cases.append(("star-4", star, 0))
    cell = build_rhg(RhgSpec((1, 1, 1), "open"))
    centre = next(v for v in range(cell.vertex_count) if cell.degree(v) == 4)
    sub, local = restrict_to_stabilizer(cell, centre)
    cases.append((f"rhg-cell-v{centre}", sub, local))
    failed = False
    for name, g, v in cases:
        plan = full_plan(g, v)
        for p in args.p:
            r = cross_validate(g, plan, p, args.trials, args.seed)
            status = "ok" if r.ok else "MISMATCH"
            failed |= not r.ok
            print(
                f"{name} p={p:g} trials={r.trials} parities={r.checked_parities} "
                f"mismatches={r.mismatches} mean={r.mean_parity:.4f} "
                f"predicted={r.predicted_mean:.4f} {status}"
            )
    return EXIT_INVALID if failed else EXIT_OK


def full_plan(g: Graph, first: int) -> TestPlan:
    """Plan over every vertex of a small graph, ``first`` listed first.

    Only meaningful for oracle checks: distance and degree constraints are
    not imposed.
    """
    order = [first] + [v for v in range(g.vertex_count) if v != first]
    return TestPlan(
        D=g.degree(first),
        test_vertices=tuple(order),
        z_measure=tuple(g.adjacency[v] for v in order),
    )


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def _probability(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if math.isnan(value):
        raise argparse.ArgumentTypeError("NaN is not a probability")
    return value


def _add_graph_source(p: argparse.ArgumentParser, default_cells) -> None:
    p.add_argument("--cells", type=int, nargs=3, metavar=("LX", "LY", "LZ"), default=default_cells)
    p.add_argument("--boundary", choices=("open", "periodic"), default=None if default_cells is None else "periodic")
    p.add_argument("--graph", help="JSON edge-list graph file (overrides --cells)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="graphcheck", description="One-shot stabilizer-parity testing of large graph states.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser, metavar="COMMAND")

    p = sub.add_parser("params", help="derive N_test and p_goal")
    p.add_argument("--delta", type=_probability, default=DEFAULT_DELTA)
    p.add_argument("--p-th", type=_probability, default=DEFAULT_P_TH)
    p.add_argument("--degree", type=int, default=DEFAULT_DEGREE)
    p.add_argument("--json", action="store_true", help="emit JSON instead of text")
    p.set_defaults(func=cmd_params)

    p = sub.add_parser("counts", help="commuting/anticommuting error counts per weight")
    p.add_argument("--degree", type=int, default=DEFAULT_DEGREE)
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_counts)

    p = sub.add_parser("lattice", help="generate an RHG lattice")
    p.add_argument("--cells", type=int, nargs=3, metavar=("LX", "LY", "LZ"), required=True)
    p.add_argument("--boundary", choices=("open", "periodic"), default="periodic")
    p.add_argument("--format", choices=("json", "dot"), default="json")
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_lattice)

    p = sub.add_parser("plan", help="select test vertices and emit the measurement plan")
    _add_graph_source(p, list(DEFAULT_CELLS))
    p.add_argument("--degree", type=int, default=DEFAULT_DEGREE)
    p.add_argument("--n-test", type=int, help="number of test vertices (default: derived from --delta/--p-th)")
    p.add_argument("--delta", type=_probability, default=DEFAULT_DELTA)
    p.add_argument("--p-th", type=_probability, default=DEFAULT_P_TH)
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_plan)

    p = sub.add_parser("simulate", help="Monte Carlo acceptance sweep")
    p.add_argument("--config", help="JSON config file; flags override its values")
    _add_graph_source(p, None)
    p.add_argument("--degree", type=int)
    p.add_argument("--delta", type=_probability)
    p.add_argument("--p-th", type=_probability)
    p.add_argument("--n-test", type=int)
    p.add_argument("--p", type=_probability, nargs="+", help="physical error rates (default: log grid)")
    p.add_argument("--trials", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("oracle-check")
    p.add_argument("--p", type=_probability, nargs="+", default=[0.05, 0.2])
    p.add_argument("--trials", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_oracle_check)
    # hide from the help listing
    sub._choices_actions = [a for a in sub._choices_actions if a.dest != "oracle-check"]

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InsufficientVertices as exc:
        print(f"graphcheck: infeasible plan: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except (DomainError, SpecInvalid, SupportTooLarge, ParseError, UsageError, ValueError) as exc:
        print(f"graphcheck: error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
