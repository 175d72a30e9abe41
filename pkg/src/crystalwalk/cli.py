"""Command-line interface.

Subcommands: density, closed-form, floquet-check, simulate, classical,
compare. Output is deterministic: identical invocations produce identical
bytes. Exit status is 0 on success, 2 for argument or input errors, 1 when a
numeric tolerance or invariant fails.
"""

from __future__ import annotations

import argparse
import math
import sys
from typing import Sequence

from . import classical as classical_mod
from . import closed_forms, dynamics, floquet, serialize, spectral
from .graphs import (
    FAMILIES,
    EdgeListError,
    FiniteGraph,
    ParameterError,
    ProductKind,
    build_named,
    from_edge_list,
    honeycomb_spec,
)
from .spectral import NumericalError

_PRODUCTS = {
    "cartesian": ProductKind.CARTESIAN,
    "tensor": ProductKind.TENSOR,
    "strong": ProductKind.STRONG,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="crystalwalk",
        description="Limiting distributions of time-averaged quantum walks on periodic graphs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_family(p: argparse.ArgumentParser, families: Sequence[str] = FAMILIES) -> None:
        p.add_argument("--family", choices=list(families), help="named graph family")
        p.add_argument("--nu", type=int, help="vertex count (cycle, path, complete) or leaf count (star)")
        p.add_argument("--m", type=int, help="hypercube dimension, or first part of complete_bipartite")
        p.add_argument("--n", type=int, help="second part of complete_bipartite")

    def add_output(p: argparse.ArgumentParser) -> None:
        p.add_argument("-o", "--output", metavar="FILE", help="write to FILE instead of stdout")

    p = sub.add_parser("density", help="numeric limiting density of a finite graph")
    add_family(p)
    p.add_argument("--edge-list", metavar="FILE", help="read the graph from an edge-list file")
    p.add_argument("--periodic", choices=["honeycomb"], help="grid quadrature for a built-in periodic graph")
    p.add_argument("--N", type=int, default=64, help="grid points per axis for --periodic (default 64)")
    p.add_argument("--tol", type=float, default=spectral.DEFAULT_CLUSTER_TOL,
                   help="eigenvalue clustering tolerance (default 1e-8)")
    p.add_argument("--csv", action="store_true", help="emit a p,q,d table instead of JSON")
    add_output(p)

    p = sub.add_parser("closed-form", help="closed-form density table for a solvable family")
    add_family(p, closed_forms.CLOSED_FORM_FAMILIES)
    add_output(p)

    p = sub.add_parser("floquet-check", help="band collision scan of a lattice product")
    add_family(p)
    p.add_argument("--product", choices=sorted(_PRODUCTS), default="cartesian",
                   help="product rule (default cartesian)")
    p.add_argument("--base", choices=["zd", "triangular"], default="zd",
                   help="one-vertex periodic base (default zd)")
    p.add_argument("--d", type=int, default=1, help="base dimension for zd (default 1)")
    p.add_argument("--N", type=int, default=64, help="grid points per axis (default 64)")
    p.add_argument("--delta", type=float, default=floquet.DEFAULT_COLLISION_DELTA,
                   help="collision width (default 1e-9)")
    p.add_argument("--tol", type=float, default=spectral.DEFAULT_CLUSTER_TOL,
                   help="eigenvalue clustering tolerance (default 1e-8)")
    add_output(p)

    p = sub.add_parser("simulate", help="time-averaged walk on a torus product")
    add_family(p)
    p.add_argument("--edge-list", metavar="FILE", help="read the finite factor from an edge-list file")
    p.add_argument("--d", type=int, default=1, help="torus dimension (default 1)")
    p.add_argument("--N", type=int, default=64, help="cells per axis (default 64)")
    p.add_argument("--T", default="1e4", help="averaging horizon, a float or 'inf' (default 1e4)")
    p.add_argument("--start-cell", type=int, nargs="*", default=None,
                   help="start cell coordinates (default origin)")
    p.add_argument("--start-p", type=int, default=0, help="start vertex in the cell (default 0)")
    p.add_argument("--tol", type=float, default=spectral.DEFAULT_CLUSTER_TOL,
                   help="eigenvalue clustering tolerance (default 1e-8)")
    add_output(p)

    p = sub.add_parser("classical", help="classical random-walk report")
    add_family(p)
    p.add_argument("--edge-list", metavar="FILE", help="read the graph from an edge-list file")
    p.add_argument("--start", type=int, help="start vertex for iteration")
    p.add_argument("--steps", type=int, help="number of steps to iterate")
    p.add_argument("--lazy", action="store_true", help="use the lazy walk (I + P)/2")
    add_output(p)

    p = sub.add_parser("compare", help="quantum limiting row vs classical stationary law")
    add_family(p)
    p.add_argument("--edge-list", metavar="FILE", help="read the graph from an edge-list file")
    p.add_argument("--start-p", type=int, default=0, help="quantum start vertex (default 0)")
    p.add_argument("--tol", type=float, default=spectral.DEFAULT_CLUSTER_TOL,
                   help="eigenvalue clustering tolerance (default 1e-8)")
    add_output(p)

    return parser


def _family_params(args: argparse.Namespace) -> tuple[str, list[int]]:
    family = args.family
    if family is None:
        raise ParameterError("a --family is required here")
    if family in ("cycle", "path", "star", "complete"):
        if args.nu is None:
            raise ParameterError(f"family {family!r} requires --nu")
        return family, [args.nu]
    if family == "hypercube":
        if args.m is None:
            raise ParameterError("family 'hypercube' requires --m")
        return family, [args.m]
    if family == "complete_bipartite":
        if args.m is None or args.n is None:
            raise ParameterError("family 'complete_bipartite' requires --m and --n")
        return family, [args.m, args.n]
    return family, []


def _resolve_graph(args: argparse.Namespace) -> FiniteGraph:
    if getattr(args, "edge_list", None) is not None:
        if args.family is not None:
            raise ParameterError("give either --family or --edge-list, not both")
        try:
            with open(args.edge_list, encoding="utf-8") as fh:
                return from_edge_list(fh.read())
        except OSError as exc:
            raise ParameterError(f"cannot read edge list: {exc}") from exc
    return build_named(*_family_params(args))


def _emit(text: str, output: str | None, summary: str | None = None) -> None:
    # With -o the summary goes to stdout; otherwise it must not pollute the
    # machine-readable stream, so it goes to stderr.
    if output is not None:
        with open(output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        if summary is not None:
            print(summary)
    else:
        sys.stdout.write(text)
        if summary is not None:
            print(summary, file=sys.stderr)


def _cmd_density(args: argparse.Namespace) -> int:
    if args.periodic is not None:
        if args.family is not None or args.edge_list is not None:
            raise ParameterError("--periodic excludes --family and --edge-list")
        grid = floquet.general_density(honeycomb_spec(), args.N, tol=args.tol)
        density = grid.to_density_matrix()
        labels = tuple(str(q) for q in range(density.nu))
    else:
        graph = _resolve_graph(args)
        density = spectral.limiting_density(graph, tol=args.tol)
        labels = graph.vertex_labels()
    text = serialize.density_csv(density.values, labels) if args.csv else serialize.density_json(density)
    _emit(text, args.output)
    return 0


def _cmd_closed_form(args: argparse.Namespace) -> int:
    family, params = _family_params(args)
    density = closed_forms.closed_form_density(family, params)
    labels = closed_forms.closed_form_labels(family, params)
    _emit(serialize.density_csv(density.values, labels), args.output)
    return 0


def _cmd_floquet_check(args: argparse.Namespace) -> int:
    base = floquet.BaseLattice.triangular() if args.base == "triangular" else floquet.BaseLattice.zd(args.d)
    graph = build_named(*_family_params(args))
    bands = floquet.product_spec(base, graph, _PRODUCTS[args.product], tol=args.tol)
    report = floquet.floquet_condition_fraction(bands, args.N, delta=args.delta)
    _emit(serialize.scan_report_json(report), args.output)
    return 0


def _cmd_simulate(args: argparse.Namespace) -> int:
    graph = _resolve_graph(args)
    op = dynamics.build_torus(graph, args.d, args.N, tol=args.tol)
    cell = tuple(args.start_cell) if args.start_cell else (0,) * args.d
    start = (cell, args.start_p)
    horizon_text = str(args.T).strip().lower()
    if horizon_text == "inf":
        dist = dynamics.infinite_time_averaged(op, start, cluster_tol=args.tol)
    else:
        try:
            horizon = float(horizon_text)
        except ValueError as exc:
            raise ParameterError(f"invalid horizon {args.T!r}") from exc
        if not (math.isfinite(horizon) and horizon > 0):
            raise ParameterError("horizon must be positive and finite, or 'inf'")
        dist = dynamics.time_averaged(op, start, horizon)
    tv = dynamics.total_variation(dist.values, dynamics.limit_prediction(op, start))
    summary = f"tv_to_prediction = {serialize.format_float(tv, serialize.TABLE_DIGITS)}"
    _emit(serialize.distribution_csv(dist), args.output, summary=summary)
    return 0


def _cmd_classical(args: argparse.Namespace) -> int:
    graph = _resolve_graph(args)
    if (args.start is None) != (args.steps is None):
        raise ParameterError("--start and --steps must be given together")
    report = classical_mod.walk_report(graph, start=args.start, steps=args.steps, lazy=args.lazy)
    _emit(serialize.walk_report_json(report), args.output)
    return 0


def _cmd_compare(args: argparse.Namespace) -> int:
    graph = _resolve_graph(args)
    if not 0 <= args.start_p < graph.nu:
        raise ParameterError(f"start vertex {args.start_p} out of range 0..{graph.nu - 1}")
    density = spectral.limiting_density(graph, tol=args.tol)
    stationary = classical_mod.stationary_distribution(graph)
    text = serialize.comparison_csv(graph.vertex_labels(), density.values[args.start_p], stationary)
    _emit(text, args.output)
    return 0


_COMMANDS = {
    "density": _cmd_density,
    "closed-form": _cmd_closed_form,
    "floquet-check": _cmd_floquet_check,
    "simulate": _cmd_simulate,
    "classical": _cmd_classical,
    "compare": _cmd_compare,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _COMMANDS[args.command](args)
    except (ParameterError, EdgeListError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (NumericalError, ValueError) as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
