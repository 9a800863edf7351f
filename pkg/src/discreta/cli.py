"""Command line front end.

    discreta components SPACE.json [--format csv] [--oracle]
    discreta jordan CIRCUIT.json [--margin N] [--svg OUT.svg] [--diagnostic]
    discreta edges SPACE.json [--edge-set MODE] [--oracle] [...]
    discreta distortion SPACE.json [--p P] [--restarts R] [--edge-set MODE]
    discreta validate CIRCUIT.json

Reports go to stdout as deterministic JSON.  Exit codes: 0 success, 2
malformed input, 3 mathematical precondition failure (for example a
circuit that is not simple, or a space whose components are all single
points).  DISCRETA_SEED overrides the descent seed (default 0).
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass

from .continuity import build_continuity_graph, normalize
from .distortion import distortion_bound, metric_edge_set
from .exceptions import DiscretaError, InputError
from .io import load_circuit, load_space, report_to_json
from .jordan import (
    GridCircuit,
    boundary_closure,
    flood_regions,
    jordan_decompose,
    render_svg,
    validate_circuit,
)
from . import oracles

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_MATH = 3

EDGE_SET_CHOICES = ("all-geodesics", "canonical")


@dataclass
class RunConfig:
    command: str
    input_path: str
    p: float = 2.0
    restarts: int = 20
    edge_set_mode: str = "all-geodesics"
    margin: int = 1
    emit_svg: str | None = None
    oracle: bool = False
    fmt: str = "json"
    diagnostic: bool = False
    max_geodesics: int = 10_000
    seed: int = 0


def _sorted_points(points):
    return sorted([list(p) for p in points])


def _run_components(config):
    space = load_space(config.input_path, fmt=config.fmt)
    if config.oracle:
        classes = oracles.brute_components(space)
        graph = None
    else:
        graph = build_continuity_graph(space)
        classes = graph.components
    entries = []
    for label, members in classes.items():
        entry = {"id": label, "points": list(members), "size": len(members)}
        if graph is not None:
            entry["step"] = graph.component_step[label]
        entries.append(entry)
    return {"count": len(entries), "components": entries, "oracle": config.oracle}


def _run_edges(config):
    space = load_space(config.input_path, fmt=config.fmt)
    graph = build_continuity_graph(space)
    entries = []
    for label, members in graph.components.items():
        if len(members) < 2:
            entries.append(
                {"component": label, "size_x": 1, "edges": [], "skipped": True}
            )
            continue
        sub = normalize(space.subspace(members))
        sub_graph = build_continuity_graph(sub)
        if config.oracle:
            pairs = sorted(oracles.brute_edge_set(sub_graph, label))
            edges = [[a, b, sub.distance(a, b)] for a, b in pairs]
        else:
            edge_set = metric_edge_set(
                sub_graph,
                label,
                mode=config.edge_set_mode,
                max_geodesics=config.max_geodesics,
            )
            edges = [
                [a, b, d] for (a, b), d in zip(edge_set.edges, edge_set.distances)
            ]
        entries.append(
            {
                "component": label,
                "size_x": len(members),
                "size_e": len(edges),
                "edges": edges,
            }
        )
    return {
        "edge_set_mode": config.edge_set_mode,
        "components": entries,
        "oracle": config.oracle,
    }


def _run_distortion(config):
    space = load_space(config.input_path, fmt=config.fmt)
    report = distortion_bound(
        space,
        p=config.p,
        restarts=config.restarts,
        edge_set_mode=config.edge_set_mode,
        max_geodesics=config.max_geodesics,
        seed=config.seed,
    )
    result = report.to_dict()
    if config.oracle:
        graph = build_continuity_graph(space)
        for entry in result["components"]:
            if entry.get("skipped"):
                continue
            members = graph.components[entry["component"]]
            sub = normalize(space.subspace(members))
            entry["oracle_big_d"] = oracles.brute_displacement(sub)
    return result


def _run_validate(config):
    points = load_circuit(config.input_path)
    verdict = validate_circuit(GridCircuit.from_points(points))
    return verdict.as_dict()


def _run_jordan(config):
    points = load_circuit(config.input_path)
    circuit = GridCircuit.from_points(points)
    if config.diagnostic:
        split = flood_regions(circuit, margin=config.margin)
        return {
            "diagnostic": True,
            "component_count": split.component_count,
            "finite_regions": [_sorted_points(r) for r in split.finite_regions],
            "exterior_window": _sorted_points(split.exterior_window),
        }
    decomposition = jordan_decompose(circuit, margin=config.margin)
    if config.emit_svg:
        with open(config.emit_svg, "w", encoding="utf-8") as handle:
            handle.write(render_svg(decomposition))
    return {
        "interior": _sorted_points(decomposition.interior),
        "exterior_window": _sorted_points(decomposition.exterior_window),
        "boundary_interior_closure": _sorted_points(
            boundary_closure(decomposition, "interior")
        ),
        "boundary_exterior_closure": _sorted_points(
            boundary_closure(decomposition, "exterior")
        ),
        "component_count": decomposition.component_count,
    }


_DISPATCH = {
    "components": _run_components,
    "edges": _run_edges,
    "distortion": _run_distortion,
    "validate": _run_validate,
    "jordan": _run_jordan,
}


def run(config, stdout=None, stderr=None):
    """Execute one command; returns the process exit code."""
    stdout = stdout if stdout is not None else sys.stdout
    stderr = stderr if stderr is not None else sys.stderr
    try:
        report = _DISPATCH[config.command](config)
    except InputError as exc:
        suffix = f" [witness: {exc.witness}]" if exc.witness is not None else ""
        print(f"discreta: input error: {exc}{suffix}", file=stderr)
        return EXIT_INPUT
    except DiscretaError as exc:
        suffix = f" [witness: {exc.witness}]" if exc.witness is not None else ""
        print(f"discreta: {type(exc).__name__}: {exc}{suffix}", file=stderr)
        return EXIT_MATH
    stdout.write(report_to_json(report))
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="discreta",
        description="Continuity components, grid Jordan decompositions and "
        "certified lp-distortion lower bounds.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_space_flags(p, oracle=True):
        p.add_argument("input", help="input file")
        p.add_argument(
            "--format", choices=("json", "csv"), default="json",
            help="input format (csv only for distance matrices)",
        )
        if oracle:
            p.add_argument(
                "--oracle", action="store_true",
                help="use the brute-force reference implementation",
            )

    p_comp = sub.add_parser("components", help="continuity components")
    add_space_flags(p_comp)

    p_edges = sub.add_parser("edges", help="metric edge set per component")
    add_space_flags(p_edges)
    p_edges.add_argument(
        "--edge-set", choices=EDGE_SET_CHOICES, default="all-geodesics"
    )
    p_edges.add_argument("--max-geodesics", type=int, default=10_000)

    p_dist = sub.add_parser("distortion", help="distortion lower bound")
    add_space_flags(p_dist)
    p_dist.add_argument("--p", type=float, default=2.0)
    p_dist.add_argument("--restarts", type=int, default=20)
    p_dist.add_argument(
        "--edge-set", choices=EDGE_SET_CHOICES, default="all-geodesics"
    )
    p_dist.add_argument("--max-geodesics", type=int, default=10_000)

    p_val = sub.add_parser("validate", help="grade a circuit")
    p_val.add_argument("input", help="circuit file")

    p_jordan = sub.add_parser("jordan", help="Jordan decomposition")
    p_jordan.add_argument("input", help="circuit file")
    p_jordan.add_argument("--margin", type=int, default=1)
    p_jordan.add_argument("--svg", default=None, help="write an SVG rendering")
    p_jordan.add_argument(
        "--diagnostic", action="store_true",
        help="skip simplicity checks and report raw region counts",
    )
    return parser


def config_from_args(args):
    seed = int(os.environ.get("DISCRETA_SEED", "0"))
    config = RunConfig(command=args.command, input_path=args.input, seed=seed)
    config.fmt = getattr(args, "format", "json")
    config.oracle = getattr(args, "oracle", False)
    config.edge_set_mode = getattr(args, "edge_set", "all-geodesics")
    config.max_geodesics = getattr(args, "max_geodesics", 10_000)
    config.p = getattr(args, "p", 2.0)
    config.restarts = getattr(args, "restarts", 20)
    config.margin = getattr(args, "margin", 1)
    config.emit_svg = getattr(args, "svg", None)
    config.diagnostic = getattr(args, "diagnostic", False)
    return config


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    config = config_from_args(args)
    if config.p < 1:
        parser.error("--p must be at least 1")
    if config.margin < 1:
        parser.error("--margin must be at least 1")
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
