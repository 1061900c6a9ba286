"""Command-line surface: graph construction, route and clique enumeration,
lattice construction and checks, labels, quotients, and grid models.

Every subcommand reads JSON from a file or stdin and writes JSON, DOT, or
plain text to stdout, so commands pipe into each other.  Outputs are
deterministic: byte-identical across runs for identical inputs and flags.
Domain errors exit with code 1 and a single ``error: ...`` line on stderr;
usage errors exit with code 2.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Iterable, Sequence

from .cliques import enumerate_maximal_cliques, serialize_clique
from .constructors import from_preset
from .cross_tamari import (
    as_grid,
    cross_tamari_lattice,
    grid_graph,
    maximal_fillings,
    validate_grid,
)
from .graphs import FramedGraph, SchemaError, deserialize, serialize
from .labels import (
    edge_labels,
    irreducible_bijection,
    join_irreducibles,
    meet_irreducibles,
    core_label_order,
)
from .lattice import (
    FramingLattice,
    StructuralError,
    build_lattice,
    c_max,
    c_min,
    check_hh,
    check_lattice,
    check_polygons,
    check_semidistributive,
    check_triangle_free,
    count_linear_intervals,
    join,
    meet,
    serialize_lattice,
    serialize_path,
)
from .oracles import Poset, poset_isomorphic
from .quotients import fibers, m_move, move_diagram, quotient_lattice
from .routes import Path, enumerate_routes, make_path, path_vertices

_CHECKS = {
    "lattice": check_lattice,
    "semidistributive": check_semidistributive,
    "polygons": check_polygons,
    "hh": check_hh,
    "triangle-free": check_triangle_free,
}

_DEFAULT_MAX_ROUTES = 20_000
_DEFAULT_MAX_PATHS = 1_000_000
_DEFAULT_MAX_ELEMENTS = 100_000


# -- input and output helpers ---------------------------------------------------


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _load_json(path: str) -> Any:
    return json.loads(_read_text(path))


def _load_graph(args: argparse.Namespace) -> FramedGraph:
    if getattr(args, "preset", None):
        return from_preset(args.preset)
    return deserialize(_read_text(args.input))


def _load_grid(args: argparse.Namespace):
    doc = _load_json(args.input)
    if not isinstance(doc, dict) or "points" not in doc:
        raise SchemaError('grid document must be an object with a "points" field')
    points = doc["points"]
    if not isinstance(points, list) or not all(
        isinstance(p, list) and len(p) == 2 and all(isinstance(c, int) for c in p)
        for p in points
    ):
        raise SchemaError('field "points" must be a list of [x, y] integer pairs')
    return as_grid(tuple(p) for p in points)


def _emit(text: str) -> None:
    sys.stdout.write(text)
    if not text.endswith("\n"):
        sys.stdout.write("\n")


def _emit_json(doc: Any) -> None:
    _emit(json.dumps(doc, indent=2))


def _routes_for(args: argparse.Namespace, g: FramedGraph) -> list[Path]:
    return enumerate_routes(g, cap=args.max_routes)


def _lattice_for(args: argparse.Namespace, g: FramedGraph) -> FramingLattice:
    return build_lattice(g, _routes_for(args, g), max_elements=args.max_elements)


def _parse_route(g: FramedGraph, text: str) -> Path:
    try:
        edges = [int(tok) for tok in text.split(",") if tok.strip() != ""]
    except ValueError:
        raise ValueError(f"route {text!r} is not a comma-separated list of edge ids")
    bad = [e for e in edges if not 0 <= e < g.edge_count]
    if bad:
        raise ValueError(f"route {text!r} uses unknown edge ids {bad}")
    return make_path(g, edges)


# -- DOT rendering ----------------------------------------------------------------


def _chain_heights(size: int, covers: Iterable[tuple[int, int]]) -> list[int]:
    """Longest chain from the bottom to each element, via the cover DAG."""
    up: list[list[int]] = [[] for _ in range(size)]
    indegree = [0] * size
    for lo, hi in covers:
        up[lo].append(hi)
        indegree[hi] += 1
    order = [x for x in range(size) if indegree[x] == 0]
    heights = [0] * size
    for x in order:
        for y in up[x]:
            heights[y] = max(heights[y], heights[x] + 1)
            indegree[y] -= 1
            if indegree[y] == 0:
                order.append(y)
    return heights


def _poset_dot(
    size: int,
    covers: Sequence[tuple[int, int]],
    edge_label: dict[tuple[int, int], str] | None = None,
) -> str:
    """Hasse diagram in DOT, drawn bottom-up with one rank per chain height."""
    heights = _chain_heights(size, covers)
    lines = ["digraph lattice {", "  rankdir=BT;"]
    for i in range(size):
        lines.append(f'  n{i} [label="{i}"];')
    for h in range(max(heights, default=0) + 1):
        rank = [f"n{i};" for i in range(size) if heights[i] == h]
        if rank:
            lines.append("  { rank=same; " + " ".join(rank) + " }")
    for lo, hi in covers:
        if edge_label is not None:
            lines.append(f'  n{lo} -> n{hi} [label="{edge_label[(lo, hi)]}"];')
        else:
            lines.append(f"  n{lo} -> n{hi};")
    lines.append("}")
    return "\n".join(lines)


def _vertex_label(g: FramedGraph, p: Path) -> str:
    return "-".join(map(str, path_vertices(g, p)))


def _cover_labels(
    g: FramedGraph, lattice: FramingLattice, mode: str
) -> dict[tuple[int, int], str]:
    out: dict[tuple[int, int], str] = {}
    for lo, hi, step in lattice.covers:
        if mode == "path":
            out[(lo, hi)] = _vertex_label(g, step.locus)
        else:
            labels = edge_labels(g, step)
            ep = labels.cw_extended if mode == "cw-ext" else labels.ccw_extended
            out[(lo, hi)] = _vertex_label(g, ep.path)
    return out


# -- subcommands --------------------------------------------------------------


def cmd_build(args: argparse.Namespace) -> int:
    if not args.preset:
        raise ValueError("build requires --preset")
    _emit_json(serialize(from_preset(args.preset)))
    return 0


def cmd_validate(args: argparse.Namespace) -> int:
    try:
        _load_graph(args)
    except SchemaError as exc:
        _emit(str(exc))
        return 1
    _emit("ok")
    return 0


def cmd_routes(args: argparse.Namespace) -> int:
    g = _load_graph(args)
    _emit_json([sorted(r.edges) for r in _routes_for(args, g)])
    return 0


def cmd_cliques(args: argparse.Namespace) -> int:
    g = _load_graph(args)
    cliques = enumerate_maximal_cliques(g, _routes_for(args, g))
    _emit_json([serialize_clique(c) for c in cliques])
    return 0


def cmd_lattice(args: argparse.Namespace) -> int:
    g = _load_graph(args)
    lattice = _lattice_for(args, g)
    if args.format == "json":
        _emit_json(serialize_lattice(lattice))
    else:
        labels = None
        if args.labels is not None:
            labels = _cover_labels(g, lattice, args.labels)
        covers = [(lo, hi) for lo, hi, _ in lattice.covers]
        _emit(_poset_dot(lattice.size, covers, labels))
    return 0


def cmd_check(args: argparse.Namespace) -> int:
    g = _load_graph(args)
    names = [n.strip() for n in args.props.split(",") if n.strip()]
    unknown = [n for n in names if n not in _CHECKS]
    if unknown:
        raise ValueError(f"unknown properties: {', '.join(unknown)}")
    lattice = _lattice_for(args, g)
    failed = False
    for name in names:
        report = _CHECKS[name](lattice)
        if report.passed:
            _emit(f"{name}: pass")
        else:
            failed = True
            _emit(f"{name}: fail ({len(report.violations)} violations)")
    return 1 if failed else 0


def _bound_command(args: argparse.Namespace, which: str) -> int:
    g = _load_graph(args)
    routes = _routes_for(args, g)
    cliques = enumerate_maximal_cliques(g, routes)
    for index in (args.left, args.right):
        if not 0 <= index < len(cliques):
            raise ValueError(
                f"clique index {index} out of range (graph has {len(cliques)})"
            )
    op = join if which == "join" else meet
    result = op(g, cliques[args.left], cliques[args.right], routes=routes)
    _emit_json(
        {
            "left": args.left,
            "right": args.right,
            "result": cliques.index(result),
            "clique": serialize_clique(result),
        }
    )
    return 0


def cmd_join(args: argparse.Namespace) -> int:
    return _bound_command(args, "join")


def cmd_meet(args: argparse.Namespace) -> int:
    return _bound_command(args, "meet")


def _extreme_command(args: argparse.Namespace, which: str) -> int:
    g = _load_graph(args)
    given = [_parse_route(g, text) for text in args.route]
    op = c_max if which == "cmax" else c_min
    _emit_json(serialize_clique(op(g, given)))
    return 0


def cmd_cmax(args: argparse.Namespace) -> int:
    return _extreme_command(args, "cmax")


def cmd_cmin(args: argparse.Namespace) -> int:
    return _extreme_command(args, "cmin")


def cmd_irreducibles(args: argparse.Namespace) -> int:
    g = _load_graph(args)
    lattice = _lattice_for(args, g)
    joins = join_irreducibles(g, lattice, cap=args.max_paths)
    meets = meet_irreducibles(g, lattice, cap=args.max_paths)
    pairing = irreducible_bijection(g, lattice)
    _emit_json(
        {
            "join": [
                {"element": x, "label": serialize_path(ep.path)} for ep, x in joins
            ],
            "meet": [
                {"element": x, "label": serialize_path(ep.path)} for ep, x in meets
            ],
            "pairing": [[j, m] for j, m in sorted(pairing.items())],
        }
    )
    return 0


def cmd_labels(args: argparse.Namespace) -> int:
    g = _load_graph(args)
    lattice = _lattice_for(args, g)
    out = []
    for lo, hi, step in lattice.covers:
        labels = edge_labels(g, step)
        out.append(
            {
                "lo": lo,
                "hi": hi,
                "path": serialize_path(labels.path),
                "cw_extended": serialize_path(labels.cw_extended.path),
                "ccw_extended": serialize_path(labels.ccw_extended.path),
            }
        )
    _emit_json(out)
    return 0


def cmd_core_label_order(args: argparse.Namespace) -> int:
    g = _load_graph(args)
    lattice = _lattice_for(args, g)
    order = core_label_order(g, lattice)
    covers = sorted(order.covers)
    if args.format == "json":
        _emit_json({"size": order.size, "covers": [list(c) for c in covers]})
    else:
        _emit(_poset_dot(order.size, covers))
    return 0


def cmd_intervals(args: argparse.Namespace) -> int:
    g = _load_graph(args)
    lattice = _lattice_for(args, g)
    counts = count_linear_intervals(lattice)
    _emit(" ".join(f"{k}:{counts[k]}" for k in sorted(counts)))
    return 0


def cmd_quotient(args: argparse.Namespace) -> int:
    g = _load_graph(args)
    if args.edge is not None:
        lattice = _lattice_for(args, g)
        target, _ = quotient_lattice(g, args.edge, lattice, args.max_elements)
        classes = fibers(g, args.edge, lattice, target)
        _emit_json(
            {
                "edge": args.edge,
                "graph": serialize(m_move(g, args.edge).graph),
                "lattice": {
                    "size": target.size,
                    "covers": [[lo, hi] for lo, hi, _ in target.covers],
                },
                "map": list(classes.class_of),
                "classes": [list(iv) for iv in classes.class_interval],
            }
        )
    else:
        diagram = move_diagram(g, max_elements=args.max_elements)
        out = []
        for subset in sorted(diagram, key=lambda s: (len(s), s)):
            lattice = diagram[subset]
            entry: dict[str, Any] = {"moves": list(subset), "size": lattice.size}
            if lattice.size <= args.threshold:
                entry["covers"] = [[lo, hi] for lo, hi, _ in lattice.covers]
            out.append(entry)
        _emit_json(out)
    return 0


def cmd_grid(args: argparse.Namespace) -> int:
    grid = _load_grid(args)
    if args.action == "check":
        problems = validate_grid(grid)
        if problems:
            for problem in problems:
                _emit(problem)
            return 1
        _emit("ok")
        return 0
    problems = validate_grid(grid)
    if problems:
        raise ValueError("; ".join(problems))
    if args.action == "fillings":
        fillings = maximal_fillings(grid, max_fillings=args.max_elements)
        _emit_json([[list(p) for p in f] for f in fillings])
    elif args.action == "lattice":
        order = cross_tamari_lattice(grid, max_fillings=args.max_elements)
        _emit_json(
            {
                "size": order.size,
                "covers": [list(c) for c in sorted(order.covers)],
                "elements": [[list(p) for p in f] for f in order.labels],
            }
        )
    else:  # to-graph
        _emit_json(serialize(grid_graph(grid)))
    return 0


def _poset_from_document(doc: Any, origin: str) -> Poset:
    if not isinstance(doc, dict):
        raise SchemaError(f"{origin}: document must be a JSON object")
    if "elements" in doc:
        size = len(doc["elements"])
    elif isinstance(doc.get("size"), int):
        size = doc["size"]
    else:
        raise SchemaError(f'{origin}: need an "elements" list or a "size" field')
    raw = doc.get("covers")
    if not isinstance(raw, list):
        raise SchemaError(f'{origin}: field "covers" must be a list')
    covers = []
    for item in raw:
        if isinstance(item, dict) and "lo" in item and "hi" in item:
            covers.append((item["lo"], item["hi"]))
        elif isinstance(item, list) and len(item) >= 2:
            covers.append((item[0], item[1]))
        else:
            raise SchemaError(f"{origin}: covers must be [lo, hi] pairs or objects")
    try:
        return Poset(size, covers)
    except ValueError as exc:
        raise SchemaError(f"{origin}: {exc}") from exc


def cmd_iso(args: argparse.Namespace) -> int:
    p = _poset_from_document(_load_json(args.first), args.first)
    q = _poset_from_document(_load_json(args.second), args.second)
    mapping = poset_isomorphic(p, q)
    if mapping is None:
        _emit("not isomorphic")
        return 1
    _emit("isomorphic")
    return 0


# -- argument parsing -----------------------------------------------------------


def _graph_parent() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument(
        "--preset",
        help="named graph such as oruga:3, caracol:6:dyck, cambrian:+-+-",
    )
    parent.add_argument(
        "--input",
        default="-",
        help="graph JSON file, or - for stdin (default)",
    )
    _cap_arguments(parent)
    return parent


def _cap_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--max-routes",
        type=int,
        default=_DEFAULT_MAX_ROUTES,
        help="abort if the graph has more routes than this",
    )
    parser.add_argument(
        "--max-paths",
        type=int,
        default=_DEFAULT_MAX_PATHS,
        help="abort if a path enumeration exceeds this",
    )
    parser.add_argument(
        "--max-elements",
        type=int,
        default=_DEFAULT_MAX_ELEMENTS,
        help="abort if a lattice would exceed this many elements",
    )
    parser.add_argument(
        "--threads",
        type=int,
        default=None,
        help="bound on worker parallelism; outputs never depend on it",
    )


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="framing-lattices",
        description="Framing lattices of flow graphs and their grid models.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    graph = _graph_parent()

    p = sub.add_parser("build", parents=[graph], help="emit a preset graph as JSON")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("validate", parents=[graph], help="validate a graph document")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("routes", parents=[graph], help="list all routes")
    p.set_defaults(func=cmd_routes)

    p = sub.add_parser("cliques", parents=[graph], help="list all maximal cliques")
    p.set_defaults(func=cmd_cliques)

    p = sub.add_parser("lattice", parents=[graph], help="emit the framing lattice")
    p.add_argument("--format", choices=("json", "dot"), default="json")
    p.add_argument(
        "--labels",
        choices=("path", "cw-ext", "ccw-ext"),
        help="attach cover labels to DOT edges",
    )
    p.set_defaults(func=cmd_lattice)

    p = sub.add_parser("check", parents=[graph], help="run lattice property checks")
    p.add_argument(
        "--props",
        default=",".join(_CHECKS),
        help="comma-separated subset of: " + ", ".join(_CHECKS),
    )
    p.set_defaults(func=cmd_check)

    for name, fn in (("join", cmd_join), ("meet", cmd_meet)):
        p = sub.add_parser(
            name, parents=[graph], help=f"{name} of two maximal cliques by index"
        )
        p.add_argument("left", type=int)
        p.add_argument("right", type=int)
        p.set_defaults(func=fn)

    for name, fn in (("cmax", cmd_cmax), ("cmin", cmd_cmin)):
        p = sub.add_parser(
            name,
            parents=[graph],
            help=f"the {name[1:]}imal clique coherent with the given routes",
        )
        p.add_argument(
            "--route",
            action="append",
            default=[],
            metavar="E0,E1,...",
            help="a route as comma-separated edge ids; repeatable",
        )
        p.set_defaults(func=fn)

    p = sub.add_parser(
        "irreducibles", parents=[graph], help="join and meet irreducibles with labels"
    )
    p.set_defaults(func=cmd_irreducibles)

    p = sub.add_parser("labels", parents=[graph], help="cover labels of the lattice")
    p.set_defaults(func=cmd_labels)

    p = sub.add_parser(
        "core-label-order", parents=[graph], help="core label order of the lattice"
    )
    p.add_argument("--format", choices=("json", "dot"), default="json")
    p.set_defaults(func=cmd_core_label_order)

    p = sub.add_parser(
        "intervals", parents=[graph], help="count intervals that are chains"
    )
    p.add_argument(
        "--linear",
        action="store_true",
        required=True,
        help="report k:count for intervals that are chains of k covers",
    )
    p.set_defaults(func=cmd_intervals)

    p = sub.add_parser(
        "quotient", parents=[graph], help="contraction-move quotient lattices"
    )
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--edge", type=int, help="apply the move at this inner edge")
    group.add_argument(
        "--all", action="store_true", help="all move subsets as a Boolean diagram"
    )
    p.add_argument(
        "--threshold",
        type=int,
        default=100,
        help="with --all, include covers only for lattices up to this size",
    )
    p.set_defaults(func=cmd_quotient)

    p = sub.add_parser("grid", help="cross-shaped grid models")
    p.add_argument("action", choices=("check", "fillings", "lattice", "to-graph"))
    p.add_argument(
        "--input", default="-", help="grid JSON file, or - for stdin (default)"
    )
    _cap_arguments(p)
    p.set_defaults(func=cmd_grid)

    p = sub.add_parser("iso", help="test two lattice/poset files for isomorphism")
    p.add_argument("first")
    p.add_argument("second")
    p.set_defaults(func=cmd_iso)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = make_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, KeyError, RuntimeError) as exc:
        message = " ".join(str(exc).split()) or exc.__class__.__name__
        print(f"error: {message}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
