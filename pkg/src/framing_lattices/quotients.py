"""M-moves on framed graphs and the lattice congruences they induce.

An M-move cuts an inner edge e = (i, j) in half: e is replaced by a new
edge from the source into j (keeping e's position among the incoming
edges of j) and a new edge from i into the sink (keeping e's position
among the outgoing edges of i).  Splitting every route of a maximal
clique accordingly maps the framing lattice of the original graph onto
the framing lattice of the modified graph.  The fibers of that map are
intervals, their endpoints have local formulas in terms of the extreme
routes through e, and the induced quotient is order-isomorphic to the
framing lattice of the modified graph.  Exhausting M-moves until no
inner edge remains yields a distributive quotient whose size is a
product of binomial coefficients, one per inner vertex.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb

from .cliques import Clique, Direction, make_clique, rotation_neighbors
from .graphs import FramedGraph, dimension, framed_graph, validate
from .labels import edge_labels
from .lattice import (
    FramingLattice,
    StructuralError,
    build_lattice,
    c_max,
    c_min,
    sort_by_in_order,
    sort_by_out_order,
)
from .routes import Path, cw_at, make_path, path_vertices, splice, subpath_from, subpath_to

__all__ = [
    "MMoveResult",
    "CongruenceClasses",
    "inner_edges",
    "m_move",
    "m_moves",
    "split_route",
    "split_map",
    "fibers",
    "project_down",
    "project_up",
    "quotient_lattice",
    "move_diagram",
    "distributive_quotient",
    "z_test",
]


@dataclass(frozen=True)
class MMoveResult:
    """A modified framed graph together with the edge bookkeeping.

    The half entering the old head keeps the moved edge's id (it is now a
    source edge); the half leaving the old tail gets the next free id (it
    is now a sink edge).  ``edge_map`` sends every original edge id to its
    id in the new graph, and the moved edge to the pair
    ``(source_edge, sink_edge)``.  Because untouched ids are preserved,
    further moves can be addressed by their original ids.
    """

    graph: FramedGraph
    edge: int
    source_edge: int
    sink_edge: int
    edge_map: dict[int, int | tuple[int, int]]


@dataclass(frozen=True)
class CongruenceClasses:
    """Fibers of the split map, as a congruence on the source lattice.

    Class ids are the element indices of the quotient lattice.
    ``class_of[x]`` is the class of element x, and ``class_interval[d]``
    is the pair (bottom, top) of class d in the source lattice.
    """

    class_of: tuple[int, ...]
    class_interval: tuple[tuple[int, int], ...]


def inner_edges(g: FramedGraph) -> list[int]:
    """Edges touching neither the source nor the sink."""
    return [
        e
        for e in range(g.edge_count)
        if g.tail(e) != g.source and g.head(e) != g.sink
    ]


def m_move(g: FramedGraph, e: int) -> MMoveResult:
    """Cut the inner edge e in half, rerouting through the source and sink.

    The new source edge occupies e's position in the incoming order at
    head(e) and is appended to the outgoing order at the source; the new
    sink edge occupies e's position in the outgoing order at tail(e) and
    is appended to the incoming order at the sink.  Orders at the source
    and sink do not affect coherence, so the appends are inessential.
    """
    i, j = g.tail(e), g.head(e)
    if i == g.source or j == g.sink:
        raise ValueError(f"edge {e} = ({i}, {j}) is not inner")
    sink_edge = g.edge_count
    edges = list(g.graph.edges)
    edges[e] = (g.source, j)
    edges.append((i, g.sink))
    in_order = [list(seq) for seq in g.framing.in_order]
    out_order = [list(seq) for seq in g.framing.out_order]
    out_order[i][g.out_rank(i, e)] = sink_edge
    out_order[g.source].append(e)
    in_order[g.sink].append(sink_edge)
    graph = framed_graph(g.vertex_count, edges, in_order, out_order)
    problems = validate(graph)
    if problems:
        raise StructuralError(f"move produced an invalid graph: {problems}")
    edge_map: dict[int, int | tuple[int, int]] = {
        x: x for x in range(g.edge_count)
    }
    edge_map[e] = (e, sink_edge)
    return MMoveResult(graph, e, e, sink_edge, edge_map)


def m_moves(g: FramedGraph, edges: "list[int] | tuple[int, ...]") -> FramedGraph:
    """Apply M-moves to several inner edges of g, named by their ids in g.

    Ids of untouched edges persist across moves, so the result does not
    depend on the order in which the moves are applied (beyond the
    inessential orders at the source and sink).
    """
    out = g
    for e in sorted(edges):
        out = m_move(out, e).graph
    return out


def split_route(g: FramedGraph, move: MMoveResult, r: Path) -> list[Path]:
    """Image of one route: itself if it avoids the moved edge, else the two
    rerouted halves."""
    if move.edge not in r.edges:
        return [make_path(move.graph, r.edges)]
    k = r.edges.index(move.edge)
    return [
        make_path(move.graph, (move.source_edge, *r.edges[k + 1 :])),
        make_path(move.graph, (*r.edges[:k], move.sink_edge)),
    ]


def split_map(
    g: FramedGraph, e: int, c: Clique, move: MMoveResult | None = None
) -> Clique:
    """Image of a maximal clique under routewise splitting.

    The image is checked to be a maximal clique of the modified graph;
    surjectivity onto those cliques is exercised by the fiber machinery.
    """
    if move is None:
        move = m_move(g, e)
    elif move.edge != e:
        raise ValueError("move was computed for a different edge")
    routes = {image for r in c.routes for image in split_route(g, move, r)}
    out = make_clique(move.graph, routes)
    if len(out.routes) != dimension(move.graph) + 1:
        raise StructuralError("split image is not a maximal clique")
    return out


def _fiber_paths(g: FramedGraph, move: MMoveResult, d: Clique) -> list[Path]:
    """Pull the routes of a clique of the modified graph back to paths of g.

    Routes avoiding both half edges are routes of g; a route through the
    source half becomes the moved edge followed by the tail of the route;
    a route through the sink half becomes the head of the route followed
    by the moved edge.  Every clique of the fiber is coherent with all of
    these paths, and the fiber is the interval they pin down.
    """
    out: list[Path] = []
    for r in d.routes:
        if move.source_edge in r.edges:
            k = r.edges.index(move.source_edge)
            out.append(make_path(g, (move.edge, *r.edges[k + 1 :])))
        elif move.sink_edge in r.edges:
            k = r.edges.index(move.sink_edge)
            out.append(make_path(g, (*r.edges[:k], move.edge)))
        else:
            out.append(make_path(g, r.edges))
    return out


def fibers(
    g: FramedGraph, e: int, L: FramingLattice, L_target: FramingLattice
) -> CongruenceClasses:
    """Partition the lattice of g into split-map fibers over the moved graph.

    Verifies, for every class: that it is nonempty (surjectivity), that it
    is an interval, and that its endpoints agree with the extremal cliques
    coherent with the pulled-back routes of the image.
    """
    move = m_move(g, e)
    if L.graph != g:
        raise ValueError("lattice does not belong to the given graph")
    if L_target.graph != move.graph:
        raise ValueError("target lattice does not belong to the moved graph")
    class_of = tuple(
        L_target.index_of(split_map(g, e, c, move)) for c in L.elements
    )
    members: list[list[int]] = [[] for _ in range(L_target.size)]
    for x, d in enumerate(class_of):
        members[d].append(x)
    intervals: list[tuple[int, int]] = []
    for d, elems in enumerate(members):
        if not elems:
            raise StructuralError("split map misses a maximal clique")
        lows = [x for x in elems if all(L.leq(x, y) for y in elems)]
        highs = [y for y in elems if all(L.leq(x, y) for x in elems)]
        if len(lows) != 1 or len(highs) != 1:
            raise StructuralError("fiber has no unique extremes")
        lo, hi = lows[0], highs[0]
        if set(L.interval(lo, hi)) != set(elems):
            raise StructuralError("fiber is not an interval")
        pulled = _fiber_paths(g, move, L_target.elements[d])
        if L.index_of(c_min(g, pulled)) != lo or L.index_of(c_max(g, pulled)) != hi:
            raise StructuralError("fiber extremes disagree with the path sweep")
        intervals.append((lo, hi))
    return CongruenceClasses(class_of, tuple(intervals))


def _extreme_route_through(
    g: FramedGraph, c: Clique, e: int, side: Direction
) -> Path:
    """The cw- or ccw-most route through e assembled from routes of c.

    Collect the source-to-head(e) parts and tail(e)-to-sink parts of the
    clique's routes through e; the cw extreme glues the topmost entering
    part to the bottommost leaving part, the ccw extreme the opposite.
    """
    i, j = g.tail(e), g.head(e)
    through = [r for r in c.routes if e in r.edges]
    if not through:
        raise StructuralError("maximal clique avoids an edge of the graph")
    ins = sort_by_in_order(g, j, {subpath_to(g, r, j) for r in through})
    outs = sort_by_out_order(g, i, {subpath_from(g, r, i) for r in through})
    if side is Direction.CW:
        head_part, tail_part = ins[0], outs[-1]
    else:
        head_part, tail_part = ins[-1], outs[0]
    return make_path(g, head_part.edges + tail_part.edges[1:])


def _project(g: FramedGraph, e: int, c: Clique, side: Direction) -> Clique:
    extreme = _extreme_route_through(g, c, e, side)
    i, j = g.tail(e), g.head(e)
    routes = {r for r in c.routes if e not in r.edges}
    for r in c.routes:
        if e in r.edges:
            routes.add(splice(g, extreme, i, r))
            routes.add(splice(g, r, j, extreme))
    out = make_clique(g, routes)
    if len(out.routes) != dimension(g) + 1:
        raise StructuralError("projection is not a maximal clique")
    return out


def project_down(g: FramedGraph, e: int, c: Clique) -> Clique:
    """Bottom of c's split-map fiber, computed locally.

    Replaces every route through e by its reroutings through the cw-most
    route of the clique through e.
    """
    return _project(g, e, c, Direction.CW)


def project_up(g: FramedGraph, e: int, c: Clique) -> Clique:
    """Top of c's split-map fiber, computed locally (ccw-most reroutings)."""
    return _project(g, e, c, Direction.CCW)


def quotient_lattice(
    g: FramedGraph,
    e: int,
    L: FramingLattice | None = None,
    max_elements: int | None = None,
) -> tuple[FramingLattice, dict[int, int]]:
    """The framing lattice of the moved graph, as a verified quotient.

    Returns the lattice of the moved graph together with a witness mapping
    each fiber minimum (an element index of the source lattice) to its
    image.  The restriction of the source order to the fiber minima is
    checked to be order-isomorphic to the returned lattice.
    """
    move = m_move(g, e)
    if L is None:
        L = build_lattice(g, max_elements=max_elements)
    target = build_lattice(move.graph, max_elements=max_elements)
    classes = fibers(g, e, L, target)
    lows = [lo for lo, _ in classes.class_interval]
    for d1 in range(target.size):
        for d2 in range(target.size):
            if target.leq(d1, d2) != L.leq(lows[d1], lows[d2]):
                raise StructuralError(
                    "restriction to fiber minima is not order-isomorphic"
                )
    witness = {lo: d for d, lo in enumerate(lows)}
    return target, witness


def move_diagram(
    g: FramedGraph, max_elements: int | None = None
) -> dict[tuple[int, ...], FramingLattice]:
    """Framing lattices of all M-move subsets, keyed by sorted edge ids.

    The keys form a Boolean lattice under inclusion; larger subsets give
    (weakly) smaller quotients, with the original lattice at the empty key
    and the distributive quotient at the full key.
    """
    avail = inner_edges(g)
    out: dict[tuple[int, ...], FramingLattice] = {}
    for size in range(len(avail) + 1):
        for subset in combinations(avail, size):
            out[subset] = build_lattice(
                m_moves(g, list(subset)), max_elements=max_elements
            )
    return out


def distributive_quotient(
    g: FramedGraph, max_elements: int | None = None
) -> FramingLattice:
    """Lattice of the graph with every inner edge moved away.

    All edges of the result touch the source or sink, so the lattice does
    not depend on the framing of g.  Its size is checked against the
    product over inner vertices v of binom(a + b, a), where a + 1 and
    b + 1 are the in- and out-degree of v; each factor is the lattice of
    monotone lattice paths in an a-by-b grid.
    """
    reduced = m_moves(g, inner_edges(g))
    lattice = build_lattice(reduced, max_elements=max_elements)
    expected = 1
    for v in g.inner_vertices():
        a = len(g.incoming(v)) - 1
        b = len(g.outgoing(v)) - 1
        expected *= comb(a + b, a)
    if lattice.size != expected:
        raise StructuralError(
            f"distributive quotient has {lattice.size} elements, "
            f"expected {expected}"
        )
    return lattice


def z_test(
    g: FramedGraph, lower: Clique, upper: Clique, other: Clique, side: str
) -> bool:
    """Predict join or meet agreement across a cover from its labels alone.

    For a cover pair, ``side="join"`` reports whether joining with
    ``other`` cannot tell the pair apart: this happens exactly when some
    route of ``other`` is ccw from the cw-extended label at a vertex of
    the locus.  ``side="meet"`` is the mirror statement with the
    ccw-extended label.
    """
    if side not in ("join", "meet"):
        raise ValueError(f"side must be 'join' or 'meet', got {side!r}")
    step = None
    for nbr, s in rotation_neighbors(g, lower):
        if s.direction is Direction.CCW and nbr == upper:
            step = s
            break
    if step is None:
        raise ValueError("second clique does not cover the first")
    labels = edge_labels(g, step)
    locus_vertices = path_vertices(g, step.locus)
    for r in other.routes:
        on_route = set(path_vertices(g, r))
        for v in locus_vertices:
            if v not in on_route:
                continue
            if side == "join" and cw_at(g, labels.cw_extended.path, r, v):
                return True
            if side == "meet" and cw_at(g, r, labels.ccw_extended.path, v):
                return True
    return False
