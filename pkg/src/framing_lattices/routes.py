"""Directed paths, routes, and the coherence relation of a framed graph.

Two paths are compared at a meeting vertex v by walking backward (for the
incoming side) or forward (for the outgoing side) to the vertex where they
diverge and consulting the framing order there; nested paths compare
EQUAL. A route crosses another at an inner vertex when it enters strictly
above and leaves strictly below (or vice versa); pairs that never cross
are coherent. These relations drive everything downstream: cliques,
rotations, and the lattice order.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

from .graphs import FramedGraph

DEFAULT_PATH_CAP = 1_000_000


class Ordering3(Enum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


class PathExplosion(RuntimeError):
    """Path enumeration exceeded its configured cap."""

    def __init__(self, cap: int):
        super().__init__(f"path enumeration exceeded cap of {cap}")
        self.cap = cap


class _MultipleLoci:
    """Sentinel: a route pair is incoherent on several disjoint common paths."""

    def __repr__(self) -> str:  # pragma: no cover
        return "MULTIPLE_LOCI"


MULTIPLE_LOCI = _MultipleLoci()


@dataclass(frozen=True)
class Path:
    """A contiguous forward path, as a tuple of edge ids.

    An empty path is a single vertex, recorded in ``anchor``; for nonempty
    paths the anchor is ignored.
    """

    edges: tuple[int, ...]
    anchor: int = -1

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(int(e) for e in self.edges))

    def __len__(self) -> int:
        return len(self.edges)


def make_path(g: FramedGraph, edges: Sequence[int], anchor: int | None = None) -> Path:
    """Validated path constructor; checks contiguity of the edge sequence."""
    edges = tuple(edges)
    if not edges:
        if anchor is None or not 0 <= anchor < g.vertex_count:
            raise ValueError("empty path needs a valid anchor vertex")
        return Path((), anchor)
    for a, b in zip(edges, edges[1:]):
        if g.head(a) != g.tail(b):
            raise ValueError(f"edges {a} and {b} are not consecutive")
    return Path(edges, g.tail(edges[0]))


def path_from_edge_set(g: FramedGraph, edge_ids: Iterable[int]) -> Path:
    """Rebuild a path from its (unordered) edge-id set, e.g. a serialized route."""
    return make_path(g, sorted(edge_ids, key=g.tail), anchor=0)


def path_vertices(g: FramedGraph, p: Path) -> tuple[int, ...]:
    if not p.edges:
        return (p.anchor,)
    return tuple(g.tail(e) for e in p.edges) + (g.head(p.edges[-1]),)


def path_start(g: FramedGraph, p: Path) -> int:
    return g.tail(p.edges[0]) if p.edges else p.anchor


def path_end(g: FramedGraph, p: Path) -> int:
    return g.head(p.edges[-1]) if p.edges else p.anchor


def is_route(g: FramedGraph, p: Path) -> bool:
    return path_start(g, p) == g.source and path_end(g, p) == g.sink


def subpath_to(g: FramedGraph, p: Path, v: int) -> Path:
    """The maximal subpath of p ending at v (written Pv)."""
    if path_start(g, p) == v:
        return Path((), v)
    for i, e in enumerate(p.edges):
        if g.head(e) == v:
            return Path(p.edges[: i + 1], path_start(g, p))
    raise ValueError(f"vertex {v} not on path")


def subpath_from(g: FramedGraph, p: Path, v: int) -> Path:
    """The maximal subpath of p starting at v (written vP)."""
    if path_end(g, p) == v:
        return Path((), v)
    for i, e in enumerate(p.edges):
        if g.tail(e) == v:
            return Path(p.edges[i:], v)
    raise ValueError(f"vertex {v} not on path")


def splice(g: FramedGraph, p: Path, v: int, q: Path) -> Path:
    """The path that follows p up to v and q afterwards (written PvQ).

    Both paths must pass through v.
    """
    return make_path(
        g, subpath_to(g, p, v).edges + subpath_from(g, q, v).edges, anchor=v
    )


# -- comparisons -----------------------------------------------------------


def cmp_in(g: FramedGraph, v: int, p: Path, q: Path) -> Ordering3:
    """Compare two paths ending at v by where they come from.

    Strips the longest common suffix; if either path is exhausted the
    paths are nested and compare EQUAL, otherwise the edges entering the
    divergence vertex are compared in its incoming order (top = LESS).
    """
    pe, qe = p.edges, q.edges
    i, j = len(pe), len(qe)
    while i > 0 and j > 0 and pe[i - 1] == qe[j - 1]:
        i -= 1
        j -= 1
    if i == 0 or j == 0:
        return Ordering3.EQUAL
    w = g.head(pe[i - 1])
    a, b = g.in_rank(w, pe[i - 1]), g.in_rank(w, qe[j - 1])
    return Ordering3.LESS if a < b else Ordering3.GREATER


def cmp_out(g: FramedGraph, v: int, p: Path, q: Path) -> Ordering3:
    """Compare two paths starting at v by where they go; dual to cmp_in."""
    pe, qe = p.edges, q.edges
    i = 0
    while i < len(pe) and i < len(qe) and pe[i] == qe[i]:
        i += 1
    if i == len(pe) or i == len(qe):
        return Ordering3.EQUAL
    w = g.tail(pe[i])
    a, b = g.out_rank(w, pe[i]), g.out_rank(w, qe[i])
    return Ordering3.LESS if a < b else Ordering3.GREATER


def cw_at(g: FramedGraph, p: Path, q: Path, v: int) -> bool:
    """True iff p is clockwise from q at v: p comes in strictly above q
    and leaves strictly below it."""
    if cmp_in(g, v, subpath_to(g, p, v), subpath_to(g, q, v)) is not Ordering3.LESS:
        return False
    return cmp_out(g, v, subpath_from(g, q, v), subpath_from(g, p, v)) is Ordering3.LESS


def common_inner_vertices(g: FramedGraph, p: Path, q: Path) -> list[int]:
    shared = set(path_vertices(g, p)) & set(path_vertices(g, q))
    shared -= {g.source, g.sink}
    return sorted(shared)


def crossing_vertices(g: FramedGraph, p: Path, q: Path) -> list[int]:
    """Common inner vertices where the two paths cross."""
    return [
        v
        for v in common_inner_vertices(g, p, q)
        if cw_at(g, p, q, v) or cw_at(g, q, p, v)
    ]


def coherent(g: FramedGraph, p: Path, q: Path) -> bool:
    return not crossing_vertices(g, p, q)


def incoherence_path(g: FramedGraph, p: Path, q: Path):
    """The maximal common subpath on which two paths are incoherent.

    Returns None for coherent pairs. When all crossing vertices lie on one
    maximal common subpath (always the case for clique rotations), returns
    that subpath; otherwise returns the MULTIPLE_LOCI sentinel.
    """
    crossings = crossing_vertices(g, p, q)
    if not crossings:
        return None
    next_p = {g.tail(e): e for e in p.edges}
    next_q = {g.tail(e): e for e in q.edges}
    prev_p = {g.head(e): e for e in p.edges}
    prev_q = {g.head(e): e for e in q.edges}

    def component_start(v: int) -> int:
        while v in prev_p and v in prev_q and prev_p[v] == prev_q[v]:
            v = g.tail(prev_p[v])
        return v

    starts = {component_start(v) for v in crossings}
    if len(starts) > 1:
        return MULTIPLE_LOCI
    v = starts.pop()
    edges = []
    w = v
    while w in next_p and w in next_q and next_p[w] == next_q[w]:
        edges.append(next_p[w])
        w = g.head(next_p[w])
    return make_path(g, edges, anchor=v)


# -- enumeration -----------------------------------------------------------


def enumerate_routes(g: FramedGraph, cap: int | None = None) -> list[Path]:
    """All routes, ordered lexicographically by edge-id sequence."""
    out_by_vertex = [
        sorted(e for e, (t, _) in enumerate(g.graph.edges) if t == v)
        for v in range(g.vertex_count)
    ]
    routes: list[Path] = []
    stack: list[int] = []

    def walk(v: int) -> None:
        if v == g.sink:
            if cap is not None and len(routes) >= cap:
                raise PathExplosion(cap)
            routes.append(Path(tuple(stack), g.source))
            return
        for e in out_by_vertex[v]:
            stack.append(e)
            walk(g.head(e))
            stack.pop()

    walk(g.source)
    return routes


def enumerate_paths(g: FramedGraph, min_edges: int, cap: int = DEFAULT_PATH_CAP) -> list[Path]:
    """All directed paths with at least ``min_edges`` edges, in canonical
    order (empty paths by anchor, then lexicographic by edge sequence)."""
    out_by_vertex = [
        sorted(e for e, (t, _) in enumerate(g.graph.edges) if t == v)
        for v in range(g.vertex_count)
    ]
    paths: list[Path] = []
    if min_edges <= 0:
        paths.extend(Path((), v) for v in range(g.vertex_count))
    stack: list[int] = []

    def extend(v: int) -> None:
        for e in out_by_vertex[v]:
            stack.append(e)
            if len(stack) >= min_edges:
                if len(paths) >= cap:
                    raise PathExplosion(cap)
                paths.append(Path(tuple(stack), g.tail(stack[0])))
            extend(g.head(e))
            stack.pop()

    for v in range(g.vertex_count):
        extend(v)
    paths.sort(key=lambda p: (p.edges, p.anchor))
    return paths


def ccw_of(g: FramedGraph, p: Path, routes: Sequence[Path] | None = None) -> list[Path]:
    """Routes lying strictly counterclockwise from p at some vertex."""
    if routes is None:
        routes = enumerate_routes(g)
    return [
        r
        for r in routes
        if any(cw_at(g, p, r, v) for v in common_inner_vertices(g, p, r))
    ]


def cw_of(g: FramedGraph, p: Path, routes: Sequence[Path] | None = None) -> list[Path]:
    """Routes lying strictly clockwise from p at some vertex."""
    if routes is None:
        routes = enumerate_routes(g)
    return [
        r
        for r in routes
        if any(cw_at(g, r, p, v) for v in common_inner_vertices(g, p, r))
    ]


def exceptional_routes(g: FramedGraph, routes: Sequence[Path] | None = None) -> list[Path]:
    """Routes coherent with every route; they belong to every maximal clique."""
    if routes is None:
        routes = enumerate_routes(g)
    return [r for r in routes if all(coherent(g, r, q) for q in routes)]
