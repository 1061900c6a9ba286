"""Maximal cliques of pairwise-coherent routes, and rotation adjacency.

A maximal clique is a largest set of pairwise coherent routes; these are
the facets of the triangulation of the flow polytope induced by the
framing, and every one of them has exactly ``dimension(g) + 1`` routes.
Two maximal cliques are adjacent when they differ by a single route swap;
``rotation_neighbors`` finds the swaps with a local test (the top-bottom
and in-between criteria) instead of re-running maximality checks.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

from .graphs import FramedGraph, dimension
from .routes import (
    MULTIPLE_LOCI,
    Ordering3,
    Path,
    cmp_in,
    cmp_out,
    coherent,
    cw_at,
    enumerate_routes,
    incoherence_path,
    is_route,
    make_path,
    path_end,
    path_start,
    path_vertices,
    splice,
    subpath_from,
    subpath_to,
)


class Direction(Enum):
    """Sense of a rotation: CCW swaps increase the lattice order."""

    CCW = "ccw"
    CW = "cw"


class Betweenness(Enum):
    STRICT = "strict"
    WEAK = "weak"
    NO = "no"


@dataclass(frozen=True)
class Clique:
    """A set of pairwise coherent routes, canonically sorted."""

    routes: tuple[Path, ...]

    def __len__(self) -> int:
        return len(self.routes)


@dataclass(frozen=True)
class RotationStep:
    """Witness of one clique rotation: ``removed`` is swapped for ``added``.

    ``locus`` is the maximal common subpath on which the two routes are
    incoherent.  For a CCW step ``removed`` is clockwise from ``added`` at
    every vertex of the locus; for a CW step it is the other way around.
    """

    removed: Path
    added: Path
    locus: Path
    direction: Direction


def make_clique(g: FramedGraph, routes: Iterable[Path], check: bool = True) -> Clique:
    """Canonicalize a set of routes into a Clique, verifying coherence."""
    rs = sorted(set(routes), key=lambda r: r.edges)
    if check:
        for r in rs:
            if not is_route(g, r):
                raise ValueError(f"path {r.edges} is not a route")
        for i, p in enumerate(rs):
            for q in rs[i + 1 :]:
                if not coherent(g, p, q):
                    raise ValueError(
                        f"routes {p.edges} and {q.edges} are incoherent"
                    )
    return Clique(tuple(rs))


def serialize_clique(c: Clique) -> list[list[int]]:
    return [list(r.edges) for r in c.routes]


# -- enumeration -----------------------------------------------------------


def coherence_graph(g: FramedGraph, routes: Sequence[Path]) -> list[set[int]]:
    """Adjacency sets of the coherence relation on route indices."""
    adj: list[set[int]] = [set() for _ in routes]
    for i, p in enumerate(routes):
        for j in range(i + 1, len(routes)):
            if coherent(g, p, routes[j]):
                adj[i].add(j)
                adj[j].add(i)
    return adj


def enumerate_maximal_cliques(
    g: FramedGraph,
    routes: Sequence[Path] | None = None,
    cap: int | None = None,
) -> list[Clique]:
    """All maximal cliques of coherent routes, in canonical order.

    Uses pivoting Bron-Kerbosch on the coherence graph.  Every maximal
    clique has exactly ``dimension(g) + 1`` routes (the facets of a
    unimodular triangulation all have full size); an assertion guards
    this.
    """
    if routes is None:
        routes = enumerate_routes(g, cap=cap)
    adj = coherence_graph(g, routes)
    found: list[tuple[int, ...]] = []

    def expand(r: set[int], p: set[int], x: set[int]) -> None:
        if not p and not x:
            found.append(tuple(sorted(r)))
            return
        pivot = max(p | x, key=lambda u: len(adj[u] & p))
        for v in sorted(p - adj[pivot]):
            expand(r | {v}, p & adj[v], x & adj[v])
            p.discard(v)
            x.add(v)

    expand(set(), set(range(len(routes))), set())
    size = dimension(g) + 1
    cliques = []
    for idxs in sorted(found):
        assert len(idxs) == size, (
            f"maximal coherent set of size {len(idxs)}, expected {size}"
        )
        cliques.append(Clique(tuple(routes[i] for i in idxs)))
    return cliques


def is_maximal(
    g: FramedGraph, c: Clique, routes: Sequence[Path] | None = None
) -> bool:
    """True iff no route outside c is coherent with every member of c."""
    if routes is None:
        routes = enumerate_routes(g)
    member = set(c.routes)
    for r in routes:
        if r not in member and all(coherent(g, r, m) for m in c.routes):
            return False
    return True


# -- extension -------------------------------------------------------------


def extend_path_to_route(
    g: FramedGraph, context: Iterable[Path], p: Path
) -> Path:
    """Extend a path to a route coherent with every path in ``context``.

    The input path must itself be coherent with the context; an extension
    always exists, and this picks a deterministic one by scanning the
    candidate edges at each end from the top of the framing order and
    taking the first that keeps the extension coherent.
    """
    context = list(context)
    for m in context:
        if not coherent(g, p, m):
            raise ValueError("path is incoherent with the given clique")

    def admissible(edges: tuple[int, ...]) -> Path | None:
        q = make_path(g, edges)
        if all(coherent(g, q, m) for m in context):
            return q
        return None

    while path_end(g, p) != g.sink:
        v = path_end(g, p)
        for e in g.outgoing(v):
            q = admissible(p.edges + (e,))
            if q is not None:
                p = q
                break
        else:
            raise AssertionError("no coherent forward extension found")
    while path_start(g, p) != g.source:
        v = path_start(g, p)
        for e in g.incoming(v):
            q = admissible((e,) + p.edges)
            if q is not None:
                p = q
                break
        else:
            raise AssertionError("no coherent backward extension found")
    return p


# -- rotation adjacency ----------------------------------------------------


def top_bot(g: FramedGraph, r1: Path, r2: Path, v: int) -> tuple[Path, Path]:
    """The two splices (r1 v r2, r2 v r1) of routes crossing at v.

    Requires r1 clockwise from r2 at v.  The first splice follows the upper
    strands (in from r1, out from r2), the second the lower ones.
    """
    if not cw_at(g, r1, r2, v):
        raise ValueError("r1 is not clockwise from r2 at v")
    return splice(g, r1, v, r2), splice(g, r2, v, r1)


def in_between(
    g: FramedGraph, r: Path, r1: Path, r2: Path, v: int
) -> Betweenness:
    """Classify how route r sits between a crossing pair r1, r2 at v.

    Requires r1 clockwise from r2 at v.  WEAK means r enters v no higher
    than r1 and no lower than r2 and leaves no lower than r1 and no higher
    than r2; STRICT additionally requires strict inequalities on the
    incoming or on the outgoing side.  Routes missing v classify as NO.
    """
    if not cw_at(g, r1, r2, v):
        raise ValueError("r1 is not clockwise from r2 at v")
    if v not in path_vertices(g, r):
        return Betweenness.NO
    rv, vr = subpath_to(g, r, v), subpath_from(g, r, v)
    a = cmp_in(g, v, subpath_to(g, r1, v), rv)
    b = cmp_in(g, v, rv, subpath_to(g, r2, v))
    c = cmp_out(g, v, subpath_from(g, r2, v), vr)
    d = cmp_out(g, v, vr, subpath_from(g, r1, v))
    weak = Ordering3.GREATER not in (a, b, c, d)
    if not weak:
        return Betweenness.NO
    strict_in = a is Ordering3.LESS and b is Ordering3.LESS
    strict_out = c is Ordering3.LESS and d is Ordering3.LESS
    if strict_in or strict_out:
        return Betweenness.STRICT
    return Betweenness.WEAK


def _is_rotation(
    g: FramedGraph, c: Clique, removed: Path, added: Path, locus: Path
) -> Direction | None:
    """Local test: does swapping ``removed`` for ``added`` in c give a
    maximal clique?  Returns the step direction, or None."""
    v = path_start(g, locus)
    if cw_at(g, removed, added, v):
        lo, hi, direction = removed, added, Direction.CCW
    elif cw_at(g, added, removed, v):
        lo, hi, direction = added, removed, Direction.CW
    else:  # pragma: no cover - locus vertices are always crossings
        raise AssertionError("locus vertex is not a crossing")
    member = set(c.routes)
    top, bot = splice(g, lo, v, hi), splice(g, hi, v, lo)
    if top not in member or bot not in member:
        return None
    for r in c.routes:
        if v in path_vertices(g, r):
            if in_between(g, r, lo, hi, v) is Betweenness.STRICT:
                return None
    return direction


def rotation_neighbors(
    g: FramedGraph,
    c: Clique,
    routes: Sequence[Path] | None = None,
    cross_check: bool = False,
) -> list[tuple[Clique, RotationStep]]:
    """All maximal cliques reachable from c by one route swap.

    Each neighbor differs from c by removing one route and adding one
    incoherent with it; validity is decided by the local top-bottom and
    in-between criteria.  With ``cross_check`` the result is re-verified
    by brute force (swap, then test coherence and maximality).
    """
    if routes is None:
        routes = enumerate_routes(g)
    member = set(c.routes)
    out: list[tuple[Clique, RotationStep]] = []
    for removed in c.routes:
        hits: list[tuple[Clique, RotationStep]] = []
        for added in routes:
            if added in member:
                continue
            locus = incoherence_path(g, removed, added)
            if locus is None or locus is MULTIPLE_LOCI:
                continue
            direction = _is_rotation(g, c, removed, added, locus)
            if cross_check:
                swapped = (member - {removed}) | {added}
                ok = all(
                    coherent(g, p, q)
                    for p in swapped
                    for q in swapped
                    if p.edges < q.edges
                ) and is_maximal(g, Clique(tuple(sorted(swapped, key=lambda r: r.edges))), routes)
                assert ok == (direction is not None), (
                    "local rotation test disagrees with brute force"
                )
            if direction is None:
                continue
            neighbor = Clique(
                tuple(sorted((member - {removed}) | {added}, key=lambda r: r.edges))
            )
            hits.append(
                (neighbor, RotationStep(removed, added, locus, direction))
            )
        assert len(hits) <= 1, "a route can be rotated in at most one way"
        out.extend(hits)
    return out
