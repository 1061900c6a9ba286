"""Cover labelings by paths and extended paths, irreducible elements, and
the core label order of a framing lattice.

Every cover of the framing lattice swaps a pair of routes that cross along
a common subpath, the locus.  The locus itself labels the cover; extending
it by the boundary edges of the removed route gives the cw-extended label,
and by the boundary edges of the added route the ccw-extended label.  These
extended paths classify the irreducible elements of the lattice and induce
the core label order.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cliques import Direction, RotationStep
from .graphs import FramedGraph
from .lattice import FramingLattice, StructuralError, c_max, c_min
from .oracles import Poset
from .routes import (
    DEFAULT_PATH_CAP,
    Path,
    enumerate_paths,
    is_route,
    make_path,
    path_end,
    path_start,
)

__all__ = [
    "ExtendedPath",
    "CoverLabels",
    "is_extended",
    "make_extended_path",
    "enumerate_extended_paths",
    "edge_labels",
    "phi_ccw",
    "phi_cw",
    "extremal_route",
    "join_irreducibles",
    "meet_irreducibles",
    "irreducible_bijection",
    "ccw_core_label_sets",
    "core_label_order",
]


@dataclass(frozen=True)
class ExtendedPath:
    """A path of at least two edges tagged by the side it can rotate to.

    Writing ``w1`` for the head of the first edge and ``w2`` for the tail of
    the last edge, a CW extended path has an incoming edge below its first
    edge at ``w1`` and an outgoing edge above its last edge at ``w2``; a CCW
    extended path has an incoming edge above and an outgoing edge below.
    """

    path: Path
    kind: Direction


@dataclass(frozen=True)
class CoverLabels:
    """The three labels of a single cover of the framing lattice.

    ``path`` is the locus at which the swapped routes cross, ``cw_extended``
    extends it along the removed route, and ``ccw_extended`` along the added
    route.
    """

    path: Path
    cw_extended: ExtendedPath
    ccw_extended: ExtendedPath


def is_extended(g: FramedGraph, p: Path, kind: Direction) -> bool:
    """Whether p satisfies the boundary conditions of the given kind."""
    if len(p.edges) < 2:
        return False
    e1, e2 = p.edges[0], p.edges[-1]
    w1, w2 = g.head(e1), g.tail(e2)
    rank_in = g.in_rank(w1, e1)
    rank_out = g.out_rank(w2, e2)
    if kind is Direction.CW:
        return rank_in < len(g.incoming(w1)) - 1 and rank_out > 0
    return rank_in > 0 and rank_out < len(g.outgoing(w2)) - 1


def make_extended_path(g: FramedGraph, p: Path, kind: Direction) -> ExtendedPath:
    if not is_extended(g, p, kind):
        raise ValueError(f"path {p.edges} is not {kind.name.lower()}-extended")
    return ExtendedPath(p, kind)


def enumerate_extended_paths(
    g: FramedGraph, kind: Direction, cap: int = DEFAULT_PATH_CAP
) -> list[ExtendedPath]:
    """All extended paths of the given kind, in path enumeration order."""
    return [
        ExtendedPath(p, kind)
        for p in enumerate_paths(g, min_edges=2, cap=cap)
        if is_extended(g, p, kind)
    ]


def _extend_through(g: FramedGraph, route: Path, locus: Path) -> Path:
    """The subpath of route covering locus plus one edge on each side."""
    if not set(locus.edges) <= set(route.edges):
        raise ValueError("locus is not a subpath of the route")
    u, v = path_start(g, locus), path_end(g, locus)
    into = [e for e in route.edges if g.head(e) == u]
    out = [e for e in route.edges if g.tail(e) == v]
    if len(into) != 1 or len(out) != 1:
        raise ValueError("locus endpoints are not interior to the route")
    return make_path(g, [into[0], *locus.edges, out[0]])


def edge_labels(g: FramedGraph, step: RotationStep) -> CoverLabels:
    """The path and extended-path labels of an upward rotation step.

    The locus is the label path; the cw-extended label follows the removed
    route one edge into and out of the locus, the ccw-extended label does
    the same along the added route.
    """
    if step.direction is not Direction.CCW:
        raise ValueError("edge labels are defined on upward (ccw) rotation steps")
    p1 = _extend_through(g, step.removed, step.locus)
    p2 = _extend_through(g, step.added, step.locus)
    return CoverLabels(
        step.locus,
        make_extended_path(g, p1, Direction.CW),
        make_extended_path(g, p2, Direction.CCW),
    )


def phi_ccw(g: FramedGraph, ep: ExtendedPath) -> ExtendedPath:
    """Turn a cw-extended path into a ccw-extended one by sliding its first
    edge one step down the incoming order and its last edge one step up the
    outgoing order."""
    if ep.kind is not Direction.CW:
        raise ValueError("phi_ccw expects a cw-extended path")
    edges = list(ep.path.edges)
    e1, e2 = edges[0], edges[-1]
    w1, w2 = g.head(e1), g.tail(e2)
    edges[0] = g.incoming(w1)[g.in_rank(w1, e1) + 1]
    edges[-1] = g.outgoing(w2)[g.out_rank(w2, e2) - 1]
    return make_extended_path(g, make_path(g, edges), Direction.CCW)


def phi_cw(g: FramedGraph, ep: ExtendedPath) -> ExtendedPath:
    """Inverse of phi_ccw: slide the first edge up and the last edge down."""
    if ep.kind is not Direction.CCW:
        raise ValueError("phi_cw expects a ccw-extended path")
    edges = list(ep.path.edges)
    e1, e2 = edges[0], edges[-1]
    w1, w2 = g.head(e1), g.tail(e2)
    edges[0] = g.incoming(w1)[g.in_rank(w1, e1) - 1]
    edges[-1] = g.outgoing(w2)[g.out_rank(w2, e2) + 1]
    return make_extended_path(g, make_path(g, edges), Direction.CW)


def extremal_route(g: FramedGraph, p: Path, side: Direction) -> Path:
    """The cw-most (side=CW) or ccw-most (side=CCW) route containing p.

    The cw-most route enters p from the top of each incoming order walking
    backward and leaves toward the bottom of each outgoing order walking
    forward; the ccw-most route is the mirror image.
    """
    front: list[int] = []
    v = path_start(g, p)
    while v != g.source:
        order = g.incoming(v)
        e = order[0] if side is Direction.CW else order[-1]
        front.append(e)
        v = g.tail(e)
    front.reverse()
    tail: list[int] = []
    v = path_end(g, p)
    while v != g.sink:
        order = g.outgoing(v)
        e = order[-1] if side is Direction.CW else order[0]
        tail.append(e)
        v = g.head(e)
    route = make_path(g, front + list(p.edges) + tail)
    assert is_route(g, route)
    return route


def _unique_lower(L: FramingLattice) -> list[int]:
    return [x for x in range(L.size) if len(L.lower_covers(x)) == 1]


def _unique_upper(L: FramingLattice) -> list[int]:
    return [x for x in range(L.size) if len(L.upper_covers(x)) == 1]


def join_irreducibles(
    g: FramedGraph, L: FramingLattice, cap: int = DEFAULT_PATH_CAP
) -> list[tuple[ExtendedPath, int]]:
    """Pairs (ccw-extended path, element index of its minimal clique).

    The paired elements are exactly those with a unique lower cover, and
    the pairing is one-to-one.
    """
    pairs = [
        (ep, L.index_of(c_min(g, [ep.path])))
        for ep in enumerate_extended_paths(g, Direction.CCW, cap=cap)
    ]
    hit = [x for _, x in pairs]
    if len(set(hit)) != len(hit) or set(hit) != set(_unique_lower(L)):
        raise StructuralError("ccw-extended paths do not pair with the join irreducibles")
    return sorted(pairs, key=lambda t: t[1])


def meet_irreducibles(
    g: FramedGraph, L: FramingLattice, cap: int = DEFAULT_PATH_CAP
) -> list[tuple[ExtendedPath, int]]:
    """Pairs (cw-extended path, element index of its maximal clique)."""
    pairs = [
        (ep, L.index_of(c_max(g, [ep.path])))
        for ep in enumerate_extended_paths(g, Direction.CW, cap=cap)
    ]
    hit = [x for _, x in pairs]
    if len(set(hit)) != len(hit) or set(hit) != set(_unique_upper(L)):
        raise StructuralError("cw-extended paths do not pair with the meet irreducibles")
    return sorted(pairs, key=lambda t: t[1])


def irreducible_bijection(g: FramedGraph, L: FramingLattice) -> dict[int, int]:
    """Map each join irreducible j to the maximal clique of the cw-extended
    label on its lower cover; verified inverse to the dual meet-side map."""
    forward: dict[int, int] = {}
    for j in _unique_lower(L):
        (jstar,) = L.lower_covers(j)
        labels = edge_labels(g, L.cover_step(jstar, j))
        forward[j] = L.index_of(c_max(g, [labels.cw_extended.path]))
    backward: dict[int, int] = {}
    for m in _unique_upper(L):
        (mstar,) = L.upper_covers(m)
        labels = edge_labels(g, L.cover_step(m, mstar))
        backward[m] = L.index_of(c_min(g, [labels.ccw_extended.path]))
    if sorted(forward.values()) != sorted(backward) or any(
        backward[m] != j for j, m in forward.items()
    ):
        raise StructuralError("join and meet irreducible maps are not inverse")
    return forward


def ccw_core_label_sets(g: FramedGraph, L: FramingLattice) -> list[frozenset[ExtendedPath]]:
    """Per element x: the ccw-extended labels of all covers in the interval
    from the meet of x's lower covers up to x."""
    cover_label = {
        (lo, hi): edge_labels(g, step).ccw_extended for lo, hi, step in L.covers
    }
    sets: list[frozenset[ExtendedPath]] = []
    for x in range(L.size):
        down = x
        for u in L.lower_covers(x):
            down = L.meet_index(down, u)
        sets.append(
            frozenset(
                label
                for (lo, hi), label in cover_label.items()
                if L.leq(down, lo) and L.leq(hi, x)
            )
        )
    return sets


def core_label_order(g: FramedGraph, L: FramingLattice) -> Poset:
    """Elements ordered by inclusion of their ccw core label sets.

    The poset's element i corresponds to lattice element i; its labels are
    the label sets themselves.
    """
    sets = ccw_core_label_sets(g, L)
    if len(set(sets)) != len(sets):
        raise StructuralError("core label sets are not distinct")
    return Poset.from_leq(sets, lambda a, b: a != b and a <= b)
