"""The framing lattice of a framed graph.

Elements are the maximal cliques of coherent routes; the order is
generated by CCW rotations.  This module builds the lattice, computes
extremal cliques coherent with a path set (the greedy sweep algorithms),
joins and meets (the same sweeps with a removed-route condition), polygon
decompositions of cover forks, and the exhaustive property checkers
(semidistributivity and the labeled polygon conditions).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from functools import cmp_to_key
from typing import Callable, Iterable, Sequence

from .cliques import (
    Clique,
    Direction,
    RotationStep,
    enumerate_maximal_cliques,
    rotation_neighbors,
    serialize_clique,
)
from .graphs import FramedGraph, dimension
from .routes import (
    Ordering3,
    Path,
    ccw_of,
    cmp_in,
    cmp_out,
    coherent,
    cw_at,
    cw_of,
    enumerate_paths,
    enumerate_routes,
    make_path,
    path_vertices,
)


class StructuralError(RuntimeError):
    """A structural guarantee of the lattice failed to hold."""


class ElementExplosion(RuntimeError):
    """The lattice has more elements than the configured cap."""

    def __init__(self, cap: int):
        super().__init__(f"element count exceeds cap of {cap}")
        self.cap = cap


# -- anchored path families --------------------------------------------------


def source_paths(g: FramedGraph) -> list[list[Path]]:
    """For each vertex v, all paths from the source to v (empty at the source)."""
    fam: list[list[Path]] = [[] for _ in range(g.vertex_count)]
    fam[g.source] = [Path((), g.source)]
    for v in range(g.vertex_count):
        for e in g.incoming(v):
            fam[v].extend(make_path(g, p.edges + (e,)) for p in fam[g.tail(e)])
    return fam


def sink_paths(g: FramedGraph) -> list[list[Path]]:
    """For each vertex v, all paths from v to the sink (empty at the sink)."""
    fam: list[list[Path]] = [[] for _ in range(g.vertex_count)]
    fam[g.sink] = [Path((), g.sink)]
    for v in range(g.vertex_count - 1, -1, -1):
        for e in g.outgoing(v):
            fam[v].extend(
                make_path(g, (e,) + p.edges, anchor=v) for p in fam[g.head(e)]
            )
    return fam


def sort_by_in_order(g: FramedGraph, v: int, paths: Iterable[Path]) -> list[Path]:
    """Sort source-to-v paths ascending in the incoming comparison at v."""

    def cmp(a: Path, b: Path) -> int:
        o = cmp_in(g, v, a, b)
        if o is Ordering3.LESS:
            return -1
        if o is Ordering3.GREATER:
            return 1
        return 0

    return sorted(paths, key=cmp_to_key(cmp))


def sort_by_out_order(g: FramedGraph, v: int, paths: Iterable[Path]) -> list[Path]:
    """Sort v-to-sink paths ascending in the outgoing comparison at v."""

    def cmp(a: Path, b: Path) -> int:
        o = cmp_out(g, v, a, b)
        if o is Ordering3.LESS:
            return -1
        if o is Ordering3.GREATER:
            return 1
        return 0

    return sorted(paths, key=cmp_to_key(cmp))


# -- greedy extremal sweeps --------------------------------------------------


def _greedy_sweep(
    g: FramedGraph,
    seed: Sequence[Path],
    context: Sequence[Path],
    ccw: bool,
    banned: frozenset[Path] | set[Path] = frozenset(),
) -> list[Path]:
    """Core sweep shared by the extremal-clique and join/meet algorithms.

    Sweeps the vertices in increasing order; at each vertex tries every
    route through it, iterating the incoming part from the bottom and the
    outgoing part from the top when ``ccw`` (the reverse when not), and
    adds the first candidate coherent with everything accumulated so far
    (and with ``context``) that is not banned.  Finding such a candidate
    ends the scan of outgoing parts for that incoming part, whether or not
    the candidate is new.  Returns the routes in order of first addition,
    seed first.
    """
    ins = source_paths(g)
    outs = sink_paths(g)
    acc: list[Path] = list(seed)
    accset = set(acc)
    for v in range(g.vertex_count):
        in_parts = sort_by_in_order(g, v, ins[v])
        out_parts = sort_by_out_order(g, v, outs[v])
        if ccw:
            in_parts.reverse()
        else:
            out_parts.reverse()
        for pv in in_parts:
            for vq in out_parts:
                cand = make_path(g, pv.edges + vq.edges, anchor=v)
                if cand in banned:
                    continue
                if all(coherent(g, cand, x) for x in acc) and all(
                    coherent(g, cand, x) for x in context
                ):
                    if cand not in accset:
                        acc.append(cand)
                        accset.add(cand)
                    break
    return acc


def _check_pairwise_coherent(g: FramedGraph, paths: Sequence[Path]) -> None:
    for i, p in enumerate(paths):
        for q in paths[i + 1 :]:
            if not coherent(g, p, q):
                raise ValueError(
                    f"paths {p.edges} and {q.edges} are incoherent"
                )


def c_max_sequence(g: FramedGraph, coherent_with: Iterable[Path]) -> list[Path]:
    """Routes of the CCW-most clique coherent with a path set, in the
    order the sweep first adds them."""
    context = list(coherent_with)
    _check_pairwise_coherent(g, context)
    return _greedy_sweep(g, [], context, ccw=True)


def c_min_sequence(g: FramedGraph, coherent_with: Iterable[Path]) -> list[Path]:
    """Routes of the CW-most clique coherent with a path set, in the
    order the sweep first adds them."""
    context = list(coherent_with)
    _check_pairwise_coherent(g, context)
    return _greedy_sweep(g, [], context, ccw=False)


def c_max(g: FramedGraph, coherent_with: Iterable[Path]) -> Clique:
    """The unique CCW-most maximal clique coherent with a set of paths."""
    routes = c_max_sequence(g, coherent_with)
    assert len(routes) == dimension(g) + 1
    return Clique(tuple(sorted(routes, key=lambda r: r.edges)))


def c_min(g: FramedGraph, coherent_with: Iterable[Path]) -> Clique:
    """The unique CW-most maximal clique coherent with a set of paths."""
    routes = c_min_sequence(g, coherent_with)
    assert len(routes) == dimension(g) + 1
    return Clique(tuple(sorted(routes, key=lambda r: r.edges)))


# -- removed sets and join/meet ----------------------------------------------


def rem_ccw(
    g: FramedGraph,
    c1: Clique,
    c2: Clique,
    routes: Sequence[Path] | None = None,
    paths: Sequence[Path] | None = None,
) -> set[Path]:
    """Routes barred from the join sweep: the union of the CCW fans of all
    paths whose CCW fan avoids both cliques."""
    if routes is None:
        routes = enumerate_routes(g)
    if paths is None:
        paths = enumerate_paths(g, min_edges=2)
    both = set(c1.routes) | set(c2.routes)
    removed: set[Path] = set()
    for p in paths:
        fan = ccw_of(g, p, routes)
        if fan and not both.intersection(fan):
            removed.update(fan)
    return removed


def rem_cw(
    g: FramedGraph,
    c1: Clique,
    c2: Clique,
    routes: Sequence[Path] | None = None,
    paths: Sequence[Path] | None = None,
) -> set[Path]:
    """Routes barred from the meet sweep; mirror image of rem_ccw."""
    if routes is None:
        routes = enumerate_routes(g)
    if paths is None:
        paths = enumerate_paths(g, min_edges=2)
    both = set(c1.routes) | set(c2.routes)
    removed: set[Path] = set()
    for p in paths:
        fan = cw_of(g, p, routes)
        if fan and not both.intersection(fan):
            removed.update(fan)
    return removed


def join(
    g: FramedGraph,
    c1: Clique,
    c2: Clique,
    routes: Sequence[Path] | None = None,
    paths: Sequence[Path] | None = None,
) -> Clique:
    """Join of two maximal cliques: the CCW sweep seeded with their
    intersection, skipping the removed routes."""
    banned = rem_ccw(g, c1, c2, routes, paths)
    seed = sorted(set(c1.routes) & set(c2.routes), key=lambda r: r.edges)
    out = _greedy_sweep(g, seed, [], ccw=True, banned=banned)
    assert len(out) == dimension(g) + 1
    return Clique(tuple(sorted(out, key=lambda r: r.edges)))


def meet(
    g: FramedGraph,
    c1: Clique,
    c2: Clique,
    routes: Sequence[Path] | None = None,
    paths: Sequence[Path] | None = None,
) -> Clique:
    """Meet of two maximal cliques; mirror image of join."""
    banned = rem_cw(g, c1, c2, routes, paths)
    seed = sorted(set(c1.routes) & set(c2.routes), key=lambda r: r.edges)
    out = _greedy_sweep(g, seed, [], ccw=False, banned=banned)
    assert len(out) == dimension(g) + 1
    return Clique(tuple(sorted(out, key=lambda r: r.edges)))


def is_cw_from(g: FramedGraph, c1: Clique, c2: Clique) -> bool:
    """Order test on cliques: c1 is below c2 iff no route of c2 is
    clockwise from a route of c1 at any shared vertex."""
    for p in c1.routes:
        for q in c2.routes:
            for v in path_vertices(g, p):
                if v in (g.source, g.sink) or v not in path_vertices(g, q):
                    continue
                if cw_at(g, q, p, v):
                    return False
    return True


# -- the lattice --------------------------------------------------------------


@dataclass(frozen=True)
class FramingLattice:
    """Maximal cliques ordered by CCW rotation, with cached reachability."""

    graph: FramedGraph
    elements: tuple[Clique, ...]
    covers: tuple[tuple[int, int, RotationStep], ...]

    def __post_init__(self):
        n = len(self.elements)
        up_adj: list[list[int]] = [[] for _ in range(n)]
        down_adj: list[list[int]] = [[] for _ in range(n)]
        step_of: dict[tuple[int, int], RotationStep] = {}
        for lo, hi, step in self.covers:
            up_adj[lo].append(hi)
            down_adj[hi].append(lo)
            step_of[(lo, hi)] = step
        order = self._topo_order(up_adj)
        up = [0] * n
        for i in reversed(order):
            mask = 1 << i
            for j in up_adj[i]:
                mask |= up[j]
            up[i] = mask
        down = [0] * n
        for i in order:
            mask = 1 << i
            for j in down_adj[i]:
                mask |= down[j]
            down[i] = mask
        object.__setattr__(self, "_up", up)
        object.__setattr__(self, "_down", down)
        object.__setattr__(self, "_up_adj", tuple(map(tuple, up_adj)))
        object.__setattr__(self, "_down_adj", tuple(map(tuple, down_adj)))
        object.__setattr__(self, "_step_of", step_of)
        object.__setattr__(
            self, "_index", {c: i for i, c in enumerate(self.elements)}
        )

    @staticmethod
    def _topo_order(up_adj: list[list[int]]) -> list[int]:
        n = len(up_adj)
        seen = [False] * n
        order: list[int] = []

        def visit(i: int) -> None:
            stack = [(i, iter(up_adj[i]))]
            seen[i] = True
            while stack:
                node, it = stack[-1]
                for j in it:
                    if not seen[j]:
                        seen[j] = True
                        stack.append((j, iter(up_adj[j])))
                        break
                else:
                    order.append(node)
                    stack.pop()

        for i in range(n):
            if not seen[i]:
                visit(i)
        order.reverse()
        return order

    @property
    def size(self) -> int:
        return len(self.elements)

    def index_of(self, c: Clique) -> int:
        return self._index[c]

    def leq(self, x: int, y: int) -> bool:
        return bool(self._up[x] >> y & 1)

    def upper_covers(self, x: int) -> tuple[int, ...]:
        return self._up_adj[x]

    def lower_covers(self, x: int) -> tuple[int, ...]:
        return self._down_adj[x]

    def cover_step(self, lo: int, hi: int) -> RotationStep:
        return self._step_of[(lo, hi)]

    def bottom(self) -> int:
        lows = [i for i in range(self.size) if not self._down_adj[i]]
        if len(lows) != 1:
            raise StructuralError("minimum element is not unique")
        return lows[0]

    def top(self) -> int:
        highs = [i for i in range(self.size) if not self._up_adj[i]]
        if len(highs) != 1:
            raise StructuralError("maximum element is not unique")
        return highs[0]

    def _extreme_of_mask(self, mask: int, sets: list[int]) -> int:
        best = -1
        for i in range(self.size):
            if mask >> i & 1 and mask & ~sets[i] == 0:
                if best != -1:
                    raise StructuralError("bound is not unique")
                best = i
        if best == -1:
            raise StructuralError("bound does not exist")
        return best

    def join_index(self, x: int, y: int) -> int:
        """Brute-force join: unique minimum of the common up-set."""
        return self._extreme_of_mask(self._up[x] & self._up[y], self._up)

    def meet_index(self, x: int, y: int) -> int:
        """Brute-force meet: unique maximum of the common down-set."""
        return self._extreme_of_mask(self._down[x] & self._down[y], self._down)

    def interval(self, lo: int, hi: int) -> list[int]:
        mask = self._up[lo] & self._down[hi]
        return [i for i in range(self.size) if mask >> i & 1]


def build_lattice(
    g: FramedGraph,
    routes: Sequence[Path] | None = None,
    max_elements: int | None = None,
) -> FramingLattice:
    """Construct the framing lattice: elements are the maximal cliques,
    covers are the CCW rotations between them."""
    if routes is None:
        routes = enumerate_routes(g)
    elements = enumerate_maximal_cliques(g, routes)
    if max_elements is not None and len(elements) > max_elements:
        raise ElementExplosion(max_elements)
    index = {c: i for i, c in enumerate(elements)}
    covers: list[tuple[int, int, RotationStep]] = []
    for i, c in enumerate(elements):
        for nbr, step in rotation_neighbors(g, c, routes):
            if step.direction is Direction.CCW:
                covers.append((i, index[nbr], step))
    covers.sort(key=lambda t: t[:2])
    lattice = FramingLattice(g, tuple(elements), tuple(covers))
    lattice.bottom()
    lattice.top()
    return lattice


def interval_of(
    g: FramedGraph, lattice: FramingLattice, coherent_with: Iterable[Path]
) -> tuple[int, int]:
    """Indices of the least and greatest cliques coherent with a path set;
    the cliques coherent with it are exactly the elements in between."""
    paths = list(coherent_with)
    return (
        lattice.index_of(c_min(g, paths)),
        lattice.index_of(c_max(g, paths)),
    )


# -- polygons -----------------------------------------------------------------


class PolygonShape(Enum):
    SQUARE = "square"
    PENTAGON = "pentagon"
    HEXAGON = "hexagon"


@dataclass(frozen=True)
class Polygon:
    """An interval that is the union of two chains meeting only at the ends.

    Both chains run from ``bottom`` to ``top`` inclusive and have two or
    three cover steps each.
    """

    bottom: int
    top: int
    left_chain: tuple[int, ...]
    right_chain: tuple[int, ...]
    shape: PolygonShape


_SHAPES = {
    (2, 2): PolygonShape.SQUARE,
    (2, 3): PolygonShape.PENTAGON,
    (3, 3): PolygonShape.HEXAGON,
}


def polygon_of(
    lattice: FramingLattice, x: int, y1: int, y2: int, down: bool = False
) -> Polygon:
    """Close a cover fork into its polygon.

    With ``down=False``, y1 and y2 must be distinct upper covers of x and
    the polygon is the interval up to their join; with ``down=True`` they
    must be lower covers and the polygon reaches down to their meet.
    Raises StructuralError if the interval is not two chains sharing only
    their endpoints.
    """
    if y1 == y2:
        raise ValueError("the two covers must be distinct")
    if not down:
        if not {y1, y2} <= set(lattice.upper_covers(x)):
            raise ValueError("y1 and y2 must cover x")
        lo, hi = x, lattice.join_index(y1, y2)
    else:
        if not {y1, y2} <= set(lattice.lower_covers(x)):
            raise ValueError("y1 and y2 must be covered by x")
        lo, hi = lattice.meet_index(y1, y2), x
    inner = [z for z in lattice.interval(lo, hi) if z not in (lo, hi)]
    side1 = [z for z in inner if lattice.leq(y1, z) or lattice.leq(z, y1)]
    side2 = [z for z in inner if lattice.leq(y2, z) or lattice.leq(z, y2)]
    if set(side1) & set(side2) or set(side1) | set(side2) != set(inner):
        raise StructuralError("interval does not split into two chains")
    for side in (side1, side2):
        if not 1 <= len(side) <= 2:
            raise StructuralError("chain length outside the polygon range")
        for a in side:
            for b in side:
                if not (lattice.leq(a, b) or lattice.leq(b, a)):
                    raise StructuralError("side of the interval is not a chain")
    for a in side1:
        for b in side2:
            if lattice.leq(a, b) or lattice.leq(b, a):
                raise StructuralError("the two sides are not incomparable")
    chain1 = (lo, *sorted(side1, key=lambda z: len(lattice.interval(lo, z))), hi)
    chain2 = (lo, *sorted(side2, key=lambda z: len(lattice.interval(lo, z))), hi)
    for chain in (chain1, chain2):
        for a, b in zip(chain, chain[1:]):
            if b not in lattice.upper_covers(a):
                raise StructuralError("polygon side is not a saturated chain")
    shape = _SHAPES[tuple(sorted((len(chain1) - 1, len(chain2) - 1)))]
    return Polygon(lo, hi, chain1, chain2, shape)


# -- property checks -----------------------------------------------------------


@dataclass
class CheckReport:
    name: str
    passed: bool
    violations: list = field(default_factory=list)


def semidistributive_violations(
    size: int,
    join_fn: Callable[[int, int], int],
    meet_fn: Callable[[int, int], int],
) -> list[tuple]:
    """All triples violating either semidistributive law."""
    bad: list[tuple] = []
    for x in range(size):
        for y in range(size):
            for z in range(y + 1, size):
                if join_fn(x, y) == join_fn(x, z):
                    if join_fn(x, meet_fn(y, z)) != join_fn(x, y):
                        bad.append(("join", x, y, z))
                if meet_fn(x, y) == meet_fn(x, z):
                    if meet_fn(x, join_fn(y, z)) != meet_fn(x, y):
                        bad.append(("meet", x, y, z))
    return bad


def check_semidistributive(lattice: FramingLattice) -> CheckReport:
    """Exhaustively verify both semidistributive laws."""
    bad = semidistributive_violations(
        lattice.size, lattice.join_index, lattice.meet_index
    )
    return CheckReport("semidistributive", not bad, bad)


def all_polygons(lattice: FramingLattice) -> list[Polygon]:
    """Every polygon of the lattice, one per upward cover fork, deduplicated."""
    seen: dict[tuple[int, int], Polygon] = {}
    for x in range(lattice.size):
        ups = lattice.upper_covers(x)
        for i, y1 in enumerate(ups):
            for y2 in ups[i + 1 :]:
                poly = polygon_of(lattice, x, y1, y2)
                seen.setdefault((poly.bottom, poly.top), poly)
    return [seen[k] for k in sorted(seen)]


def _label_rank(g: FramedGraph, locus: Path) -> int:
    vs = path_vertices(g, locus)
    return max(vs) - min(vs)


def check_hh(lattice: FramingLattice) -> CheckReport:
    """Verify the labeled polygon conditions with the locus labeling.

    On every polygon the first label of one chain must equal the last
    label of the other, and on three-step chains the middle label must
    have strictly larger vertex span than the two outer ones.
    """
    g = lattice.graph
    bad: list[tuple] = []
    for poly in all_polygons(lattice):
        chains = []
        for chain in (poly.left_chain, poly.right_chain):
            chains.append(
                [lattice.cover_step(a, b).locus for a, b in zip(chain, chain[1:])]
            )
        l1, l2 = chains
        if l1[0] != l2[-1] or l2[0] != l1[-1]:
            bad.append(("opposite-labels", poly.bottom, poly.top))
        for labels in (l1, l2):
            if len(labels) == 3:
                r = [_label_rank(g, p) for p in labels]
                if not (r[0] < r[1] > r[2]):
                    bad.append(("rank-unimodality", poly.bottom, poly.top))
    return CheckReport("hh-labeling", not bad, bad)


def check_lattice(lattice: FramingLattice) -> CheckReport:
    """Exhaustively verify that every pair has a join and a meet."""
    bad: list[tuple] = []
    for x in range(lattice.size):
        for y in range(x + 1, lattice.size):
            for name, op in (
                ("join", lattice.join_index),
                ("meet", lattice.meet_index),
            ):
                try:
                    op(x, y)
                except StructuralError:
                    bad.append((name, x, y))
    return CheckReport("lattice", not bad, bad)


def check_polygons(lattice: FramingLattice) -> CheckReport:
    """Verify every pair of upper covers closes into a square, pentagon,
    or hexagon interval."""
    bad: list[tuple] = []
    for x in range(lattice.size):
        ups = lattice.upper_covers(x)
        for i, y1 in enumerate(ups):
            for y2 in ups[i + 1 :]:
                try:
                    polygon_of(lattice, x, y1, y2)
                except StructuralError:
                    bad.append((x, y1, y2))
    return CheckReport("polygons", not bad, bad)


def check_triangle_free(lattice: FramingLattice) -> CheckReport:
    """Verify the rotation adjacency has no triangle.

    Covers, read undirected, connect maximal cliques sharing a
    codimension-1 face (the dual graph of the triangulation); no three
    may be pairwise adjacent.
    """
    adj: list[set[int]] = [set() for _ in range(lattice.size)]
    for lo, hi, _ in lattice.covers:
        adj[lo].add(hi)
        adj[hi].add(lo)
    bad: list[tuple] = []
    for x in range(lattice.size):
        for y in sorted(adj[x]):
            if y <= x:
                continue
            for z in sorted(adj[x] & adj[y]):
                if z > y:
                    bad.append((x, y, z))
    return CheckReport("triangle-free", not bad, bad)


def count_linear_intervals(lattice: FramingLattice) -> dict[int, int]:
    """For each k, how many intervals of the lattice are chains with k
    cover steps."""
    counts: dict[int, int] = {}
    for x in range(lattice.size):
        for y in range(lattice.size):
            if not lattice.leq(x, y):
                continue
            members = lattice.interval(x, y)
            is_chain = all(
                lattice.leq(a, b) or lattice.leq(b, a)
                for i, a in enumerate(members)
                for b in members[i + 1 :]
            )
            if is_chain:
                k = len(members) - 1
                counts[k] = counts.get(k, 0) + 1
    return counts


# -- serialization -------------------------------------------------------------


def serialize_path(p: Path) -> dict:
    return {"edges": list(p.edges), "anchor": p.anchor}


def serialize_lattice(lattice: FramingLattice) -> dict:
    return {
        "elements": [serialize_clique(c) for c in lattice.elements],
        "covers": [
            {
                "lo": lo,
                "hi": hi,
                "removed": list(step.removed.edges),
                "added": list(step.added.edges),
                "locus": serialize_path(step.locus),
            }
            for lo, hi, step in lattice.covers
        ],
    }


def to_dot(lattice: FramingLattice, edge_labels: bool = False) -> str:
    """GraphViz rendering of the Hasse diagram (covers point upward)."""
    lines = ["digraph lattice {", "  rankdir=BT;"]
    for i in range(lattice.size):
        lines.append(f'  n{i} [label="{i}"];')
    for lo, hi, step in lattice.covers:
        if edge_labels:
            vs = path_vertices(lattice.graph, step.locus)
            label = "-".join(map(str, vs))
            lines.append(f'  n{lo} -> n{hi} [label="{label}"];')
        else:
            lines.append(f"  n{lo} -> n{hi};")
    lines.append("}")
    return "\n".join(lines)
