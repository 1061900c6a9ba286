"""Builders for the named framed graphs, plus lattice-preserving surgery.

Framings follow the drawing convention: position 0 in an order is the top
edge. For graphs drawn with arcs over/under a horizontal backbone, the
top-to-bottom order at a vertex is: above-arcs by decreasing span, then
backbone edges, then below-arcs by increasing span. The length framing
(orders increasing in edge length) is the special case where every arc is
drawn below; ties between equal-length edges are broken by edge id.
"""

from __future__ import annotations

import heapq
from typing import Sequence

from .graphs import FramedGraph, framed_graph


def _framing_by_level(
    vertex_count: int, edges: Sequence[tuple[int, int]], level: Sequence[int]
) -> tuple[list[list[int]], list[list[int]]]:
    """Top-to-bottom orders from a per-edge drawing height.

    Arcs above the backbone get level +span, backbone edges level 0, arcs
    below level -span; sorting incident edges by decreasing level (ties by
    id) realizes the nesting of the drawing at every vertex.
    """
    in_order: list[list[int]] = [[] for _ in range(vertex_count)]
    out_order: list[list[int]] = [[] for _ in range(vertex_count)]
    for e, (t, h) in enumerate(edges):
        out_order[t].append(e)
        in_order[h].append(e)
    for v in range(vertex_count):
        in_order[v].sort(key=lambda e: (-level[e], e))
        out_order[v].sort(key=lambda e: (-level[e], e))
    return in_order, out_order


def _length_framing(vertex_count: int, edges: Sequence[tuple[int, int]]) -> tuple[list[list[int]], list[list[int]]]:
    return _framing_by_level(vertex_count, edges, [t - h for t, h in edges])


def oruga(n: int) -> FramedGraph:
    """Caterpillar of n gaps: two parallel edges between i and i+1.

    Edge 2k is the top edge of gap k and 2k+1 the bottom one. The flow
    polytope is an n-cube; the framing lattice is the weak order on
    permutations of [n].
    """
    if n < 1:
        raise ValueError("oruga requires n >= 1")
    return multioruga([1] * n)


def multioruga(s: Sequence[int]) -> FramedGraph:
    """Caterpillar with s_k + 1 parallel edges in gap k, drawn nested."""
    if not s or any(k < 1 for k in s):
        raise ValueError("multioruga requires a nonempty composition of positive parts")
    edges: list[tuple[int, int]] = []
    for k, parts in enumerate(s):
        edges.extend((k, k + 1) for _ in range(parts + 1))
    n = len(s) + 1
    in_order, out_order = _framing_by_level(n, edges, [0] * len(edges))
    return framed_graph(n, edges, in_order, out_order)


def caracol(n: int, variant: str = "tamari") -> FramedGraph:
    """Path 0..n-1 plus a source fan (0,i) and a sink fan (j,n-1).

    With the length framing ("tamari") the framing lattice is the rotation
    order on triangulations; reversing every inner incoming order ("dyck")
    gives the box-addition order on lattice paths instead.
    """
    if n < 4:
        raise ValueError("caracol requires n >= 4")
    if variant not in ("tamari", "dyck"):
        raise ValueError(f"unknown caracol variant {variant!r}")
    edges = [(i, i + 1) for i in range(n - 1)]
    edges += [(0, i) for i in range(2, n - 1)]
    edges += [(j, n - 1) for j in range(1, n - 2)]
    in_order, out_order = _length_framing(n, edges)
    if variant == "dyck":
        for v in range(1, n - 1):
            in_order[v] = in_order[v][::-1]
    return framed_graph(n, edges, in_order, out_order)


def cambrian_caracol(eps: Sequence[int]) -> FramedGraph:
    """Caracol redrawn according to a sign sequence.

    Vertices are s, the spine 1..n, and t. Besides the backbone, each sign
    position a in 1..n contributes an arc (s, a) and an arc (a-1, t), both
    drawn above the backbone when eps[a-1] is +1 and below when -1. The
    all-minus sequence reproduces the length-framed caracol drawing.
    """
    signs = [1 if e in (1, "+") else -1 for e in eps]
    n = len(signs)
    if n < 1:
        raise ValueError("cambrian_caracol requires at least one sign")
    vertex_count = n + 3
    edges = [(i, i + 1) for i in range(n + 2)]
    level = [0] * (n + 2)
    for a in range(1, n + 1):
        edges.append((0, a + 1))
        level.append(signs[a - 1] * (a + 1))
        edges.append((a, n + 2))
        level.append(signs[a - 1] * (n + 2 - a))
    in_order, out_order = _framing_by_level(vertex_count, edges, level)
    return framed_graph(vertex_count, edges, in_order, out_order)


def boolean_graph(n: int) -> FramedGraph:
    """Two parallel edges s->i and two parallel i->t for each i in [n]."""
    if n < 1:
        raise ValueError("boolean_graph requires n >= 1")
    edges: list[tuple[int, int]] = []
    for i in range(1, n + 1):
        edges += [(0, i), (0, i), (i, n + 1), (i, n + 1)]
    in_order, out_order = _framing_by_level(n + 2, edges, [0] * len(edges))
    return framed_graph(n + 2, edges, in_order, out_order)


def complete_graph(n: int) -> FramedGraph:
    """Complete graph directed toward larger vertices, length framing."""
    if n < 2:
        raise ValueError("complete_graph requires n >= 2")
    edges = [(i, j) for i in range(n) for j in range(i + 1, n)]
    in_order, out_order = _length_framing(n, edges)
    return framed_graph(n, edges, in_order, out_order)


def reverse_graph(g: FramedGraph) -> FramedGraph:
    """Mirror the drawing left-to-right: reverse all edges, renumber so the
    sink becomes vertex 0, and swap the roles of in and out orders."""
    n = g.vertex_count
    edges = [(n - 1 - h, n - 1 - t) for t, h in g.graph.edges]
    in_order = [g.framing.out_order[n - 1 - v] for v in range(n)]
    out_order = [g.framing.in_order[n - 1 - v] for v in range(n)]
    return framed_graph(n, edges, in_order, out_order)


def reverse_framing(g: FramedGraph) -> FramedGraph:
    """Mirror the drawing top-to-bottom: reverse every in/out order."""
    return framed_graph(
        g.vertex_count,
        g.graph.edges,
        [seq[::-1] for seq in g.framing.in_order],
        [seq[::-1] for seq in g.framing.out_order],
    )


def contract_idle_edge(g: FramedGraph, e: int) -> FramedGraph:
    """Contract an edge whose tail has out-degree 1 or head in-degree 1.

    The merged vertex splices the contracted end's fan into the slot the
    edge occupied, which leaves the framing lattice unchanged up to
    isomorphism. Vertices are renumbered by the smallest topological order.
    """
    u, w = g.graph.edges[e]
    if len(g.outgoing(u)) != 1 and len(g.incoming(w)) != 1:
        raise ValueError(f"edge {e} is not idle")
    if g.vertex_count == 2:
        raise ValueError("cannot contract the only edge of a two-vertex graph")

    def splice(seq: Sequence[int], replacement: Sequence[int]) -> list[int]:
        out: list[int] = []
        for x in seq:
            out.extend(replacement) if x == e else out.append(x)
        return out

    merged_in = splice(g.framing.in_order[w], g.framing.in_order[u])
    merged_out = splice(g.framing.out_order[u], g.framing.out_order[w])

    # contract on old labels, with u standing for the merged vertex
    old_edges = [
        (u if t == w else t, u if h == w else h)
        for eid, (t, h) in enumerate(g.graph.edges)
        if eid != e
    ]
    old_in = {
        v: (merged_in if v == u else g.framing.in_order[v])
        for v in range(g.vertex_count)
        if v != w
    }
    old_out = {
        v: (merged_out if v == u else g.framing.out_order[v])
        for v in range(g.vertex_count)
        if v != w
    }

    # smallest topological order of the contracted graph
    nodes = sorted(old_in)
    indeg = {v: 0 for v in nodes}
    succ = {v: [] for v in nodes}
    for t, h in old_edges:
        indeg[h] += 1
        succ[t].append(h)
    heap = [v for v in nodes if indeg[v] == 0]
    heapq.heapify(heap)
    relabel: dict[int, int] = {}
    while heap:
        v = heapq.heappop(heap)
        relabel[v] = len(relabel)
        for h in succ[v]:
            indeg[h] -= 1
            if indeg[h] == 0:
                heapq.heappush(heap, h)
    if len(relabel) != len(nodes):
        raise ValueError("contraction produced a cycle")

    eid_map = {old: old - (old > e) for old in range(g.edge_count) if old != e}
    edges = [(relabel[t], relabel[h]) for t, h in old_edges]
    n = len(nodes)
    in_order = [[] for _ in range(n)]
    out_order = [[] for _ in range(n)]
    for v in nodes:
        in_order[relabel[v]] = [eid_map[x] for x in old_in[v]]
        out_order[relabel[v]] = [eid_map[x] for x in old_out[v]]
    return framed_graph(n, edges, in_order, out_order)


def swap_parallel(g: FramedGraph, e: int, e2: int) -> FramedGraph:
    """Swap two consecutive parallel boundary edges in the inner order.

    For parallel edges out of the source, swaps them in the incoming order
    at their head; for parallel edges into the sink, in the outgoing order
    at their tail. Both moves preserve the framing lattice.
    """
    if e == e2 or g.graph.edges[e] != g.graph.edges[e2]:
        raise ValueError("edges are not parallel")
    t, h = g.graph.edges[e]
    done = False
    in_order = [list(seq) for seq in g.framing.in_order]
    out_order = [list(seq) for seq in g.framing.out_order]
    if t == g.source:
        seq = in_order[h]
        i, j = seq.index(e), seq.index(e2)
        if abs(i - j) != 1:
            raise ValueError("edges are not consecutive in the incoming order")
        seq[i], seq[j] = seq[j], seq[i]
        done = True
    if h == g.sink:
        seq = out_order[t]
        i, j = seq.index(e), seq.index(e2)
        if abs(i - j) != 1:
            raise ValueError("edges are not consecutive in the outgoing order")
        seq[i], seq[j] = seq[j], seq[i]
        done = True
    if not done:
        raise ValueError("parallel pair must leave the source or enter the sink")
    return framed_graph(g.vertex_count, g.graph.edges, in_order, out_order)


def from_preset(name: str) -> FramedGraph:
    """Build a named graph from a preset string such as ``oruga:3``,
    ``multioruga:2,2,1``, ``caracol:6:dyck``, ``cambrian:+-+-``,
    ``boolean:3``, or ``complete:4``."""
    parts = name.split(":")
    kind = parts[0]
    try:
        if kind == "oruga" and len(parts) == 2:
            return oruga(int(parts[1]))
        if kind == "multioruga" and len(parts) == 2:
            return multioruga([int(x) for x in parts[1].split(",")])
        if kind == "caracol" and len(parts) in (2, 3):
            return caracol(int(parts[1]), parts[2] if len(parts) == 3 else "tamari")
        if kind == "cambrian" and len(parts) == 2:
            if set(parts[1]) - {"+", "-"}:
                raise ValueError(f"bad sign string {parts[1]!r}")
            return cambrian_caracol([1 if c == "+" else -1 for c in parts[1]])
        if kind == "boolean" and len(parts) == 2:
            return boolean_graph(int(parts[1]))
        if kind == "complete" and len(parts) == 2:
            return complete_graph(int(parts[1]))
    except ValueError:
        raise
    raise ValueError(f"unknown preset {name!r}")
