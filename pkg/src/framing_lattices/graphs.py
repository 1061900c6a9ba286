"""Framed flow graphs: representation, validation, canonical JSON form.

A flow graph is a directed acyclic multigraph on vertices 0..n-1 given in
topological order (every edge points forward), with a unique source 0 and
unique sink n-1. A framing linearly orders the incoming and the outgoing
edges at every vertex; position 0 is the top of the drawing ("increasing
from top to bottom"). Edges carry contiguous integer ids 0..m-1 so that
parallel edges stay distinguishable.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Iterable, Sequence


class SchemaError(ValueError):
    """A document does not conform to the framed-graph JSON schema."""


@dataclass(frozen=True)
class FlowGraph:
    """Directed acyclic multigraph; ``edges[e]`` is the pair (tail, head)."""

    vertex_count: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        object.__setattr__(
            self, "edges", tuple((int(t), int(h)) for t, h in self.edges)
        )

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def tail(self, e: int) -> int:
        return self.edges[e][0]

    def head(self, e: int) -> int:
        return self.edges[e][1]


@dataclass(frozen=True)
class Framing:
    """Per-vertex linear orders on incoming and outgoing edge ids.

    ``in_order[v]`` lists In(v) from top to bottom of the drawing, and
    ``out_order[v]`` lists Out(v) likewise.
    """

    in_order: tuple[tuple[int, ...], ...]
    out_order: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(
            self, "in_order", tuple(tuple(int(e) for e in seq) for seq in self.in_order)
        )
        object.__setattr__(
            self, "out_order", tuple(tuple(int(e) for e in seq) for seq in self.out_order)
        )


@dataclass(frozen=True)
class FramedGraph:
    """A flow graph together with a framing of every vertex."""

    graph: FlowGraph
    framing: Framing

    def __post_init__(self):
        in_rank: list[dict[int, int]] = []
        out_rank: list[dict[int, int]] = []
        for v in range(self.graph.vertex_count):
            if v < len(self.framing.in_order):
                in_rank.append({e: i for i, e in enumerate(self.framing.in_order[v])})
            else:
                in_rank.append({})
            if v < len(self.framing.out_order):
                out_rank.append({e: i for i, e in enumerate(self.framing.out_order[v])})
            else:
                out_rank.append({})
        object.__setattr__(self, "_in_rank", in_rank)
        object.__setattr__(self, "_out_rank", out_rank)

    # -- structure shortcuts ----------------------------------------------

    @property
    def vertex_count(self) -> int:
        return self.graph.vertex_count

    @property
    def edge_count(self) -> int:
        return self.graph.edge_count

    @property
    def source(self) -> int:
        return 0

    @property
    def sink(self) -> int:
        return self.graph.vertex_count - 1

    def tail(self, e: int) -> int:
        return self.graph.tail(e)

    def head(self, e: int) -> int:
        return self.graph.head(e)

    def incoming(self, v: int) -> tuple[int, ...]:
        return self.framing.in_order[v]

    def outgoing(self, v: int) -> tuple[int, ...]:
        return self.framing.out_order[v]

    def in_rank(self, v: int, e: int) -> int:
        """Position of edge e in the incoming order at v (0 = top)."""
        return self._in_rank[v][e]

    def out_rank(self, v: int, e: int) -> int:
        return self._out_rank[v][e]

    def inner_vertices(self) -> range:
        return range(1, self.vertex_count - 1)


def framed_graph(
    vertex_count: int,
    edges: Sequence[tuple[int, int]],
    in_order: Sequence[Sequence[int]],
    out_order: Sequence[Sequence[int]],
) -> FramedGraph:
    return FramedGraph(
        FlowGraph(vertex_count, tuple(edges)),
        Framing(tuple(map(tuple, in_order)), tuple(map(tuple, out_order))),
    )


def dimension(g: FramedGraph) -> int:
    """Dimension |E| - |V| + 1 of the flow polytope; facets have dim+1 routes."""
    return g.edge_count - g.vertex_count + 1


def validate(g: FramedGraph) -> list[str]:
    """All invariant violations of a framed graph; empty list iff valid."""
    issues: list[str] = []
    n, m = g.graph.vertex_count, g.graph.edge_count
    if n < 2:
        issues.append("graph must have at least two vertices")
        return issues

    for e, (t, h) in enumerate(g.graph.edges):
        if not (0 <= t < n and 0 <= h < n):
            issues.append(f"edge {e} endpoint out of range")
        elif t >= h:
            issues.append(f"edge {e} ({t},{h}) not forward-oriented")

    indeg = [0] * n
    outdeg = [0] * n
    succ: list[list[int]] = [[] for _ in range(n)]
    pred: list[list[int]] = [[] for _ in range(n)]
    for t, h in g.graph.edges:
        if 0 <= t < n and 0 <= h < n and t < h:
            indeg[h] += 1
            outdeg[t] += 1
            succ[t].append(h)
            pred[h].append(t)

    sources = [v for v in range(n) if indeg[v] == 0]
    sinks = [v for v in range(n) if outdeg[v] == 0]
    if sources != [0]:
        issues.append(f"source not unique: in-degree 0 at {sources}")
    if sinks != [n - 1]:
        issues.append(f"sink not unique: out-degree 0 at {sinks}")

    reach = [False] * n
    reach[0] = True
    for v in range(n):
        if reach[v]:
            for w in succ[v]:
                reach[w] = True
    coreach = [False] * n
    coreach[n - 1] = True
    for v in reversed(range(n)):
        if coreach[v]:
            for w in pred[v]:
                coreach[w] = True
    for v in range(n):
        if not (reach[v] and coreach[v]):
            issues.append(f"vertex {v} not on any source-to-sink path")

    fin, fout = g.framing.in_order, g.framing.out_order
    if len(fin) != n or len(fout) != n:
        issues.append("framing must list in and out orders for every vertex")
        return issues
    for v in range(n):
        want_in = sorted(e for e, (_, h) in enumerate(g.graph.edges) if h == v)
        want_out = sorted(e for e, (t, _) in enumerate(g.graph.edges) if t == v)
        if sorted(fin[v]) != want_in or len(set(fin[v])) != len(fin[v]):
            issues.append(f"in_order[{v}] is not a permutation of the incoming edges")
        if sorted(fout[v]) != want_out or len(set(fout[v])) != len(fout[v]):
            issues.append(f"out_order[{v}] is not a permutation of the outgoing edges")
    return issues


def serialize(g: FramedGraph) -> dict[str, Any]:
    """Canonical JSON-ready document; field order is fixed for stable bytes."""
    return {
        "vertices": g.graph.vertex_count,
        "edges": [
            {"id": e, "tail": t, "head": h} for e, (t, h) in enumerate(g.graph.edges)
        ],
        "framing": {
            "in": [list(seq) for seq in g.framing.in_order],
            "out": [list(seq) for seq in g.framing.out_order],
        },
    }


def deserialize(doc: dict[str, Any] | str) -> FramedGraph:
    """Parse and fully validate a framed-graph document.

    Raises SchemaError naming the offending field on malformed input, and
    with the validation report when the graph breaks a structural invariant.
    """
    if isinstance(doc, str):
        try:
            doc = json.loads(doc)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise SchemaError("document must be a JSON object")

    n = doc.get("vertices")
    if not isinstance(n, int) or n < 0:
        raise SchemaError('field "vertices" must be a nonnegative integer')
    raw_edges = doc.get("edges")
    if not isinstance(raw_edges, list):
        raise SchemaError('field "edges" must be a list')
    slots: dict[int, tuple[int, int]] = {}
    for item in raw_edges:
        if not isinstance(item, dict) or not {"id", "tail", "head"} <= set(item):
            raise SchemaError('each edge needs fields "id", "tail", "head"')
        e, t, h = item["id"], item["tail"], item["head"]
        if not all(isinstance(x, int) for x in (e, t, h)):
            raise SchemaError('edge fields "id", "tail", "head" must be integers')
        if e in slots:
            raise SchemaError(f'duplicate edge "id" {e}')
        slots[e] = (t, h)
    if sorted(slots) != list(range(len(slots))):
        raise SchemaError('edge "id" values must be contiguous from 0')
    edges = tuple(slots[e] for e in range(len(slots)))

    framing = doc.get("framing")
    if not isinstance(framing, dict) or set(framing) != {"in", "out"}:
        raise SchemaError('field "framing" must be an object with "in" and "out"')
    for key in ("in", "out"):
        seqs = framing[key]
        if (
            not isinstance(seqs, list)
            or len(seqs) != n
            or not all(
                isinstance(s, list) and all(isinstance(e, int) for e in s) for s in seqs
            )
        ):
            raise SchemaError(
                f'field "framing.{key}" must be a list of {n} lists of edge ids'
            )

    g = framed_graph(n, edges, framing["in"], framing["out"])
    issues = validate(g)
    if issues:
        raise SchemaError("; ".join(issues))
    return g
