"""Hypothesis strategies shared across the test suite."""

from __future__ import annotations

from hypothesis import strategies as st

from framing_lattices.graphs import FramedGraph, framed_graph


@st.composite
def framed_graphs(draw, max_vertices: int = 6, max_extra_edges: int = 3) -> FramedGraph:
    """Random valid framed flow graph (multigraphs included).

    A skeleton guarantees every vertex is on a source-to-sink path: each
    non-source vertex gets an incoming edge from an earlier vertex and each
    non-sink vertex an outgoing edge to a later one. Extra edges may repeat
    pairs, producing parallel edges. Framings are drawn as random
    permutations of the incident edges.
    """
    n = draw(st.integers(2, max_vertices))
    edges: list[tuple[int, int]] = []
    for v in range(1, n):
        edges.append((draw(st.integers(0, v - 1)), v))
    for v in range(n - 1):
        if not any(t == v for t, _ in edges):
            edges.append((v, draw(st.integers(v + 1, n - 1))))
    extra = draw(st.integers(0, max_extra_edges))
    for _ in range(extra):
        t = draw(st.integers(0, n - 2))
        h = draw(st.integers(t + 1, n - 1))
        edges.append((t, h))

    in_ids: list[list[int]] = [[] for _ in range(n)]
    out_ids: list[list[int]] = [[] for _ in range(n)]
    for e, (t, h) in enumerate(edges):
        out_ids[t].append(e)
        in_ids[h].append(e)
    in_order = [draw(st.permutations(seq)) for seq in in_ids]
    out_order = [draw(st.permutations(seq)) for seq in out_ids]
    return framed_graph(n, edges, in_order, out_order)
