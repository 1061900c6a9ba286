"""Representation, validation, and serialization of framed graphs."""

import json

import pytest
from hypothesis import given, settings

from framing_lattices.constructors import boolean_graph, caracol, multioruga, oruga
from framing_lattices.graphs import (
    SchemaError,
    FramedGraph,
    deserialize,
    dimension,
    framed_graph,
    serialize,
    validate,
)
from strategies import framed_graphs


def test_validate_accepts_constructors():
    for g in (oruga(2), multioruga([2, 2, 1]), caracol(6), boolean_graph(3)):
        assert validate(g) == []


def test_validate_rejects_backward_edge():
    g = framed_graph(3, [(0, 2), (2, 1)], [[], [1], [0]], [[0], [], [1]])
    assert any("not forward-oriented" in v for v in validate(g))


def test_validate_rejects_multiple_sources_and_sinks():
    g = framed_graph(4, [(0, 3), (1, 3), (0, 2)], [[], [], [2], [0, 1]], [[0, 2], [1], [], []])
    issues = validate(g)
    assert any("source not unique" in v for v in issues)
    assert any("sink not unique" in v for v in issues)
    assert any("not on any source-to-sink path" in v for v in issues)


def test_validate_rejects_bad_framing():
    g = framed_graph(2, [(0, 1), (0, 1)], [[], [0]], [[0, 1], []])
    issues = validate(g)
    assert any("in_order[1]" in v for v in issues)
    g = framed_graph(2, [(0, 1)], [[], [0, 0]], [[0], []])
    assert any("in_order[1]" in v for v in validate(g))


def test_dimension():
    assert dimension(framed_graph(2, [(0, 1)], [[], [0]], [[0], []])) == 0
    for n in (1, 2, 3, 5):
        assert dimension(oruga(n)) == n
    assert dimension(boolean_graph(3)) == 12 - 5 + 1


def test_serialize_shape():
    doc = serialize(oruga(1))
    assert doc["vertices"] == 2
    assert doc["edges"] == [
        {"id": 0, "tail": 0, "head": 1},
        {"id": 1, "tail": 0, "head": 1},
    ]
    assert doc["framing"]["in"] == [[], [0, 1]]
    assert doc["framing"]["out"] == [[0, 1], []]


def test_round_trip_on_constructors():
    for g in (oruga(3), multioruga([2, 1]), caracol(5, "dyck"), boolean_graph(2)):
        assert deserialize(serialize(g)) == g
        assert deserialize(json.dumps(serialize(g))) == g


@pytest.mark.parametrize(
    "mutate, fragment",
    [
        (lambda d: d.pop("vertices"), "vertices"),
        (lambda d: d.__setitem__("edges", 3), "edges"),
        (lambda d: d["edges"][0].pop("tail"), "tail"),
        (lambda d: d["edges"][0].__setitem__("id", 5), "contiguous"),
        (lambda d: d.__setitem__("framing", {"in": []}), "framing"),
        (lambda d: d["framing"]["in"].pop(), "framing.in"),
    ],
)
def test_deserialize_schema_errors(mutate, fragment):
    doc = serialize(oruga(2))
    mutate(doc)
    with pytest.raises(SchemaError) as err:
        deserialize(doc)
    assert fragment in str(err.value)


def test_deserialize_rejects_non_incident_framing():
    doc = serialize(oruga(1))
    doc["framing"]["in"] = [[], [0, 0]]
    with pytest.raises(SchemaError):
        deserialize(doc)
    doc = serialize(framed_graph(3, [(0, 1), (1, 2)], [[], [0], [1]], [[0], [1], []]))
    doc["framing"]["in"][1] = [1]
    with pytest.raises(SchemaError):
        deserialize(doc)


def test_framed_graph_accessors():
    g = caracol(5)
    assert g.source == 0 and g.sink == 4
    assert g.tail(0) == 0 and g.head(0) == 1
    assert list(g.inner_vertices()) == [1, 2, 3]
    assert g.in_rank(2, g.incoming(2)[0]) == 0
    assert g.out_rank(2, g.outgoing(2)[-1]) == len(g.outgoing(2)) - 1


@settings(max_examples=60, deadline=None)
@given(framed_graphs())
def test_random_graphs_validate_and_round_trip(g: FramedGraph):
    assert validate(g) == []
    assert deserialize(serialize(g)) == g
