"""End-to-end tests of the command-line interface."""

import io
import json
import sys
from contextlib import redirect_stderr, redirect_stdout

from framing_lattices.cli import main
from framing_lattices.graphs import deserialize
from framing_lattices.oracles import Poset, poset_isomorphic, tamari


def run_cli(argv, stdin=""):
    """Invoke the CLI in-process; returns (exit code, stdout, stderr)."""
    out, err = io.StringIO(), io.StringIO()
    old_stdin = sys.stdin
    sys.stdin = io.StringIO(stdin)
    try:
        with redirect_stdout(out), redirect_stderr(err):
            try:
                code = main(argv)
            except SystemExit as stop:
                code = stop.code if isinstance(stop.code, int) else 2
    finally:
        sys.stdin = old_stdin
    return code, out.getvalue(), err.getvalue()


def grid_doc(points):
    return json.dumps({"points": [list(p) for p in points]})


STAIRCASE_3 = [
    (0, 0), (0, 1), (0, 2), (0, 3),
    (1, 1), (1, 2), (1, 3),
    (2, 2), (2, 3),
    (3, 3),
]


# -- graph input and piping ---------------------------------------------------------


def test_build_then_lattice_pipes():
    code, doc, _ = run_cli(["build", "--preset", "oruga:3"])
    assert code == 0
    piped = run_cli(["lattice"], stdin=doc)
    direct = run_cli(["lattice", "--preset", "oruga:3"])
    assert piped == direct
    lattice = json.loads(piped[1])
    assert len(lattice["elements"]) == 6
    assert len(lattice["covers"]) == 6


def test_build_requires_preset():
    code, _, err = run_cli(["build"])
    assert code == 1
    assert err.startswith("error: build requires --preset")


def test_validate_reports_problems():
    code, out, _ = run_cli(["validate", "--preset", "oruga:2"])
    assert (code, out) == (0, "ok\n")
    doc = json.dumps(
        {
            "vertices": 3,
            "edges": [
                {"id": 0, "tail": 0, "head": 2},
                {"id": 1, "tail": 1, "head": 2},
            ],
            "framing": {"in": [[], [], [0, 1]], "out": [[0], [1], []]},
        }
    )
    code, out, _ = run_cli(["validate"], stdin=doc)
    assert code == 1
    assert "source not unique" in out
    code, _, err = run_cli(["routes"], stdin="not json")
    assert code == 1
    assert err.startswith("error: not valid JSON")


def test_routes_are_sorted_arrays():
    code, out, _ = run_cli(["routes", "--preset", "boolean:2"])
    assert code == 0
    routes = json.loads(out)
    assert len(routes) == 8
    assert all(r == sorted(r) for r in routes)
    assert len({tuple(r) for r in routes}) == 8


def test_cliques_listing():
    code, out, _ = run_cli(["cliques", "--preset", "oruga:2"])
    assert code == 0
    cliques = json.loads(out)
    assert len(cliques) == 2
    assert all(len(c) == 3 for c in cliques)


# -- checks and intervals -----------------------------------------------------------


def test_check_passes_on_presets():
    for preset in ("oruga:3", "caracol:5:dyck", "cambrian:+-"):
        code, out, _ = run_cli(["check", "--preset", preset])
        assert code == 0
        lines = out.strip().splitlines()
        assert lines == [
            "lattice: pass",
            "semidistributive: pass",
            "polygons: pass",
            "hh: pass",
            "triangle-free: pass",
        ]


def test_check_subset_and_unknown():
    code, out, _ = run_cli(
        ["check", "--preset", "oruga:2", "--props", "lattice,triangle-free"]
    )
    assert code == 0
    assert out == "lattice: pass\ntriangle-free: pass\n"
    code, _, err = run_cli(["check", "--preset", "oruga:2", "--props", "magic"])
    assert code == 1
    assert "unknown properties: magic" in err


def test_linear_interval_counts():
    for preset in ("caracol:6:tamari", "caracol:6:dyck"):
        code, out, _ = run_cli(["intervals", "--linear", "--preset", preset])
        assert (code, out) == (0, "0:5 1:5 2:2\n")


# -- joins, meets, and extreme cliques ----------------------------------------------


def test_join_meet_of_extremes():
    code, cmax_out, _ = run_cli(["cmax", "--preset", "oruga:3"])
    assert code == 0
    code, cmin_out, _ = run_cli(["cmin", "--preset", "oruga:3"])
    assert code == 0
    top = json.loads(cmax_out)
    bottom = json.loads(cmin_out)
    assert {tuple(r) for r in top} == {(0, 2, 4), (1, 2, 4), (1, 3, 4), (1, 3, 5)}
    assert {tuple(r) for r in bottom} == {(0, 2, 4), (0, 2, 5), (0, 3, 5), (1, 3, 5)}

    code, out, _ = run_cli(["join", "--preset", "oruga:3", "0", "5"])
    assert code == 0
    joined = json.loads(out)
    assert joined["clique"] == top
    code, out, _ = run_cli(["meet", "--preset", "oruga:3", "0", "5"])
    assert code == 0
    assert json.loads(out)["clique"] == bottom


def test_join_index_out_of_range():
    code, _, err = run_cli(["join", "--preset", "oruga:2", "0", "7"])
    assert code == 1
    assert "out of range" in err


def test_cmax_with_constraints():
    code, out, _ = run_cli(["cmax", "--preset", "oruga:3", "--route", "1,3,5"])
    assert code == 0
    assert (1, 3, 5) in {tuple(r) for r in json.loads(out)}
    for bad in ("0,9", "0,x", "0,5"):
        code, _, err = run_cli(["cmax", "--preset", "oruga:3", "--route", bad])
        assert code == 1
        assert err.startswith("error: ")
        assert "\n" not in err.strip("\n")


# -- labels and irreducibles --------------------------------------------------------


def test_labels_document():
    code, out, _ = run_cli(["labels", "--preset", "oruga:2"])
    assert code == 0
    assert json.loads(out) == [
        {
            "lo": 0,
            "hi": 1,
            "path": {"edges": [], "anchor": 1},
            "cw_extended": {"edges": [0, 3], "anchor": 0},
            "ccw_extended": {"edges": [1, 2], "anchor": 0},
        }
    ]


def test_irreducibles_document():
    code, out, _ = run_cli(["irreducibles", "--preset", "oruga:2"])
    assert code == 0
    doc = json.loads(out)
    assert doc["pairing"] == [[1, 0]]
    assert [item["element"] for item in doc["join"]] == [1]
    assert [item["element"] for item in doc["meet"]] == [0]
    assert doc["join"][0]["label"]["edges"] == [1, 2]
    assert doc["meet"][0]["label"]["edges"] == [0, 3]


def test_core_label_order_output():
    code, out, _ = run_cli(["core-label-order", "--preset", "oruga:3"])
    assert code == 0
    doc = json.loads(out)
    assert doc["size"] == 6
    assert doc["covers"] == [[0, 1], [0, 2], [0, 3], [0, 4], [1, 5], [2, 5], [3, 5], [4, 5]]
    code, dot, _ = run_cli(["core-label-order", "--preset", "oruga:3", "--format", "dot"])
    assert code == 0
    assert dot.count("->") == 8
    assert "rankdir=BT;" in dot


# -- quotients ----------------------------------------------------------------------


def test_quotient_single_edge():
    code, out, _ = run_cli(["quotient", "--preset", "oruga:3", "--edge", "3"])
    assert code == 0
    doc = json.loads(out)
    assert doc["edge"] == 3
    assert doc["lattice"]["size"] == 5
    assert doc["map"] == [0, 1, 2, 2, 3, 4]
    assert doc["classes"] == [[0, 0], [1, 1], [2, 3], [4, 4], [5, 5]]
    deserialize(json.dumps(doc["graph"]))
    quotient = Poset(5, [tuple(c) for c in doc["lattice"]["covers"]])
    assert poset_isomorphic(quotient, tamari(3)) is not None


def test_quotient_boolean_diagram():
    code, out, _ = run_cli(["quotient", "--preset", "oruga:3", "--all"])
    assert code == 0
    doc = json.loads(out)
    assert [entry["moves"] for entry in doc] == [[], [2], [3], [2, 3]]
    assert [entry["size"] for entry in doc] == [6, 5, 5, 4]
    assert all("covers" in entry for entry in doc)
    code, out, _ = run_cli(
        ["quotient", "--preset", "oruga:3", "--all", "--threshold", "4"]
    )
    doc = json.loads(out)
    assert ["covers" in entry for entry in doc] == [False, False, False, True]


def test_quotient_requires_a_mode():
    code, _, _ = run_cli(["quotient", "--preset", "oruga:3"])
    assert code == 2
    code, _, err = run_cli(["quotient", "--preset", "oruga:3", "--edge", "0"])
    assert code == 1
    assert "is not inner" in err


# -- grids --------------------------------------------------------------------------


def test_grid_check():
    code, out, _ = run_cli(["grid", "check"], stdin=grid_doc([(0, 0), (1, 0)]))
    assert (code, out) == (0, "ok\n")
    code, out, _ = run_cli(["grid", "check"], stdin=grid_doc([(0, 0), (1, 1)]))
    assert code == 1
    assert "not nested" in out


def test_grid_fillings_and_lattice():
    doc = grid_doc(STAIRCASE_3)
    code, out, _ = run_cli(["grid", "fillings"], stdin=doc)
    assert code == 0
    fillings = json.loads(out)
    assert len(fillings) == 5
    assert all(len(f) == 7 for f in fillings)
    code, out, _ = run_cli(["grid", "lattice"], stdin=doc)
    assert code == 0
    lattice = json.loads(out)
    assert lattice["size"] == 5
    assert len(lattice["elements"]) == 5
    p = Poset(lattice["size"], [tuple(c) for c in lattice["covers"]])
    assert poset_isomorphic(p, tamari(3)) is not None


def test_grid_to_graph_validates():
    code, out, _ = run_cli(["grid", "to-graph"], stdin=grid_doc(STAIRCASE_3))
    assert code == 0
    g = deserialize(out)
    assert g.graph.vertex_count == 10
    code, out, _ = run_cli(["validate"], stdin=out)
    assert (code, out) == (0, "ok\n")


def test_grid_document_errors():
    code, _, err = run_cli(["grid", "fillings"], stdin=json.dumps({"rows": []}))
    assert code == 1
    assert '"points"' in err
    code, _, err = run_cli(
        ["grid", "fillings"], stdin=json.dumps({"points": [[0, 0, 0]]})
    )
    assert code == 1
    code, _, err = run_cli(
        ["grid", "fillings"], stdin=grid_doc([(0, 0), (1, 1)])
    )
    assert code == 1
    assert "not nested" in err


# -- isomorphism --------------------------------------------------------------------


def test_iso_accepts_all_document_shapes(tmp_path):
    lattice_file = tmp_path / "lattice.json"
    _, out, _ = run_cli(["lattice", "--preset", "oruga:3"])
    lattice_file.write_text(out)

    grid_file = tmp_path / "grid.json"
    _, out, _ = run_cli(["grid", "lattice"], stdin=grid_doc(STAIRCASE_3))
    grid_file.write_text(out)

    quotient_file = tmp_path / "quotient.json"
    _, out, _ = run_cli(["quotient", "--preset", "oruga:3", "--edge", "3"])
    quotient_file.write_text(json.dumps(json.loads(out)["lattice"]))

    code, out, _ = run_cli(["iso", str(lattice_file), str(lattice_file)])
    assert (code, out) == (0, "isomorphic\n")
    code, out, _ = run_cli(["iso", str(grid_file), str(quotient_file)])
    assert (code, out) == (0, "isomorphic\n")
    code, out, _ = run_cli(["iso", str(lattice_file), str(quotient_file)])
    assert (code, out) == (1, "not isomorphic\n")


def test_iso_rejects_malformed_documents(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"covers": []}))
    good = tmp_path / "good.json"
    good.write_text(json.dumps({"size": 1, "covers": []}))
    code, _, err = run_cli(["iso", str(bad), str(good)])
    assert code == 1
    assert '"size"' in err or "elements" in err
    unreduced = tmp_path / "unreduced.json"
    unreduced.write_text(
        json.dumps({"size": 3, "covers": [[0, 1], [1, 2], [0, 2]]})
    )
    code, _, err = run_cli(["iso", str(unreduced), str(good)])
    assert code == 1


# -- DOT output ---------------------------------------------------------------------


def test_dot_output_pins():
    code, out, _ = run_cli(
        ["lattice", "--preset", "oruga:2", "--format", "dot", "--labels", "path"]
    )
    assert code == 0
    assert out == (
        "digraph lattice {\n"
        "  rankdir=BT;\n"
        '  n0 [label="0"];\n'
        '  n1 [label="1"];\n'
        "  { rank=same; n0; }\n"
        "  { rank=same; n1; }\n"
        '  n0 -> n1 [label="1"];\n'
        "}\n"
    )
    code, out, _ = run_cli(
        ["lattice", "--preset", "oruga:2", "--format", "dot", "--labels", "ccw-ext"]
    )
    assert 'label="0-1-2"' in out


def test_dot_ranks_follow_chain_height():
    code, out, _ = run_cli(["lattice", "--preset", "oruga:3", "--format", "dot"])
    assert code == 0
    ranks = [line for line in out.splitlines() if "rank=same" in line]
    assert [line.count(";") - 1 for line in ranks] == [1, 2, 2, 1]


# -- caps, flags, determinism --------------------------------------------------------


def test_caps_are_enforced():
    code, _, err = run_cli(["routes", "--preset", "oruga:6", "--max-routes", "50"])
    assert code == 1
    assert "exceeded cap of 50" in err
    code, _, err = run_cli(
        ["lattice", "--preset", "oruga:4", "--max-elements", "10"]
    )
    assert code == 1
    assert "exceeds cap of 10" in err
    code, _, err = run_cli(["grid", "fillings", "--max-elements", "2"],
                           stdin=grid_doc(STAIRCASE_3))
    assert code == 1
    assert "exceeds cap of 2" in err


def test_threads_flag_is_accepted():
    plain = run_cli(["lattice", "--preset", "oruga:3"])
    threaded = run_cli(["lattice", "--preset", "oruga:3", "--threads", "4"])
    assert plain == threaded


def test_usage_errors_exit_two():
    assert run_cli(["lattice", "--nope"])[0] == 2
    assert run_cli([])[0] == 2
    assert run_cli(["intervals", "--preset", "oruga:2"])[0] == 2
    assert run_cli(["lattice", "--preset", "oruga:2", "--format", "png"])[0] == 2


def test_outputs_are_deterministic():
    for argv in (
        ["lattice", "--preset", "caracol:5:tamari"],
        ["lattice", "--preset", "caracol:5:tamari", "--format", "dot"],
        ["quotient", "--preset", "oruga:3", "--all"],
    ):
        assert run_cli(list(argv)) == run_cli(list(argv))
