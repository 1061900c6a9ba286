"""Tests for the framing lattice: order, join/meet sweeps, polygons, checks."""

from itertools import combinations

import pytest
from hypothesis import given, settings

from framing_lattices.cliques import Clique, enumerate_maximal_cliques
from framing_lattices.constructors import (
    boolean_graph,
    cambrian_caracol,
    caracol,
    multioruga,
    oruga,
)
from framing_lattices.graphs import dimension
from framing_lattices.lattice import (
    CheckReport,
    ElementExplosion,
    FramingLattice,
    Polygon,
    PolygonShape,
    StructuralError,
    all_polygons,
    build_lattice,
    c_max,
    c_max_sequence,
    c_min,
    c_min_sequence,
    check_hh,
    check_semidistributive,
    count_linear_intervals,
    interval_of,
    is_cw_from,
    join,
    meet,
    polygon_of,
    rem_ccw,
    rem_cw,
    semidistributive_violations,
    serialize_lattice,
    sink_paths,
    source_paths,
    to_dot,
)
from framing_lattices.oracles import Poset
from framing_lattices.routes import (
    coherent,
    enumerate_paths,
    enumerate_routes,
    exceptional_routes,
    make_path,
)

from strategies import framed_graphs


def lattice_presets():
    return [
        oruga(3),
        multioruga([2, 2]),
        caracol(6),
        caracol(6, variant="dyck"),
        boolean_graph(2),
        cambrian_caracol((-1, 1, -1)),
    ]


# -- anchored path families --------------------------------------------------


def test_source_and_sink_path_counts_oruga3():
    g = oruga(3)
    ins = source_paths(g)
    outs = sink_paths(g)
    assert [len(x) for x in ins] == [1, 2, 4, 8]
    assert [len(x) for x in outs] == [8, 4, 2, 1]
    assert ins[0][0].edges == () and ins[0][0].anchor == 0
    assert outs[3][0].edges == () and outs[3][0].anchor == 3


# -- extremal sweeps ----------------------------------------------------------


def test_cmax_sequence_matches_worked_example():
    g = oruga(3)
    seq = [p.edges for p in c_max_sequence(g, [])]
    assert seq == [(0, 2, 4), (1, 2, 4), (1, 3, 4), (1, 3, 5)]


def test_cmin_sequence_matches_worked_example():
    g = oruga(3)
    seq = [p.edges for p in c_min_sequence(g, [])]
    assert seq == [(1, 3, 5), (0, 3, 5), (0, 2, 5), (0, 2, 4)]


def test_extremal_sweep_fixes_maximal_cliques():
    g = oruga(3)
    for c in enumerate_maximal_cliques(g):
        assert c_max(g, c.routes) == c
        assert c_min(g, c.routes) == c


def test_cmax_rejects_incoherent_input():
    g = oruga(2)
    bad = [make_path(g, [0, 3]), make_path(g, [1, 2])]
    with pytest.raises(ValueError):
        c_max(g, bad)


# -- lattice construction ------------------------------------------------------


def test_lattice_shapes():
    L = build_lattice(oruga(3))
    assert L.size == 6 and len(L.covers) == 6
    B = build_lattice(boolean_graph(3))
    assert B.size == 8 and len(B.covers) == 12
    assert build_lattice(caracol(6)).size == 5


def test_element_cap():
    with pytest.raises(ElementExplosion):
        build_lattice(oruga(3), max_elements=5)


def test_bottom_and_top_are_the_extremal_sweeps():
    for g in lattice_presets():
        L = build_lattice(g)
        assert L.elements[L.bottom()] == c_min(g, [])
        assert L.elements[L.top()] == c_max(g, [])
        for x in range(L.size):
            assert L.leq(L.bottom(), x)
            assert L.leq(x, L.top())
            assert L.leq(x, x)


@pytest.mark.parametrize("g", lattice_presets(), ids=lambda g: f"m{g.edge_count}")
def test_order_matches_pairwise_cw_test(g):
    L = build_lattice(g)
    for x in range(L.size):
        for y in range(L.size):
            assert L.leq(x, y) == is_cw_from(g, L.elements[x], L.elements[y])


def test_antisymmetry_and_hexagon_incomparability():
    L = build_lattice(oruga(3))
    for x in range(L.size):
        for y in range(L.size):
            if L.leq(x, y) and L.leq(y, x):
                assert x == y
    bottom = L.bottom()
    a1, a2 = L.upper_covers(bottom)
    # each atom is incomparable with the other atom's upper cover
    (u1,) = L.upper_covers(a1)
    (u2,) = L.upper_covers(a2)
    assert not L.leq(a2, u1) and not L.leq(u1, a2)
    assert not L.leq(a1, u2) and not L.leq(u2, a1)


# -- intervals of coherent elements --------------------------------------------


def test_interval_of_empty_and_exceptional():
    g = oruga(3)
    L = build_lattice(g)
    assert interval_of(g, L, []) == (L.bottom(), L.top())
    exc = exceptional_routes(g)[0]
    assert interval_of(g, L, [exc]) == (L.bottom(), L.top())


def test_interval_of_single_route_is_coherence_filter():
    g = oruga(3)
    L = build_lattice(g)
    r = make_path(g, [0, 3, 4])  # not exceptional
    lo, hi = interval_of(g, L, [r])
    assert (lo, hi) != (L.bottom(), L.top())
    for x in range(L.size):
        inside = L.leq(lo, x) and L.leq(x, hi)
        coherent_with_r = all(coherent(g, r, m) for m in L.elements[x].routes)
        assert inside == coherent_with_r


# -- removed sets ----------------------------------------------------------------


def test_rem_sets_avoid_the_cliques():
    g = oruga(3)
    L = build_lattice(g)
    for x, y in combinations(range(L.size), 2):
        cx, cy = L.elements[x], L.elements[y]
        both = set(cx.routes) | set(cy.routes)
        assert not rem_ccw(g, cx, cy) & both
        assert not rem_cw(g, cx, cy) & both


def test_rem_ccw_at_bottom_is_within_complement():
    g = oruga(3)
    L = build_lattice(g)
    bottom = L.elements[L.bottom()]
    rem = rem_ccw(g, bottom, bottom)
    assert rem <= set(enumerate_routes(g)) - set(bottom.routes)


# -- join and meet ---------------------------------------------------------------


@pytest.mark.parametrize("g", lattice_presets(), ids=lambda g: f"m{g.edge_count}")
def test_join_meet_agree_with_brute_force(g):
    routes = enumerate_routes(g)
    paths = enumerate_paths(g, min_edges=2)
    L = build_lattice(g, routes)
    for x in range(L.size):
        assert join(g, L.elements[x], L.elements[x], routes, paths) == L.elements[x]
        assert meet(g, L.elements[x], L.elements[x], routes, paths) == L.elements[x]
        for y in range(x + 1, L.size):
            jo = join(g, L.elements[x], L.elements[y], routes, paths)
            me = meet(g, L.elements[x], L.elements[y], routes, paths)
            assert L.index_of(jo) == L.join_index(x, y)
            assert L.index_of(me) == L.meet_index(x, y)


def test_join_is_not_cmax_of_the_intersection():
    """The removed-set condition matters: joining with a plain extremal
    sweep over the shared routes can overshoot."""
    g = oruga(3)
    c1 = Clique(tuple(make_path(g, e) for e in [(0, 2, 4), (0, 2, 5), (0, 3, 5), (1, 3, 5)]))
    c2 = Clique(tuple(make_path(g, e) for e in [(0, 2, 4), (0, 3, 4), (1, 3, 4), (1, 3, 5)]))
    jo = join(g, c1, c2)
    assert jo == c2  # c1 is the bottom element, so the join is c2 itself
    shared = [r for r in c1.routes if r in set(c2.routes)]
    overshoot = c_max(g, shared)
    assert overshoot != jo
    assert [r.edges for r in overshoot.routes] == [(0, 2, 4), (1, 2, 4), (1, 3, 4), (1, 3, 5)]
    assert sorted(r.edges for r in rem_ccw(g, c1, c2)) == [(1, 2, 4), (1, 2, 5)]


# -- polygons ---------------------------------------------------------------------


def test_polygon_shapes_pinned():
    L = build_lattice(oruga(3))
    b = L.bottom()
    y1, y2 = L.upper_covers(b)
    poly = polygon_of(L, b, y1, y2)
    assert poly.shape is PolygonShape.HEXAGON
    assert poly.bottom == b and poly.top == L.top()
    B = build_lattice(boolean_graph(2))
    y1, y2 = B.upper_covers(B.bottom())
    assert polygon_of(B, B.bottom(), y1, y2).shape is PolygonShape.SQUARE


def test_pentagon_occurs_in_caracol6():
    L = build_lattice(caracol(6))
    shapes = {p.shape for p in all_polygons(L)}
    assert PolygonShape.PENTAGON in shapes


@pytest.mark.parametrize("g", lattice_presets(), ids=lambda g: f"m{g.edge_count}")
def test_every_fork_closes_into_a_polygon(g):
    L = build_lattice(g)
    for x in range(L.size):
        ups = L.upper_covers(x)
        for y1, y2 in combinations(ups, 2):
            poly = polygon_of(L, x, y1, y2)
            assert poly.shape in set(PolygonShape)
            assert poly.left_chain[0] == poly.right_chain[0] == x
            assert poly.left_chain[-1] == poly.right_chain[-1]
        downs = L.lower_covers(x)
        for y1, y2 in combinations(downs, 2):
            poly = polygon_of(L, x, y1, y2, down=True)
            assert poly.top == x
            assert poly.shape in set(PolygonShape)


def test_polygon_of_rejects_bad_arguments():
    L = build_lattice(oruga(3))
    b = L.bottom()
    y1, y2 = L.upper_covers(b)
    with pytest.raises(ValueError):
        polygon_of(L, b, y1, y1)
    with pytest.raises(ValueError):
        polygon_of(L, b, y1, L.top())


# -- property checks ----------------------------------------------------------------


@pytest.mark.parametrize("g", lattice_presets(), ids=lambda g: f"m{g.edge_count}")
def test_semidistributive_and_hh_pass(g):
    L = build_lattice(g)
    assert check_semidistributive(L).passed
    report = check_hh(L)
    assert report.passed, report.violations


def test_semidistributive_checker_controls():
    # pentagon: semidistributive but not distributive
    n5 = Poset.from_leq(range(5), lambda a, b: (a, b) in {
        (0, 1), (1, 2), (0, 2), (0, 3), (0, 4), (1, 4), (2, 4), (3, 4),
    } or a == b)
    assert semidistributive_violations(5, n5.join, n5.meet) == []
    assert not n5.is_distributive()
    # diamond: the checker must flag it
    m3 = Poset.from_leq(range(5), lambda a, b: a == b or a == 0 or b == 4)
    assert semidistributive_violations(5, m3.join, m3.meet)


def test_boolean_lattice_is_distributive_hence_passes():
    L = build_lattice(boolean_graph(3))
    assert check_semidistributive(L).passed


# -- linear intervals ----------------------------------------------------------------


def test_linear_interval_census_caracol6():
    for variant in ("tamari", "dyck"):
        L = build_lattice(caracol(6, variant=variant))
        assert count_linear_intervals(L) == {0: 5, 1: 5, 2: 2}


def test_linear_interval_census_matches_across_framings_caracol7():
    a = count_linear_intervals(build_lattice(caracol(7)))
    b = count_linear_intervals(build_lattice(caracol(7, variant="dyck")))
    assert a == b == {0: 14, 1: 21, 2: 12, 3: 2}


def test_linear_intervals_length_zero_is_element_count():
    for g in (oruga(3), boolean_graph(2)):
        L = build_lattice(g)
        assert count_linear_intervals(L)[0] == L.size


# -- serialization --------------------------------------------------------------------


def test_serialize_lattice_shape():
    L = build_lattice(oruga(2))
    doc = serialize_lattice(L)
    assert len(doc["elements"]) == 2
    assert {"lo", "hi", "removed", "added", "locus"} <= set(doc["covers"][0])
    dot = to_dot(L, edge_labels=True)
    assert "->" in dot and "digraph" in dot


# -- random graphs ---------------------------------------------------------------------


@settings(max_examples=15, deadline=None)
@given(framed_graphs(max_vertices=5, max_extra_edges=2))
def test_random_lattices_are_well_formed(g):
    routes = enumerate_routes(g)
    L = build_lattice(g, routes)
    assert L.elements[L.bottom()] == c_min(g, [])
    assert L.elements[L.top()] == c_max(g, [])
    for x in range(L.size):
        for y in range(L.size):
            assert L.leq(x, y) == is_cw_from(g, L.elements[x], L.elements[y])
    paths = enumerate_paths(g, min_edges=2)
    for x, y in combinations(range(min(L.size, 6)), 2):
        jo = join(g, L.elements[x], L.elements[y], routes, paths)
        assert L.index_of(jo) == L.join_index(x, y)
