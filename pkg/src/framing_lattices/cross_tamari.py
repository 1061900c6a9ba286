"""Cross-shaped grids, maximal fillings, and their rotation lattice.

A cross-shaped grid is a finite set of lattice points whose rows and
columns are contiguous intervals and pairwise nested. Two points clash
when one sits strictly north-east of the other and the whole spanning
rectangle lies inside the grid; maximal sets of pairwise compatible
points, ordered by north-east rotations of single points, form a lattice.
Translating a grid into a framed flow graph (one route per point) renders
that lattice as the framing lattice of the graph, which is how the two
engines validate each other.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Sequence

from .graphs import FramedGraph, framed_graph
from .lattice import ElementExplosion
from .oracles import Poset
from .routes import Path, make_path

Point = tuple[int, int]


def as_grid(points: Iterable[Sequence[int]]) -> frozenset[Point]:
    """Normalize an iterable of coordinate pairs into a point set."""
    out = set()
    for p in points:
        x, y = p
        out.add((int(x), int(y)))
    return frozenset(out)


def _rows(D: frozenset[Point]) -> dict[int, set[int]]:
    rows: dict[int, set[int]] = {}
    for x, y in D:
        rows.setdefault(y, set()).add(x)
    return rows


def _columns(D: frozenset[Point]) -> dict[int, set[int]]:
    cols: dict[int, set[int]] = {}
    for x, y in D:
        cols.setdefault(x, set()).add(y)
    return cols


def _nesting_problems(lines: dict[int, set[int]], kind: str) -> list[str]:
    problems = []
    order = sorted(lines, key=lambda k: (len(lines[k]), k))
    for prev, nxt in zip(order, order[1:]):
        if not lines[prev] <= lines[nxt]:
            problems.append(f"{kind} {prev} is not nested inside {kind} {nxt}")
    return problems


def validate_grid(points: Iterable[Sequence[int]]) -> list[str]:
    """All violations of the cross-shape conditions, empty when valid."""
    D = as_grid(points)
    if not D:
        return ["grid is empty"]
    problems = []
    rows, cols = _rows(D), _columns(D)
    for y, xs in sorted(rows.items()):
        if max(xs) - min(xs) + 1 != len(xs):
            problems.append(f"row {y} is not contiguous")
    for x, ys in sorted(cols.items()):
        if max(ys) - min(ys) + 1 != len(ys):
            problems.append(f"column {x} is not contiguous")
    if problems:
        return problems
    problems += _nesting_problems(rows, "row")
    problems += _nesting_problems(cols, "column")
    return problems


def _require_grid(D: frozenset[Point]) -> None:
    problems = validate_grid(D)
    if problems:
        raise ValueError("not a cross-shaped grid: " + "; ".join(problems))


@dataclass(frozen=True)
class ProperLabeling:
    """Column and row coordinates listed in label order.

    ``columns[k]`` is the x coordinate of the column labeled ``k + 1`` and
    ``rows[k]`` the y coordinate of the row labeled ``k + 1``; label 1 goes
    to a longest line and labels grow outward, one adjacent line at a time.
    """

    columns: tuple[int, ...]
    rows: tuple[int, ...]

    def column_label(self, x: int) -> int:
        return self.columns.index(x) + 1

    def row_label(self, y: int) -> int:
        return self.rows.index(y) + 1


def _label_orders(lengths: dict[int, int], prefer_low: bool) -> list[tuple[int, ...]]:
    """All orders that take a longest line first and extend outward by length."""
    coords = sorted(lengths)
    best = max(lengths.values())
    orders: list[tuple[int, ...]] = []

    def grow(order: list[int], lo: int, hi: int) -> None:
        if len(order) == len(coords):
            orders.append(tuple(order))
            return
        left = coords[lo - 1] if lo > 0 else None
        right = coords[hi + 1] if hi + 1 < len(coords) else None
        choices = []
        if left is not None and (right is None or lengths[left] >= lengths[right]):
            choices.append((left, lo - 1, hi))
        if right is not None and (left is None or lengths[right] >= lengths[left]):
            choices.append((right, lo, hi + 1))
        for coord, new_lo, new_hi in choices:
            grow(order + [coord], new_lo, new_hi)

    for k, coord in enumerate(coords):
        if lengths[coord] == best:
            grow([coord], k, k)
    return sorted(orders) if prefer_low else orders


def proper_labeling(D: Iterable[Sequence[int]]) -> ProperLabeling:
    """A deterministic proper labeling: ties go to the lower coordinate."""
    D = as_grid(D)
    _require_grid(D)
    col_lengths = {x: len(ys) for x, ys in _columns(D).items()}
    row_lengths = {y: len(xs) for y, xs in _rows(D).items()}
    columns = _label_orders(col_lengths, prefer_low=True)[0]
    rows = _label_orders(row_lengths, prefer_low=True)[0]
    return ProperLabeling(columns, rows)


def all_proper_labelings(D: Iterable[Sequence[int]]) -> list[ProperLabeling]:
    """Every proper labeling; there are several when line lengths tie."""
    D = as_grid(D)
    _require_grid(D)
    col_lengths = {x: len(ys) for x, ys in _columns(D).items()}
    row_lengths = {y: len(xs) for y, xs in _rows(D).items()}
    return [
        ProperLabeling(cols, rows)
        for cols in _label_orders(col_lengths, prefer_low=True)
        for rows in _label_orders(row_lengths, prefer_low=True)
    ]


def labeling_problems(
    D: Iterable[Sequence[int]], labeling: ProperLabeling
) -> list[str]:
    """All violations of the proper-labeling conditions, empty when proper."""
    D = as_grid(D)
    _require_grid(D)
    problems = []
    for coords, lengths, kind in (
        (labeling.columns, {x: len(ys) for x, ys in _columns(D).items()}, "column"),
        (labeling.rows, {y: len(xs) for y, xs in _rows(D).items()}, "row"),
    ):
        if sorted(coords) != sorted(lengths):
            problems.append(f"{kind} labels are not a permutation of the {kind}s")
            continue
        for k in range(len(coords) - 1):
            if lengths[coords[k]] < lengths[coords[k + 1]]:
                problems.append(
                    f"{kind} label {k + 2} is longer than {kind} label {k + 1}"
                )
        for k in range(len(coords)):
            block = sorted(coords[: k + 1])
            if block[-1] - block[0] + 1 != len(block):
                problems.append(f"{kind} labels 1..{k + 1} are not contiguous")
    return problems


# -- fillings and the rotation order ----------------------------------------------


def _strictly_northeast(p: Point, q: Point) -> bool:
    return p[0] < q[0] and p[1] < q[1]


def _incompatible(D: frozenset[Point], p: Point, q: Point) -> bool:
    if _strictly_northeast(q, p):
        p, q = q, p
    if not _strictly_northeast(p, q):
        return False
    return all(
        (x, y) in D
        for x in range(p[0], q[0] + 1)
        for y in range(p[1], q[1] + 1)
    )


def compatible(D: Iterable[Sequence[int]], p: Sequence[int], q: Sequence[int]) -> bool:
    """False iff one point is strictly north-east of the other and the
    spanning rectangle lies entirely inside the grid."""
    D = as_grid(D)
    p, q = (int(p[0]), int(p[1])), (int(q[0]), int(q[1]))
    if p not in D or q not in D:
        raise ValueError("both points must belong to the grid")
    return not _incompatible(D, p, q)


def maximal_fillings(
    D: Iterable[Sequence[int]], max_fillings: int | None = None
) -> list[tuple[Point, ...]]:
    """All maximal sets of pairwise compatible points, sorted."""
    D = as_grid(D)
    _require_grid(D)
    points = sorted(D)
    index = {p: i for i, p in enumerate(points)}
    neighbors = [
        {index[q] for q in points if q != p and not _incompatible(D, p, q)}
        for p in points
    ]
    out: list[tuple[Point, ...]] = []

    def expand(clique: list[int], candidates: set[int], excluded: set[int]) -> None:
        if not candidates and not excluded:
            out.append(tuple(points[i] for i in sorted(clique)))
            if max_fillings is not None and len(out) > max_fillings:
                raise ElementExplosion(max_fillings)
            return
        pivot = max(candidates | excluded, key=lambda u: len(candidates & neighbors[u]))
        for v in sorted(candidates - neighbors[pivot]):
            expand(clique + [v], candidates & neighbors[v], excluded & neighbors[v])
            candidates = candidates - {v}
            excluded = excluded | {v}

    expand([], set(range(len(points))), set())
    return sorted(out)


def _is_maximal_filling(D: frozenset[Point], filling: frozenset[Point]) -> bool:
    points = sorted(filling)
    for i, p in enumerate(points):
        if any(_incompatible(D, p, q) for q in points[i + 1 :]):
            return False
    return all(
        any(_incompatible(D, z, p) for p in points) for z in D - filling
    )


def _rotations(D: frozenset[Point], filling: frozenset[Point]) -> list[tuple[Point, ...]]:
    out = []
    for p in sorted(filling):
        for q in sorted(D - filling):
            if not _strictly_northeast(p, q):
                continue
            candidate = (filling - {p}) | {q}
            if _is_maximal_filling(D, candidate):
                out.append(tuple(sorted(candidate)))
    return out


def increasing_rotations(
    D: Iterable[Sequence[int]], filling: Iterable[Sequence[int]]
) -> list[tuple[Point, ...]]:
    """Maximal fillings reachable by replacing one point with a point
    strictly north-east of it."""
    D = as_grid(D)
    _require_grid(D)
    filling = as_grid(filling)
    if not filling <= D or not _is_maximal_filling(D, filling):
        raise ValueError("not a maximal filling of the grid")
    return _rotations(D, filling)


def cross_tamari_lattice(
    D: Iterable[Sequence[int]], max_fillings: int | None = None
) -> Poset:
    """The poset of maximal fillings under increasing rotations.

    Element labels are the fillings themselves, as sorted point tuples.
    """
    D = as_grid(D)
    fillings = maximal_fillings(D, max_fillings)
    index = {f: i for i, f in enumerate(fillings)}
    covers = set()
    for i, filling in enumerate(fillings):
        for neighbor in _rotations(D, frozenset(filling)):
            covers.add((i, index[neighbor]))
    return Poset(len(fillings), covers, labels=fillings)


# -- the grid as a framed graph ----------------------------------------------------


@dataclass(frozen=True)
class _Layout:
    labeling: ProperLabeling
    sequence: tuple[tuple[str, int], ...]  # ("col", i) / ("row", j) in line order
    vertex_of: dict[tuple[str, int], int]
    column_edge: dict[int, int]  # extra (source, column i) edge ids, i >= 2
    row_edge: dict[int, int]  # extra (row j, sink) edge ids, j >= 2


def _layout(D: frozenset[Point], labeling: ProperLabeling | None) -> _Layout:
    _require_grid(D)
    if labeling is None:
        labeling = proper_labeling(D)
    problems = labeling_problems(D, labeling)
    if problems:
        raise ValueError("improper labeling: " + "; ".join(problems))
    a, b = len(labeling.columns), len(labeling.rows)
    present = {
        (i, j)
        for i in range(1, a + 1)
        for j in range(1, b + 1)
        if (labeling.columns[i - 1], labeling.rows[j - 1]) in D
    }
    sequence: list[tuple[str, int]] = []
    i, j = 1, b
    while i <= a or j >= 1:
        if i <= a and (j < 1 or (i, j) in present):
            sequence.append(("col", i))
            i += 1
        else:
            sequence.append(("row", j))
            j -= 1
    vertex_of = {item: k + 1 for k, item in enumerate(sequence)}
    for i in range(1, a + 1):
        for j in range(1, b + 1):
            before = vertex_of[("col", i)] < vertex_of[("row", j)]
            if before != ((i, j) in present):
                raise ValueError("labeling does not order the grid on a line")
    column_edge = {i: a + b + 1 + (i - 2) for i in range(2, a + 1)}
    row_edge = {j: 2 * a + b + (j - 2) for j in range(2, b + 1)}
    return _Layout(labeling, tuple(sequence), vertex_of, column_edge, row_edge)


def _column_above(labeling: ProperLabeling, i: int) -> bool:
    return labeling.columns[i - 1] < labeling.columns[0]


def _row_above(labeling: ProperLabeling, j: int) -> bool:
    return labeling.rows[j - 1] > labeling.rows[0]


def grid_graph(
    D: Iterable[Sequence[int]], labeling: ProperLabeling | None = None
) -> FramedGraph:
    """The framed flow graph of a grid: a source-to-sink line through the
    columns and rows, one bypass arc per non-maximal line.

    Column and row vertices are interleaved on a line so that a column
    precedes exactly the rows its points lie in. Each column beyond the
    first hangs on an arc from the source, drawn above the line when the
    column sits left of column 1; each row beyond the first sends an arc
    to the sink, drawn above when the row sits above row 1. The graph does
    not depend on the choice of proper labeling, the framing does.
    """
    D = as_grid(D)
    layout = _layout(D, labeling)
    labeling = layout.labeling
    a, b = len(labeling.columns), len(labeling.rows)
    source, sink = 0, a + b + 1
    edges: list[tuple[int, int]] = [(k, k + 1) for k in range(a + b + 1)]
    for i in range(2, a + 1):
        edges.append((source, layout.vertex_of[("col", i)]))
    for j in range(2, b + 1):
        edges.append((layout.vertex_of[("row", j)], sink))

    in_order: list[tuple[int, ...]] = [()] * (a + b + 2)
    out_order: list[tuple[int, ...]] = [()] * (a + b + 2)

    above_cols = [i for i in range(2, a + 1) if _column_above(labeling, i)]
    below_cols = [i for i in range(2, a + 1) if not _column_above(labeling, i)]
    above_cols.sort(key=lambda i: -layout.vertex_of[("col", i)])
    below_cols.sort(key=lambda i: layout.vertex_of[("col", i)])
    out_order[source] = tuple(
        [layout.column_edge[i] for i in above_cols]
        + [0]
        + [layout.column_edge[i] for i in below_cols]
    )
    above_rows = [j for j in range(2, b + 1) if _row_above(labeling, j)]
    below_rows = [j for j in range(2, b + 1) if not _row_above(labeling, j)]
    above_rows.sort(key=lambda j: layout.vertex_of[("row", j)])
    below_rows.sort(key=lambda j: -layout.vertex_of[("row", j)])
    in_order[sink] = tuple(
        [layout.row_edge[j] for j in above_rows]
        + [a + b]
        + [layout.row_edge[j] for j in below_rows]
    )

    for kind, k in layout.sequence:
        v = layout.vertex_of[(kind, k)]
        backbone_in, backbone_out = v - 1, v
        if kind == "col":
            out_order[v] = (backbone_out,)
            if k == 1:
                in_order[v] = (backbone_in,)
            elif _column_above(labeling, k):
                in_order[v] = (layout.column_edge[k], backbone_in)
            else:
                in_order[v] = (backbone_in, layout.column_edge[k])
        else:
            in_order[v] = (backbone_in,)
            if k == 1:
                out_order[v] = (backbone_out,)
            elif _row_above(labeling, k):
                out_order[v] = (layout.row_edge[k], backbone_out)
            else:
                out_order[v] = (backbone_out, layout.row_edge[k])

    return framed_graph(a + b + 2, edges, in_order, out_order)


def grid_routes(
    D: Iterable[Sequence[int]], labeling: ProperLabeling | None = None
) -> dict[Point, Path]:
    """The bijection from grid points to routes of ``grid_graph``.

    The route of a point enters through the arc of its column, runs along
    the line, and leaves through the arc of its row.
    """
    D = as_grid(D)
    layout = _layout(D, labeling)
    labeling = layout.labeling
    a, b = len(labeling.columns), len(labeling.rows)
    g = grid_graph(D, labeling)
    routes: dict[Point, Path] = {}
    for x, y in sorted(D):
        i = labeling.column_label(x)
        j = labeling.row_label(y)
        col_vertex = layout.vertex_of[("col", i)]
        row_vertex = layout.vertex_of[("row", j)]
        first = [0] if i == 1 else [layout.column_edge[i]]
        last = [a + b] if j == 1 else [layout.row_edge[j]]
        middle = list(range(col_vertex, row_vertex))
        routes[(x, y)] = make_path(g, tuple(first + middle + last))
    return routes


# -- named grids --------------------------------------------------------------------


def grid_from_path(steps: Iterable[str]) -> frozenset[Point]:
    """Lattice points weakly above a monotone path of N and E steps.

    The path starts at the origin; the grid holds every point of the
    bounding rectangle on or above it. Staircase paths N E N E ... yield
    the grids of rotation lattices on triangulations.
    """
    walk = [s.upper() for s in steps]
    if any(s not in ("N", "E") for s in walk):
        raise ValueError("steps must be N or E")
    floor = {0: 0}
    x = y = 0
    for s in walk:
        if s == "E":
            x += 1
            floor[x] = y
        else:
            y += 1
    height = y
    return frozenset(
        (cx, cy) for cx, lo in floor.items() for cy in range(lo, height + 1)
    )


def permute_columns(
    D: Iterable[Sequence[int]], order: Sequence[int]
) -> frozenset[Point]:
    """Rearrange columns left to right as listed; y coordinates persist.

    The result need not be cross-shaped; callers decide with
    ``validate_grid``.
    """
    D = as_grid(D)
    cols = _columns(D)
    if sorted(order) != sorted(cols):
        raise ValueError("order must be a permutation of the column coordinates")
    return frozenset(
        (k, y) for k, x in enumerate(order) for y in cols[x]
    )


def permute_rows(D: Iterable[Sequence[int]], order: Sequence[int]) -> frozenset[Point]:
    """Rearrange rows bottom to top as listed; x coordinates persist."""
    D = as_grid(D)
    rows = _rows(D)
    if sorted(order) != sorted(rows):
        raise ValueError("order must be a permutation of the row coordinates")
    return frozenset(
        (x, k) for k, y in enumerate(order) for x in rows[y]
    )


def cambrian_grid(eps: Sequence[int]) -> frozenset[Point]:
    """The staircase grid whose rotation lattice is the signed rotation
    lattice for ``eps``.

    In label positions the points form the staircase ``i <= j`` over
    0-based labels ``0..len(eps)``; the sign sequence decides where each
    column and row sits geometrically, with positive signs going left
    (columns) and up (rows). Unlike ``proper_labeling``, this arrangement
    gives longer rows the larger labels; the point set is what matters,
    so any proper labeling of it works downstream.
    """
    signs = [1 if e in (1, "+") else -1 for e in eps]
    m = len(signs)
    if m < 1:
        raise ValueError("cambrian_grid requires at least one sign")
    tops = [k for k in range(1, m + 1) if signs[k - 1] == 1]
    bottoms = [k for k in range(1, m + 1) if signs[k - 1] == -1]
    col_sequence = list(reversed(tops)) + [0] + bottoms
    row_sequence = [k - 1 for k in bottoms] + [m] + [k - 1 for k in reversed(tops)]
    x_of = {label: k for k, label in enumerate(col_sequence)}
    y_of = {label: k for k, label in enumerate(row_sequence)}
    return frozenset(
        (x_of[i], y_of[j]) for i, j in product(range(m + 1), repeat=2) if i <= j
    )
