"""Direct models of classical lattices, used as ground truth in tests.

Every construction here is a standalone textbook definition (multiset
permutations, polygon triangulations, lattice paths, subsets) with no
dependence on the flow-graph machinery elsewhere in the package. The test
suite builds framing lattices independently and compares them against
these models with the isomorphism checker at the bottom of this file.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Callable, Hashable, Iterable, Sequence

ISO_SIZE_CAP = 5000


class SizeCapExceeded(RuntimeError):
    """Raised when an enumeration or search exceeds its configured cap."""


class Poset:
    """A finite poset presented by its Hasse diagram.

    Elements are integers ``0..size-1``; ``covers`` holds pairs ``(lo, hi)``
    meaning ``hi`` covers ``lo``. The constructor verifies acyclicity and
    transitive reduction, so a constructed Poset is always a valid Hasse
    diagram. ``labels`` optionally attaches a combinatorial object
    (permutation, triangulation, lattice path, ...) to each element; it is
    ignored by equality and isomorphism.
    """

    def __init__(
        self,
        size: int,
        covers: Iterable[tuple[int, int]],
        labels: Sequence[Hashable] | None = None,
    ):
        self.size = size
        self.covers = frozenset((int(a), int(b)) for a, b in covers)
        for a, b in self.covers:
            if not (0 <= a < size and 0 <= b < size) or a == b:
                raise ValueError(f"cover ({a},{b}) out of range for size {size}")
        self.labels = tuple(labels) if labels is not None else None
        if self.labels is not None and len(self.labels) != size:
            raise ValueError("labels length must equal size")

        self._upper: list[list[int]] = [[] for _ in range(size)]
        self._lower: list[list[int]] = [[] for _ in range(size)]
        for a, b in sorted(self.covers):
            self._upper[a].append(b)
            self._lower[b].append(a)

        self._topo = self._toposort()
        self._pos = {x: p for p, x in enumerate(self._topo)}
        # Bit p of _up_t[x] is set iff element _topo[p] is >= x.
        self._up_t = [0] * size
        for x in reversed(self._topo):
            mask = 1 << self._pos[x]
            for y in self._upper[x]:
                mask |= self._up_t[y]
            self._up_t[x] = mask
        self._down_t = [0] * size
        for x in self._topo:
            mask = 1 << self._pos[x]
            for y in self._lower[x]:
                mask |= self._down_t[y]
            self._down_t[x] = mask
        self._check_reduced()

    def _toposort(self) -> list[int]:
        indeg = [len(self._lower[x]) for x in range(self.size)]
        frontier = [x for x in range(self.size) if indeg[x] == 0]
        order = []
        while frontier:
            x = frontier.pop()
            order.append(x)
            for y in self._upper[x]:
                indeg[y] -= 1
                if indeg[y] == 0:
                    frontier.append(y)
        if len(order) != self.size:
            raise ValueError("cover relation contains a cycle")
        return order

    def _check_reduced(self) -> None:
        for a, b in self.covers:
            # a strictly-below-b through some intermediate z contradicts covering
            for z in self._upper[a]:
                if z != b and self.leq(z, b):
                    raise ValueError(f"cover ({a},{b}) is implied by ({a},{z})")

    # -- order queries ----------------------------------------------------

    def leq(self, x: int, y: int) -> bool:
        return bool(self._up_t[x] >> self._pos[y] & 1)

    def upper_covers(self, x: int) -> list[int]:
        return list(self._upper[x])

    def lower_covers(self, x: int) -> list[int]:
        return list(self._lower[x])

    def up_set(self, x: int) -> list[int]:
        return self._from_mask(self._up_t[x])

    def down_set(self, x: int) -> list[int]:
        return self._from_mask(self._down_t[x])

    def _from_mask(self, mask: int) -> list[int]:
        out = []
        while mask:
            low = mask & -mask
            out.append(self._topo[low.bit_length() - 1])
            mask ^= low
        return out

    def bottom(self) -> int | None:
        mins = [x for x in range(self.size) if not self._lower[x]]
        return mins[0] if len(mins) == 1 else None

    def top(self) -> int | None:
        maxs = [x for x in range(self.size) if not self._upper[x]]
        return maxs[0] if len(maxs) == 1 else None

    def join(self, x: int, y: int) -> int | None:
        """Least upper bound, or None if it does not exist."""
        common = self._up_t[x] & self._up_t[y]
        if not common:
            return None
        low = common & -common
        z = self._topo[low.bit_length() - 1]
        return z if common & ~self._up_t[z] == 0 else None

    def meet(self, x: int, y: int) -> int | None:
        common = self._down_t[x] & self._down_t[y]
        if not common:
            return None
        # the topologically largest element of a down-set is its maximum
        z = self._topo[common.bit_length() - 1]
        return z if common & ~self._down_t[z] == 0 else None

    def is_lattice(self) -> bool:
        if self.size == 0:
            return False
        for x in range(self.size):
            for y in range(x + 1, self.size):
                if self.join(x, y) is None or self.meet(x, y) is None:
                    return False
        return True

    def is_distributive(self) -> bool:
        """Exhaustive x ∧ (y ∨ z) = (x ∧ y) ∨ (x ∧ z) over all triples."""
        rng = range(self.size)
        for x in rng:
            for y in rng:
                for z in rng:
                    lhs = self.meet(x, self.join(y, z))
                    rhs = self.join(self.meet(x, y), self.meet(x, z))
                    if lhs != rhs:
                        return False
        return True

    def index_of_label(self, label: Hashable) -> int:
        if self.labels is None:
            raise ValueError("poset has no labels")
        return self.labels.index(label)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Poset)
            and self.size == other.size
            and self.covers == other.covers
        )

    def __hash__(self) -> int:
        return hash((self.size, self.covers))

    def __repr__(self) -> str:
        return f"Poset(size={self.size}, covers={len(self.covers)})"

    @staticmethod
    def from_leq(elements: Sequence[Hashable], leq: Callable[[Hashable, Hashable], bool]) -> "Poset":
        """Build a poset from a comparison predicate via transitive reduction."""
        n = len(elements)
        less = [[False] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                if i != j and leq(elements[i], elements[j]):
                    less[i][j] = True
        covers = []
        for i in range(n):
            for j in range(n):
                if less[i][j] and not any(less[i][k] and less[k][j] for k in range(n)):
                    covers.append((i, j))
        return Poset(n, covers, labels=elements)


def dual_poset(p: Poset) -> Poset:
    return Poset(p.size, {(b, a) for a, b in p.covers}, labels=p.labels)


# -- classical lattices ---------------------------------------------------


def weak_order(s: Sequence[int], cap: int = 100_000) -> Poset:
    """Weak order on multiset permutations of 1^{s_1} 2^{s_2} ... n^{s_n}.

    Covers are increasing transpositions of two adjacent entries. For
    s = (1,...,1) this is the classical weak order on permutations.
    """
    if not s or any(k < 1 for k in s):
        raise ValueError("composition entries must be positive")
    word = tuple(i + 1 for i, k in enumerate(s) for _ in range(k))
    elements = sorted(set(itertools.permutations(word)))
    if len(elements) > cap:
        raise SizeCapExceeded(f"{len(elements)} multipermutations exceeds cap {cap}")
    index = {w: i for i, w in enumerate(elements)}
    covers = []
    for w in elements:
        for k in range(len(w) - 1):
            if w[k] < w[k + 1]:
                v = w[:k] + (w[k + 1], w[k]) + w[k + 2:]
                covers.append((index[w], index[v]))
    return Poset(len(elements), covers, labels=elements)


def boolean(n: int) -> Poset:
    """Subsets of [n] ordered by inclusion; elements are frozensets."""
    elements = [frozenset(c) for k in range(n + 1) for c in itertools.combinations(range(1, n + 1), k)]
    index = {e: i for i, e in enumerate(elements)}
    covers = []
    for e in elements:
        for x in range(1, n + 1):
            if x not in e:
                covers.append((index[e], index[e | {x}]))
    return Poset(len(elements), covers, labels=elements)


def dyck(n: int) -> Poset:
    """Lattice of Dyck paths in an n x n grid, ordered by adding boxes.

    Paths go from the bottom-left to the top-right corner with steps N/E,
    staying weakly above the main diagonal. Replacing an EN factor by NE
    adds one box and is a cover.
    """
    paths: list[str] = []

    def grow(prefix: str, ups: int, rights: int) -> None:
        if ups == rights == n:
            paths.append(prefix)
            return
        if ups < n:
            grow(prefix + "N", ups + 1, rights)
        if rights < ups:
            grow(prefix + "E", ups, rights + 1)

    grow("", 0, 0)
    paths.sort()
    index = {p: i for i, p in enumerate(paths)}
    covers = []
    for p in paths:
        for k in range(len(p) - 1):
            if p[k] == "E" and p[k + 1] == "N":
                q = p[:k] + "NE" + p[k + 2:]
                covers.append((index[p], index[q]))
    return Poset(len(paths), covers, labels=paths)


def _polygon_coordinates(eps: Sequence[int]) -> dict[int, tuple[int, int]]:
    """Convex placement of the signed polygon's vertices 0..n+1.

    Vertices 0 and n+1 sit on a horizontal line; vertex i is above it when
    eps[i-1] = +1 and below when -1, all in convex position.
    """
    n = len(eps)
    coords = {0: (0, 0), n + 1: (n + 1, 0)}
    for i, sign in enumerate(eps, start=1):
        coords[i] = (i, sign * i * (n + 1 - i))
    return coords


def _hull_cycle(eps: Sequence[int]) -> list[int]:
    n = len(eps)
    below = [i for i, s in enumerate(eps, start=1) if s < 0]
    above = [i for i, s in enumerate(eps, start=1) if s > 0]
    return [0] + below + [n + 1] + list(reversed(above))


def _triangulations(cycle: Sequence[int]) -> list[frozenset[frozenset[int]]]:
    """All triangulations of a convex polygon given by its boundary cycle.

    Each triangulation is the set of its internal diagonals, a diagonal
    being a frozenset of two vertex labels.
    """

    def rec(arc: tuple[int, ...]) -> list[frozenset[frozenset[int]]]:
        if len(arc) <= 3:
            return [frozenset()]
        out = []
        first, last = arc[0], arc[-1]
        for k in range(1, len(arc) - 1):
            apex = arc[k]
            extra = []
            if k > 1:
                extra.append(frozenset({first, apex}))
            if k < len(arc) - 2:
                extra.append(frozenset({apex, last}))
            for left in rec(arc[: k + 1]):
                for right in rec(arc[k:]):
                    out.append(left | right | frozenset(extra))
        return out

    return rec(tuple(cycle))


def cambrian(eps: Sequence[int], cap: int = 100_000) -> Poset:
    """Cambrian lattice of a sign sequence, via signed-polygon triangulations.

    Elements are triangulations of the convex (n+2)-gon whose vertex i lies
    above the 0-(n+1) line iff eps[i-1] = +1; covers are diagonal flips that
    increase the slope of the flipped diagonal. All-minus signs give the
    Tamari lattice.
    """
    eps = tuple(1 if e in (1, "+") else -1 for e in eps)
    coords = _polygon_coordinates(eps)
    cycle = _hull_cycle(eps)
    edges_on_hull = {frozenset({cycle[i], cycle[(i + 1) % len(cycle)]}) for i in range(len(cycle))}
    tris = sorted(_triangulations(cycle), key=lambda t: sorted(tuple(sorted(d)) for d in t))
    if len(tris) > cap:
        raise SizeCapExceeded(f"{len(tris)} triangulations exceeds cap {cap}")
    index = {t: i for i, t in enumerate(tris)}

    def slope(diag: frozenset[int]) -> Fraction:
        a, b = sorted(diag)
        (xa, ya), (xb, yb) = coords[a], coords[b]
        return Fraction(yb - ya, xb - xa)

    covers = []
    for t in tris:
        edges = edges_on_hull | t
        neighbors: dict[int, set[int]] = {}
        for e in edges:
            a, b = tuple(e)
            neighbors.setdefault(a, set()).add(b)
            neighbors.setdefault(b, set()).add(a)
        for d in t:
            a, b = tuple(d)
            apexes = neighbors[a] & neighbors[b]
            if len(apexes) != 2:
                raise AssertionError("diagonal of a triangulation must bound two triangles")
            d2 = frozenset(apexes)
            if slope(d2) > slope(d):
                covers.append((index[t], index[(t - {d}) | {d2}]))
    return Poset(len(tris), covers, labels=tris)


def tamari(n: int) -> Poset:
    """Tamari lattice on triangulations of a convex (n+2)-gon."""
    return cambrian([-1] * n)


def noncrossing_partitions(n: int) -> Poset:
    """Noncrossing partitions of [n] under refinement."""

    def partitions(universe: tuple[int, ...]):
        if not universe:
            yield ()
            return
        first, rest = universe[0], universe[1:]
        for k in range(len(rest) + 1):
            for block_rest in itertools.combinations(rest, k):
                block = (first,) + block_rest
                remaining = tuple(x for x in rest if x not in block_rest)
                for more in partitions(remaining):
                    yield (block,) + more

    def noncrossing(part) -> bool:
        for b1, b2 in itertools.combinations(part, 2):
            for a, c in itertools.combinations(sorted(b1), 2):
                if any(a < b < c for b in b2) and any(d < a or d > c for d in b2):
                    return False
        return True

    elements = sorted(
        (tuple(sorted(tuple(sorted(b)) for b in p)) for p in partitions(tuple(range(1, n + 1))) if noncrossing(p))
    )

    def refines(p, q) -> bool:
        return all(any(set(bp) <= set(bq) for bq in q) for bp in p)

    def strictly_refines(p, q) -> bool:
        return p != q and refines(p, q)

    return Poset.from_leq(elements, strictly_refines)


# -- lattice-theoretic core label order (independent of any framing) ------


def lattice_core_label_order(p: Poset) -> Poset:
    """Core label order of a finite semidistributive lattice.

    Each cover (u, v) is labeled by the unique join irreducible j with
    j ∨ u = v and j ∧ u = j_* (the lower cover of j). For each element x,
    x_down is the meet of the lower covers of x, and the label set of x
    collects the labels of all covers inside [x_down, x]. The result
    orders elements by inclusion of label sets.
    """
    if not p.is_lattice():
        raise ValueError("core label order requires a lattice")
    join_irr = [j for j in range(p.size) if len(p.lower_covers(j)) == 1]

    def cover_label(u: int, v: int) -> int:
        matches = []
        for j in join_irr:
            jstar = p.lower_covers(j)[0]
            if p.join(j, u) == v and p.meet(j, u) == jstar:
                matches.append(j)
        if len(matches) != 1:
            raise AssertionError(f"cover ({u},{v}) has {len(matches)} join-irreducible labels")
        return matches[0]

    label_sets = []
    for x in range(p.size):
        lower = p.lower_covers(x)
        x_down = x
        for u in lower:
            x_down = p.meet(x_down, u)
        labels = set()
        for (u, v) in p.covers:
            if p.leq(x_down, u) and p.leq(v, x):
                labels.add(cover_label(u, v))
        label_sets.append(frozenset(labels))

    def strictly_included(a, b) -> bool:
        return a != b and a <= b

    if len(set(label_sets)) != len(label_sets):
        raise AssertionError("core label sets are not distinct")
    return Poset.from_leq(label_sets, strictly_included)


# -- poset isomorphism -----------------------------------------------------


def _joint_refinement(p: Poset, q: Poset) -> tuple[list[int], list[int]]:
    """Iterated degree/height refinement, canonicalized over both posets."""

    def base(r: Poset) -> list[tuple]:
        height = [0] * r.size
        for x in r._topo:
            for y in r.upper_covers(x):
                height[y] = max(height[y], height[x] + 1)
        depth = [0] * r.size
        for x in reversed(r._topo):
            for y in r.lower_covers(x):
                depth[y] = max(depth[y], depth[x] + 1)
        return [
            (len(r.upper_covers(x)), len(r.lower_covers(x)), height[x], depth[x])
            for x in range(r.size)
        ]

    sig_p, sig_q = base(p), base(q)
    cp: list[int] = []
    cq: list[int] = []
    seen = -1
    while True:
        table: dict[tuple, int] = {}
        cp = [table.setdefault(s, len(table)) for s in sig_p]
        cq = [table.setdefault(s, len(table)) for s in sig_q]
        if len(table) == seen:
            return cp, cq
        seen = len(table)
        sig_p = [
            (cp[x], tuple(sorted(cp[y] for y in p.upper_covers(x))), tuple(sorted(cp[y] for y in p.lower_covers(x))))
            for x in range(p.size)
        ]
        sig_q = [
            (cq[x], tuple(sorted(cq[y] for y in q.upper_covers(x))), tuple(sorted(cq[y] for y in q.lower_covers(x))))
            for x in range(q.size)
        ]


def poset_isomorphic(p: Poset, q: Poset) -> dict[int, int] | None:
    """A cover-preserving bijection between two posets, or None.

    Colors elements by iterated degree/height refinement, then runs a
    backtracking search over color-compatible assignments.
    """
    if p.size > ISO_SIZE_CAP or q.size > ISO_SIZE_CAP:
        raise SizeCapExceeded(f"isomorphism search capped at {ISO_SIZE_CAP} elements")
    if p.size != q.size or len(p.covers) != len(q.covers):
        return None
    cp, cq = _joint_refinement(p, q)
    by_color: dict[int, list[int]] = {}
    for y, c in enumerate(cq):
        by_color.setdefault(c, []).append(y)
    for c in set(cp) | set(by_color):
        if len(by_color.get(c, [])) != cp.count(c):
            return None

    order = sorted(range(p.size), key=lambda x: (len(by_color[cp[x]]), x))
    mapping: dict[int, int] = {}
    used = [False] * q.size

    def consistent(x: int, y: int) -> bool:
        yu = set(q.upper_covers(y))
        yl = set(q.lower_covers(y))
        for u in p.upper_covers(x):
            if u in mapping and mapping[u] not in yu:
                return False
        for u in p.lower_covers(x):
            if u in mapping and mapping[u] not in yl:
                return False
        return True

    def search(i: int) -> bool:
        if i == len(order):
            return True
        x = order[i]
        for y in by_color[cp[x]]:
            if not used[y] and consistent(x, y):
                mapping[x] = y
                used[y] = True
                if search(i + 1):
                    return True
                del mapping[x]
                used[y] = False
        return False

    if search(0):
        return dict(mapping)
    return None
