"""Cells, vertices, intervals and polyominoes on the integer grid.

A cell is identified by its lower-left vertex.  Polyominoes are stored in
canonical form, translated so that the minimal x and y cell coordinates are 0.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, List, NamedTuple, Optional, Tuple

from .errors import Empty, NotConnected, UnknownPattern


class Vertex(NamedTuple):
    x: int
    y: int


class Cell(NamedTuple):
    """Unit square ``[(x, y), (x + 1, y + 1)]`` named by its lower-left vertex."""

    x: int
    y: int

    @property
    def lower_left(self) -> Vertex:
        return Vertex(self.x, self.y)

    @property
    def vertices(self) -> Tuple[Vertex, Vertex, Vertex, Vertex]:
        x, y = self.x, self.y
        return (Vertex(x, y), Vertex(x + 1, y), Vertex(x, y + 1), Vertex(x + 1, y + 1))


EDGE_STEPS = ((1, 0), (-1, 0), (0, 1), (0, -1))


@dataclass(frozen=True, order=True)
class Interval:
    lower_left: Vertex
    upper_right: Vertex

    def __post_init__(self):
        a, b = self.lower_left, self.upper_right
        if a[0] > b[0] or a[1] > b[1]:
            raise ValueError(f"not an interval: {a} .. {b}")
        object.__setattr__(self, "lower_left", Vertex(*a))
        object.__setattr__(self, "upper_right", Vertex(*b))

    @property
    def proper(self) -> bool:
        return self.lower_left.x < self.upper_right.x and self.lower_left.y < self.upper_right.y

    @property
    def upper_left(self) -> Vertex:
        return Vertex(self.lower_left.x, self.upper_right.y)

    @property
    def lower_right(self) -> Vertex:
        return Vertex(self.upper_right.x, self.lower_left.y)

    @property
    def diagonal_corners(self) -> Tuple[Vertex, Vertex]:
        return self.lower_left, self.upper_right

    @property
    def anti_diagonal_corners(self) -> Tuple[Vertex, Vertex]:
        return self.upper_left, self.lower_right

    @property
    def width(self) -> int:
        return self.upper_right.x - self.lower_left.x

    @property
    def height(self) -> int:
        return self.upper_right.y - self.lower_left.y

    @property
    def length(self) -> int:
        """Number of cells."""
        return self.width * self.height

    def cells(self) -> List[Cell]:
        a, b = self.lower_left, self.upper_right
        return [Cell(x, y) for x in range(a.x, b.x) for y in range(a.y, b.y)]

    def contains(self, other: "Interval") -> bool:
        return (self.lower_left.x <= other.lower_left.x and self.lower_left.y <= other.lower_left.y
                and other.upper_right.x <= self.upper_right.x
                and other.upper_right.y <= self.upper_right.y)

    def __str__(self):
        a, b = self.lower_left, self.upper_right
        return f"[({a.x},{a.y}),({b.x},{b.y})]"


def _connected(cells: FrozenSet[Tuple[int, int]]) -> bool:
    start = next(iter(cells))
    seen = {start}
    stack = [start]
    while stack:
        x, y = stack.pop()
        for dx, dy in EDGE_STEPS:
            nb = (x + dx, y + dy)
            if nb in cells and nb not in seen:
                seen.add(nb)
                stack.append(nb)
    return len(seen) == len(cells)


@dataclass(frozen=True)
class Polyomino:
    """A finite edge-connected set of cells, translated to the origin."""

    cells: FrozenSet[Cell]
    name: Optional[str] = field(default=None, compare=False)

    @property
    def rank(self) -> int:
        return len(self.cells)

    @cached_property
    def vertices(self) -> FrozenSet[Vertex]:
        return frozenset(v for c in self.cells for v in c.vertices)

    @cached_property
    def width(self) -> int:
        return max(c.x for c in self.cells) + 1

    @cached_property
    def height(self) -> int:
        return max(c.y for c in self.cells) + 1

    def sorted_cells(self) -> List[Cell]:
        return sorted(self.cells, key=lambda c: (c.y, c.x))

    def has_cell(self, x: int, y: int) -> bool:
        return (x, y) in self.cells

    def is_inner(self, lower_left, upper_right) -> bool:
        """True iff ``[lower_left, upper_right]`` is a proper interval all of whose cells are in P."""
        ax, ay = lower_left
        bx, by = upper_right
        if ax >= bx or ay >= by:
            return False
        cells = self.cells
        return all((x, y) in cells for x in range(ax, bx) for y in range(ay, by))

    @cached_property
    def inner_intervals(self) -> Tuple[Interval, ...]:
        cells = self.cells
        out = []
        for cx, cy in sorted(cells):
            max_w = None
            h = 0
            while (cx, cy + h) in cells:
                w = 0
                while (cx + w, cy + h) in cells and (max_w is None or w < max_w):
                    w += 1
                max_w = w
                for ww in range(1, max_w + 1):
                    out.append(Interval(Vertex(cx, cy), Vertex(cx + ww, cy + h + 1)))
                h += 1
        out.sort()
        return tuple(out)

    @cached_property
    def inner_interval_set(self) -> FrozenSet[Tuple[int, int, int, int]]:
        return frozenset((i.lower_left.x, i.lower_left.y, i.upper_right.x, i.upper_right.y)
                         for i in self.inner_intervals)

    def __str__(self):
        from .io import format_ascii
        return format_ascii(self)


def canonical_cells(cells: Iterable) -> FrozenSet[Cell]:
    cells = [tuple(c) for c in cells]
    if not cells:
        raise Empty("a polyomino needs at least one cell")
    mx = min(c[0] for c in cells)
    my = min(c[1] for c in cells)
    return frozenset(Cell(x - mx, y - my) for x, y in cells)


def validate(cells: Iterable, name: Optional[str] = None) -> Polyomino:
    """Check edge-connectivity and return the canonical polyomino."""
    canon = canonical_cells(cells)
    if not _connected(canon):
        raise NotConnected("cells are not edge-connected")
    return Polyomino(canon, name)


def inner_intervals(P: Polyomino) -> Tuple[Interval, ...]:
    return P.inner_intervals


def maximal_inner_intervals(P: Polyomino) -> List[Interval]:
    """Inner intervals not contained in a larger inner interval."""
    out = []
    for iv in P.inner_intervals:
        (ax, ay), (bx, by) = iv.lower_left, iv.upper_right
        # maximal iff no one-step extension stays inner
        if (P.is_inner((ax - 1, ay), (bx, by)) or P.is_inner((ax, ay - 1), (bx, by))
                or P.is_inner((ax, ay), (bx + 1, by)) or P.is_inner((ax, ay), (bx, by + 1))):
            continue
        out.append(iv)
    return out


def hole_cells(P: Polyomino) -> List[FrozenSet[Cell]]:
    """Bounded components of the complement, in the coordinates of P.

    Flood fill from a frame one cell outside the bounding box; complement
    cells not reached are inside holes.
    """
    w, h = P.width, P.height
    cells = P.cells
    outside = {(-1, -1)}
    stack = [(-1, -1)]
    while stack:
        x, y = stack.pop()
        for dx, dy in EDGE_STEPS:
            nb = (x + dx, y + dy)
            if -1 <= nb[0] <= w and -1 <= nb[1] <= h and nb not in cells and nb not in outside:
                outside.add(nb)
                stack.append(nb)
    inside = {(x, y) for x in range(w) for y in range(h)
              if (x, y) not in cells and (x, y) not in outside}
    comps = []
    while inside:
        seed = min(inside)
        inside.discard(seed)
        comp = {seed}
        stack = [seed]
        while stack:
            x, y = stack.pop()
            for dx, dy in EDGE_STEPS:
                nb = (x + dx, y + dy)
                if nb in inside:
                    inside.discard(nb)
                    comp.add(nb)
                    stack.append(nb)
        comps.append(frozenset(Cell(*c) for c in comp))
    return comps


def holes(P: Polyomino) -> List[Polyomino]:
    """Holes of P as (translated) polyominoes; empty iff P is simple."""
    return [Polyomino(canonical_cells(c)) for c in hole_cells(P)]


def is_simple(P: Polyomino) -> bool:
    return not holes(P)


# Translation-only patterns.  Each entry maps to (present offsets, absent offsets).
PATTERNS: Dict[str, Tuple[Tuple[Tuple[int, int], ...], Tuple[Tuple[int, int], ...]]] = {
    "Q": (((0, 0), (1, 0), (0, 1), (1, 1)), ()),
    "SKEW_I": (((0, 0), (1, 0), (1, 1), (2, 1)), ()),
    "SKEW_II": (((0, 0), (0, 1), (1, 1), (1, 2)), ()),
    "SKEW_III": (((1, 0), (2, 0), (0, 1), (1, 1)), ()),
    "SKEW_IV": (((1, 0), (1, 1), (0, 1), (0, 2)), ()),
    # two cells meeting at one vertex, the other two cells at that vertex missing
    "DIAG_NE": (((0, 0), (1, 1)), ((0, 1), (1, 0))),
    "DIAG_NW": (((0, 1), (1, 0)), ((0, 0), (1, 1))),
}


def pattern_matches(P: Polyomino, name: str) -> List[Tuple[int, int]]:
    """Translations ``t`` such that the pattern shifted by ``t`` matches P."""
    try:
        present, absent = PATTERNS[name]
    except KeyError:
        raise UnknownPattern(name) from None
    cells = P.cells
    ox, oy = present[0]
    found = []
    for cx, cy in sorted(cells):
        tx, ty = cx - ox, cy - oy
        if all((tx + dx, ty + dy) in cells for dx, dy in present) and \
                not any((tx + dx, ty + dy) in cells for dx, dy in absent):
            found.append((tx, ty))
    return found


def contains_pattern(P: Polyomino, name: str) -> bool:
    return bool(pattern_matches(P, name))


def is_thin(P: Polyomino) -> bool:
    return not contains_pattern(P, "Q")


def horizontal_run(P: Polyomino, cell) -> int:
    x, y = cell
    lo = x
    while (lo - 1, y) in P.cells:
        lo -= 1
    hi = x
    while (hi + 1, y) in P.cells:
        hi += 1
    return hi - lo + 1


def vertical_run(P: Polyomino, cell) -> int:
    x, y = cell
    lo = y
    while (x, lo - 1) in P.cells:
        lo -= 1
    hi = y
    while (x, hi + 1) in P.cells:
        hi += 1
    return hi - lo + 1


def cycle_order(P: Polyomino) -> Optional[List[Cell]]:
    """Cells in cyclic order if the edge-adjacency graph is a single cycle, else None."""
    cells = P.cells
    if len(cells) < 4:
        return None
    nbrs = {}
    for c in cells:
        ns = [Cell(c.x + dx, c.y + dy) for dx, dy in EDGE_STEPS if (c.x + dx, c.y + dy) in cells]
        if len(ns) != 2:
            return None
        nbrs[c] = ns
    start = min(cells)
    order = [start]
    prev, cur = start, min(nbrs[start])
    while cur != start:
        order.append(cur)
        a, b = nbrs[cur]
        prev, cur = cur, (b if a == prev else a)
    if len(order) != len(cells):
        return None
    return order


def _touch(c: Cell, d: Cell) -> bool:
    return abs(c.x - d.x) <= 1 and abs(c.y - d.y) <= 1


def is_thin_cycle(P: Polyomino, linear: bool = False) -> bool:
    """Thin polyomino admitting a cyclic labelling whose far-apart cells are vertex-disjoint.

    ``linear=False`` measures distance around the cycle.  ``linear=True`` applies
    the condition to labels ``i < j`` with ``j > i + 2`` literally; it then fails
    for every ring because the first and last cell share an edge.
    """
    if not is_thin(P):
        return False
    order = cycle_order(P)
    if order is None:
        return False
    n = len(order)
    if linear:
        # every labelling is a rotation or reflection of the cycle
        for seq in (order, order[::-1]):
            for s in range(n):
                lab = seq[s:] + seq[:s]
                if all(not _touch(lab[i], lab[j])
                       for i in range(n) for j in range(i + 3, n)):
                    return True
        return False
    for i, j in itertools.combinations(range(n), 2):
        if min(j - i, n - (j - i)) > 2 and _touch(order[i], order[j]):
            return False
    return True


def translate(P: Polyomino, dx: int, dy: int) -> FrozenSet[Cell]:
    return frozenset(Cell(c.x + dx, c.y + dy) for c in P.cells)
