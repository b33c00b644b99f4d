"""Constructors for grid, subgrid and thin-cycle polyominoes, and fixed-polyomino enumeration.

Grid specifications use 1-based vertex coordinates: the box is
``[(1, 1), (m, n)]`` and a hole column ``(a, b)`` removes the cells whose
x-range lies in ``[a, b]``.  Cell ``(x, y)`` of the result (0-based, lower-left
corner) therefore corresponds to the unit square ``[(x+1, y+1), (x+2, y+2)]``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterator, List, Sequence, Set, Tuple

from .errors import (BadGridSpec, DeletionNotInP1, DoesNotClose, NotAGrid, NotThinCycle,
                     RankCapExceeded, SelfOverlap)
from .geometry import (Cell, Polyomino, horizontal_run, is_thin_cycle, maximal_inner_intervals,
                       validate, vertical_run)

DEFAULT_RANK_CAP = 8


@dataclass(frozen=True)
class GridSpec:
    m: int
    n: int
    x_intervals: Tuple[Tuple[int, int], ...]
    y_intervals: Tuple[Tuple[int, int], ...]

    def check(self):
        """Raise BadGridSpec naming the first violated clause."""
        for axis, top, ivs in (("x", self.m, self.x_intervals), ("y", self.n, self.y_intervals)):
            if not ivs:
                raise BadGridSpec(f"no hole {axis}-intervals")
            for a, b in ivs:
                if not 1 < a < b < top:
                    raise BadGridSpec(f"hole {axis}-interval ({a},{b}) must satisfy 1 < a < b < {top}")
            for (a0, b0), (a1, b1) in zip(ivs, ivs[1:]):
                if a1 != b0 + 1:
                    raise BadGridSpec(
                        f"consecutive hole {axis}-intervals ({a0},{b0}), ({a1},{b1}) "
                        f"must be separated by exactly one cell")

    def holes(self) -> List[Tuple[int, int, int, int]]:
        return [(ax, ay, bx, by) for ax, bx in self.x_intervals for ay, by in self.y_intervals]

    def to_dict(self) -> dict:
        return {"m": self.m, "n": self.n,
                "x_intervals": [list(p) for p in self.x_intervals],
                "y_intervals": [list(p) for p in self.y_intervals]}


def make_grid(spec: GridSpec) -> Polyomino:
    spec.check()
    cells = set()
    hole_x = {x for a, b in spec.x_intervals for x in range(a - 1, b - 1)}
    hole_y = {y for a, b in spec.y_intervals for y in range(a - 1, b - 1)}
    for x in range(spec.m - 1):
        for y in range(spec.n - 1):
            if not (x in hole_x and y in hole_y):
                cells.add((x, y))
    return validate(cells, "grid")


def _runs(flags: Sequence[bool]) -> List[Tuple[int, int]]:
    out = []
    start = None
    flags = list(flags) + [False]
    for i in range(len(flags)):
        f = flags[i]
        if f and start is None:
            start = i
        elif not f and start is not None:
            out.append((start, i))
            start = None
    return out


def grid_spec_of(P: Polyomino) -> GridSpec:
    """Recover the specification of a grid polyomino; NotAGrid otherwise."""
    w, h = P.width, P.height
    gap_cols = [any((x, y) not in P.cells for y in range(h)) for x in range(w)]
    gap_rows = [any((x, y) not in P.cells for x in range(w)) for y in range(h)]
    xs = tuple((s + 1, e + 1) for s, e in _runs(gap_cols))
    ys = tuple((s + 1, e + 1) for s, e in _runs(gap_rows))
    if not xs or not ys:
        raise NotAGrid("no holes: r*s = 0")
    spec = GridSpec(w + 1, h + 1, xs, ys)
    try:
        Q = make_grid(spec)
    except BadGridSpec as exc:
        raise NotAGrid(str(exc)) from None
    if Q != P:
        raise NotAGrid("the complement is not an aligned array of rectangular holes")
    return spec


def split_P1_P2(P: Polyomino) -> Tuple[Set[Cell], Set[Cell]]:
    """Cells in exactly one maximal run of length >= 2, and cells in two such runs."""
    grid_spec_of(P)
    p1, p2 = set(), set()
    for c in P.cells:
        long_runs = (horizontal_run(P, c) >= 2) + (vertical_run(P, c) >= 2)
        if long_runs == 2:
            p2.add(c)
        elif long_runs == 1:
            p1.add(c)
        else:
            raise NotAGrid(f"cell {tuple(c)} lies in no run of length 2")
    return p1, p2


def make_subgrid(P: Polyomino, deleted) -> Polyomino:
    p1, _ = split_P1_P2(P)
    deleted = {Cell(*c) for c in deleted}
    outside = sorted(deleted - p1)
    if outside:
        raise DeletionNotInP1(f"cells {[tuple(c) for c in outside]} are not in P1")
    return validate(P.cells - deleted, "subgrid")


_HEADINGS = {"R": (1, 0), "U": (0, 1), "L": (-1, 0), "D": (0, -1)}


def parse_runs(text: str) -> List[Tuple[str, int]]:
    """``"R3,U3,L3,D3"`` -> ``[("R", 3), ...]``."""
    out = []
    for tok in text.replace(" ", "").split(","):
        if not tok:
            continue
        d, k = tok[0].upper(), tok[1:]
        if d not in _HEADINGS or not k.isdigit():
            from .errors import ParseError
            raise ParseError(f"bad run {tok!r}; expected a heading in RULD and a length")
        out.append((d, int(k)))
    return out


def make_thin_cycle(runs) -> Tuple[Polyomino, int]:
    """Lay down cells turtle-style and close the loop.

    Each run ``(heading, k)`` covers ``k`` cells, the first being the last cell
    of the previous run, so a run is a side of the ring including both of its
    corners.  Returns the polyomino and its shortest maximal inner interval.
    """
    if isinstance(runs, str):
        runs = parse_runs(runs)
    x, y = 0, 0
    path = [(0, 0)]
    for heading, k in runs:
        if k < 2:
            raise NotThinCycle(f"run {heading}{k} is shorter than 2 cells")
        dx, dy = _HEADINGS[heading]
        for _ in range(k - 1):
            x, y = x + dx, y + dy
            path.append((x, y))
    if path[-1] != path[0]:
        raise DoesNotClose(f"the walk ends at {path[-1]}, not at the start")
    body = path[:-1]
    if len(set(body)) != len(body):
        seen = set()
        dup = next(c for c in body if c in seen or seen.add(c))
        raise SelfOverlap(f"cell {dup} is visited twice")
    P = validate(body, "thin-cycle")
    if not is_thin_cycle(P):
        raise NotThinCycle("the closed walk is not a thin cycle")
    return P, min(iv.length for iv in maximal_inner_intervals(P))


FIG_RUNS: Dict[str, str] = {
    "fig8a": "R5,U3,L2,U2,L3,D2,L2,D3",
    "fig8b": "R3,U2,R2,U3,L2,U2,L3,D2,L2,D3,R2,D2",
    "fig8c": "R3,U3,R3,U3,L3,U3,L3,D3,L3,D3,R3,D3",
}

FIG_GRIDS: Dict[str, GridSpec] = {
    "annulus": GridSpec(4, 4, ((2, 3),), ((2, 3),)),
    "two_hole": GridSpec(6, 4, ((2, 3), (4, 5)), ((2, 3),)),
    "fig9": GridSpec(16, 6, ((2, 5), (6, 7), (8, 9), (10, 11), (12, 15)), ((2, 3), (4, 5))),
}


def _redelmeier(rank: int) -> Iterator[FrozenSet]:
    # Cells with y > 0, or y == 0 and x >= 0; (0, 0) is the lowest-leftmost cell.
    def ok(c):
        return c[1] > 0 or (c[1] == 0 and c[0] >= 0)

    poly: List[Tuple[int, int]] = []
    seen = set()

    def grow(untried: List[Tuple[int, int]]):
        while untried:
            c = untried.pop()
            poly.append(c)
            if len(poly) == rank:
                yield frozenset(poly)
            else:
                new = [nb for nb in ((c[0] + 1, c[1]), (c[0] - 1, c[1]), (c[0], c[1] + 1), (c[0], c[1] - 1))
                       if ok(nb) and nb not in seen]
                for nb in new:
                    seen.add(nb)
                yield from grow(untried + new)
                for nb in new:
                    seen.discard(nb)
            poly.pop()

    seen.add((0, 0))
    yield from grow([(0, 0)])


def enumerate_fixed(rank: int, cap: int = DEFAULT_RANK_CAP) -> Iterator[Polyomino]:
    """Every fixed polyomino with ``rank`` cells, each exactly once, in a deterministic order."""
    if rank < 1:
        raise ValueError("rank must be positive")
    if rank > cap:
        raise RankCapExceeded(f"rank {rank} exceeds the cap {cap}")
    for cells in _redelmeier(rank):
        yield validate(cells)


def count_fixed(rank: int, cap: int = DEFAULT_RANK_CAP) -> int:
    return sum(1 for _ in enumerate_fixed(rank, cap))


# shadows the builtin inside this module; nothing above calls the builtin
enumerate = enumerate_fixed
