"""The eight arrow-pair vertex orders, vertex rotation and grevlex comparators.

Order ``i`` sorts vertices by a primary key and a tie-break, listed below as
(primary, tie-break); "asc" means the coordinate grows along the order.

    1: x asc, y desc      5: y asc, x desc
    2: x desc, y desc     6: y asc, x asc
    3: x desc, y asc      7: y desc, x asc
    4: x asc, y asc       8: y desc, x desc

Odd orders make the diagonal product of every inner 2-minor the leading term,
even orders the anti-diagonal product.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Dict, Iterable, Iterator, Mapping, Optional, Tuple

from .errors import BadIndex, VertexNotInP
from .geometry import Vertex

ODD = (1, 3, 5, 7)
EVEN = (2, 4, 6, 8)

_KEYS: Dict[int, Callable[[Tuple[int, int]], Tuple[int, int]]] = {
    1: lambda v: (v[0], -v[1]),
    2: lambda v: (-v[0], -v[1]),
    3: lambda v: (-v[0], v[1]),
    4: lambda v: (v[0], v[1]),
    5: lambda v: (v[1], -v[0]),
    6: lambda v: (v[1], v[0]),
    7: lambda v: (-v[1], v[0]),
    8: lambda v: (-v[1], -v[0]),
}


def parity_class(i: int) -> Tuple[int, ...]:
    check_index(i)
    return ODD if i % 2 else EVEN


def check_index(i: int) -> int:
    if i not in _KEYS:
        raise BadIndex(f"order index must be in 1..8, got {i!r}")
    return i


def vertex_key(i: int, v) -> Tuple[int, int]:
    check_index(i)
    return _KEYS[i](v)


def vertex_compare(i: int, a, b) -> int:
    """-1, 0 or 1 as ``a`` is smaller than, equal to or larger than ``b`` under order ``i``."""
    ka, kb = vertex_key(i, a), vertex_key(i, b)
    return (ka > kb) - (ka < kb)


@dataclass(frozen=True)
class VertexOrder:
    """A total order on a finite vertex set, listed ascending."""

    index: int
    vertex_list: Tuple[Vertex, ...]
    rotation_vertex: Optional[Vertex] = None

    @classmethod
    def build(cls, index: int, vertices: Iterable, rotate_at=None) -> "VertexOrder":
        check_index(index)
        base = tuple(sorted((Vertex(*v) for v in vertices), key=_KEYS[index]))
        order = cls(index, base)
        if rotate_at is not None:
            order = rotate(order, rotate_at)
        return order

    @cached_property
    def rank(self) -> Dict[Vertex, int]:
        return {v: r for r, v in enumerate(self.vertex_list)}

    @property
    def smallest(self) -> Vertex:
        return self.vertex_list[0]

    def compare(self, a, b) -> int:
        ra, rb = self.rank[Vertex(*a)], self.rank[Vertex(*b)]
        return (ra > rb) - (ra < rb)

    def label(self) -> str:
        if self.rotation_vertex is None:
            return f"<{self.index}"
        v = self.rotation_vertex
        return f"<{self.index}@({v.x},{v.y})"


def rotate(order: VertexOrder, v) -> VertexOrder:
    """Cyclic shift of the vertex list so that ``v`` becomes the smallest vertex."""
    v = Vertex(*v)
    try:
        k = order.vertex_list.index(v)
    except ValueError:
        raise VertexNotInP(f"vertex {tuple(v)} is not a vertex of the polyomino") from None
    if k == 0:
        return order
    lst = order.vertex_list
    return VertexOrder(order.index, lst[k:] + lst[:k], v)


class ExponentVector(Mapping):
    """Sparse exponent map ``Vertex -> positive int``; zero entries are dropped."""

    __slots__ = ("_items", "_hash", "degree")

    def __init__(self, data=()):
        if isinstance(data, Mapping):
            data = data.items()
        acc: Dict[Vertex, int] = {}
        for v, e in data:
            if e < 0:
                raise ValueError("negative exponent")
            if e:
                v = Vertex(*v)
                acc[v] = acc.get(v, 0) + e
        self._items = tuple(sorted(acc.items()))
        self._hash = hash(self._items)
        self.degree = sum(acc.values())

    @classmethod
    def of(cls, *vertices) -> "ExponentVector":
        return cls((v, 1) for v in vertices)

    def __getitem__(self, v):
        for w, e in self._items:
            if w == v:
                return e
        raise KeyError(v)

    def get(self, v, default=0):
        for w, e in self._items:
            if w == v:
                return e
        return default

    def __iter__(self) -> Iterator[Vertex]:
        return (v for v, _ in self._items)

    def __len__(self):
        return len(self._items)

    def __eq__(self, other):
        if isinstance(other, ExponentVector):
            return self._items == other._items
        return NotImplemented

    def __hash__(self):
        return self._hash

    def __mul__(self, other: "ExponentVector") -> "ExponentVector":
        return ExponentVector(self._items + other._items)

    def divides(self, other: "ExponentVector") -> bool:
        return all(other.get(v) >= e for v, e in self._items)

    def __repr__(self):
        return f"ExponentVector({dict(self._items)!r})"

    def text(self) -> str:
        if not self._items:
            return "1"
        parts = []
        for (x, y), e in self._items:
            parts.append(f"x_{x}_{y}" if e == 1 else f"x_{x}_{y}^{e}")
        return "*".join(parts)


@dataclass(frozen=True)
class MonomialOrder:
    """Graded reverse lexicographic order induced by a vertex order."""

    base: VertexOrder

    @property
    def vertex_list(self) -> Tuple[Vertex, ...]:
        return self.base.vertex_list

    def key(self, m: ExponentVector):
        """Sort key: larger key means larger monomial."""
        rank = self.base.rank
        # scanning from the smallest variable, a smaller exponent wins
        dense = [0] * len(rank)
        for v, e in m.items():
            dense[rank[v]] = e
        return (m.degree, tuple(-e for e in dense))

    def compare(self, m1: ExponentVector, m2: ExponentVector) -> int:
        k1, k2 = self.key(m1), self.key(m2)
        return (k1 > k2) - (k1 < k2)

    def label(self) -> str:
        return self.base.label()


def monomial_compare(order: MonomialOrder, m1: ExponentVector, m2: ExponentVector) -> int:
    return order.compare(m1, m2)


def grevlex(index: int, vertices: Iterable, rotate_at=None) -> MonomialOrder:
    return MonomialOrder(VertexOrder.build(index, vertices, rotate_at))


# Plane isometries as integer matrices ((a, b), (c, d)): (x, y) -> (a x + b y, c x + d y).
_SYMMETRIES: Dict[int, Tuple[Tuple[int, int], Tuple[int, int]]] = {
    1: ((1, 0), (0, 1)),     # identity
    2: ((-1, 0), (0, 1)),    # reflect x
    3: ((-1, 0), (0, -1)),   # rotate 180
    4: ((1, 0), (0, -1)),    # reflect y
    5: ((0, 1), (1, 0)),     # transpose
    6: ((0, -1), (1, 0)),    # rotate +90
    7: ((0, -1), (-1, 0)),   # anti-transpose
    8: ((0, 1), (-1, 0)),    # rotate -90
}


@dataclass(frozen=True)
class Isometry:
    """Linear symmetry of the square grid, acting on vertices."""

    matrix: Tuple[Tuple[int, int], Tuple[int, int]]

    def __call__(self, v) -> Tuple[int, int]:
        (a, b), (c, d) = self.matrix
        return (a * v[0] + b * v[1], c * v[0] + d * v[1])

    def inverse(self) -> "Isometry":
        (a, b), (c, d) = self.matrix
        # orthogonal integer matrix: inverse is the transpose
        return Isometry(((a, c), (b, d)))

    def map_cell(self, cell) -> Tuple[int, int]:
        """Image of a unit cell, named by the lower-left corner of the image square."""
        x, y = cell
        pts = [self((x + dx, y + dy)) for dx in (0, 1) for dy in (0, 1)]
        return (min(p[0] for p in pts), min(p[1] for p in pts))


def symmetry_for(i: int) -> Isometry:
    """The isometry ``s`` with ``a <1 b`` iff ``s(a) <i s(b)``."""
    check_index(i)
    return Isometry(_SYMMETRIES[i])


ALL_ISOMETRIES = tuple(Isometry(m) for m in _SYMMETRIES.values())
