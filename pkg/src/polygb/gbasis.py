"""Pure-difference binomial algebra over an arbitrary field.

Only binomials ``x^u - x^w`` ever occur: S-polynomials and reduction steps of
pure differences are again pure differences (or zero), so coefficients are
never stored and every result is valid over any field.

Internally a monomial is a Python int holding one 9-bit field per variable;
the smallest variable of the current order sits in the most significant
field.  With that packing

* multiplication and exact division are ``+`` and ``-``,
* ``a`` divides ``b`` iff ``((b | GUARD) - a) & GUARD == GUARD``,
* the total degree is ``m % 511``,
* grevlex compares ``(degree, -m)``.

Exponents are capped at 255; exceeding the cap raises ``OverflowError``.
"""

from __future__ import annotations

import heapq
import os
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .errors import OrderPreconditionViolated, Timeout
from .geometry import Polyomino, Vertex
from .orders import ExponentVector, MonomialOrder, grevlex

FIELD_BITS = 9
_FMAX = 255
DEFAULT_PAIR_BUDGET = 10 ** 6

# construction-time purity audit; ``violations`` must stay 0
PURITY = {"checked": 0, "violations": 0}


def default_budget() -> int:
    env = os.environ.get("POLYGB_PAIR_BUDGET")
    return int(env) if env else DEFAULT_PAIR_BUDGET


def purity_counters() -> Dict[str, int]:
    return dict(PURITY)


def reset_purity_counters():
    PURITY["checked"] = 0
    PURITY["violations"] = 0


@dataclass(frozen=True)
class Binomial:
    """``x^plus - x^minus``; ``oriented`` means ``plus`` is the leading term."""

    plus: ExponentVector
    minus: ExponentVector
    oriented: bool = False

    def __post_init__(self):
        PURITY["checked"] += 1
        if not isinstance(self.plus, ExponentVector) or not isinstance(self.minus, ExponentVector) \
                or self.plus == self.minus:
            PURITY["violations"] += 1
            raise AssertionError(f"not a nonzero pure difference: {self.plus!r} - {self.minus!r}")

    @property
    def degree(self) -> int:
        return max(self.plus.degree, self.minus.degree)

    @property
    def is_quadratic(self) -> bool:
        return self.plus.degree == 2 and self.minus.degree == 2

    def negated(self) -> "Binomial":
        return Binomial(self.minus, self.plus, False)

    def same_up_to_sign(self, other: "Binomial") -> bool:
        return {self.plus, self.minus} == {other.plus, other.minus}

    def text(self) -> str:
        return f"{self.plus.text()} - {self.minus.text()}"

    def __str__(self):
        return self.text()


@dataclass(frozen=True)
class GeneratingSet:
    elements: Tuple[Binomial, ...]
    polyomino: Optional[Polyomino] = field(default=None, compare=False)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)


@dataclass(frozen=True)
class GroebnerBasis:
    order: MonomialOrder
    elements: Tuple[Binomial, ...]
    reduced: bool = True

    @property
    def quadratic(self) -> bool:
        return all(b.is_quadratic for b in self.elements)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def text(self) -> str:
        return "".join(b.text() + "\n" for b in self.elements)

    def as_set(self):
        return frozenset((b.plus, b.minus) for b in self.elements)


# ---------------------------------------------------------------------------
# packed-monomial ring


class Ring:
    """Packing of exponent vectors for one monomial order."""

    def __init__(self, order: MonomialOrder):
        self.order = order
        self.vars = order.vertex_list
        n = len(self.vars)
        self.n = n
        self.shift = {v: FIELD_BITS * (n - 1 - r) for r, v in enumerate(self.vars)}
        self.guard = sum(1 << (FIELD_BITS * k + 8) for k in range(n))
        self.low = self.guard >> 8

    def encode(self, m: ExponentVector) -> int:
        out = 0
        shift = self.shift
        for v, e in m.items():
            if e > _FMAX:
                raise OverflowError("exponent above 255")
            out += e << shift[v]
        return out

    def decode(self, m: int) -> ExponentVector:
        items = []
        n = self.n
        for r, v in enumerate(self.vars):
            e = (m >> (FIELD_BITS * (n - 1 - r))) & 0x1FF
            if e:
                items.append((v, e))
        return ExponentVector(items)

    def var(self, v) -> int:
        return 1 << self.shift[Vertex(*v)]

    def to_binomial(self, lead: int, trail: int) -> Binomial:
        return Binomial(self.decode(lead), self.decode(trail), True)

    def from_binomial(self, f: Binomial) -> Tuple[int, int]:
        return _orient(self.encode(f.plus), self.encode(f.minus))


@lru_cache(maxsize=256)
def ring_for(order: MonomialOrder) -> Ring:
    return Ring(order)


def _key(m: int):
    return (m % 511, -m)


def _orient(u: int, w: int) -> Tuple[int, int]:
    return (u, w) if _key(u) > _key(w) else (w, u)


def _audit(u: int, w: int, guard: int):
    PURITY["checked"] += 1
    if u == w or u < 0 or w < 0 or (u | w) & guard:
        PURITY["violations"] += 1
        if (u | w) & guard and u >= 0 and w >= 0:
            raise OverflowError("exponent above 255")
        raise AssertionError("non-pure intermediate")


def _divides(a: int, b: int, guard: int) -> bool:
    return ((b | guard) - a) & guard == guard


def _lcm(a: int, b: int, guard: int) -> int:
    ge = (((a | guard) - b) & guard) >> 8
    mask = ge * 0x1FF
    return (a & mask) | (b & ~mask)


def _nf_monomial(m: int, G: Sequence[Tuple[int, int]], guard: int) -> int:
    """Normal form of a monomial; with binomial reducers it stays a monomial."""
    while True:
        gm = m | guard
        for l, t in G:
            if (gm - l) & guard == guard:
                m = m - l + t
                break
        else:
            return m


def _reduce_lead(u: int, w: int, G: Sequence[Tuple[int, int]], guard: int):
    """Reduce until the leading monomial is irreducible; None if the result is zero."""
    if u == w:
        return None
    u, w = _orient(u, w)
    while True:
        gu = u | guard
        for l, t in G:
            if (gu - l) & guard == guard:
                u = u - l + t
                break
        else:
            _audit(u, w, guard)
            return u, w
        if u == w:
            return None
        u, w = _orient(u, w)


def _reduce_full(u: int, w: int, G: Sequence[Tuple[int, int]], guard: int):
    r = _reduce_lead(u, w, G, guard)
    if r is None:
        return None
    l, t = r
    t = _nf_monomial(t, G, guard)
    _audit(l, t, guard)
    return l, t


def _interreduce(G: Iterable[Tuple[int, int]], guard: int) -> List[Tuple[int, int]]:
    """Minimalize and tail-reduce a Groebner basis; output sorted by ascending lead."""
    minimal: List[Tuple[int, int]] = []
    for l, t in sorted(set(G), key=lambda p: _key(p[0])):
        if not any(_divides(m, l, guard) for m, _ in minimal):
            minimal.append((l, t))
    out = []
    for l, t in minimal:
        t2 = _nf_monomial(t, minimal, guard)
        _audit(l, t2, guard)
        out.append((l, t2))
    return out


class _PairBudget:
    def __init__(self, budget: Optional[int]):
        self.budget = default_budget() if budget is None else budget
        self.used = 0

    def spend(self):
        self.used += 1
        if self.used > self.budget:
            raise Timeout(self.budget)


def _buchberger_raw(gens: Iterable[Tuple[int, int]], guard: int,
                    budget: Optional[int] = None) -> List[Tuple[int, int]]:
    """Reduced Groebner basis of packed binomials (normal pair selection, criteria 1 and 2)."""
    meter = _PairBudget(budget)
    G: List[Tuple[int, int]] = []
    heap: List[Tuple[int, int, int, int]] = []
    pending = set()

    def add(h):
        k = len(G)
        lh = h[0]
        for i, (li, _) in enumerate(G):
            lcm = _lcm(li, lh, guard)
            if lcm == li + lh:
                continue  # coprime leading terms: never queued, counts as settled for the chain test
            heapq.heappush(heap, (lcm % 511, -lcm, i, k))
            pending.add((i, k))
        G.append(h)

    for u, w in sorted(set(gens), key=lambda p: (_key(p[0]), _key(p[1]))):
        r = _reduce_lead(u, w, G, guard)
        if r is not None:
            add(r)

    while heap:
        _, neg_lcm, i, j = heapq.heappop(heap)
        pending.discard((i, j))
        meter.spend()
        lcm = -neg_lcm
        li, ti = G[i]
        lj, tj = G[j]
        chain = False
        glcm = lcm | guard
        for k, (lk, _) in enumerate(G):
            if k == i or k == j:
                continue
            if (glcm - lk) & guard == guard and \
                    (min(i, k), max(i, k)) not in pending and (min(j, k), max(j, k)) not in pending:
                chain = True
                break
        if chain:
            continue
        r = _reduce_lead(lcm - li + ti, lcm - lj + tj, G, guard)
        if r is not None:
            add(r)
    return _interreduce(G, guard)


def _is_groebner_raw(G: Sequence[Tuple[int, int]], guard: int) -> bool:
    """Buchberger criterion: every S-pair of G reduces to zero modulo G."""
    for j in range(len(G)):
        lj, tj = G[j]
        for i in range(j):
            li, ti = G[i]
            lcm = _lcm(li, lj, guard)
            if lcm == li + lj:
                continue
            if _reduce_lead(lcm - li + ti, lcm - lj + tj, G, guard) is not None:
                return False
    return True


# ---------------------------------------------------------------------------
# public operations


def inner_2_minors(P: Polyomino) -> GeneratingSet:
    """One binomial ``x_a x_b - x_c x_d`` per inner interval [a, b]."""
    out = []
    for iv in P.inner_intervals:
        a, b = iv.diagonal_corners
        c, d = iv.anti_diagonal_corners
        out.append(Binomial(ExponentVector.of(a, b), ExponentVector.of(c, d)))
    return GeneratingSet(tuple(out), P)


def order_for(P: Polyomino, index: int = 1, rotate_at=None) -> MonomialOrder:
    return grevlex(index, P.vertices, rotate_at)


def orient(f: Binomial, order: MonomialOrder) -> Binomial:
    if order.compare(f.plus, f.minus) > 0:
        return Binomial(f.plus, f.minus, True)
    return Binomial(f.minus, f.plus, True)


def leading_monomial(f: Binomial, order: MonomialOrder) -> ExponentVector:
    return orient(f, order).plus


def _pack_all(fs: Iterable[Binomial], ring: Ring) -> List[Tuple[int, int]]:
    return [ring.from_binomial(f) for f in fs]


def _elements(G) -> Sequence[Binomial]:
    return G.elements if isinstance(G, (GroebnerBasis, GeneratingSet)) else G


def spoly(f: Binomial, g: Binomial, order: MonomialOrder) -> Optional[Binomial]:
    """S-polynomial of two binomials, oriented; None when it vanishes."""
    ring = ring_for(order)
    lf, tf = ring.from_binomial(f)
    lg, tg = ring.from_binomial(g)
    lcm = _lcm(lf, lg, ring.guard)
    u, w = lcm - lf + tf, lcm - lg + tg
    if u == w:
        return None
    _audit(u, w, ring.guard)
    return ring.to_binomial(*_orient(u, w))


def reduce(f: Binomial, G, order: MonomialOrder) -> Optional[Binomial]:
    """Full normal form of ``f`` modulo ``G``.

    Leading monomial first, then the trailing one; the reducer is always the
    first element of ``G`` (sorted by leading monomial) whose lead divides.
    """
    ring = ring_for(order)
    packed = sorted(_pack_all(_elements(G), ring), key=lambda p: _key(p[0]))
    u, w = ring.from_binomial(f)
    r = _reduce_full(u, w, packed, ring.guard)
    return None if r is None else ring.to_binomial(*r)


def normal_form_monomial(m: ExponentVector, B: GroebnerBasis) -> ExponentVector:
    ring = ring_for(B.order)
    packed = [ring.from_binomial(f) for f in B.elements]
    return ring.decode(_nf_monomial(ring.encode(m), packed, ring.guard))


def contains(B: GroebnerBasis, f: Binomial) -> bool:
    """Ideal membership of a pure difference via normal forms modulo a Groebner basis."""
    ring = ring_for(B.order)
    packed = [ring.from_binomial(g) for g in B.elements]
    guard = ring.guard
    return _nf_monomial(ring.encode(f.plus), packed, guard) == \
        _nf_monomial(ring.encode(f.minus), packed, guard)


def _wrap(order: MonomialOrder, packed: List[Tuple[int, int]]) -> GroebnerBasis:
    ring = ring_for(order)
    return GroebnerBasis(order, tuple(ring.to_binomial(l, t) for l, t in packed), True)


def buchberger(G, order: MonomialOrder, budget: Optional[int] = None) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``G``.

    Raises :class:`Timeout` when more than ``budget`` pairs are processed.
    """
    ring = ring_for(order)
    packed = _buchberger_raw(_pack_all(_elements(G), ring), ring.guard, budget)
    return _wrap(order, packed)


def is_groebner(G, order: MonomialOrder) -> bool:
    ring = ring_for(order)
    return _is_groebner_raw(_pack_all(_elements(G), ring), ring.guard)


def is_quadratic_gb(P: Polyomino, order, rotate_at=None, budget: Optional[int] = None) -> bool:
    """True iff the inner 2-minors are the reduced Groebner basis under ``order``.

    ``order`` is a MonomialOrder or an index 1..8.  The inner 2-minors are always
    inter-reduced, so this is the Buchberger criterion applied to them.
    """
    if isinstance(order, int):
        order = order_for(P, order, rotate_at)
    return is_groebner(inner_2_minors(P), order)


def is_quadratic_gb_by_buchberger(P: Polyomino, order, rotate_at=None,
                                  budget: Optional[int] = None) -> bool:
    """Same predicate decided by a full Buchberger run and set comparison."""
    if isinstance(order, int):
        order = order_for(P, order, rotate_at)
    M = [orient(f, order) for f in inner_2_minors(P)]
    B = buchberger(M, order, budget)
    return B.as_set() == frozenset((f.plus, f.minus) for f in M)


def _check_smallest(B: GroebnerBasis, v) -> Vertex:
    v = Vertex(*v)
    if B.order.vertex_list[0] != v:
        raise OrderPreconditionViolated(
            f"x_{v.x}_{v.y} is not the smallest variable of {B.order.label()}")
    return v


def colon_by_variable(B: GroebnerBasis, v) -> GroebnerBasis:
    """Reduced Groebner basis of ``(I : x_v)`` from a reduced basis of ``I``.

    ``x_v`` must be the smallest variable of the (grevlex) order of ``B``; elements
    divisible by ``x_v`` are divided once, then the set is inter-reduced.
    """
    v = _check_smallest(B, v)
    ring = ring_for(B.order)
    xv = ring.var(v)
    guard = ring.guard
    out = []
    for f in B.elements:
        l, t = ring.from_binomial(f)
        if _divides(xv, l, guard) and _divides(xv, t, guard):
            l, t = l - xv, t - xv
        out.append((l, t))
    return _wrap(B.order, _interreduce(out, guard))


def _divide_out(l: int, t: int, xv: int, guard: int) -> Tuple[int, int, int]:
    k = 0
    while _divides(xv, l, guard) and _divides(xv, t, guard):
        l, t = l - xv, t - xv
        k += 1
    return l, t, k


def saturate_variable(B: GroebnerBasis, v) -> Tuple[GroebnerBasis, bool]:
    """``(I : x_v^inf)`` from a reduced basis with ``x_v`` smallest; also reports change."""
    v = _check_smallest(B, v)
    ring = ring_for(B.order)
    xv = ring.var(v)
    guard = ring.guard
    out = []
    changed = False
    for f in B.elements:
        l, t, k = _divide_out(*ring.from_binomial(f), xv, guard)
        changed = changed or k > 0
        out.append((l, t))
    if not changed:
        return B, False
    return _wrap(B.order, _interreduce(out, guard)), True


@dataclass
class SaturationStep:
    vertex: Vertex
    order: str
    basis_size: int
    changed: bool

    def text(self) -> str:
        mark = "grew" if self.changed else "unchanged"
        return f"x_{self.vertex.x}_{self.vertex.y} under {self.order}: {self.basis_size} elements, {mark}"


def _convert(B: GroebnerBasis) -> List[Binomial]:
    return list(B.elements)


def saturate_all(P: Polyomino, budget: Optional[int] = None,
                 transcript: Optional[List[SaturationStep]] = None,
                 base_index: int = 1) -> GroebnerBasis:
    """``I_P : (prod of all variables)^inf`` as a reduced basis under the base order.

    Vertices are visited in ascending base order; each visit recomputes the
    basis under the base order rotated at that vertex and divides out the
    variable.  Passes repeat until one pass changes nothing.
    """
    base = order_for(P, base_index)
    gens: List[Binomial] = list(inner_2_minors(P))
    while True:
        changed_pass = False
        for v in base.vertex_list:
            order = order_for(P, base_index, v)
            Bv = buchberger(gens, order, budget)
            Bs, changed = saturate_variable(Bv, v)
            if transcript is not None:
                transcript.append(SaturationStep(v, order.label(), len(Bs), changed))
            changed_pass = changed_pass or changed
            gens = _convert(Bs)
        if not changed_pass:
            break
    return buchberger(gens, base, budget)


def ideals_equal(F, G, P: Polyomino, budget: Optional[int] = None) -> bool:
    """Compare two binomial ideals by their reduced bases under the canonical order."""
    base = order_for(P, 1)
    return buchberger(F, base, budget).as_set() == buchberger(G, base, budget).as_set()


@dataclass
class PrimeVerdict:
    prime: bool
    witness: Optional[Binomial] = None
    witness_vertex: Optional[Vertex] = None
    transcript: List[SaturationStep] = field(default_factory=list)
    witness_in_lattice: Optional[bool] = None
    witness_normal_form_nonzero: Optional[bool] = None

    def __bool__(self):
        return self.prime

    @property
    def certified(self) -> bool:
        if self.prime:
            return True
        return bool(self.witness_in_lattice and self.witness_normal_form_nonzero)


def is_prime(P: Polyomino, budget: Optional[int] = None, base_index: int = 1) -> PrimeVerdict:
    """Decide ``I_P == I_P : (prod x_v)^inf``.

    This is the first saturation pass with an early exit: if no variable is a
    zero divisor modulo ``I_P`` the pass leaves ``I_P`` fixed, hence it is the
    saturation.  Otherwise the divided basis element is a witness in the
    lattice ideal outside ``I_P``; it is checked against the lattice and by a
    normal form modulo ``I_P``.
    """
    from .lattice import binomial_in_lattice_ideal, cell_vectors

    gens = list(inner_2_minors(P))
    base = order_for(P, base_index)
    transcript: List[SaturationStep] = []
    for v in base.vertex_list:
        order = order_for(P, base_index, v)
        Bv = buchberger(gens, order, budget)
        ring = ring_for(order)
        xv = ring.var(v)
        witness = None
        for f in Bv.elements:
            l, t, k = _divide_out(*ring.from_binomial(f), xv, ring.guard)
            if k:
                witness = ring.to_binomial(l, t)
                break
        transcript.append(SaturationStep(v, order.label(), len(Bv), witness is not None))
        if witness is not None:
            L = cell_vectors(P)
            in_lattice = binomial_in_lattice_ideal(L, witness)
            nonzero = not contains(Bv, witness)
            return PrimeVerdict(False, witness, v, transcript, in_lattice, nonzero)
    return PrimeVerdict(True, None, None, transcript)


def format_binomials(fs: Iterable[Binomial]) -> str:
    return "".join(f.text() + "\n" for f in fs)
