"""Chip-firing moves CF(S, l)(x) = -min(dist(S, x), l)."""
from __future__ import annotations

from fractions import Fraction

from . import _pl
from ._pl import Piece
from .curve import Model, Point, vertex_distances
from .errors import InvalidSubset, NotOnInfiniteEdge, PointNotOnCurve
from .ratfn import RationalFunction
from .scalar import INF, ExtRat, ext
from .subset import ClosedSubset, validate_subset

__all__ = [
    "ClosedSubset",
    "validate_subset",
    "complement_closure",
    "distance_to_set",
    "chip_firing_move",
    "cf_point",
]

ZERO = Fraction(0)


def complement_closure(m: Model, y: Point, x: Point) -> ClosedSubset:
    """The closed set obtained by removing the half-open ray (y, x]."""
    if not m.is_infinite_point(x):
        raise NotOnInfiniteEdge(f"{x!r} is not a point at infinity")
    (eid, _), = m.incidence[x.vertex]
    e = m.edge(eid)
    m.check_point(y)
    if y.vertex is not None:
        if y.vertex != e.tail:
            raise NotOnInfiniteEdge(f"{y!r} is not on the edge at {x!r}")
        cut = ZERO
    elif y.edge == eid:
        cut = y.offset
    else:
        raise NotOnInfiniteEdge(f"{y!r} is not on the edge at {x!r}")
    ivs = [(f.id, ZERO, f.length) for f in m.edges if f.id != eid]
    ivs.append((eid, ZERO, cut))
    verts = [v for v in m.vertices if v != x.vertex]
    return ClosedSubset.build(m, verts, ivs)


def _require(m: Model, s: ClosedSubset) -> None:
    if s.model != m:
        raise InvalidSubset("subset is not on this model")
    rep = validate_subset(m, s)
    if not rep.ok:
        raise InvalidSubset("; ".join(rep.issues))


def _vertex_dist(m: Model, s: ClosedSubset) -> dict[str, ExtRat]:
    seeds: dict[str, ExtRat] = {v: ZERO for v in s.vertices}
    for eid, ivs in s.intervals:
        e = m.edge(eid)
        lo = ivs[0][0]
        if lo < seeds.get(e.tail, INF):
            seeds[e.tail] = lo
        if not e.is_infinite:
            d = e.length - ivs[-1][1]
            if d < seeds.get(e.head, INF):
                seeds[e.head] = d
    return vertex_distances(m, seeds)


def distance_to_set(m: Model, s: ClosedSubset, x: Point) -> ExtRat:
    _require(m, s)
    m.check_point(x)
    if s.contains(x):
        return ZERO
    if m.is_infinite_point(x):
        return INF
    d = _vertex_dist(m, s)
    if x.vertex is not None:
        return d[x.vertex]
    e = m.edge(x.edge)
    t = x.offset
    best = d[e.tail] + t
    if not e.is_infinite:
        best = min(best, d[e.head] + e.length - t)
    for lo, hi in s.on_edge(e.id):
        best = min(best, lo - t if t < lo else t - hi)
    return best


def _cell_piece(length: ExtRat, lo: Fraction, hi: ExtRat) -> Piece:
    """-dist(t, [lo, hi]) on [0, length]."""
    xs: list[Fraction] = [ZERO]
    ys: list[Fraction] = [-lo]
    if lo > 0:
        xs.append(lo)
        ys.append(ZERO)
    if hi == INF:
        return _pl.canonical(xs, ys, 0)
    if hi > lo:
        xs.append(hi)
        ys.append(ZERO)
    if length == INF:
        return _pl.canonical(xs, ys, -1)
    if hi < length:
        xs.append(length)
        ys.append(hi - length)
    return _pl.canonical(xs, ys, None)


def chip_firing_move(m: Model, s: ClosedSubset, l: ExtRat = INF) -> RationalFunction:
    l = ext(l)
    if not l > 0:
        raise ValueError("chip-firing radius must be positive")
    _require(m, s)
    d = _vertex_dist(m, s)
    pieces = []
    for e in m.edges:
        L = e.length
        cands = []
        if d[e.tail] != INF:
            cands.append(_pl.affine(L, -d[e.tail], -1))
        if not e.is_infinite and d[e.head] != INF:
            cands.append(_pl.affine(L, -(d[e.head] + L), 1))
        for lo, hi in s.on_edge(e.id):
            cands.append(_cell_piece(L, lo, hi))
        if e.is_infinite and e.head in s.vertices and not s.on_edge(e.id):
            raise InvalidSubset(f"point at infinity {e.head} is isolated in the subset")
        if l != INF:
            cands.append(_pl.constant(L, -l))
        if not cands:
            raise PointNotOnCurve(f"edge {e.id} is unreachable from the subset")
        p = cands[0]
        for q in cands[1:]:
            p = _pl.pmax(p, q)
        pieces.append(p)
    return RationalFunction(m, tuple(pieces))


def cf_point(m: Model, x: Point, l: ExtRat = INF) -> RationalFunction:
    return chip_firing_move(m, ClosedSubset.of_points(m, [x]), l)
