"""The semifield of rational functions on a tropical curve.

A :class:`RationalFunction` stores one :class:`~tropmorph._pl.Piece` per
edge of its model, in the edge's stored orientation.  The distinguished
element ``-inf`` is represented with ``pieces=None``.  Pieces are kept in
canonical form, so structural equality is functional equality.

Sums and products are taken pointwise on the finite part of the curve and
extended continuously to the points at infinity.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from . import _pl
from ._pl import Piece
from .curve import Correspondence, Model, Point
from .errors import BottomFunction, CurveMismatch, InvalidFunction, NonInvertibleZero
from .report import ValidationReport
from .scalar import INF, NEG_INF, ExtRat, ext, format_ext, is_finite
from .subset import ClosedSubset


@dataclass(frozen=True, eq=False)
class RationalFunction:
    curve: Model
    pieces: tuple[Piece, ...] | None

    # -- construction -----------------------------------------------------

    @classmethod
    def from_pieces(cls, m: Model, pieces: Mapping[str, Piece] | Sequence[Piece]) -> "RationalFunction":
        """Validate and canonicalise per-edge data."""
        if isinstance(pieces, Mapping):
            missing = [e.id for e in m.edges if e.id not in pieces]
            if missing:
                raise InvalidFunction(f"no data for edges {missing}")
            extra = set(pieces) - {e.id for e in m.edges}
            if extra:
                raise InvalidFunction(f"data for unknown edges {sorted(extra)}")
            seq = [pieces[e.id] for e in m.edges]
        else:
            seq = list(pieces)
            if len(seq) != len(m.edges):
                raise InvalidFunction("one piece per edge is required")
        out = []
        for e, p in zip(m.edges, seq):
            problems = _pl.issues(p, e.length)
            if problems:
                raise InvalidFunction(f"edge {e.id}: {problems[0]}")
            out.append(_pl.canonical(p.xs, p.ys, p.tail))
        f = cls(m, tuple(out))
        rep = check_continuity(f)
        if not rep.ok:
            raise InvalidFunction(rep.issues[0])
        return f

    @classmethod
    def from_breakpoints(cls, m: Model, data: Mapping[str, Sequence[tuple]],
                         tails: Mapping[str, int] | None = None) -> "RationalFunction":
        """``data[eid]`` lists (offset, value) pairs in the stored orientation."""
        tails = tails or {}
        pieces = {}
        for e in m.edges:
            pts = [(ext(a), ext(b)) for a, b in data[e.id]]
            tail = tails.get(e.id) if e.is_infinite else None
            if e.is_infinite and tail is None:
                raise InvalidFunction(f"edge {e.id}: infinite edge needs a slope towards infinity")
            pieces[e.id] = Piece(tuple(a for a, _ in pts), tuple(b for _, b in pts), tail)
        return cls.from_pieces(m, pieces)

    @classmethod
    def constant(cls, m: Model, c: ExtRat) -> "RationalFunction":
        c = ext(c)
        if c == NEG_INF:
            return cls(m, None)
        if not is_finite(c):
            raise InvalidFunction("+inf is not a constant function")
        return cls(m, tuple(_pl.constant(e.length, c) for e in m.edges))

    @classmethod
    def bottom(cls, m: Model) -> "RationalFunction":
        return cls(m, None)

    # -- basics -----------------------------------------------------------

    @property
    def is_bottom(self) -> bool:
        return self.pieces is None

    def piece(self, eid: str) -> Piece:
        if self.pieces is None:
            raise BottomFunction("the constant -inf has no pieces")
        return self.pieces[_edge_pos(self.curve)[eid]]

    def __call__(self, x: Point) -> ExtRat:
        return evaluate(self, x)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self.curve == other.curve and self.pieces == other.pieces

    def __hash__(self) -> int:
        return hash((self.curve, self.pieces))

    def __or__(self, other: "RationalFunction") -> "RationalFunction":
        return trop_add_fn(self, other)

    def __and__(self, other: "RationalFunction") -> "RationalFunction":
        return trop_mul_fn(self, other)

    def __xor__(self, n: int) -> "RationalFunction":
        return trop_pow_fn(self, n)

    def shift(self, c: ExtRat) -> "RationalFunction":
        """c ⊙ f."""
        return trop_mul_fn(self, RationalFunction.constant(self.curve, c))

    def __repr__(self) -> str:
        if self.pieces is None:
            return "RationalFunction(-inf)"
        parts = []
        for e, p in zip(self.curve.edges, self.pieces):
            pts = " ".join(f"({x},{y})" for x, y in zip(p.xs, p.ys))
            tail = "" if p.tail is None else f" ->{p.tail}"
            parts.append(f"{e.id}: {pts}{tail}")
        return "RationalFunction[" + "; ".join(parts) + "]"


_POS_CACHE: dict[int, tuple[Model, dict[str, int]]] = {}


def _edge_pos(m: Model) -> dict[str, int]:
    hit = _POS_CACHE.get(id(m))
    if hit is not None and hit[0] is m:
        return hit[1]
    pos = {e.id: i for i, e in enumerate(m.edges)}
    if len(_POS_CACHE) > 512:
        _POS_CACHE.clear()
    _POS_CACHE[id(m)] = (m, pos)
    return pos


def check_continuity(f: RationalFunction) -> ValidationReport:
    rep = ValidationReport()
    if f.pieces is None:
        return rep
    m = f.curve
    seen: dict[str, ExtRat] = {}
    for e, p in zip(m.edges, f.pieces):
        for v, val in ((e.tail, p.start_value()), (e.head, p.end_value())):
            if v in seen:
                rep.require(seen[v] == val,
                            f"discontinuous at vertex {v}: {format_ext(seen[v])} vs {format_ext(val)}")
            else:
                seen[v] = val
    return rep


def validate_function(f: RationalFunction) -> ValidationReport:
    rep = ValidationReport()
    if f.pieces is None:
        return rep
    m = f.curve
    if len(f.pieces) != len(m.edges):
        rep.add("one piece per edge is required")
        return rep
    for e, p in zip(m.edges, f.pieces):
        for msg in _pl.issues(p, e.length):
            rep.add(f"edge {e.id}: {msg}")
    if rep.ok:
        rep.extend(check_continuity(f))
    return rep


def _same_curve(f: RationalFunction, g: RationalFunction) -> None:
    if f.curve != g.curve:
        raise CurveMismatch("functions live on different models")


# ---------------------------------------------------------------------------
# Evaluation and algebra
# ---------------------------------------------------------------------------


def evaluate(f: RationalFunction, x: Point) -> ExtRat:
    m = f.curve
    m.check_point(x)
    if f.pieces is None:
        return NEG_INF
    pos = _edge_pos(m)
    if x.vertex is None:
        return _pl.value(f.pieces[pos[x.edge]], x.offset)
    eid, side = m.incidence[x.vertex][0]
    p = f.pieces[pos[eid]]
    return p.start_value() if side == 0 else p.end_value()


def trop_add_fn(f: RationalFunction, g: RationalFunction) -> RationalFunction:
    _same_curve(f, g)
    if f.pieces is None:
        return g
    if g.pieces is None:
        return f
    return RationalFunction(f.curve, tuple(_pl.pmax(a, b) for a, b in zip(f.pieces, g.pieces)))


def trop_mul_fn(f: RationalFunction, g: RationalFunction) -> RationalFunction:
    _same_curve(f, g)
    if f.pieces is None or g.pieces is None:
        return RationalFunction(f.curve, None)
    return RationalFunction(f.curve, tuple(_pl.padd(a, b) for a, b in zip(f.pieces, g.pieces)))


def trop_pow_fn(f: RationalFunction, n: int) -> RationalFunction:
    if f.pieces is None:
        if n < 0:
            raise NonInvertibleZero("-inf has no tropical inverse")
        return RationalFunction.constant(f.curve, 0) if n == 0 else f
    return RationalFunction(f.curve, tuple(_pl.pscale(p, n) for p in f.pieces))


def trop_sum(fs: Iterable[RationalFunction], m: Model) -> RationalFunction:
    out = RationalFunction.bottom(m)
    for f in fs:
        out = trop_add_fn(out, f)
    return out


def equals_fn(f: RationalFunction, g: RationalFunction) -> bool:
    _same_curve(f, g)
    return f.pieces == g.pieces


# ---------------------------------------------------------------------------
# Extrema, level sets, divisors
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Extrema:
    min: ExtRat
    max: ExtRat
    argmax: ClosedSubset
    argmin: ClosedSubset


def level_set(f: RationalFunction, c: ExtRat) -> ClosedSubset:
    """{x | f(x) = c} as a closed subset."""
    m = f.curve
    if f.pieces is None:
        return ClosedSubset.whole(m) if c == NEG_INF else ClosedSubset.empty(m)
    verts = []
    ivs = []
    for e, p in zip(m.edges, f.pieces):
        for lo, hi in _pl.level_set(p, c):
            if lo == INF:
                verts.append(e.head)
            else:
                ivs.append((e.id, lo, hi))
    return ClosedSubset.build(m, verts, ivs)


def extrema(f: RationalFunction) -> Extrema:
    if f.pieces is None:
        raise BottomFunction("extrema of the constant -inf")
    lo = min(_pl.extrema(p)[0] for p in f.pieces)
    hi = max(_pl.extrema(p)[1] for p in f.pieces)
    return Extrema(lo, hi, level_set(f, hi), level_set(f, lo))


@dataclass(frozen=True)
class Divisor:
    """Finitely many points with nonzero integer multiplicities."""

    curve: Model
    mult: Mapping[Point, int] = field(default_factory=dict)

    @property
    def degree(self) -> int:
        return sum(self.mult.values())

    def zeros(self) -> dict[Point, int]:
        return {p: n for p, n in self.mult.items() if n > 0}

    def poles(self) -> dict[Point, int]:
        return {p: n for p, n in self.mult.items() if n < 0}

    def items(self) -> list[tuple[Point, int]]:
        return sorted(self.mult.items(), key=lambda kv: kv[0].sort_key())

    def __eq__(self, other) -> bool:
        if not isinstance(other, Divisor):
            return NotImplemented
        return self.curve == other.curve and dict(self.mult) == dict(other.mult)


def outgoing_slope_sum(f: RationalFunction, v: str) -> Fraction:
    """Sum of outgoing slopes at a vertex.

    At a point at infinity the outgoing slope is minus the slope towards it,
    which is exactly what the head-side rule below computes.
    """
    m = f.curve
    total = Fraction(0)
    for eid, side in m.incidence[v]:
        p = f.piece(eid)
        total += p.first_slope() if side == 0 else -p.last_slope()
    return total


def divisor_of(f: RationalFunction) -> Divisor:
    if f.pieces is None:
        raise BottomFunction("divisor of the constant -inf")
    m = f.curve
    mult: dict[Point, int] = {}
    for v in m.vertices:
        s = outgoing_slope_sum(f, v)
        if s != 0:
            mult[Point(vertex=v)] = int(s)
    for e, p in zip(m.edges, f.pieces):
        for t, jump in _pl.interior_jumps(p):
            mult[Point(edge=e.id, offset=t)] = int(jump)
    return Divisor(m, mult)


# ---------------------------------------------------------------------------
# Moving functions between models of one curve
# ---------------------------------------------------------------------------


def transfer(f: RationalFunction, corr: Correspondence) -> RationalFunction:
    """Re-express ``f`` (on ``corr.source``) on the model ``corr.target``."""
    if f.curve != corr.source:
        raise CurveMismatch("function does not live on the correspondence's source")
    src, dst = corr.source, corr.target
    if f.pieces is None:
        return RationalFunction(dst, None)
    back = corr.inverse()
    marks: dict[str, set] = {e.id: {Fraction(0)} for e in dst.edges}
    for e in dst.edges:
        if not e.is_infinite:
            marks[e.id].add(e.length)

    def mark(q: Point) -> None:
        if q.vertex is None:
            marks[q.edge].add(q.offset)

    for v in src.vertices:
        if v not in src.infinite_vertices:
            mark(corr(Point(vertex=v)))
    for e, p in zip(src.edges, f.pieces):
        for t in p.xs[1:]:
            if t != e.length and t != 0:
                mark(corr(Point(edge=e.id, offset=t)))
    pieces = []
    for e in dst.edges:
        xs = sorted(marks[e.id])
        ys = [f(back(dst.point(e.id, t))) for t in xs]
        tail = None
        if e.is_infinite:
            a = xs[-1]
            tail = f(back(dst.point(e.id, a + 1))) - ys[-1]
            tail = int(tail)
        pieces.append(_pl.canonical(xs, ys, tail))
    return RationalFunction(dst, tuple(pieces))


def grid_points(m: Model, per_edge: int) -> list[Point]:
    """Vertices plus ``per_edge - 1`` evenly spaced interior points per edge."""
    pts = [Point(vertex=v) for v in m.vertices]
    for e in m.edges:
        span = Fraction(per_edge) if e.is_infinite else e.length
        for k in range(1, per_edge):
            pts.append(Point(edge=e.id, offset=span * k / per_edge))
    return pts
