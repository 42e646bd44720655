"""Morphisms of tropical curves between loopless models.

Each source edge either collapses onto a target vertex (degree 0) or maps
onto a target edge with a positive integer expansion factor, forward or
reversed relative to the stored orientations.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from . import _pl
from .curve import Model, Point, validate_model
from .errors import CurveMismatch, InvalidMorphism, NotSurjectiveWarning
from .ratfn import RationalFunction
from .report import ValidationReport
from .scalar import format_ext


@dataclass(frozen=True, eq=False)
class Morphism:
    source: Model
    target: Model
    vertex_map: Mapping[str, str]
    edge_map: Mapping[str, str]
    degree: Mapping[str, int]
    reverse: Mapping[str, bool]

    @classmethod
    def build(cls, source: Model, target: Model, vertex_map: Mapping[str, str],
              edge_map: Mapping[str, str], degree: Mapping[str, int],
              orientation: Mapping[str, str] | None = None) -> "Morphism":
        """``orientation`` maps edges to "forward"/"reverse"; inferred if omitted."""
        rev = {}
        for e in source.edges:
            d = degree.get(e.id, 0)
            if orientation is not None and e.id in orientation:
                o = orientation[e.id]
                if o not in ("forward", "reverse"):
                    raise InvalidMorphism(f"edge {e.id}: orientation must be forward or reverse")
                rev[e.id] = o == "reverse"
            elif d > 0 and target.has_edge(edge_map.get(e.id, "")):
                f = target.edge(edge_map[e.id])
                a, b = vertex_map.get(e.tail), vertex_map.get(e.head)
                rev[e.id] = (a, b) == (f.head, f.tail) and (a, b) != (f.tail, f.head)
            else:
                rev[e.id] = False
        return cls(source, target, dict(vertex_map), dict(edge_map), dict(degree), rev)

    def orientation(self, eid: str) -> str:
        return "reverse" if self.reverse[eid] else "forward"

    def __call__(self, x: Point) -> Point:
        return apply_point(self, x)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Morphism):
            return NotImplemented
        return (self.source == other.source and self.target == other.target
                and dict(self.vertex_map) == dict(other.vertex_map)
                and dict(self.edge_map) == dict(other.edge_map)
                and dict(self.degree) == dict(other.degree)
                and all(self.reverse[e.id] == other.reverse[e.id]
                        for e in self.source.edges if self.degree[e.id] > 0))

    def __hash__(self) -> int:
        return hash((self.source, self.target, tuple(sorted(self.vertex_map.items()))))


def validate_morphism(phi: Morphism) -> ValidationReport:
    rep = ValidationReport()
    src, tgt = phi.source, phi.target
    rep.extend(validate_model(src), "source: ")
    rep.extend(validate_model(tgt), "target: ")
    if not rep.ok:
        return rep
    rep.require(src.is_loopless, "source model has loops")
    rep.require(tgt.is_loopless, "target model has loops")
    for v in src.vertices:
        w = phi.vertex_map.get(v)
        if not rep.require(w is not None and tgt.has_vertex(w), f"vertex {v}: no image vertex"):
            continue
        if v in src.infinite_vertices:
            rep.require(w in tgt.infinite_vertices, f"vertex {v}: point at infinity maps to a finite vertex")
        else:
            rep.require(w not in tgt.infinite_vertices, f"vertex {v}: finite vertex maps to a point at infinity")
    if not rep.ok:
        return rep
    for e in src.edges:
        d = phi.degree.get(e.id)
        img = phi.edge_map.get(e.id)
        if not rep.require(isinstance(d, int) and not isinstance(d, bool) and d >= 0,
                           f"edge {e.id}: degree must be a nonnegative integer"):
            continue
        a, b = phi.vertex_map[e.tail], phi.vertex_map[e.head]
        if d == 0:
            rep.require(not e.is_infinite, f"edge {e.id}: an infinite edge cannot collapse")
            if rep.require(img is not None and tgt.has_vertex(img),
                           f"edge {e.id}: collapsed edge must map to a vertex"):
                rep.require(a == img and b == img, f"edge {e.id}: endpoints of a collapsed edge must map to {img}")
            continue
        if not rep.require(img is not None and tgt.has_edge(img), f"edge {e.id}: no image edge"):
            continue
        f = tgt.edge(img)
        ends = (f.head, f.tail) if phi.reverse.get(e.id, False) else (f.tail, f.head)
        rep.require((a, b) == ends,
                    f"edge {e.id}: endpoint images {a},{b} do not match edge {img} ({phi.orientation(e.id)})")
        if e.is_infinite or f.is_infinite:
            rep.require(e.is_infinite and f.is_infinite,
                        f"edge {e.id}: infinite and finite edges cannot map onto each other")
        else:
            rep.require(d * e.length == f.length,
                        f"edge {e.id}: {d} * {format_ext(e.length)} != {format_ext(f.length)}")
    return rep


def require_valid_morphism(phi: Morphism) -> Morphism:
    rep = validate_morphism(phi)
    if not rep.ok:
        raise InvalidMorphism("; ".join(rep.issues))
    return phi


def apply_point(phi: Morphism, x: Point) -> Point:
    phi.source.check_point(x)
    if x.vertex is not None:
        return Point(vertex=phi.vertex_map[x.vertex])
    d = phi.degree[x.edge]
    img = phi.edge_map[x.edge]
    if d == 0:
        return Point(vertex=img)
    f = phi.target.edge(img)
    t = d * x.offset
    if phi.reverse[x.edge]:
        if f.is_infinite:
            raise InvalidMorphism(f"edge {x.edge}: reversed onto an infinite edge")
        t = f.length - t
    return phi.target.point(img, t)


def is_surjective(phi: Morphism) -> bool:
    covered_e = {phi.edge_map[e.id] for e in phi.source.edges if phi.degree[e.id] > 0}
    covered_v = set(phi.vertex_map.values())
    for e in phi.source.edges:
        if phi.degree[e.id] > 0:
            f = phi.target.edge(phi.edge_map[e.id])
            covered_v.update(f.ends)
    return covered_e >= {f.id for f in phi.target.edges} and covered_v >= set(phi.target.vertices)


def pullback(phi: Morphism, f: RationalFunction) -> RationalFunction:
    """f ∘ phi."""
    if f.curve != phi.target:
        raise CurveMismatch("function does not live on the morphism's target")
    src = phi.source
    if f.pieces is None:
        return RationalFunction(src, None)
    pieces = []
    for e in src.edges:
        d = phi.degree[e.id]
        img = phi.edge_map[e.id]
        if d == 0:
            pieces.append(_pl.constant(e.length, f(Point(vertex=img))))
        else:
            pieces.append(_pl.compose_affine(f.piece(img), d, phi.reverse[e.id]))
    return RationalFunction(src, tuple(pieces))


def compose(outer: Morphism, inner: Morphism) -> Morphism:
    """outer ∘ inner."""
    if inner.target != outer.source:
        raise InvalidMorphism("morphisms do not compose")
    vm = {v: outer.vertex_map[w] for v, w in inner.vertex_map.items()}
    em, deg, rev = {}, {}, {}
    for e in inner.source.edges:
        d1 = inner.degree[e.id]
        if d1 == 0:
            em[e.id], deg[e.id], rev[e.id] = outer.vertex_map[inner.edge_map[e.id]], 0, False
            continue
        f = inner.edge_map[e.id]
        d2 = outer.degree[f]
        if d2 == 0:
            em[e.id], deg[e.id], rev[e.id] = outer.edge_map[f], 0, False
        else:
            em[e.id], deg[e.id] = outer.edge_map[f], d1 * d2
            rev[e.id] = inner.reverse[e.id] != outer.reverse[f]
    return Morphism(inner.source, outer.target, vm, em, deg, rev)


def identity(m: Model) -> Morphism:
    return Morphism(m, m, {v: v for v in m.vertices}, {e.id: e.id for e in m.edges},
                    {e.id: 1 for e in m.edges}, {e.id: False for e in m.edges})


def pullback_checked(phi: Morphism, f: RationalFunction) -> RationalFunction:
    require_valid_morphism(phi)
    return pullback(phi, f)


def probe_points(m: Model) -> list[Point]:
    """Vertices plus quarter, half and three-quarter points of each edge."""
    pts = [Point(vertex=v) for v in m.vertices]
    for e in m.edges:
        span = Fraction(4) if e.is_infinite else e.length
        for k in (1, 2, 3):
            pts.append(Point(edge=e.id, offset=span * k / 4))
    return pts


def agree_pointwise(a: Morphism, b: Morphism, pts: Iterable[Point]) -> list[Point]:
    """Points of the common source where ``a`` and ``b`` disagree."""
    return [x for x in pts if apply_point(a, x) != apply_point(b, x)]


def equivalent(a: Morphism, b: Morphism) -> bool:
    """Equality as maps of underlying spaces on identical models.

    Degrees and orientations of collapsed edges are irrelevant; the probe
    points detect any difference in images, expansion factors or direction.
    """
    if a.source != b.source or a.target != b.target:
        return False
    if agree_pointwise(a, b, probe_points(a.source)):
        return False
    return all(a.degree[e.id] == b.degree[e.id] for e in a.source.edges)


def warn_if_not_surjective(phi: Morphism) -> None:
    if not is_surjective(phi):
        warnings.warn("morphism is not surjective; its pull-back need not be injective",
                      NotSurjectiveWarning, stacklevel=3)
