"""A finite generating set of Rat(Γ) built from chip firings.

Infinite edges are contracted to get a metric graph Γ′.  On each edge of
the canonical model of Γ′ we fire from the half, quarter and three-quarter
points, and from each vertex with infinite radius; these are extended to Γ
by constants on the removed hairs.  One more chip firing per hair fires
from the complement of that hair.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import _pl
from .chipfire import cf_point, chip_firing_move
from .curve import Correspondence, Model, Point, canonical_model
from .errors import CurveMismatch, DegenerateResult
from .ratfn import RationalFunction, transfer
from .scalar import INF
from .subset import ClosedSubset


@dataclass(frozen=True)
class Embedding:
    """The inclusion of the contracted metric graph into the original curve."""

    sub: Model
    ambient: Model
    hairs: tuple[str, ...]

    def __call__(self, x: Point) -> Point:
        return self.sub.check_point(x)


def contract_infinite_edges(m: Model) -> tuple[Model, Embedding]:
    hairs = tuple(e.id for e in m.edges if e.is_infinite)
    if not hairs:
        return m, Embedding(m, m, ())
    edges = tuple(e for e in m.edges if not e.is_infinite)
    if not edges:
        raise DegenerateResult("contracting the infinite edges leaves a single point")
    used = {v for e in edges for v in e.ends}
    verts = tuple(v for v in m.vertices if v in used)
    sub = Model(verts, edges)
    return sub, Embedding(sub, m, hairs)


def extend_by_constants(f: RationalFunction, emb: Embedding) -> RationalFunction:
    if f.curve != emb.sub:
        raise CurveMismatch("function does not live on the contracted curve")
    if not emb.hairs:
        return f
    if f.pieces is None:
        return RationalFunction(emb.ambient, None)
    own = {e.id: p for e, p in zip(emb.sub.edges, f.pieces)}
    pieces = []
    for e in emb.ambient.edges:
        if e.id in own:
            pieces.append(own[e.id])
        else:
            pieces.append(_pl.constant(INF, f(Point(vertex=e.tail))))
    return RationalFunction(emb.ambient, tuple(pieces))


def hair_complement(m: Model, eid: str) -> ClosedSubset:
    """Γ minus the hair (tail, ∞] along the infinite edge ``eid``."""
    e = m.edge(eid)
    return ClosedSubset.build(m, [v for v in m.vertices if v != e.head],
                              [(f.id, Fraction(0), f.length) for f in m.edges if f.id != eid])


@dataclass
class GeneratorSet:
    curve: Model
    contracted_curve: Model
    embedding: Embedding
    canonical: Model
    generators: list[tuple[str, RationalFunction]] = field(default_factory=list)

    def labels(self) -> list[str]:
        return [lab for lab, _ in self.generators]

    def __len__(self) -> int:
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)


def generating_set(m: Model) -> GeneratorSet:
    sub, emb = contract_infinite_edges(m)
    canon, corr = canonical_model(sub)
    back: Correspondence = corr.inverse()
    gens: list[tuple[str, RationalFunction]] = []

    def lift(f: RationalFunction) -> RationalFunction:
        return extend_by_constants(transfer(f, back), emb)

    for e in canon.edges:
        L = e.length
        gens.append((f"f_{e.id}", lift(cf_point(canon, canon.point(e.id, L / 2), L / 2))))
        gens.append((f"g_{e.id}", lift(cf_point(canon, canon.point(e.id, L / 4), L / 4))))
        gens.append((f"h_{e.id}", lift(cf_point(canon, canon.point(e.id, 3 * L / 4), L / 4))))
    for v in canon.vertices:
        gens.append((f"cf_vertex({v})", lift(cf_point(canon, Point(vertex=v), INF))))
    for eid in emb.hairs:
        gens.append((f"cf_component({eid})", chip_firing_move(m, hair_complement(m, eid), INF)))
    return GeneratorSet(m, sub, emb, canon, gens)
