"""Closed subsets of a tropical curve with finitely many components."""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .curve import Model, Point
from .errors import InvalidSubset
from .report import ValidationReport
from .scalar import INF, ExtRat, format_ext

Interval = tuple[ExtRat, ExtRat]


@dataclass(frozen=True)
class ClosedSubset:
    """A finite union of vertices and closed segments of edges.

    Stored normalised: segments on one edge are disjoint and sorted; a
    segment reaching an end of its edge implies that end vertex is in
    ``vertices``; degenerate segments at an edge end are dropped.
    """

    model: Model
    vertices: frozenset[str]
    intervals: tuple[tuple[str, tuple[Interval, ...]], ...]

    @classmethod
    def build(cls, m: Model, vertices: Iterable[str] = (),
              intervals: Iterable[tuple[str, ExtRat, ExtRat]] = (),
              points: Iterable[Point] = ()) -> "ClosedSubset":
        verts = set()
        for v in vertices:
            if not m.has_vertex(v):
                raise InvalidSubset(f"no vertex {v!r}")
            verts.add(v)
        per_edge: dict[str, list[Interval]] = defaultdict(list)
        for p in points:
            if p.vertex is not None:
                if not m.has_vertex(p.vertex):
                    raise InvalidSubset(f"no vertex {p.vertex!r}")
                verts.add(p.vertex)
            else:
                if not m.contains(p):
                    raise InvalidSubset(f"{p!r} is not on the curve")
                per_edge[p.edge].append((p.offset, p.offset))
        for eid, lo, hi in intervals:
            if not m.has_edge(eid):
                raise InvalidSubset(f"no edge {eid!r}")
            L = m.edge(eid).length
            if not (0 <= lo <= hi <= L) or lo == INF:
                raise InvalidSubset(f"segment [{format_ext(lo)}, {format_ext(hi)}] not on edge {eid}")
            per_edge[eid].append((lo, hi))
        out = []
        for e in m.edges:
            ivs = sorted(per_edge.get(e.id, ()))
            if not ivs:
                continue
            merged: list[Interval] = []
            for lo, hi in ivs:
                if merged and lo <= merged[-1][1]:
                    merged[-1] = (merged[-1][0], max(hi, merged[-1][1]))
                else:
                    merged.append((lo, hi))
            kept = []
            for lo, hi in merged:
                if lo == 0:
                    verts.add(e.tail)
                if hi == e.length:
                    verts.add(e.head)
                if lo == hi and (lo == 0 or lo == e.length):
                    continue
                kept.append((lo, hi))
            if kept:
                out.append((e.id, tuple(kept)))
        return cls(m, frozenset(verts), tuple(out))

    @classmethod
    def whole(cls, m: Model) -> "ClosedSubset":
        return cls.build(m, m.vertices, [(e.id, Fraction(0), e.length) for e in m.edges])

    @classmethod
    def of_points(cls, m: Model, pts: Iterable[Point]) -> "ClosedSubset":
        return cls.build(m, points=pts)

    @classmethod
    def empty(cls, m: Model) -> "ClosedSubset":
        return cls(m, frozenset(), ())

    # -- queries ----------------------------------------------------------

    def on_edge(self, eid: str) -> tuple[Interval, ...]:
        for e, ivs in self.intervals:
            if e == eid:
                return ivs
        return ()

    @property
    def is_empty(self) -> bool:
        return not self.vertices and not self.intervals

    def contains(self, x: Point) -> bool:
        if x.vertex is not None:
            return x.vertex in self.vertices
        return any(lo <= x.offset <= hi for lo, hi in self.on_edge(x.edge))

    def points(self) -> list[Point]:
        """The isolated points and segment end points (a finite witness set)."""
        out = [Point(vertex=v) for v in sorted(self.vertices)]
        for eid, ivs in self.intervals:
            for lo, hi in ivs:
                for t in {lo, hi}:
                    out.append(self.model.point(eid, t))
        return out

    def cells(self) -> list[tuple]:
        out: list[tuple] = [("vertex", v) for v in sorted(self.vertices)]
        for eid, ivs in self.intervals:
            for lo, hi in ivs:
                out.append(("segment", eid, lo, hi))
        return out

    # -- set algebra ------------------------------------------------------

    def _check(self, other: "ClosedSubset") -> None:
        if other.model != self.model:
            raise InvalidSubset("subsets live on different models")

    def union(self, other: "ClosedSubset") -> "ClosedSubset":
        self._check(other)
        ivs = [(e, lo, hi) for s in (self, other) for e, xs in s.intervals for lo, hi in xs]
        return ClosedSubset.build(self.model, self.vertices | other.vertices, ivs)

    def intersection(self, other: "ClosedSubset") -> "ClosedSubset":
        self._check(other)
        ivs = []
        for eid, xs in self.intervals:
            for lo, hi in xs:
                for lo2, hi2 in other.on_edge(eid):
                    a, b = max(lo, lo2), min(hi, hi2)
                    if a <= b:
                        ivs.append((eid, a, b))
        return ClosedSubset.build(self.model, self.vertices & other.vertices, ivs)

    def complement_closure(self) -> "ClosedSubset":
        """Closure of the complement."""
        m = self.model
        ivs = []
        for e in m.edges:
            cur = Fraction(0)
            for lo, hi in self.on_edge(e.id):
                if lo > cur:
                    ivs.append((e.id, cur, lo))
                cur = hi
            if cur < e.length:
                ivs.append((e.id, cur, e.length))
        verts = [v for v in m.vertices if v not in self.vertices]
        return ClosedSubset.build(m, verts, ivs)

    def components(self) -> list[tuple[set[str], list[tuple[str, ExtRat, ExtRat]]]]:
        m = self.model
        parent: dict = {}

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        def union(a, b):
            parent[find(a)] = find(b)

        for v in self.vertices:
            parent[("v", v)] = ("v", v)
        for eid, ivs in self.intervals:
            e = m.edge(eid)
            for lo, hi in ivs:
                node = ("s", eid, lo, hi)
                parent[node] = node
                if lo == 0:
                    union(node, ("v", e.tail))
                if hi == e.length:
                    union(node, ("v", e.head))
        groups: dict = defaultdict(lambda: (set(), []))
        for node in list(parent):
            g = groups[find(node)]
            if node[0] == "v":
                g[0].add(node[1])
            else:
                g[1].append(node[1:])
        return [groups[k] for k in sorted(groups, key=repr)]

    def __repr__(self) -> str:
        parts = sorted(self.vertices)
        for eid, ivs in self.intervals:
            parts += [f"{eid}[{format_ext(lo)},{format_ext(hi)}]" for lo, hi in ivs]
        return "ClosedSubset{" + ", ".join(parts) + "}"


def validate_subset(m: Model, s: ClosedSubset) -> ValidationReport:
    rep = ValidationReport()
    if s.model != m:
        rep.add("subset cells are not on this model")
        return rep
    rep.require(not s.is_empty, "subset is empty")
    for verts, segs in s.components():
        if not segs and len(verts) == 1 and next(iter(verts)) in m.infinite_vertices:
            rep.add(f"component {{{next(iter(verts))}}} is a lone point at infinity")
    return rep
