"""Tropical curves presented by models (G, l).

A model is a finite connected multigraph whose edges carry lengths in
Q_{>0} or ``INF``; an infinite length is only allowed on a leaf edge, and
the leaf end of such an edge *is* the point at infinity.  Infinite edges are
stored oriented towards their infinite end, so every finite point of an
infinite edge has a finite offset and the point at infinity is simply the
head vertex.

Points are :class:`Point` values: either a vertex, or an edge together with
an offset strictly between 0 and the edge length.  :meth:`Model.point`
normalises offsets 0 and ``length`` to the corresponding vertex.
"""
from __future__ import annotations

import heapq
import itertools
import math
import random
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Callable, Iterable, Mapping, Sequence

from .errors import CannotSubdivideAtInfinity, InvalidModel, PointNotOnCurve
from .report import ValidationReport
from .scalar import INF, ExtRat, ext, format_ext, is_finite

# ---------------------------------------------------------------------------
# Data types
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Edge:
    id: str
    ends: tuple[str, str]
    length: ExtRat
    infinite_end: str | None = None

    @property
    def tail(self) -> str:
        return self.ends[0]

    @property
    def head(self) -> str:
        return self.ends[1]

    @property
    def is_infinite(self) -> bool:
        return self.length == INF

    @property
    def is_loop(self) -> bool:
        return self.ends[0] == self.ends[1]


@dataclass(frozen=True)
class Point:
    """A point of a model: ``Point(vertex=v)`` or ``Point(edge=e, offset=t)``."""

    edge: str | None = None
    offset: Fraction | None = None
    vertex: str | None = None

    @classmethod
    def at(cls, vertex: str) -> "Point":
        return cls(vertex=vertex)

    @property
    def is_vertex(self) -> bool:
        return self.vertex is not None

    def __repr__(self) -> str:
        if self.vertex is not None:
            return f"Point({self.vertex})"
        return f"Point({self.edge}@{self.offset})"

    def label(self) -> str:
        if self.vertex is not None:
            return self.vertex
        return f"{self.edge}@{self.offset}"

    def sort_key(self):
        if self.vertex is not None:
            return (0, self.vertex, Fraction(0))
        return (1, self.edge, self.offset)


@dataclass(frozen=True)
class Model:
    vertices: tuple[str, ...]
    edges: tuple[Edge, ...]

    @classmethod
    def build(cls, vertices: Iterable[str], edges: Iterable) -> "Model":
        """Build a model, orienting every infinite edge towards its infinite end.

        ``edges`` holds :class:`Edge` values or tuples
        ``(id, tail, head, length[, infinite_end])``.
        """
        out = []
        for e in edges:
            if not isinstance(e, Edge):
                eid, a, b, length, *rest = e
                inf_end = rest[0] if rest else None
                length = ext(length)
                if length == INF and inf_end is None:
                    inf_end = b
                e = Edge(str(eid), (str(a), str(b)), length, inf_end)
            if e.infinite_end is not None and e.infinite_end == e.ends[0] != e.ends[1]:
                e = Edge(e.id, (e.ends[1], e.ends[0]), e.length, e.infinite_end)
            out.append(e)
        return cls(tuple(str(v) for v in vertices), tuple(out))

    # -- indices -----------------------------------------------------------

    @cached_property
    def _edge_index(self) -> dict[str, Edge]:
        return {e.id: e for e in self.edges}

    @cached_property
    def _vertex_set(self) -> frozenset[str]:
        return frozenset(self.vertices)

    @cached_property
    def incidence(self) -> dict[str, list[tuple[str, int]]]:
        """vertex -> list of (edge id, side) with side 0 = tail, 1 = head."""
        inc: dict[str, list[tuple[str, int]]] = {v: [] for v in self.vertices}
        for e in self.edges:
            for side, v in enumerate(e.ends):
                inc.setdefault(v, []).append((e.id, side))
        return inc

    @cached_property
    def infinite_vertices(self) -> frozenset[str]:
        return frozenset(e.head for e in self.edges if e.is_infinite)

    @cached_property
    def finite_vertices(self) -> tuple[str, ...]:
        return tuple(v for v in self.vertices if v not in self.infinite_vertices)

    @cached_property
    def _hash(self) -> int:
        return hash((self.vertices, self.edges))

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if not isinstance(other, Model):
            return NotImplemented
        return self._hash == other._hash and self.vertices == other.vertices and self.edges == other.edges

    # -- accessors ------------------------------------------------------------

    def edge(self, eid: str) -> Edge:
        try:
            return self._edge_index[eid]
        except KeyError:
            raise PointNotOnCurve(f"no edge {eid!r}") from None

    def has_edge(self, eid: str) -> bool:
        return eid in self._edge_index

    def has_vertex(self, v: str) -> bool:
        return v in self._vertex_set

    @property
    def is_metric_graph(self) -> bool:
        return not self.infinite_vertices

    @property
    def is_loopless(self) -> bool:
        return not any(e.is_loop for e in self.edges)

    def is_infinite_point(self, x: Point) -> bool:
        return x.vertex is not None and x.vertex in self.infinite_vertices

    def degree(self, v: str) -> int:
        return len(self.incidence.get(v, ()))

    def point(self, edge: str, offset) -> Point:
        e = self.edge(edge)
        t = ext(offset)
        if t < 0 or t > e.length:
            raise PointNotOnCurve(f"offset {format_ext(t)} outside edge {edge!r}")
        if t == 0:
            return Point(vertex=e.tail)
        if t == e.length:
            return Point(vertex=e.head)
        return Point(edge=edge, offset=t)

    def vertex(self, v: str) -> Point:
        if v not in self._vertex_set:
            raise PointNotOnCurve(f"no vertex {v!r}")
        return Point(vertex=v)

    def check_point(self, x: Point) -> Point:
        if x.vertex is not None:
            if x.vertex not in self._vertex_set:
                raise PointNotOnCurve(f"no vertex {x.vertex!r}")
            return x
        e = self.edge(x.edge)
        if not (0 < x.offset < e.length):
            raise PointNotOnCurve(f"{x!r} is not a normalised interior point")
        return x

    def contains(self, x: Point) -> bool:
        try:
            self.check_point(x)
        except PointNotOnCurve:
            return False
        return True

    def edge_offsets(self, x: Point, eid: str) -> list[ExtRat]:
        """Offsets of ``x`` on edge ``eid`` (two for the vertex of a loop)."""
        e = self.edge(eid)
        if x.vertex is None:
            return [x.offset] if x.edge == eid else []
        out = []
        if e.tail == x.vertex:
            out.append(Fraction(0))
        if e.head == x.vertex:
            out.append(e.length)
        return out

    def total_finite_length(self) -> Fraction:
        return sum((e.length for e in self.edges if not e.is_infinite), Fraction(0))


# ---------------------------------------------------------------------------
# Validation and valence
# ---------------------------------------------------------------------------


def validate_model(m: Model) -> ValidationReport:
    rep = ValidationReport()
    if not m.vertices:
        rep.add("graph has no vertices")
        return rep
    rep.require(len(set(m.vertices)) == len(m.vertices), "duplicate vertex ids")
    rep.require(len({e.id for e in m.edges}) == len(m.edges), "duplicate edge ids")
    rep.require(len(m.edges) > 0, "graph has no edges (a single point is not supported)")
    deg = defaultdict(int)
    for e in m.edges:
        for v in e.ends:
            deg[v] += 1
    for e in m.edges:
        if not all(m.has_vertex(v) for v in e.ends):
            rep.add(f"edge {e.id}: endpoint not among vertices")
            continue
        if e.is_infinite:
            leaves = [v for v in e.ends if deg[v] == 1 and not e.is_loop]
            if not leaves:
                rep.add(f"edge {e.id}: infinite length on a non-leaf edge")
            elif e.infinite_end is None:
                rep.add(f"edge {e.id}: infinite edge without infinite_end")
            elif e.infinite_end not in leaves:
                rep.add(f"edge {e.id}: infinite_end {e.infinite_end} is not a leaf end")
        else:
            if not is_finite(e.length) or e.length <= 0:
                rep.add(f"edge {e.id}: length must be positive")
            if e.infinite_end is not None:
                rep.add(f"edge {e.id}: infinite_end given for a finite edge")
    for e in m.edges:
        if e.infinite_end is not None and deg[e.infinite_end] != 1:
            rep.add(f"vertex {e.infinite_end}: infinite end has valence {deg[e.infinite_end]}")
    # connectivity
    if m.vertices and not rep.issues:
        seen = {m.vertices[0]}
        stack = [m.vertices[0]]
        while stack:
            v = stack.pop()
            for eid, side in m.incidence.get(v, ()):
                w = m.edge(eid).ends[1 - side]
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        rep.require(len(seen) == len(m.vertices), "graph is disconnected")
    return rep


def require_valid(m: Model) -> Model:
    rep = validate_model(m)
    if not rep.ok:
        raise InvalidModel("; ".join(rep.issues))
    return m


def valence(m: Model, x: Point) -> int:
    m.check_point(x)
    if x.vertex is None:
        return 2
    if x.vertex in m.infinite_vertices:
        return 1
    return m.degree(x.vertex)


# ---------------------------------------------------------------------------
# Correspondences between models of one curve
# ---------------------------------------------------------------------------


class Correspondence:
    """A bijection between the points of two models of the same curve."""

    def __init__(self, source: Model, target: Model, fn: Callable[[Point], Point],
                 inv: Callable[[Point], Point]):
        self.source = source
        self.target = target
        self._fn = fn
        self._inv = inv

    def __call__(self, x: Point) -> Point:
        return self._fn(self.source.check_point(x))

    def inverse(self) -> "Correspondence":
        return Correspondence(self.target, self.source, self._inv, self._fn)

    def then(self, other: "Correspondence") -> "Correspondence":
        if other.source != self.target:
            raise InvalidModel("correspondences do not compose")
        return Correspondence(self.source, other.target,
                              lambda p: other._fn(self._fn(p)),
                              lambda p: self._inv(other._inv(p)))

    @classmethod
    def identity(cls, m: Model) -> "Correspondence":
        return cls(m, m, lambda p: p, lambda p: p)

    @classmethod
    def from_chains(cls, coarse: Model, fine: Model,
                    chains: Mapping[str, Sequence[tuple[str, bool]]]) -> "Correspondence":
        """coarse edge -> ordered fine edges (with reversal flags) from tail to head."""
        fine_pos: dict[str, tuple[str, Fraction, bool]] = {}
        starts: dict[str, list[Fraction]] = {}
        inner_vertex: dict[str, tuple[str, Fraction]] = {}
        for ce, chain in chains.items():
            acc = Fraction(0)
            st = []
            for i, (fe, rev) in enumerate(chain):
                st.append(acc)
                fine_pos[fe] = (ce, acc, rev)
                f = fine.edge(fe)
                if i > 0:
                    joint = f.ends[1] if rev else f.ends[0]
                    if not coarse.has_vertex(joint):
                        inner_vertex[joint] = (ce, acc)
                if f.is_infinite:
                    acc = INF
                else:
                    acc = acc + f.length
            starts[ce] = st

        def down(p: Point) -> Point:
            if p.vertex is not None:
                return fine.vertex(p.vertex)
            chain = chains[p.edge]
            st = starts[p.edge]
            i = max(0, _bisect_right(st, p.offset) - 1)
            fe, rev = chain[i]
            local = p.offset - st[i]
            f = fine.edge(fe)
            return fine.point(fe, f.length - local if rev else local)

        def up(p: Point) -> Point:
            if p.vertex is not None:
                if coarse.has_vertex(p.vertex):
                    return coarse.vertex(p.vertex)
                ce, off = inner_vertex[p.vertex]
                return coarse.point(ce, off)
            ce, start, rev = fine_pos[p.edge]
            f = fine.edge(p.edge)
            return coarse.point(ce, start + (f.length - p.offset if rev else p.offset))

        return cls(coarse, fine, down, up)


def _bisect_right(xs: Sequence, x) -> int:
    lo, hi = 0, len(xs)
    while lo < hi:
        mid = (lo + hi) // 2
        if x < xs[mid]:
            hi = mid
        else:
            lo = mid + 1
    return lo


def _fresh(base: str, taken: set[str]) -> str:
    if base not in taken:
        taken.add(base)
        return base
    for k in itertools.count(1):
        cand = f"{base}~{k}"
        if cand not in taken:
            taken.add(cand)
            return cand
    raise AssertionError


# ---------------------------------------------------------------------------
# Refinement and canonical models
# ---------------------------------------------------------------------------


def refine_at(m: Model, pts: Iterable[Point]) -> tuple[Model, Correspondence]:
    """Subdivide ``m`` so that every point in ``pts`` becomes a vertex."""
    cuts: dict[str, set[Fraction]] = defaultdict(set)
    for p in pts:
        m.check_point(p)
        if p.vertex is not None:
            if p.vertex in m.infinite_vertices:
                raise CannotSubdivideAtInfinity(f"{p!r} is a point at infinity")
            continue
        cuts[p.edge].add(p.offset)
    if not cuts:
        return m, Correspondence.identity(m)
    vertices = list(m.vertices)
    taken = set(m.vertices)
    edge_taken = {e.id for e in m.edges}
    edges: list[Edge] = []
    chains: dict[str, list[tuple[str, bool]]] = {}
    for e in m.edges:
        if e.id not in cuts:
            edges.append(e)
            chains[e.id] = [(e.id, False)]
            continue
        offs = sorted(cuts[e.id])
        names = [_fresh(f"{e.id}@{o}", taken) for o in offs]
        vertices.extend(names)
        nodes = [e.tail] + names + [e.head]
        bounds = [Fraction(0)] + offs + [e.length]
        chain = []
        for i in range(len(nodes) - 1):
            pid = _fresh(f"{e.id}.{i}", edge_taken)
            length = INF if bounds[i + 1] == INF else bounds[i + 1] - bounds[i]
            inf_end = e.head if (length == INF and i == len(nodes) - 2) else None
            edges.append(Edge(pid, (nodes[i], nodes[i + 1]), length, inf_end))
            chain.append((pid, False))
        chains[e.id] = chain
    fine = Model(tuple(vertices), tuple(edges))
    return fine, Correspondence.from_chains(m, fine, chains)


def loopless_model(m: Model) -> tuple[Model, Correspondence]:
    """Subdivide every loop at its midpoint."""
    mids = [Point(edge=e.id, offset=e.length / 2) for e in m.edges if e.is_loop]
    return refine_at(m, mids)


def canonical_model(m: Model) -> tuple[Model, Correspondence]:
    """The canonical model and the correspondence ``m -> canonical``."""
    require_valid(m)
    keep = {v for v in m.vertices if valence(m, Point(vertex=v)) != 2}
    if not keep:
        keep = {min(m.vertices)}  # circle
    elif keep <= m.infinite_vertices and len(keep) == 2:
        # doubly infinite path: two points at infinity plus one finite point
        keep.add(min(v for v in m.vertices if v not in m.infinite_vertices))
    order = sorted(keep, key=lambda v: (v in m.infinite_vertices, v))
    used: set[str] = set()
    edges: list[Edge] = []
    chains: dict[str, list[tuple[str, bool]]] = {}
    for v in order:
        for eid, side in m.incidence[v]:
            if eid in used:
                continue
            chain: list[tuple[str, bool]] = []
            cur_e, cur_side = eid, side
            while True:
                used.add(cur_e)
                e = m.edge(cur_e)
                rev = cur_side == 1
                chain.append((cur_e, rev))
                if e.is_loop:
                    end = e.tail
                else:
                    end = e.ends[1 - cur_side]
                if end in keep:
                    break
                nxt = [(f, s) for f, s in m.incidence[end] if not (f == cur_e and s == 1 - cur_side)]
                cur_e, cur_side = nxt[0]
            length = Fraction(0)
            for fe, _ in chain:
                length = INF if m.edge(fe).is_infinite else length + m.edge(fe).length
                if length == INF:
                    break
            cid = chain[0][0] if len(chain) == 1 else "+".join(fe for fe, _ in chain)
            inf_end = end if length == INF else None
            edges.append(Edge(cid, (v, end), length, inf_end))
            chains[cid] = chain
    verts = tuple(x for x in m.vertices if x in keep)
    canon = Model(verts, tuple(edges))
    corr = Correspondence.from_chains(canon, m, chains).inverse()
    return canon, corr


def canonical_loopless_model(m: Model) -> tuple[Model, Correspondence]:
    canon, c1 = canonical_model(m)
    loopless, c2 = loopless_model(canon)
    return loopless, c1.then(c2)


# ---------------------------------------------------------------------------
# Distances
# ---------------------------------------------------------------------------


def vertex_distances(m: Model, seeds: Mapping[str, ExtRat]) -> dict[str, ExtRat]:
    """Multi-source exact Dijkstra over the finite edges of ``m``.

    Points at infinity never relay distance; they get 0 if seeded with 0 and
    ``INF`` otherwise.
    """
    dist: dict[str, ExtRat] = {v: INF for v in m.vertices}
    heap = []
    tie = itertools.count()
    for v, d in seeds.items():
        if d < dist[v]:
            dist[v] = d
            heapq.heappush(heap, (d, next(tie), v))
    inf_v = m.infinite_vertices
    while heap:
        d, _, v = heapq.heappop(heap)
        if d > dist[v] or v in inf_v:
            continue
        for eid, side in m.incidence[v]:
            e = m.edge(eid)
            if e.is_infinite or e.is_loop:
                continue
            w = e.ends[1 - side]
            nd = d + e.length
            if nd < dist[w]:
                dist[w] = nd
                heapq.heappush(heap, (nd, next(tie), w))
    for v in inf_v:
        if seeds.get(v, INF) != 0:
            dist[v] = INF
    return dist


def point_seeds(m: Model, x: Point) -> dict[str, ExtRat]:
    if x.vertex is not None:
        return {x.vertex: Fraction(0)}
    e = m.edge(x.edge)
    seeds = {e.tail: x.offset}
    if not e.is_infinite:
        d = e.length - x.offset
        seeds[e.head] = min(d, seeds.get(e.head, INF))
    return seeds


def distance(m: Model, x: Point, y: Point) -> ExtRat:
    m.check_point(x)
    m.check_point(y)
    if x == y:
        return Fraction(0)
    if m.is_infinite_point(x) or m.is_infinite_point(y):
        return INF
    d = vertex_distances(m, point_seeds(m, x))
    if y.vertex is not None:
        return d[y.vertex]
    e = m.edge(y.edge)
    best = y.offset + d[e.tail]
    if not e.is_infinite:
        best = min(best, e.length - y.offset + d[e.head])
    if x.edge == y.edge:
        best = min(best, abs(x.offset - y.offset))
    return best


# ---------------------------------------------------------------------------
# Random sampling (tests, law checks)
# ---------------------------------------------------------------------------


def random_offset(rng: random.Random, length: ExtRat, max_den: int = 8) -> Fraction:
    """A random rational strictly inside (0, length) with small denominator."""
    hi = Fraction(6) if length == INF else length
    q = rng.randint(1, max_den)
    n = math.ceil(hi * q) - 1
    if n < 1:
        return hi / 2
    return Fraction(rng.randint(1, n), q)


def random_point(m: Model, rng: random.Random, vertex_rate: float = 0.15,
                 finite: bool = True) -> Point:
    if rng.random() < vertex_rate:
        pool = m.finite_vertices if finite else m.vertices
        return Point(vertex=rng.choice(pool))
    e = rng.choice(m.edges)
    return m.point(e.id, random_offset(rng, e.length))
