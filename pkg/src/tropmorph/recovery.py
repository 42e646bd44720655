"""Recovering a morphism from an injective homomorphism of function semifields.

Given ψ: Rat(Γ₁) → Rat(Γ₂) as an evaluation oracle, the morphism
φ: Γ₂ → Γ₁ with ψ(f) = f ∘ φ is reconstructed as follows.

1. Pick a skeleton of Γ₁: its vertices and ``density - 1`` evenly spaced
   points per finite edge, plus one probe point per infinite edge.
2. For each skeleton point s, D_s = ψ(CF({s}, ∞)).  At a finite point x′ of
   Γ₂ the vector (-D_s(x′))_s is the distance profile of φ(x′), which pins
   φ(x′) down uniquely; candidates are enumerated locally and checked
   against the full profile.
3. Between consecutive breakpoints of the D_s on an edge of Γ₂ the map is
   affine; its expansion factor is the common absolute slope of the D_s.
4. Points at infinity are matched through the +∞ sets of
   ψ(CF(Γ₁ ∖ (y, x], ∞))^{-1}.
5. Both models are refined just enough for the map to be a morphism, and
   the fibre sets {ψ(CF({x}, ∞)) = 0} are cross-checked for disjointness and
   coverage.
"""
from __future__ import annotations

import random
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .chipfire import cf_point, chip_firing_move, complement_closure
from .config import RecoveryConfig
from .curve import (Correspondence, Model, Point, loopless_model, point_seeds,
                    random_point, refine_at, vertex_distances)
from .errors import (CurveMismatch, DegenerateResult, EmptyFiber, FiberInconsistency,
                     NotSurjectiveWarning, OracleLawViolation, TrilaterationAmbiguity, TropicalError)
from .generators import generating_set
from .morphism import (Morphism, is_surjective, pullback, require_valid_morphism,
                       validate_morphism)
from .ratfn import (RationalFunction, extrema, level_set, transfer, trop_add_fn,
                    trop_mul_fn, trop_pow_fn)
from .report import ValidationReport
from .sampling import random_constant, random_function
from .scalar import INF, ExtRat, format_ext
from .subset import ClosedSubset

ZERO = Fraction(0)


# ---------------------------------------------------------------------------
# Oracles
# ---------------------------------------------------------------------------


class HomomorphismOracle:
    """An evaluable map Rat(source_curve) -> Rat(target_curve), memoised."""

    def __init__(self, source_curve: Model, target_curve: Model,
                 evaluator: Callable[[RationalFunction], RationalFunction], name: str = "oracle"):
        self.source_curve = source_curve
        self.target_curve = target_curve
        self.evaluator = evaluator
        self.name = name
        self.calls = 0
        self._cache: dict[RationalFunction, RationalFunction] = {}

    def __call__(self, f: RationalFunction) -> RationalFunction:
        if f.curve != self.source_curve:
            raise CurveMismatch("argument does not live on the oracle's source curve")
        hit = self._cache.get(f)
        if hit is not None:
            return hit
        self.calls += 1
        try:
            g = self.evaluator(f)
        except OracleLawViolation:
            raise
        except TropicalError as exc:
            # a homomorphism is defined on every input
            raise OracleLawViolation(f"evaluator failed on a valid input: {exc}") from exc
        if not isinstance(g, RationalFunction) or g.curve != self.target_curve:
            raise OracleLawViolation("evaluator returned something other than a function on the target curve")
        self._cache[f] = g
        return g

    def __repr__(self) -> str:
        return f"HomomorphismOracle({self.name})"


def oracle_from_pullback(phi: Morphism) -> HomomorphismOracle:
    """The oracle f -> f ∘ phi, from Rat(phi.target) to Rat(phi.source)."""
    require_valid_morphism(phi)
    if not is_surjective(phi):
        warnings.warn("morphism is not surjective; its pull-back is not injective",
                      NotSurjectiveWarning, stacklevel=2)
    return HomomorphismOracle(phi.target, phi.source, lambda f: pullback(phi, f), "pullback")


def reparametrised(psi: HomomorphismOracle, src: Correspondence, tgt: Correspondence) -> HomomorphismOracle:
    """The same homomorphism expressed on other models.

    ``src`` maps psi.source_curve to the new source model and ``tgt`` maps
    psi.target_curve to the new target model.
    """
    if src.source is src.target and tgt.source is tgt.target:
        return psi
    back = src.inverse()
    return HomomorphismOracle(src.target, tgt.target,
                              lambda f: transfer(psi(transfer(f, back)), tgt), psi.name)


def check_hom_laws(psi: HomomorphismOracle, n_samples: int = 12, seed: int = 0) -> ValidationReport:
    """Spot-check ⊕, ⊙, constants and preservation of extrema."""
    rep = ValidationReport()
    rng = random.Random(seed)
    m1, m2 = psi.source_curve, psi.target_curve
    consts = [ZERO, Fraction(1), Fraction(-3, 2)] + [random_constant(rng) for _ in range(2)]
    for c in consts:
        rep.require(psi(RationalFunction.constant(m1, c)) == RationalFunction.constant(m2, c),
                    f"constant {c} is not preserved")
    rep.require(psi(RationalFunction.bottom(m1)).is_bottom, "-inf is not preserved")
    for i in range(n_samples):
        f = random_function(m1, rng)
        g = random_function(m1, rng)
        pf, pg = psi(f), psi(g)
        rep.require(psi(trop_add_fn(f, g)) == trop_add_fn(pf, pg), f"sample {i}: ⊕ is not preserved")
        rep.require(psi(trop_mul_fn(f, g)) == trop_mul_fn(pf, pg), f"sample {i}: ⊙ is not preserved")
        rep.require(psi(trop_pow_fn(f, -1)) == trop_pow_fn(pf, -1), f"sample {i}: inverses are not preserved")
        if pf.is_bottom:
            rep.add(f"sample {i}: a finite function maps to -inf")
            continue
        a, b = extrema(f), extrema(pf)
        rep.require(a.max == b.max, f"sample {i}: max {format_ext(a.max)} becomes {format_ext(b.max)}")
        rep.require(a.min == b.min, f"sample {i}: min {format_ext(a.min)} becomes {format_ext(b.min)}")
    return rep


# ---------------------------------------------------------------------------
# Fibre sets
# ---------------------------------------------------------------------------


def _zero_set(g: RationalFunction, what: str) -> ClosedSubset:
    if g.is_bottom:
        raise EmptyFiber(f"{what} maps to -inf")
    top = extrema(g).max
    if top > 0:
        raise OracleLawViolation(f"{what}: image exceeds 0 (max {format_ext(top)})")
    if top < 0:
        raise EmptyFiber(f"{what}: image never reaches 0 (max {format_ext(top)})")
    return level_set(g, ZERO)


def max_set_finite(psi: HomomorphismOracle, x: Point, l: ExtRat = INF,
                   paranoid: bool = False) -> ClosedSubset:
    """{x′ | ψ(CF({x}, l))(x′) = 0} for a finite point x of the source curve."""
    m1 = psi.source_curve
    m1.check_point(x)
    if m1.is_infinite_point(x):
        raise ValueError("use max_set_infinite for points at infinity")
    out = _zero_set(psi(cf_point(m1, x, l)), f"CF({x!r}, {format_ext(l)})")
    if paranoid:
        other = INF if l != INF else Fraction(1)
        again = _zero_set(psi(cf_point(m1, x, other)), f"CF({x!r}, {format_ext(other)})")
        if again != out:
            raise OracleLawViolation(f"fibre of {x!r} depends on the chip-firing radius")
    return out


def max_set_infinite(psi: HomomorphismOracle, x: Point, y: Point) -> ClosedSubset:
    """{x′ | ψ(CF(Γ₁ ∖ (y, x], ∞))^{-1}(x′) = ∞} for a point at infinity x."""
    m1, m2 = psi.source_curve, psi.target_curve
    s = complement_closure(m1, y, x)
    g = psi(chip_firing_move(m1, s, INF))
    if g.is_bottom:
        raise OracleLawViolation("a finite chip firing maps to -inf")
    out = level_set(trop_pow_fn(g, -1), INF)
    if out.is_empty:
        raise EmptyFiber(f"no point maps to {x!r}")
    if out.intervals or not out.vertices <= m2.infinite_vertices:
        raise OracleLawViolation(f"fibre of {x!r} contains finite points")
    return out


# ---------------------------------------------------------------------------
# Results
# ---------------------------------------------------------------------------


@dataclass
class FiberReport:
    """Fibre sets of skeleton points and the consistency checks run on them."""

    fibers: dict[str, ClosedSubset] = field(default_factory=dict)
    overlaps: list[tuple[str, str]] = field(default_factory=list)
    misplaced: list[tuple[str, Point]] = field(default_factory=list)
    uncovered: list[Point] = field(default_factory=list)
    residue: ClosedSubset | None = None
    checked: int = 0

    @property
    def ok(self) -> bool:
        return not self.overlaps and not self.misplaced and not self.uncovered

    def issues(self) -> list[str]:
        out = [f"fibres of {a} and {b} meet" for a, b in self.overlaps]
        out += [f"fibre of {a} contains {p!r}, which maps elsewhere" for a, p in self.misplaced]
        out += [f"{p!r} lies in no fibre" for p in self.uncovered]
        return out

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "checked": self.checked,
            "fibers": {k: [list(map(_cell_str, c)) for c in v.cells()] for k, v in self.fibers.items()},
            "issues": self.issues(),
            "residue": [] if self.residue is None else [list(map(_cell_str, c)) for c in self.residue.cells()],
        }


def _cell_str(x) -> str:
    return x if isinstance(x, str) else format_ext(x)


@dataclass
class RecoveryResult:
    morphism: Morphism
    fibers: FiberReport
    source_refinement: Correspondence
    target_refinement: Correspondence
    trace: list[str] = field(default_factory=list)


@dataclass
class _Segment:
    """Image data for [t0, t1] on an edge of Γ₂ (t1 may be INF)."""

    t0: Fraction
    t1: ExtRat
    degree: int
    edge: str | None = None
    o0: Fraction | None = None
    sign: int = 1
    point: Point | None = None

    def continues(self, other: "_Segment") -> bool:
        if self.degree == 0 or other.degree == 0:
            return self.degree == other.degree and self.point == other.point
        return (self.edge, self.sign, self.degree) == (other.edge, other.sign, other.degree)


# ---------------------------------------------------------------------------
# The recovery engine
# ---------------------------------------------------------------------------


class _Recovery:
    def __init__(self, psi: HomomorphismOracle, cfg: RecoveryConfig):
        self.cfg = cfg
        self.trace: list[str] = []
        m1, m2 = psi.source_curve, psi.target_curve
        self.A, self.cA = loopless_model(m1)
        self.B, self.cB = loopless_model(m2)
        self.psi = reparametrised(psi, self.cA, self.cB)
        self._located: dict[Point, Point] = {}

    def log(self, msg: str) -> None:
        self.trace.append(msg)

    # -- skeleton ---------------------------------------------------------

    def build_skeleton(self) -> None:
        A, k = self.A, self.cfg.density
        self.skeleton: dict[str, Point] = {v: Point(vertex=v) for v in A.finite_vertices}
        # (label, edge, offset of that skeleton point, offset of the next one)
        self.gaps: list[tuple[str, str, Fraction, ExtRat]] = []
        for e in A.edges:
            if e.is_infinite:
                probe = self.cfg.infinite_probe
                lab = f"{e.id}@{probe}"
                self.skeleton[lab] = Point(edge=e.id, offset=probe)
                self.gaps += [(e.tail, e.id, ZERO, probe), (lab, e.id, probe, INF)]
                continue
            offs = [e.length * i / k for i in range(k + 1)]
            labels = [e.tail] + [f"{e.id}@{o}" for o in offs[1:-1]] + [e.head]
            for lab, o in zip(labels[1:-1], offs[1:-1]):
                self.skeleton[lab] = Point(edge=e.id, offset=o)
            for i in range(k):
                self.gaps.append((labels[i], e.id, offs[i], offs[i + 1]))
        self.D = {lab: self.psi(cf_point(A, p, INF)) for lab, p in self.skeleton.items()}
        self.log(f"skeleton: {len(self.skeleton)} points on {len(A.edges)} edges")

    def profile_of(self, y: Point) -> dict[str, ExtRat]:
        A = self.A
        d = vertex_distances(A, point_seeds(A, y))
        out = {}
        for lab, s in self.skeleton.items():
            if s.vertex is not None:
                out[lab] = d[s.vertex] if s != y else ZERO
                continue
            e = A.edge(s.edge)
            best = d[e.tail] + s.offset
            if not e.is_infinite:
                best = min(best, d[e.head] + e.length - s.offset)
            if y.edge == s.edge:
                best = min(best, abs(y.offset - s.offset))
            out[lab] = best
        return out

    def trilaterate(self, prof: dict[str, ExtRat]) -> Point:
        A = self.A
        if any(v == INF or v < 0 for v in prof.values()):
            raise FiberInconsistency("distance profile is not that of a finite point")
        cands: set[Point] = set()
        on = [lab for lab, v in prof.items() if v == 0]
        if on:
            cands.update(self.skeleton[lab] for lab in on)
        else:
            for lab, eid, a, b in self.gaps:
                r = prof[lab]
                if r < b - a:
                    cands.add(A.point(eid, a + r))
        hits = [y for y in sorted(cands, key=Point.sort_key) if self.profile_of(y) == prof]
        if not hits:
            raise FiberInconsistency("no point of the source curve has this distance profile")
        if len(hits) > 1:
            raise TrilaterationAmbiguity(f"distance profile matches {hits}")
        return hits[0]

    def locate(self, xp: Point) -> Point:
        """φ(x′) for a finite point x′ of Γ₂, as a point of the loopless Γ₁ model."""
        hit = self._located.get(xp)
        if hit is None:
            prof = {lab: -f(xp) for lab, f in self.D.items()}
            hit = self._located[xp] = self.trilaterate(prof)
        return hit

    # -- points at infinity -----------------------------------------------

    def match_infinity(self) -> None:
        A, B = self.A, self.B
        self.inf_fibers: dict[str, ClosedSubset] = {}
        for x in sorted(A.infinite_vertices):
            (eid, _), = A.incidence[x]
            y = Point(edge=eid, offset=self.cfg.infinite_probe)
            self.inf_fibers[x] = max_set_infinite(self.psi, Point(vertex=x), y)
            if self.cfg.paranoid:
                y2 = Point(edge=eid, offset=self.cfg.infinite_probe * 2)
                if max_set_infinite(self.psi, Point(vertex=x), y2) != self.inf_fibers[x]:
                    raise OracleLawViolation(f"fibre of {x} depends on the cut point")
        for xp in sorted(B.infinite_vertices):
            owners = [x for x, s in self.inf_fibers.items() if xp in s.vertices]
            if len(owners) != 1:
                raise FiberInconsistency(f"point at infinity {xp} lies in {len(owners)} fibres")
            self._located[Point(vertex=xp)] = Point(vertex=owners[0])

    # -- per-edge analysis ------------------------------------------------

    def _offset_on(self, p: Point, eid: str) -> Fraction:
        e = self.A.edge(eid)
        if p.vertex is None:
            if p.edge != eid:
                raise FiberInconsistency(f"{p!r} is not on edge {eid}")
            return p.offset
        if p.vertex == e.tail:
            return ZERO
        if p.vertex == e.head and not e.is_infinite:
            return e.length
        raise FiberInconsistency(f"{p!r} is not a finite point of edge {eid}")

    def analyse_edges(self) -> None:
        B = self.B
        self.segments: dict[str, list[_Segment]] = {}
        for E in B.edges:
            bps = {ZERO}
            for f in self.D.values():
                bps.update(f.piece(E.id).xs)
            if not E.is_infinite:
                bps.add(E.length)
            bps = sorted(bps)
            spans = list(zip(bps, bps[1:]))
            if E.is_infinite:
                spans.append((bps[-1], INF))
            segs = [self._segment(E.id, a, b) for a, b in spans]
            self.segments[E.id] = segs
        self.log(f"analysed {sum(len(s) for s in self.segments.values())} affine spans")

    def _segment(self, eid: str, a: Fraction, b: ExtRat) -> _Segment:
        B = self.B
        if b == INF:
            probes = [a, a + 1, a + 2]
            slopes = {abs(f.piece(eid).tail) for f in self.D.values()}
        else:
            probes = [a, (a + b) / 2, b]
            slopes = set()
            for f in self.D.values():
                p = f.piece(eid)
                slopes.add(abs((p(b) - p(a)) / (b - a)))
        if len(slopes) != 1:
            raise FiberInconsistency(f"edge {eid} near {a}: expansion factors disagree {sorted(slopes)}")
        d = slopes.pop()
        if d.denominator != 1:
            raise FiberInconsistency(f"edge {eid} near {a}: non-integer expansion factor {d}")
        d = int(d)
        imgs = [self.locate(B.point(eid, t)) for t in probes]
        if d == 0:
            if b == INF:
                raise FiberInconsistency(f"infinite edge {eid} collapses")
            if len(set(imgs)) != 1:
                raise FiberInconsistency(f"edge {eid} near {a}: flat span with moving image")
            return _Segment(a, b, 0, point=imgs[0])
        mid = imgs[1]
        if mid.vertex is not None:
            raise FiberInconsistency(f"edge {eid} near {a}: span interior maps to a vertex")
        target = mid.edge
        offs = [self._offset_on(p, target) for p in imgs]
        step = (probes[1] - probes[0])
        if offs[1] - offs[0] != offs[2] - offs[1] or abs(offs[1] - offs[0]) != d * step:
            raise FiberInconsistency(f"edge {eid} near {a}: image is not affine with factor {d}")
        sign = 1 if offs[1] > offs[0] else -1
        if b == INF and sign < 0:
            raise FiberInconsistency(f"infinite edge {eid} runs away from infinity")
        return _Segment(a, b, d, target, offs[0], sign)

    # -- the point map ----------------------------------------------------

    def phi0(self, xp: Point) -> tuple[Point, _Segment | None]:
        if xp.vertex is not None:
            if xp in self._located:
                return self._located[xp], None
            return self.locate(xp), None
        t = xp.offset
        for s in self.segments[xp.edge]:
            if s.t0 <= t <= s.t1:
                break
        if s.degree == 0:
            return s.point, s
        return self.A.point(s.edge, s.o0 + s.sign * s.degree * (t - s.t0)), s

    # -- assembly ---------------------------------------------------------

    def assemble(self) -> Morphism:
        A, B = self.A, self.B
        r_t: set[Point] = set()
        r_s: list[Point] = []
        for v in B.vertices:
            r_t.add(self.phi0(Point(vertex=v))[0])
        for eid, segs in self.segments.items():
            for prev, nxt in zip(segs, segs[1:]):
                if not prev.continues(nxt):
                    xp = B.point(eid, nxt.t0)
                    r_s.append(xp)
                    r_t.add(self.phi0(xp)[0])
            for s in segs:
                if s.degree == 0:
                    r_t.add(s.point)
        r_t = {p for p in r_t if p.vertex is None}
        for eid, segs in self.segments.items():
            for s in segs:
                if s.degree == 0:
                    continue
                for q in r_t:
                    if q.edge != s.edge:
                        continue
                    t = s.t0 + (q.offset - s.o0) / (s.sign * s.degree)
                    if s.t0 < t < s.t1:
                        r_s.append(B.point(eid, t))
        R1, c1 = refine_at(A, sorted(r_t, key=Point.sort_key))
        R2, c2 = refine_at(B, r_s)
        self.c1, self.c2 = c1, c2
        up2 = c2.inverse()
        self.log(f"refined source by {len(R2.vertices) - len(B.vertices)} and target by "
                 f"{len(R1.vertices) - len(A.vertices)} vertices")

        def image(xr: Point) -> tuple[Point, _Segment | None]:
            y, seg = self.phi0(up2(xr))
            return c1(y), seg

        vm = {}
        for v in R2.vertices:
            y, _ = image(Point(vertex=v))
            if y.vertex is None:
                raise FiberInconsistency(f"vertex {v} maps to the interior point {y!r}")
            vm[v] = y.vertex
        em, deg, rev = {}, {}, {}
        for F in R2.edges:
            t = Fraction(1) if F.is_infinite else F.length / 2
            y, seg = image(Point(edge=F.id, offset=t))
            if seg is None:
                raise FiberInconsistency(f"edge {F.id}: no span data")
            if seg.degree == 0:
                if y.vertex is None:
                    raise FiberInconsistency(f"edge {F.id} collapses onto a non-vertex")
                em[F.id], deg[F.id], rev[F.id] = y.vertex, 0, False
                continue
            if y.vertex is not None:
                raise FiberInconsistency(f"edge {F.id}: interior maps to vertex {y.vertex}")
            G = R1.edge(y.edge)
            em[F.id], deg[F.id] = G.id, seg.degree
            rev[F.id] = vm[F.tail] == G.head and vm[F.head] == G.tail
        return Morphism(R2, R1, vm, em, deg, rev)

    # -- fibre checks -------------------------------------------------------

    def check_fibers(self, phi: Morphism) -> FiberReport:
        B = self.B
        rep = FiberReport()
        for lab, f in self.D.items():
            rep.fibers[lab] = _zero_set(f, f"fibre of {lab}")
            if self.cfg.paranoid:
                again = max_set_finite(self.psi, self.skeleton[lab], Fraction(1) * self._radius(lab))
                if again != rep.fibers[lab]:
                    raise OracleLawViolation(f"fibre of {lab} depends on the chip-firing radius")
        for x, s in self.inf_fibers.items():
            rep.fibers[x] = s
        labels = list(rep.fibers)
        for i, a in enumerate(labels):
            for b in labels[i + 1:]:
                rep.checked += 1
                if not rep.fibers[a].intersection(rep.fibers[b]).is_empty:
                    rep.overlaps.append((a, b))
        for lab, s in rep.fibers.items():
            want = self.skeleton.get(lab, Point(vertex=lab))
            for w in s.points():
                rep.checked += 1
                if self.phi0(w)[0] != want:
                    rep.misplaced.append((lab, w))
        union = ClosedSubset.empty(B)
        for s in rep.fibers.values():
            union = union.union(s)
        rep.residue = union.complement_closure()
        rng = random.Random(self.cfg.seed)
        samples = [Point(vertex=v) for v in B.vertices]
        for E in B.edges:
            samples.append(B.point(E.id, Fraction(1) if E.is_infinite else E.length / 2))
        samples += [random_point(B, rng) for _ in range(self.cfg.coverage_samples * len(B.edges))]
        for xp in samples:
            rep.checked += 1
            y = self.phi0(xp)[0]
            if self.A.is_infinite_point(y):
                ok = xp.vertex in self.inf_fibers[y.vertex].vertices
            else:
                ok = self.psi(cf_point(self.A, y, INF))(xp) == 0
            if not ok:
                rep.uncovered.append(xp)
        return rep

    def _radius(self, lab: str) -> Fraction:
        s = self.skeleton[lab]
        if s.vertex is not None:
            return min((self.A.edge(e).length for e, _ in self.A.incidence[s.vertex]
                        if not self.A.edge(e).is_infinite), default=Fraction(1)) / 4
        e = self.A.edge(s.edge)
        return (Fraction(1) if e.is_infinite else e.length) / self.cfg.density


def recover_morphism(psi: HomomorphismOracle, config: RecoveryConfig | None = None) -> RecoveryResult:
    cfg = config or RecoveryConfig()
    if cfg.check_laws:
        rep = check_hom_laws(psi, cfg.law_samples, cfg.seed)
        if not rep.ok:
            raise OracleLawViolation("homomorphism laws fail:\n" + str(rep))
    run = _Recovery(psi, cfg)
    run.log(f"law check: {'skipped' if not cfg.check_laws else 'passed'}")
    run.build_skeleton()
    run.match_infinity()
    run.analyse_edges()
    phi = run.assemble()
    fibers = run.check_fibers(phi)
    if not fibers.ok:
        raise FiberInconsistency("fibre checks fail: " + "; ".join(fibers.issues()[:5]))
    rep = validate_morphism(phi)
    if not rep.ok:
        raise FiberInconsistency("assembled map is not a morphism: " + "; ".join(rep.issues))
    if not is_surjective(phi):
        raise FiberInconsistency("assembled morphism is not surjective")
    run.log(f"fibres: {len(fibers.fibers)} sets, {fibers.checked} checks passed")
    run.log(f"oracle calls: {psi.calls}")
    return RecoveryResult(phi, fibers, run.cB.then(run.c2), run.cA.then(run.c1), run.trace)


# ---------------------------------------------------------------------------
# Verification
# ---------------------------------------------------------------------------


def skeleton_points(m: Model, density: int = 4, probe: Fraction = Fraction(1)) -> list[Point]:
    pts = [Point(vertex=v) for v in m.finite_vertices]
    for e in m.edges:
        if e.is_infinite:
            pts.append(Point(edge=e.id, offset=probe))
        else:
            pts += [Point(edge=e.id, offset=e.length * i / density) for i in range(1, density)]
    return pts


def _small_radius(m: Model, x: Point) -> Fraction:
    if x.vertex is not None:
        lens = [m.edge(e).length for e, _ in m.incidence[x.vertex] if not m.edge(e).is_infinite]
        return min(lens, default=Fraction(4)) / 4
    e = m.edge(x.edge)
    if e.is_infinite:
        return min(x.offset, Fraction(1)) / 2
    return min(x.offset, e.length - x.offset) / 2


def verify_recovery(psi: HomomorphismOracle, result: RecoveryResult | Morphism, n_samples: int = 20,
                    seed: int = 0, density: int = 4) -> ValidationReport:
    """Check ψ(f) = f ∘ φ on a structured battery plus random functions."""
    if isinstance(result, RecoveryResult):
        phi, src, tgt = result.morphism, result.target_refinement, result.source_refinement
    else:
        phi = result
        if phi.target != psi.source_curve or phi.source != psi.target_curve:
            raise CurveMismatch("pass a RecoveryResult when the morphism lives on refined models")
        src = Correspondence.identity(phi.target)
        tgt = Correspondence.identity(phi.source)
    rep = ValidationReport()
    m1 = psi.source_curve
    same_models = src.source is src.target and tgt.source is tgt.target

    def check(f: RationalFunction, what: str) -> None:
        lhs = psi(f)
        if same_models:
            rhs = pullback(phi, f)
        else:
            rhs = pullback(phi, transfer(f, src))
            lhs = transfer(lhs, tgt)
        rep.require(lhs == rhs, f"ψ({what}) differs from its pull-back")

    for x in skeleton_points(m1, density):
        check(cf_point(m1, x, _small_radius(m1, x)), f"CF({x!r}, small)")
        check(cf_point(m1, x, INF), f"CF({x!r}, inf)")
    for x in sorted(m1.infinite_vertices):
        (eid, _), = m1.incidence[x]
        s = complement_closure(m1, Point(edge=eid, offset=Fraction(1)), Point(vertex=x))
        check(trop_pow_fn(chip_firing_move(m1, s, INF), -1), f"CF(complement of ray to {x})^-1")
    try:
        gens = generating_set(m1)
    except DegenerateResult:
        gens = None
    if gens is not None:
        for lab, g in gens:
            check(g, lab)
    rng = random.Random(seed)
    for i in range(n_samples):
        check(random_function(m1, rng), f"random function {i}")
    return rep
