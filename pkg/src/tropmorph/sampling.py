"""Seeded random functions and subsets for law checks and tests."""
from __future__ import annotations

import random
from fractions import Fraction

from .chipfire import cf_point, chip_firing_move, complement_closure
from .curve import Model, Point, random_offset, random_point
from .ratfn import RationalFunction, trop_add_fn, trop_pow_fn
from .scalar import INF, ExtRat
from .subset import ClosedSubset


def random_radius(rng: random.Random, infinite_rate: float = 0.3) -> ExtRat:
    if rng.random() < infinite_rate:
        return INF
    return Fraction(rng.randint(1, 8), rng.randint(1, 4))


def random_constant(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(-6, 6), rng.randint(1, 3))


def random_function(m: Model, rng: random.Random, terms: int = 3) -> RationalFunction:
    """A tropical sum of shifted integer powers of point chip firings."""
    f = RationalFunction.bottom(m)
    for _ in range(rng.randint(1, terms)):
        g = cf_point(m, random_point(m, rng), random_radius(rng))
        g = trop_pow_fn(g, rng.choice((-2, -1, 1, 2))).shift(random_constant(rng))
        f = trop_add_fn(f, g)
    return f


def random_subset(m: Model, rng: random.Random) -> ClosedSubset:
    """A union of one to three random cells (points, vertices, segments)."""
    if m.infinite_vertices and rng.random() < 0.15:
        x = Point(vertex=rng.choice(sorted(m.infinite_vertices)))
        (eid, _), = m.incidence[x.vertex]
        return complement_closure(m, m.point(eid, random_offset(rng, INF)), x)
    verts: list[str] = []
    ivs = []
    pts = []
    for _ in range(rng.randint(1, 3)):
        kind = rng.random()
        if kind < 0.3:
            pts.append(random_point(m, rng))
        elif kind < 0.45:
            verts.append(rng.choice(m.finite_vertices))
        else:
            e = rng.choice(m.edges)
            a = random_offset(rng, e.length)
            b = random_offset(rng, e.length)
            lo, hi = min(a, b), max(a, b)
            if e.is_infinite and rng.random() < 0.3:
                hi = INF
            ivs.append((e.id, lo, hi))
    return ClosedSubset.build(m, verts, ivs, pts)


def random_cf(m: Model, rng: random.Random) -> RationalFunction:
    return chip_firing_move(m, random_subset(m, rng), random_radius(rng))


def function_pool(m: Model, seed: int, size: int, terms: int = 3) -> list[RationalFunction]:
    rng = random.Random(seed)
    return [random_function(m, rng, terms) for _ in range(size)]
