import random
from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from tropmorph import (INF, CurveMismatch, DegenerateResult, Model, Point, RationalFunction, canonical_model,
                       contract_infinite_edges, extend_by_constants, generating_set)
from tropmorph.chipfire import cf_point, distance_to_set
from tropmorph.corpus import FIXTURE_CURVES, circle, line, ray, theta
from tropmorph.curve import random_point
from tropmorph.generators import hair_complement
from tropmorph.ratfn import validate_function
from tropmorph.sampling import random_function

UNIT = Model.build(["0", "1"], [("e", "0", "1", 1)])
UNIT_HAIR = Model.build(["0", "1", "w"], [("e", "0", "1", 1), ("h", "1", "w", "inf")])


def theta_with_hair():
    return Model.build(["p", "q", "w"], [("a", "p", "q", 1), ("b", "p", "q", F(3, 2)), ("c", "q", "p", 2),
                                         ("h", "q", "w", "inf")])


def test_contraction_examples():
    th = theta()
    sub, emb = contract_infinite_edges(th)
    assert sub == th and emb.hairs == ()
    sub, emb = contract_infinite_edges(theta_with_hair())
    assert sub == th and emb.hairs == ("h",)
    with pytest.raises(DegenerateResult):
        contract_infinite_edges(ray())
    with pytest.raises(DegenerateResult):
        generating_set(line())


def test_extension_examples():
    m = theta_with_hair()
    sub, emb = contract_infinite_edges(m)
    c = extend_by_constants(RationalFunction.constant(sub, F(5, 2)), emb)
    assert c == RationalFunction.constant(m, F(5, 2))
    f = cf_point(sub, Point(edge="c", offset=F(1, 2)), INF).shift(3) | RationalFunction.constant(sub, 3)
    assert f(Point(vertex="q")) == 3
    k = extend_by_constants(f, emb)
    assert k(Point(edge="h", offset=F(100))) == 3 and k(Point(vertex="w")) == 3
    g = random_function(sub, random.Random(1))
    kg = extend_by_constants(g, emb)
    for x in oracles.grid(sub, 9):
        assert kg(x) == g(x)
    for t in (F(1, 3), F(7), F(10 ** 4)):
        assert kg(Point(edge="h", offset=t)) == g(Point(vertex="q"))
    with pytest.raises(CurveMismatch):
        extend_by_constants(RationalFunction.constant(m, 0), emb)


@pytest.mark.parametrize("curve,count", [(UNIT, 5), (circle(2), 4), (UNIT_HAIR, 6)])
def test_generator_counts(curve, count):
    gs = generating_set(curve)
    assert len(gs) == count
    assert len(set(gs.labels())) == count


def test_unit_interval_generators():
    gs = generating_set(UNIT)
    by = dict(gs.generators)
    assert set(by) == {"f_e", "g_e", "h_e", "cf_vertex(0)", "cf_vertex(1)"}
    assert by["f_e"] == cf_point(UNIT, Point(edge="e", offset=F(1, 2)), F(1, 2))
    assert by["g_e"] == cf_point(UNIT, Point(edge="e", offset=F(1, 4)), F(1, 4))
    assert by["h_e"] == cf_point(UNIT, Point(edge="e", offset=F(3, 4)), F(1, 4))


def test_hair_generator_is_the_complement_chip_firing():
    gs = generating_set(UNIT_HAIR)
    g = dict(gs.generators)["cf_component(h)"]
    s = hair_complement(UNIT_HAIR, "h")
    for t in (F(0), F(1, 2), F(3), F(50)):
        x = UNIT_HAIR.point("h", t)
        assert g(x) == -distance_to_set(UNIT_HAIR, s, x) == -t


CURVES = {**FIXTURE_CURVES, "theta+hair": theta_with_hair}


@pytest.mark.parametrize("name", sorted(CURVES))
def test_generators_match_their_formulas_on_a_grid(name):
    m = CURVES[name]()
    gs = generating_set(m)
    canon = gs.canonical
    _, to_canon = canonical_model(gs.contracted_curve)
    hairs = set(gs.embedding.hairs)

    def formula(label):
        kind, _, rest = label.partition("_")
        if label.startswith("cf_vertex("):
            return None, Point(vertex=label[len("cf_vertex("):-1]), INF
        if label.startswith("cf_component("):
            return "hair", label[len("cf_component("):-1], INF
        e = canon.edge(rest)
        frac = {"f": F(1, 2), "g": F(1, 4), "h": F(3, 4)}[kind]
        radius = e.length / 2 if kind == "f" else e.length / 4
        return None, canon.point(e.id, e.length * frac), radius

    pts = oracles.grid(m, 100)
    for label, g in gs:
        assert validate_function(g).ok
        tag, centre, radius = formula(label)
        for x in pts:
            if tag == "hair":
                want = -oracles.distance_to_set(m, [(f.id, 0, f.length) for f in m.edges if f.id != centre], x)
            elif x.vertex is None and x.edge in hairs or m.is_infinite_point(x):
                eid = x.edge if x.vertex is None else m.incidence[x.vertex][0][0]
                base = Point(vertex=m.edge(eid).tail)
                want = -min(oracles.distance(canon, centre, to_canon(base)), radius)
            else:
                want = -min(oracles.distance(canon, centre, to_canon(x)), radius)
            assert g(x) == want, (label, x)


SEEDS = st.integers(0, 10 ** 6)


@given(st.sampled_from(["theta+hair", "segment+hair"]), SEEDS)
def test_extension_is_a_homomorphism(name, seed):
    m = CURVES[name]()
    sub, emb = contract_infinite_edges(m)
    rng = random.Random(seed)
    f, g = random_function(sub, rng), random_function(sub, rng)
    k = lambda h: extend_by_constants(h, emb)  # noqa: E731
    assert k(f | g) == k(f) | k(g)
    assert k(f & g) == k(f) & k(g)
    assert k(f ^ -1) == k(f) ^ -1
    assert k(RationalFunction.bottom(sub)).is_bottom
    x = random_point(sub, rng)
    assert k(f)(x) == f(x)
