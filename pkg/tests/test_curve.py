import random
from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from tropmorph import (INF, CannotSubdivideAtInfinity, InvalidModel, Model, Point, PointNotOnCurve,
                       canonical_loopless_model, canonical_model, distance, loopless_model, refine_at,
                       valence, validate_model)
from tropmorph.corpus import (FIXTURE_CURVES, circle, four_cycle, line, ray, segment, segment_with_hair,
                              theta, two_edge_circle)
from tropmorph.curve import random_point, require_valid

ALL_CURVES = {**FIXTURE_CURVES, "ray": ray, "line": line, "two-edge circle": two_edge_circle}


def test_valid_models():
    assert validate_model(Model.build(["u", "v"], [("e", "u", "v", 2)])).ok
    assert validate_model(Model.build(["u", "v"], [("e", "u", "v", "inf", "v")])).ok
    for make in ALL_CURVES.values():
        assert validate_model(make()).ok


def test_infinite_length_only_on_leaf_edges():
    m = Model.build(["a", "b", "c", "d"], [("x", "a", "b", 1), ("y", "b", "c", "inf"), ("z", "c", "d", 1)])
    rep = validate_model(m)
    assert not rep.ok
    assert any("non-leaf" in msg for msg in rep.issues)
    with pytest.raises(InvalidModel):
        require_valid(m)


@pytest.mark.parametrize("vertices,edges,fragment", [
    (["a", "b"], [], "no edges"),
    (["a", "b", "c"], [("x", "a", "b", 1)], "connected"),
    (["a", "b"], [("x", "a", "b", 0)], "positive"),
    (["a", "b"], [("x", "a", "b", 1), ("x", "b", "a", 1)], "duplicate"),
    (["a"], [("x", "a", "q", 1)], "not among vertices"),
])
def test_invalid_models(vertices, edges, fragment):
    rep = validate_model(Model.build(vertices, edges))
    assert not rep.ok
    assert any(fragment in msg for msg in rep.issues), rep.issues


def test_infinite_edges_are_stored_towards_infinity():
    m = Model.build(["a", "z"], [("r", "z", "a", "inf", "z")])
    e = m.edge("r")
    assert e.ends == ("a", "z")
    assert m.infinite_vertices == {"z"}


def test_valence():
    th = theta()
    assert valence(th, Point(vertex="p")) == 3
    assert valence(th, Point(edge="a", offset=F(1, 2))) == 2
    assert valence(ray(), Point(vertex="z")) == 1
    assert valence(circle(), Point(vertex="o")) == 2


def test_points_normalise_to_vertices():
    m = segment(3)
    assert m.point("e", 0) == Point(vertex="u")
    assert m.point("e", 3) == Point(vertex="v")
    with pytest.raises(PointNotOnCurve):
        m.point("e", 4)
    with pytest.raises(PointNotOnCurve):
        m.check_point(Point(edge="nope", offset=F(1)))


def test_loopless_model_of_a_circle():
    m, corr = loopless_model(circle(2))
    assert len(m.vertices) == 2
    assert sorted(e.length for e in m.edges) == [1, 1]
    assert m.is_loopless
    mid = corr(Point(edge="c", offset=F(1)))
    assert mid.vertex is not None and mid.vertex != "o"


def test_canonical_model_of_a_doubly_infinite_path():
    m, _ = canonical_loopless_model(line())
    assert set(m.vertices) == {"w1", "v", "w2"}


def test_canonical_model_of_theta_is_unchanged():
    m, _ = canonical_model(theta())
    assert set(m.vertices) == {"p", "q"}
    assert len(m.edges) == 3


def test_canonical_model_merges_two_valent_vertices():
    m, corr = canonical_model(four_cycle())
    assert len(m.vertices) == 1 and len(m.edges) == 1
    assert m.edges[0].length == F(11, 2)
    assert corr.inverse()(corr(Point(vertex="c"))) == Point(vertex="c")
    m, _ = canonical_model(segment_with_hair())
    assert len(m.edges) == 1 and m.edges[0].is_infinite


def test_refine_examples():
    m, corr = refine_at(segment(2), [Point(edge="e", offset=F(1, 2))])
    assert sorted(e.length for e in m.edges) == [F(1, 2), F(3, 2)]
    assert corr(Point(edge="e", offset=F(1, 2))).vertex is not None
    same, ident = refine_at(segment(2), [Point(vertex="u")])
    assert same == segment(2)
    assert ident(Point(edge="e", offset=F(1))) == Point(edge="e", offset=F(1))
    m, _ = refine_at(two_edge_circle(), [Point(edge="m0", offset=F(1, 2)), Point(edge="m1", offset=F(1, 2))])
    assert [e.length for e in m.edges] == [F(1, 2)] * 4
    assert sum(e.length for e in m.edges) == 2


def test_cannot_subdivide_at_infinity():
    with pytest.raises(CannotSubdivideAtInfinity):
        refine_at(ray(), [Point(vertex="z")])


def test_distance_examples():
    m = segment(2)
    assert distance(m, Point(vertex="u"), Point(edge="e", offset=F(3, 2))) == F(3, 2)
    assert distance(ray(), Point(vertex="a"), Point(vertex="z")) == INF
    assert distance(ray(), Point(vertex="z"), Point(vertex="z")) == 0
    assert distance(circle(2), Point(vertex="o"), Point(edge="c", offset=F(1))) == 1
    assert oracles.distance(circle(2), Point(vertex="o"), Point(edge="c", offset=F(1))) == 1


def test_distance_on_a_shared_edge_may_go_around():
    m = circle(2)
    x, y = Point(edge="c", offset=F(1, 4)), Point(edge="c", offset=F(15, 8))
    assert distance(m, x, y) == F(3, 8)


curve_names = st.sampled_from(sorted(ALL_CURVES))
seeds = st.integers(0, 10 ** 6)


@given(curve_names, seeds)
def test_distance_matches_floyd_warshall(name, seed):
    m = ALL_CURVES[name]()
    rng = random.Random(seed)
    x, y = random_point(m, rng), random_point(m, rng)
    assert distance(m, x, y) == oracles.distance(m, x, y)


@given(curve_names, seeds)
def test_metric_axioms(name, seed):
    m = ALL_CURVES[name]()
    rng = random.Random(seed)
    x, y, z = (random_point(m, rng) for _ in range(3))
    dxy = distance(m, x, y)
    assert dxy == distance(m, y, x)
    assert (dxy == 0) == (x == y)
    assert dxy <= distance(m, x, z) + distance(m, z, y)


@given(curve_names, seeds)
def test_distance_is_invariant_under_refinement(name, seed):
    m = ALL_CURVES[name]()
    rng = random.Random(seed)
    cuts = [p for p in (random_point(m, rng) for _ in range(3)) if not m.is_infinite_point(p)]
    fine, corr = refine_at(m, cuts)
    assert validate_model(fine).ok
    for _ in range(3):
        x, y = random_point(m, rng), random_point(m, rng)
        assert distance(fine, corr(x), corr(y)) == distance(m, x, y)
        assert corr.inverse()(corr(x)) == x


@given(curve_names, seeds)
def test_canonical_loopless_model_has_no_loops(name, seed):
    m = ALL_CURVES[name]()
    rng = random.Random(seed)
    cuts = [p for p in (random_point(m, rng) for _ in range(2)) if not m.is_infinite_point(p)]
    fine, _ = refine_at(m, cuts)
    c, corr = canonical_loopless_model(fine)
    assert c.is_loopless and validate_model(c).ok
    x, y = random_point(fine, rng), random_point(fine, rng)
    assert distance(c, corr(x), corr(y)) == distance(fine, x, y)
