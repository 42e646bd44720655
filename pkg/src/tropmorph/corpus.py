"""Fixture curves and a corpus of surjective morphisms."""
from __future__ import annotations

from fractions import Fraction as F

from .curve import Model
from .morphism import Morphism, identity


def segment(length=3) -> Model:
    return Model.build(["u", "v"], [("e", "u", "v", length)])


def segment_with_hair() -> Model:
    return Model.build(["u", "v", "w"], [("e", "u", "v", 2), ("h", "v", "w", "inf")])


def circle(length=2) -> Model:
    return Model.build(["o"], [("c", "o", "o", length)])


def two_edge_circle() -> Model:
    return Model.build(["d0", "d1"], [("m0", "d0", "d1", 1), ("m1", "d1", "d0", 1)])


def four_edge_circle() -> Model:
    return Model.build(["c0", "c1", "c2", "c3"],
                       [("k0", "c0", "c1", 1), ("k1", "c1", "c2", 1),
                        ("k2", "c2", "c3", 1), ("k3", "c3", "c0", 1)])


def theta() -> Model:
    return Model.build(["p", "q"], [("a", "p", "q", 1), ("b", "p", "q", F(3, 2)), ("c", "q", "p", 2)])


def four_cycle() -> Model:
    return Model.build(["a", "b", "c", "d"],
                       [("ab", "a", "b", 1), ("bc", "b", "c", 2), ("cd", "c", "d", 1), ("da", "d", "a", F(3, 2))])


def ray() -> Model:
    return Model.build(["a", "z"], [("r", "a", "z", "inf")])


def line() -> Model:
    return Model.build(["w1", "v", "w2"], [("s1", "v", "w1", "inf"), ("s2", "v", "w2", "inf")])


FIXTURE_CURVES = {
    "segment": segment,
    "segment+hair": segment_with_hair,
    "circle": circle,
    "theta": theta,
    "4-cycle": four_cycle,
}


def doubling() -> Morphism:
    """[0,1] -> [0,2] with expansion factor 2."""
    src = Model.build(["s0", "s1"], [("t", "s0", "s1", 1)])
    tgt = Model.build(["w0", "w1"], [("T", "w0", "w1", 2)])
    return Morphism.build(src, tgt, {"s0": "w0", "s1": "w1"}, {"t": "T"}, {"t": 2})


def circle_cover() -> Morphism:
    """Circumference-4 circle wrapped twice around a circumference-2 circle."""
    src, tgt = four_edge_circle(), two_edge_circle()
    vm = {"c0": "d0", "c1": "d1", "c2": "d0", "c3": "d1"}
    em = {"k0": "m0", "k1": "m1", "k2": "m0", "k3": "m1"}
    return Morphism.build(src, tgt, vm, em, {k: 1 for k in em})


def path_collapse() -> Morphism:
    """Path a-b-c onto a'-b' with the edge b-c collapsed to b'."""
    src = Model.build(["a", "b", "c"], [("ab", "a", "b", 1), ("bc", "b", "c", 1)])
    tgt = Model.build(["a'", "b'"], [("e", "a'", "b'", 1)])
    return Morphism.build(src, tgt, {"a": "a'", "b": "b'", "c": "b'"}, {"ab": "e", "bc": "b'"},
                          {"ab": 1, "bc": 0})


def fold() -> Morphism:
    """[0,2] folded in half onto [0,1]; the second half runs backwards."""
    src = Model.build(["x0", "x1", "x2"], [("e1", "x0", "x1", 1), ("e2", "x1", "x2", 1)])
    tgt = Model.build(["y0", "y1"], [("f", "y0", "y1", 1)])
    return Morphism.build(src, tgt, {"x0": "y0", "x1": "y1", "x2": "y0"}, {"e1": "f", "e2": "f"},
                          {"e1": 1, "e2": 1})


def theta_onto_segment() -> Morphism:
    """A theta graph with edge lengths 1, 1, 2 onto a segment of length 2."""
    src = Model.build(["p", "q"], [("a", "p", "q", 1), ("b", "q", "p", 1), ("c", "p", "q", 2)])
    tgt = Model.build(["y0", "y1"], [("f", "y0", "y1", 2)])
    return Morphism.build(src, tgt, {"p": "y0", "q": "y1"}, {"a": "f", "b": "f", "c": "f"},
                          {"a": 2, "b": 2, "c": 1})


def ray_doubling() -> Morphism:
    src = Model.build(["a0", "z0"], [("r0", "a0", "z0", "inf")])
    tgt = ray()
    return Morphism.build(src, tgt, {"a0": "a", "z0": "z"}, {"r0": "r"}, {"r0": 2})


def hair_collapse() -> Morphism:
    """Segment plus hair, collapsing an extra segment hanging off the far end."""
    src = Model.build(["u", "v", "w", "t"],
                      [("e", "u", "v", 2), ("h", "v", "w", "inf"), ("x", "t", "u", F(1, 2))])
    tgt = segment_with_hair()
    return Morphism.build(src, tgt, {"u": "u", "v": "v", "w": "w", "t": "u"},
                          {"e": "e", "h": "h", "x": "u"}, {"e": 1, "h": 1, "x": 0})


CORPUS = {
    "identity-theta": lambda: identity(theta()),
    "doubling": doubling,
    "circle-cover": circle_cover,
    "path-collapse": path_collapse,
    "identity-ray": lambda: identity(ray()),
}

EXTRA_MORPHISMS = {
    "fold": fold,
    "theta-onto-segment": theta_onto_segment,
    "ray-doubling": ray_doubling,
    "hair-collapse": hair_collapse,
    "identity-line": lambda: identity(line()),
}
