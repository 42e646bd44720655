"""JSON encodings of curves, functions, subsets, morphisms and reports.

Every rational is written as an exact string ("3/2", "-inf"); integer
slopes and degrees are JSON integers.
"""
from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from . import _pl
from .curve import Model, Point, validate_model
from .errors import ParseError, TropicalError
from .morphism import Morphism
from .ratfn import Divisor, Extrema, RationalFunction
from .report import ValidationReport
from .scalar import INF, NEG_INF, format_ext, parse_ext
from .subset import ClosedSubset


def _field(obj: Any, key: str, ctx: str, kind: type | tuple = object, default=...):
    if not isinstance(obj, dict):
        raise ParseError("expected an object", ctx)
    if key not in obj:
        if default is not ...:
            return default
        raise ParseError(f"missing field {key!r}", ctx)
    val = obj[key]
    if kind is not object and not isinstance(val, kind):
        raise ParseError(f"field {key!r} has the wrong type", f"{ctx}.{key}")
    return val


def _num(text: Any, ctx: str):
    if isinstance(text, bool) or not isinstance(text, (str, int)):
        raise ParseError("numbers must be exact strings", ctx)
    try:
        return parse_ext(str(text))
    except ParseError as exc:
        raise ParseError(str(exc), ctx) from None


def _int(val: Any, ctx: str) -> int:
    if isinstance(val, bool):
        raise ParseError("expected an integer", ctx)
    if isinstance(val, int):
        return val
    if isinstance(val, str):
        q = _num(val, ctx)
        if q in (INF, NEG_INF) or q.denominator != 1:
            raise ParseError("expected an integer", ctx)
        return int(q)
    raise ParseError("expected an integer", ctx)


def load_json(path: str | Path) -> Any:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None
    return loads(text, str(path))


def loads(text: str, where: str = "<input>") -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, f"{where}:{exc.lineno}:{exc.colno}") from None


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


# -- curves -------------------------------------------------------------------


def curve_to_json(m: Model) -> dict:
    edges = []
    for e in m.edges:
        d = {"id": e.id, "ends": list(e.ends), "length": format_ext(e.length)}
        if e.infinite_end is not None:
            d["infinite_end"] = e.infinite_end
        edges.append(d)
    return {"vertices": list(m.vertices), "edges": edges}


def curve_from_json(obj: Any, ctx: str = "curve", validate: bool = True) -> Model:
    verts = _field(obj, "vertices", ctx, list)
    raw = _field(obj, "edges", ctx, list)
    edges = []
    for i, e in enumerate(raw):
        c = f"{ctx}.edges[{i}]"
        ends = _field(e, "ends", c, list)
        if len(ends) != 2 or not all(isinstance(v, str) for v in ends):
            raise ParseError("ends must be two vertex ids", f"{c}.ends")
        length = _num(_field(e, "length", c), f"{c}.length")
        inf_end = _field(e, "infinite_end", c, str, None)
        edges.append((str(_field(e, "id", c, str)), ends[0], ends[1], length, inf_end))
    if not all(isinstance(v, str) for v in verts):
        raise ParseError("vertex ids must be strings", f"{ctx}.vertices")
    try:
        m = Model.build(verts, edges)
    except (TypeError, ValueError) as exc:
        raise ParseError(str(exc), ctx) from None
    if validate:
        rep = validate_model(m)
        if not rep.ok:
            raise ParseError("invalid curve: " + "; ".join(rep.issues), ctx)
    return m


def _curve_ref(obj: Any, ctx: str, base: Path | None) -> Model:
    if isinstance(obj, str):
        p = Path(obj)
        if base is not None and not p.is_absolute():
            p = base / p
        return curve_from_json(load_json(p), str(p))
    return curve_from_json(obj, ctx)


# -- points and subsets -----------------------------------------------------------


def point_to_json(x: Point) -> dict:
    if x.vertex is not None:
        return {"vertex": x.vertex}
    return {"edge": x.edge, "at": format_ext(x.offset)}


def point_from_json(m: Model, obj: Any, ctx: str = "point") -> Point:
    try:
        if isinstance(obj, str):
            return parse_point(m, obj)
        if "vertex" in obj:
            return m.vertex(_field(obj, "vertex", ctx, str))
        return m.point(_field(obj, "edge", ctx, str), _num(_field(obj, "at", ctx), f"{ctx}.at"))
    except TropicalError as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(str(exc), ctx) from None


def parse_point(m: Model, text: str) -> Point:
    """``v`` for a vertex or ``edge@offset`` for a point on an edge."""
    if m.has_vertex(text):
        return m.vertex(text)
    eid, sep, off = text.rpartition("@")
    if not sep:
        raise ParseError(f"no vertex {text!r}", "point")
    try:
        return m.point(eid, parse_ext(off))
    except TropicalError as exc:
        raise ParseError(str(exc), "point") from None


def subset_to_json(s: ClosedSubset) -> dict:
    cells = []
    for cell in s.cells():
        if cell[0] == "vertex":
            cells.append({"vertex": cell[1]})
        else:
            _, eid, lo, hi = cell
            if lo == hi:
                cells.append({"edge": eid, "at": format_ext(lo)})
            else:
                cells.append({"edge": eid, "lo": format_ext(lo), "hi": format_ext(hi)})
    return {"cells": cells}


def subset_from_json(m: Model, obj: Any, ctx: str = "subset") -> ClosedSubset:
    from .chipfire import complement_closure

    try:
        if "complement_ray" in obj:
            ray = _field(obj, "complement_ray", ctx, dict)
            y = point_from_json(m, _field(ray, "y", f"{ctx}.complement_ray"), f"{ctx}.complement_ray.y")
            x = point_from_json(m, _field(ray, "x", f"{ctx}.complement_ray"), f"{ctx}.complement_ray.x")
            base = complement_closure(m, y, x)
            if "cells" not in obj:
                return base
        else:
            base = None
        verts, ivs, pts = [], [], []
        for i, c in enumerate(_field(obj, "cells", ctx, list)):
            cc = f"{ctx}.cells[{i}]"
            if not isinstance(c, dict):
                raise ParseError("expected an object", cc)
            if "vertex" in c:
                verts.append(_field(c, "vertex", cc, str))
            elif "at" in c:
                pts.append(m.point(_field(c, "edge", cc, str), _num(c["at"], f"{cc}.at")))
            else:
                ivs.append((_field(c, "edge", cc, str), _num(_field(c, "lo", cc), f"{cc}.lo"),
                            _num(_field(c, "hi", cc), f"{cc}.hi")))
        s = ClosedSubset.build(m, verts, ivs, pts)
        return s if base is None else s.union(base)
    except TropicalError as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(str(exc), ctx) from None


# -- functions ----------------------------------------------------------------


def function_to_json(f: RationalFunction, curve: Any = None) -> dict:
    m = f.curve
    out: dict[str, Any] = {"curve": curve_to_json(m) if curve is None else curve,
                           "bottom": f.is_bottom, "edges": []}
    if f.pieces is None:
        return out
    for e, p in zip(m.edges, f.pieces):
        bps = [[format_ext(x), format_ext(y)] for x, y in zip(p.xs, p.ys)]
        d: dict[str, Any] = {"edge": e.id, "orientation": list(e.ends), "breakpoints": bps}
        if p.tail is not None:
            bps.append(["inf", format_ext(p.end_value())])
            d["slope_to_inf"] = p.tail
        out["edges"].append(d)
    return out


def function_from_json(obj: Any, ctx: str = "function", base: Path | None = None) -> RationalFunction:
    m = _curve_ref(_field(obj, "curve", ctx), f"{ctx}.curve", base)
    if _field(obj, "bottom", ctx, bool, False):
        return RationalFunction.bottom(m)
    raw = _field(obj, "edges", ctx, list)
    pieces = {}
    for i, d in enumerate(raw):
        c = f"{ctx}.edges[{i}]"
        eid = _field(d, "edge", c, str)
        if not m.has_edge(eid):
            raise ParseError(f"no edge {eid!r}", c)
        e = m.edge(eid)
        orient = _field(d, "orientation", c, list, list(e.ends))
        if list(orient) != list(e.ends):
            raise ParseError("orientation must match the curve's stored edge orientation", f"{c}.orientation")
        pts = [(_num(a, f"{c}.breakpoints[{j}][0]"), _num(b, f"{c}.breakpoints[{j}][1]"))
               for j, (a, b) in enumerate(_field(d, "breakpoints", c, list))]
        at_inf = None
        if pts and pts[-1][0] == INF:
            at_inf = pts.pop()[1]
        tail = None
        if e.is_infinite:
            if "slope_to_inf" in d:
                tail = _int(d["slope_to_inf"], f"{c}.slope_to_inf")
            elif at_inf is not None and at_inf not in (INF, NEG_INF):
                tail = 0
            else:
                raise ParseError("infinite edge needs slope_to_inf", c)
        if any(a in (INF, NEG_INF) or b in (INF, NEG_INF) for a, b in pts):
            raise ParseError("infinite values are only allowed at a point at infinity", c)
        if eid in pieces:
            raise ParseError(f"edge {eid!r} listed twice", c)
        p = _pl.Piece(tuple(a for a, _ in pts), tuple(b for _, b in pts), tail)
        if at_inf is not None and pts and p.end_value() != at_inf:
            raise ParseError("value at infinity disagrees with the slope towards infinity", c)
        pieces[eid] = p
    try:
        return RationalFunction.from_pieces(m, pieces)
    except TropicalError as exc:
        raise ParseError(str(exc), ctx) from None


def load_function(path: str | Path) -> RationalFunction:
    p = Path(path)
    return function_from_json(load_json(p), str(p), p.parent)


# -- morphisms ------------------------------------------------------------------


def morphism_to_json(phi: Morphism) -> dict:
    src = phi.source
    return {
        "source": curve_to_json(src),
        "target": curve_to_json(phi.target),
        "vertex_map": {v: phi.vertex_map[v] for v in src.vertices},
        "edge_map": {e.id: phi.edge_map[e.id] for e in src.edges},
        "degrees": {e.id: phi.degree[e.id] for e in src.edges},
        "orientations": {e.id: phi.orientation(e.id) for e in src.edges if phi.degree[e.id] > 0},
    }


def morphism_from_json(obj: Any, ctx: str = "morphism", base: Path | None = None) -> Morphism:
    src = _curve_ref(_field(obj, "source", ctx), f"{ctx}.source", base)
    tgt = _curve_ref(_field(obj, "target", ctx), f"{ctx}.target", base)
    vm = _field(obj, "vertex_map", ctx, dict)
    em = _field(obj, "edge_map", ctx, dict)
    deg = {k: _int(v, f"{ctx}.degrees.{k}") for k, v in _field(obj, "degrees", ctx, dict).items()}
    orient = _field(obj, "orientations", ctx, dict, None)
    for label, mp in (("vertex_map", vm), ("edge_map", em)):
        if not all(isinstance(v, str) for v in mp.values()):
            raise ParseError("map values must be ids", f"{ctx}.{label}")
    try:
        return Morphism.build(src, tgt, vm, em, deg, orient)
    except TropicalError as exc:
        raise ParseError(str(exc), ctx) from None


def load_morphism(path: str | Path) -> Morphism:
    p = Path(path)
    return morphism_from_json(load_json(p), str(p), p.parent)


# -- reports and derived values --------------------------------------------------


def report_to_json(rep: ValidationReport) -> dict:
    return rep.to_json()


def report_from_json(obj: Any, ctx: str = "report") -> ValidationReport:
    issues = _field(obj, "issues", ctx, list)
    return ValidationReport(list(map(str, issues)), _int(_field(obj, "checked", ctx, default=0), f"{ctx}.checked"))


def divisor_to_json(d: Divisor) -> dict:
    return {"degree": d.degree,
            "points": [{"point": point_to_json(p), "multiplicity": n} for p, n in d.items()]}


def extrema_to_json(x: Extrema) -> dict:
    return {"min": format_ext(x.min), "max": format_ext(x.max),
            "argmax": subset_to_json(x.argmax), "argmin": subset_to_json(x.argmin)}
