"""Command-line front end: ``tropmorph <verb> ...``.

Exit status 0 on success, 1 when a validation or consistency check fails,
2 on malformed input or unreadable files.
"""
from __future__ import annotations

import argparse
import os
import sys
import warnings
from pathlib import Path
from typing import Any, Sequence

from . import io
from .chipfire import chip_firing_move
from .config import RecoveryConfig
from .curve import validate_model
from .errors import NotSurjectiveWarning, ParseError, TropicalError
from .generators import generating_set
from .morphism import apply_point, is_surjective, pullback, validate_morphism
from .ratfn import (divisor_of, equals_fn, evaluate, extrema, trop_add_fn, trop_mul_fn,
                    trop_pow_fn, validate_function)
from .recovery import oracle_from_pullback, recover_morphism, verify_recovery
from .report import ValidationReport
from .scalar import format_ext, parse_ext
from .subset import validate_subset

FORMAT_ENV = "TROPMORPH_FORMAT"


class Failure(Exception):
    """A check failed; carries the payload to print."""

    def __init__(self, payload: Any):
        super().__init__("check failed")
        self.payload = payload


def _detect_kind(obj: Any) -> str:
    if isinstance(obj, dict):
        if "source" in obj and "target" in obj:
            return "morphism"
        if "curve" in obj:
            return "function"
        if "vertices" in obj:
            return "curve"
        if "cells" in obj or "complement_ray" in obj:
            return "subset"
    raise ParseError("cannot tell what kind of object this file holds")


def _load_curve(path: str):
    return io.curve_from_json(io.load_json(path), path)


def _subset_arg(m, text: str):
    p = Path(text)
    obj = io.load_json(p) if not text.lstrip().startswith("{") else io.loads(text, "--subset")
    return io.subset_from_json(m, obj)


def _report_payload(rep: ValidationReport) -> dict:
    return rep.to_json()


# -- verbs --------------------------------------------------------------------


def cmd_validate(a) -> Any:
    obj = io.load_json(a.file)
    kind = a.kind or _detect_kind(obj)
    if kind == "curve":
        rep = validate_model(io.curve_from_json(obj, a.file, validate=False))
    elif kind == "function":
        rep = validate_function(io.function_from_json(obj, a.file, Path(a.file).parent))
    elif kind == "morphism":
        rep = validate_morphism(io.morphism_from_json(obj, a.file, Path(a.file).parent))
    else:
        if not a.curve:
            raise ParseError("validating a subset needs --curve")
        m = _load_curve(a.curve)
        rep = validate_subset(m, io.subset_from_json(m, obj))
    if not rep.ok:
        raise Failure(_report_payload(rep))
    return _report_payload(rep)


def cmd_eval(a) -> Any:
    f = io.load_function(a.function)
    out = {}
    for text in a.point:
        out[text] = format_ext(evaluate(f, io.parse_point(f.curve, text)))
    return {"values": out}


def _binary(a, op) -> Any:
    return io.function_to_json(op(io.load_function(a.f), io.load_function(a.g)))


def cmd_add(a) -> Any:
    return _binary(a, trop_add_fn)


def cmd_mul(a) -> Any:
    return _binary(a, trop_mul_fn)


def cmd_pow(a) -> Any:
    return io.function_to_json(trop_pow_fn(io.load_function(a.f), a.n))


def cmd_equals(a) -> Any:
    return {"equal": equals_fn(io.load_function(a.f), io.load_function(a.g))}


def cmd_extrema(a) -> Any:
    return io.extrema_to_json(extrema(io.load_function(a.f)))


def cmd_divisor(a) -> Any:
    return io.divisor_to_json(divisor_of(io.load_function(a.f)))


def cmd_cf(a) -> Any:
    m = _load_curve(a.curve)
    s = _subset_arg(m, a.subset)
    return io.function_to_json(chip_firing_move(m, s, parse_ext(a.l)))


def cmd_pullback(a) -> Any:
    return io.function_to_json(pullback(io.load_morphism(a.morphism), io.load_function(a.function)))


def cmd_apply(a) -> Any:
    phi = io.load_morphism(a.morphism)
    return {"images": {t: io.point_to_json(apply_point(phi, io.parse_point(phi.source, t))) for t in a.point}}


def cmd_surjective(a) -> Any:
    return {"surjective": is_surjective(io.load_morphism(a.morphism))}


def _config(a) -> RecoveryConfig:
    return RecoveryConfig(density=a.density, paranoid=a.paranoid, seed=a.seed)


def _recover(a):
    phi = io.load_morphism(a.morphism)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", NotSurjectiveWarning)
        psi = oracle_from_pullback(phi)
    return phi, psi, recover_morphism(psi, _config(a))


def cmd_recover(a) -> Any:
    _, _, res = _recover(a)
    if a.fibers:
        Path(a.fibers).write_text(io.dumps(res.fibers.to_json()), encoding="utf-8")
    return {"morphism": io.morphism_to_json(res.morphism), "fibers": res.fibers.to_json(), "trace": res.trace}


def cmd_verify(a) -> Any:
    phi = io.load_morphism(a.morphism)
    psi = oracle_from_pullback(phi)
    cand = io.load_morphism(a.candidate) if a.candidate else recover_morphism(psi, _config(a))
    rep = verify_recovery(psi, cand, a.samples, a.seed, a.density)
    if not rep.ok:
        raise Failure(_report_payload(rep))
    return _report_payload(rep)


def cmd_generators(a) -> Any:
    gs = generating_set(_load_curve(a.curve))
    if a.output_dir:
        out = Path(a.output_dir)
        out.mkdir(parents=True, exist_ok=True)
        (out / "curve.json").write_text(io.dumps(io.curve_to_json(gs.curve)), encoding="utf-8")
        files = []
        for i, (lab, g) in enumerate(gs):
            name = f"gen{i:03d}.json"
            (out / name).write_text(io.dumps(io.function_to_json(g, "curve.json")), encoding="utf-8")
            files.append({"label": lab, "file": name})
        manifest = {"curve": "curve.json", "count": len(files), "generators": files}
        (out / "manifest.json").write_text(io.dumps(manifest), encoding="utf-8")
        return manifest
    return {"count": len(gs), "generators": [{"label": lab, "function": io.function_to_json(g)} for lab, g in gs]}


def cmd_roundtrip(a) -> Any:
    phi, _, res = _recover(a)
    same = res.morphism == phi
    payload = {"identical": same, "recovered": io.morphism_to_json(res.morphism), "trace": res.trace}
    if not same:
        raise Failure(payload)
    return payload


# -- text rendering -----------------------------------------------------------


def _point_text(v: Any) -> str:
    if isinstance(v, dict) and "vertex" in v:
        return v["vertex"]
    if isinstance(v, dict) and "edge" in v:
        return f"{v['edge']}@{v['at']}"
    return str(v)


def _text(payload: Any) -> str:
    if isinstance(payload, dict) and set(payload) >= {"ok", "issues"}:
        if payload["ok"]:
            return "ok\n"
        return "".join(f"- {m}\n" for m in payload["issues"])
    if isinstance(payload, dict) and len(payload) == 1:
        (k, v), = payload.items()
        if isinstance(v, dict):
            return "".join(f"{a}: {_point_text(b)}\n" for a, b in v.items())
        return f"{str(v).lower() if isinstance(v, bool) else v}\n"
    if isinstance(payload, dict) and "identical" in payload:
        return ("identical\n" if payload["identical"] else "different\n") + "".join(f"  {t}\n" for t in payload["trace"])
    return io.dumps(payload)


# -- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tropmorph", description="Tropical curves, rational functions and morphisms.")
    p.add_argument("--format", choices=("json", "text"), default=os.environ.get(FORMAT_ENV, "text"))
    p.add_argument("-o", "--output", help="write the result to this file")
    sub = p.add_subparsers(dest="verb", required=True)

    def verb(name: str, fn, help: str):
        s = sub.add_parser(name, help=help)
        s.set_defaults(func=fn)
        s.add_argument("--format", choices=("json", "text"), default=argparse.SUPPRESS)
        s.add_argument("-o", "--output", default=argparse.SUPPRESS)
        return s

    s = verb("validate", cmd_validate, "validate a curve, function, morphism or subset file")
    s.add_argument("file")
    s.add_argument("--kind", choices=("curve", "function", "morphism", "subset"))
    s.add_argument("--curve", help="curve file for subset validation")
    s = verb("eval", cmd_eval, "evaluate a function at points")
    s.add_argument("function")
    s.add_argument("--point", action="append", required=True, help="vertex id or edge@offset")
    for name, fn, what in (("add", cmd_add, "tropical sum (max) of two functions"),
                           ("mul", cmd_mul, "tropical product (sum) of two functions"),
                           ("equals", cmd_equals, "are two functions equal")):
        s = verb(name, fn, what)
        s.add_argument("f")
        s.add_argument("g")
    s = verb("pow", cmd_pow, "integer tropical power of a function")
    s.add_argument("f")
    s.add_argument("--n", type=int, required=True)
    s = verb("extrema", cmd_extrema, "global min and max with their argument sets")
    s.add_argument("f")
    s = verb("divisor", cmd_divisor, "zeros and poles of a function")
    s.add_argument("f")
    s = verb("cf", cmd_cf, "chip-firing move from a closed subset")
    s.add_argument("curve")
    s.add_argument("--subset", required=True, help="subset JSON or a path to it")
    s.add_argument("--l", default="inf", help="radius (exact rational or inf)")
    s = verb("pullback", cmd_pullback, "pull a function back along a morphism")
    s.add_argument("morphism")
    s.add_argument("function")
    s = verb("apply", cmd_apply, "image of points under a morphism")
    s.add_argument("morphism")
    s.add_argument("--point", action="append", required=True)
    s = verb("surjective", cmd_surjective, "is the morphism surjective")
    s.add_argument("morphism")
    for name, fn, help in (("recover", cmd_recover, "recover a morphism from its pull-back oracle"),
                           ("verify", cmd_verify, "check a recovered morphism against the oracle"),
                           ("roundtrip", cmd_roundtrip, "recover a morphism from its own pull-back and compare")):
        s = verb(name, fn, help)
        s.add_argument("morphism")
        s.add_argument("--seed", type=int, default=0)
        s.add_argument("--density", type=int, default=4)
        s.add_argument("--paranoid", action="store_true")
        if name == "recover":
            s.add_argument("--fibers", help="also write the fibre report here")
        if name == "verify":
            s.add_argument("--candidate", help="morphism file to verify instead of the recovered one")
            s.add_argument("--samples", type=int, default=20)
    s = verb("generators", cmd_generators, "the chip-firing generating set of a curve")
    s.add_argument("curve")
    s.add_argument("--output-dir", help="write one function file per generator plus a manifest")
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    a = parser.parse_args(argv)
    code = 0
    try:
        payload = a.func(a)
    except Failure as exc:
        payload, code = exc.payload, 1
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except TropicalError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    text = io.dumps(payload) if a.format == "json" else _text(payload)
    if a.output and code == 0:
        Path(a.output).write_text(text, encoding="utf-8")
        print("ok" if a.format == "text" else io.dumps({"written": a.output}), end="" if a.format != "text" else "\n")
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
