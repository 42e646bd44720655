import json
import random
from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tropmorph import INF, ClosedSubset, ParseError, Point, RationalFunction, ValidationReport, io
from tropmorph.chipfire import cf_point
from tropmorph.cli import main
from tropmorph.corpus import CORPUS, EXTRA_MORPHISMS, FIXTURE_CURVES, fold, line, ray, segment
from tropmorph.sampling import random_function, random_subset

CURVES = {**FIXTURE_CURVES, "ray": ray, "line": line}
MORPHISMS = {**CORPUS, **EXTRA_MORPHISMS}


def through_text(obj):
    return json.loads(io.dumps(obj))


# -- serialisation round trips -------------------------------------------------


@pytest.mark.parametrize("name", sorted(CURVES))
def test_curve_round_trip(name):
    m = CURVES[name]()
    assert io.curve_from_json(through_text(io.curve_to_json(m))) == m


@pytest.mark.parametrize("name", sorted(MORPHISMS))
def test_morphism_round_trip(name):
    phi = MORPHISMS[name]()
    back = io.morphism_from_json(through_text(io.morphism_to_json(phi)))
    assert back == phi and back.reverse == phi.reverse


def test_reverse_orientation_is_kept():
    js = io.morphism_to_json(fold())
    assert js["orientations"]["e2"] == "reverse"
    assert io.morphism_from_json(through_text(js)).reverse["e2"] is True


def test_minus_infinity_at_an_infinite_end():
    f = cf_point(ray(), Point(vertex="a"), INF)
    js = io.function_to_json(f)
    assert js["edges"][0]["breakpoints"][-1] == ["inf", "-inf"]
    assert io.function_from_json(through_text(js)) == f


def test_bottom_round_trip():
    f = RationalFunction.bottom(segment())
    assert io.function_from_json(through_text(io.function_to_json(f))).is_bottom


def test_report_round_trip():
    rep = ValidationReport()
    rep.add("something is off")
    assert io.report_from_json(through_text(io.report_to_json(rep))).issues == rep.issues


@given(st.sampled_from(sorted(CURVES)), st.integers(0, 10 ** 6))
def test_function_and_subset_round_trips(name, seed):
    m = CURVES[name]()
    rng = random.Random(seed)
    f = random_function(m, rng)
    assert io.function_from_json(through_text(io.function_to_json(f))) == f
    s = random_subset(m, rng)
    assert io.subset_from_json(m, through_text(io.subset_to_json(s))) == s


def _numbers(obj, path=""):
    if isinstance(obj, dict):
        for k, v in obj.items():
            yield from _numbers(v, f"{path}.{k}")
    elif isinstance(obj, list):
        for i, v in enumerate(obj):
            yield from _numbers(v, f"{path}[{i}]")
    elif isinstance(obj, (int, float)) and not isinstance(obj, bool):
        yield path, obj


def test_values_are_exact_strings():
    f = random_function(CURVES["theta"](), random.Random(3))
    for path, v in _numbers(io.function_to_json(f)):
        assert isinstance(v, int) and path.endswith("slope_to_inf"), path
    for path, v in _numbers(io.morphism_to_json(fold())):
        assert isinstance(v, int) and ".degrees." in path


def test_subset_with_a_complement_ray():
    r = ray()
    s = io.subset_from_json(r, {"complement_ray": {"y": {"edge": "r", "at": "1"}, "x": {"vertex": "z"}}})
    assert s == ClosedSubset.build(r, ["a"], [("r", 0, 1)])


@pytest.mark.parametrize("text,fragment", [
    ('{"vertices": ["a"], "edges": [{"id": "e", "ends": ["a", "b"], "length": "1"}]}', "not among"),
    ('{"vertices": ["a", "b"], "edges": [{"id": "e", "ends": ["a", "b"], "length": 0.5}]}', "length"),
    ('{"vertices": ["a", "b"], "edges": [{"id": "e", "ends": ["a", "b"]}]}', "length"),
    ('{"vertices": ["a", "b"], "edges": [', "inline:1:"),
])
def test_parse_errors_carry_context(text, fragment):
    with pytest.raises(ParseError) as info:
        io.curve_from_json(io.loads(text, "inline"), "inline")
    assert fragment in str(info.value)


def test_point_parsing():
    m = segment()
    assert io.parse_point(m, "u") == Point(vertex="u")
    assert io.parse_point(m, "e@3/2") == Point(edge="e", offset=F(3, 2))
    assert io.parse_point(m, "e@3") == Point(vertex="v")
    with pytest.raises(ParseError):
        io.parse_point(m, "e@x")


# -- command line ---------------------------------------------------------------


def write(path, obj):
    path.write_text(io.dumps(obj), encoding="utf-8")
    return str(path)


@pytest.fixture
def files(tmp_path):
    out = {"dir": tmp_path}
    out["segment"] = write(tmp_path / "segment.json", io.curve_to_json(segment()))
    out["ray"] = write(tmp_path / "ray.json", io.curve_to_json(ray()))
    for name, make in MORPHISMS.items():
        out[name] = write(tmp_path / f"{name}.json", io.morphism_to_json(make()))
    return out


def run(capsys, *argv):
    code = main(list(argv))
    cap = capsys.readouterr()
    return code, cap.out, cap.err


def test_cli_validate(files, capsys):
    assert run(capsys, "validate", files["segment"]) == (0, "ok\n", "")
    code, out, _ = run(capsys, "--format", "json", "validate", files["segment"])
    assert code == 0 and json.loads(out)["ok"] is True


def test_cli_validate_failure_exits_one(files, capsys):
    bad = write(files["dir"] / "bad.json", {"source": json.loads(open(files["doubling"]).read())["source"],
                                            "target": json.loads(open(files["doubling"]).read())["target"],
                                            "vertex_map": {"s0": "w0", "s1": "w1"}, "edge_map": {"t": "T"},
                                            "degrees": {"t": 3}})
    code, out, _ = run(capsys, "validate", bad)
    assert code == 1 and "3 * 1 != 2" in out


def test_cli_parse_error_exits_two(files, capsys):
    broken = files["dir"] / "broken.json"
    broken.write_text('{"vertices": ["a",\n  }', encoding="utf-8")
    code, _, err = run(capsys, "validate", str(broken))
    assert code == 2 and "broken.json:2" in err
    code, _, err = run(capsys, "validate", str(files["dir"] / "missing.json"))
    assert code == 2


def test_cli_chip_firing_example(files, capsys):
    out_path = files["dir"] / "f.json"
    code, _, _ = run(capsys, "cf", files["segment"], "--subset", '{"cells":[{"vertex":"u"}]}', "--l", "1",
                     "-o", str(out_path))
    assert code == 0
    f = io.load_function(out_path)
    assert f == cf_point(segment(), Point(vertex="u"), 1)
    assert [tuple(b) for b in json.loads(out_path.read_text())["edges"][0]["breakpoints"]] == \
        [("0", "0"), ("1", "-1"), ("3", "-1")]
    code, out, _ = run(capsys, "eval", str(out_path), "--point", "e@2", "--point", "u")
    assert code == 0 and out == "e@2: -1\nu: 0\n"
    code, out, _ = run(capsys, "--format", "json", "divisor", str(out_path))
    assert json.loads(out)["degree"] == 0
    code, out, _ = run(capsys, "--format", "json", "extrema", str(out_path))
    assert (json.loads(out)["min"], json.loads(out)["max"]) == ("-1", "0")


def test_cli_algebra(files, capsys):
    a = write(files["dir"] / "a.json", io.function_to_json(cf_point(segment(), Point(vertex="u"), 1)))
    b = write(files["dir"] / "b.json", io.function_to_json(cf_point(segment(), Point(vertex="v"), 2)))
    code, out, _ = run(capsys, "add", a, b)
    assert code == 0
    got = io.function_from_json(json.loads(out))
    assert got == io.load_function(a) | io.load_function(b)
    code, out, _ = run(capsys, "mul", a, b)
    assert io.function_from_json(json.loads(out)) == io.load_function(a) & io.load_function(b)
    code, out, _ = run(capsys, "pow", a, "--n", "-1")
    assert io.function_from_json(json.loads(out)) == io.load_function(a) ^ -1
    assert run(capsys, "equals", a, a)[1] == "true\n"
    assert run(capsys, "equals", a, b)[1] == "false\n"


def test_cli_morphism_verbs(files, capsys):
    assert run(capsys, "surjective", files["doubling"])[1] == "true\n"
    code, out, _ = run(capsys, "apply", files["doubling"], "--point", "t@1/3")
    assert code == 0 and out == "t@1/3: T@2/3\n"
    f = write(files["dir"] / "g.json", io.function_to_json(cf_point(MORPHISMS["doubling"]().target,
                                                                   Point(vertex="w0"), 1)))
    code, out, _ = run(capsys, "pullback", files["doubling"], f)
    g = io.function_from_json(json.loads(out))
    assert g.piece("t").slopes() == [-2, 0]


@pytest.mark.parametrize("name", sorted(MORPHISMS))
def test_cli_roundtrip(files, capsys, name):
    code, out, _ = run(capsys, "roundtrip", files[name])
    assert code == 0 and out.startswith("identical")


def test_cli_recover_and_verify(files, capsys):
    fib = files["dir"] / "fibres.json"
    code, out, _ = run(capsys, "--format", "json", "recover", files["circle-cover"], "--fibers", str(fib))
    assert code == 0
    rec = io.morphism_from_json(json.loads(out)["morphism"])
    assert rec == MORPHISMS["circle-cover"]()
    assert json.loads(fib.read_text())["ok"] is True
    assert run(capsys, "verify", files["circle-cover"])[0] == 0
    wrong = MORPHISMS["ray-doubling"]()
    wrong.degree["r0"] = 3
    cand = write(files["dir"] / "wrong.json", io.morphism_to_json(wrong))
    code, out, _ = run(capsys, "verify", files["ray-doubling"], "--candidate", cand)
    assert code == 1 and "differs" in out


def test_cli_generators(files, capsys):
    outdir = files["dir"] / "gens"
    code, _, _ = run(capsys, "generators", files["segment"], "--output-dir", str(outdir))
    assert code == 0
    manifest = json.loads((outdir / "manifest.json").read_text())
    assert manifest["count"] == 5
    for entry in manifest["generators"]:
        assert io.load_function(outdir / entry["file"]).curve == segment()
    code, _, err = run(capsys, "generators", files["ray"])
    assert code == 1 and "DegenerateResult" in err


def test_cli_format_from_environment(files, capsys, monkeypatch):
    monkeypatch.setenv("TROPMORPH_FORMAT", "json")
    code, out, _ = run(capsys, "surjective", files["doubling"])
    assert json.loads(out) == {"surjective": True}


@pytest.mark.parametrize("argv", [
    ("roundtrip", "fold"),
    ("--format", "json", "recover", "theta-onto-segment"),
    ("generators", "segment"),
])
def test_cli_output_is_deterministic(files, capsys, argv):
    args = [files.get(a, a) for a in argv]
    first = run(capsys, *args)
    second = run(capsys, *args)
    assert first == second
