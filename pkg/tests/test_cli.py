import json
import math
import subprocess
import sys
import xml.etree.ElementTree as ET

import pytest

import oracles as o
from fuchsian_doubles.cli import COMMANDS, dumps, main, parse_input, run_command, serialize
from fuchsian_doubles.domains import tile
from fuchsian_doubles.errors import NotFreeDiscreteError, NotHyperbolicError, SchemaError
from fuchsian_doubles.fixtures import fd_pair, fx_pair
from fuchsian_doubles.moebius import MoebiusMap, projective_eq
from fuchsian_doubles.render import STYLES, Layer, Scene, render_svg

NS = "{http://www.w3.org/2000/svg}"


def doc_for(pair, model="disk"):
    return json.dumps({"model": model, "generators": [
        {k: [v.real, v.imag] for k, v in zip("abcd", (m[0][0], m[0][1], m[1][0], m[1][1]))}
        for m in pair]})


def trace_zero_pair():
    # tr[A, B] = 2 - 4 sinh^4(l/2) for B the quarter-turn conjugate of A
    ell = 2 * math.asinh(2 ** -0.25)
    c, s = math.cosh(ell / 2), math.sinh(ell / 2)
    A = MoebiusMap(c, s, s, c)
    return A, A.conj_by(MoebiusMap(1j, 0, 0, 1))


# ---------------------------------------------------------------- input

def test_parse_disk():
    A, B = fx_pair()
    C, D = parse_input(doc_for([o.entries(A), o.entries(B)]).encode())
    assert projective_eq(C, A, 1e-14) and projective_eq(D, B, 1e-14)


def test_parse_halfplane():
    # K(z) = (z - i)/(z + i) takes the upper half-plane to the disk; h = K^-1 m K
    K = o.mat(1, -1j, 1, 1j)
    pair = [o.entries(m) for m in fx_pair()]
    hp = [o.mul(o.mul(o.inv(K), m), K) for m in pair]
    C, D = parse_input(doc_for(hp, "halfplane"))
    for got, want in zip((C, D), pair):
        assert abs(abs(got.trace) - abs(o.trace(want))) < 1e-10
        assert o.proj_close(o.entries(got), want, 1e-10)


def test_parse_rescales_det():
    A, B = fx_pair()
    C, _ = parse_input(doc_for([o.mat(*(3 * x for x in (A.a, A.b, A.c, A.d))), o.entries(B)]))
    assert projective_eq(C, A, 1e-12)


def test_parse_identity():
    _, B = fx_pair()
    with pytest.raises(NotHyperbolicError):
        parse_input(doc_for([o.mat(1, 0, 0, 1), o.entries(B)]))


@pytest.mark.parametrize("bad", [
    b"{", b"[1, 2]", b"\xff\xfe", '{"generators": []}',
    '{"model": "klein", "generators": [{}, {}]}',
    '{"generators": [{"a": [1, 0]}, {"a": [1, 0]}]}',
    '{"generators": [{"a": "x", "b": [0, 0], "c": [0, 0], "d": [1, 0]},'
    ' {"a": [1, 0], "b": [0, 0], "c": [0, 0], "d": [1, 0]}]}',
])
def test_parse_schema_errors(bad):
    with pytest.raises(SchemaError):
        parse_input(bad)


def test_round_trip():
    for pair in (fd_pair(), fx_pair()):
        back = parse_input(serialize(pair))
        for m, n in zip(pair, back):
            assert all(abs(getattr(m, k) - getattr(n, k)) < 1e-12 for k in "abcd")


def test_dumps_17_digits():
    text = dumps({"x": 0.1, "y": [1 / 3, 2.0]})
    assert "0.10000000000000001" in text and "0.33333333333333331" in text
    assert json.loads(text)["y"][0] == 1 / 3


# ---------------------------------------------------------------- commands

def test_classify_fx():
    doc = run_command("classify", *fx_pair())
    assert doc["case"] == "intersecting"
    assert abs(doc["commutator_trace"] - (2 - 4 * math.sinh(1) ** 4)) < 1e-9
    assert abs(doc["commutator_trace"] + 5.63) < 0.01


def test_stop_trace_zero():
    A, B = trace_zero_pair()
    assert abs(o.commutator_trace(o.entries(A), o.entries(B))) < 1e-12
    with pytest.raises(NotFreeDiscreteError):
        run_command("stop", A, B)


def test_weierstrass_fd_angles():
    doc = run_command("weierstrass", *fd_pair())
    angles = [p["angle_deg"] for p in doc["schottky"]["points"]]
    assert [round(a, 9) for a in angles] == [160, 200, 280, 320, 40, 80]


@pytest.mark.parametrize("cmd", [c for c in COMMANDS if c not in ("render", "report")])
def test_commands_pass(cmd, both):
    doc = run_command(cmd, both.C, both.D, depth=2)
    assert doc["command"] == cmd
    assert all(c["pass"] for c in doc.get("checks", []))
    json.loads(dumps(doc))


# ---------------------------------------------------------------- rendering

def test_empty_scene():
    root = ET.fromstring(render_svg(Scene()))
    assert root.get("viewBox") == "-1.1 -1.1 2.2 2.2"
    assert len(list(root.iter(NS + "circle"))) == 1
    assert not list(root.iter(NS + "path"))


def test_fd_tiling_paths(fd):
    d = fd.domains
    root = ET.fromstring(run_command("render", fd.C, fd.D, depth=2))
    layer = [g for g in root.iter(NS + "g") if g.get("class") == "tiling"][0]
    assert len(list(layer.iter(NS + "path"))) == len(tile(d.F, d.F_pairing, 2)) == 17


def test_styles_per_layer(fd):
    root = ET.fromstring(run_command("render", fd.C, fd.D, depth=0))
    groups = {g.get("class"): g for g in root.iter(NS + "g")}
    assert set(groups) == {"domainFill", "reflectionLine", "axis", "weierstrass"}
    for cls, g in groups.items():
        assert g.get("style") == STYLES[cls]
    assert len(list(groups["axis"].iter(NS + "path"))) == 4
    assert len(list(groups["reflectionLine"].iter(NS + "path"))) == 5


def test_coordinates_in_viewport(fx):
    # every point a path moves to lies in the viewport; arc radii are not points
    svg = run_command("render", fx.C, fx.D, depth=1).decode()
    root = ET.fromstring(svg)
    for path in root.iter(NS + "path"):
        tok = path.get("d").split()
        i = 0
        while i < len(tok):
            cmd = tok[i]
            if cmd == "Z":
                i += 1
                continue
            width = {"M": 2, "L": 2, "A": 7}[cmd]
            x, y = float(tok[i + width - 1]), float(tok[i + width])
            assert abs(x) <= 1.1 and abs(y) <= 1.1
            i += width + 1


def test_marker_radius():
    root = ET.fromstring(render_svg(Scene([Layer("weierstrass", points=[0.5j])])))
    marks = [c for c in root.iter(NS + "circle") if c.get("r") != "1"]
    assert len(marks) == 1 and marks[0].get("r") == "0.01" and marks[0].get("cy") == "-0.500000"


def test_svg_deterministic():
    a = run_command("render", *fd_pair(), depth=2)
    b = run_command("render", *fd_pair(), depth=2)
    assert a == b


# ---------------------------------------------------------------- main

def test_main_fixture(tmp_path, capsys):
    out = tmp_path / "c.json"
    assert main(["classify", "--fixture", "FX", "--out", str(out)]) == 0
    assert json.loads(out.read_text())["case"] == "intersecting"


def test_main_input_file(tmp_path):
    f = tmp_path / "fd.json"
    f.write_text(serialize(fd_pair()))
    out = tmp_path / "r.json"
    assert main(["tile", "--input", str(f), "--depth", "2", "--out", str(out)]) == 0
    assert json.loads(out.read_text())["tiles"] == 17


def test_main_exit_codes(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    assert main(["classify", "--input", str(bad)]) == 2
    assert json.loads(capsys.readouterr().out)["error"] == "SCHEMA"
    z = tmp_path / "zero.json"
    z.write_text(serialize(trace_zero_pair()))
    assert main(["stop", "--input", str(z)]) == 3
    assert json.loads(capsys.readouterr().out)["error"] == "NOT_FREE_DISCRETE"
    assert main(["classify", "--input", str(tmp_path / "missing.json")]) == 2


def test_main_check_failure(capsys):
    # an impossible tolerance makes the numerical checks fail
    assert main(["domains", "--fixture", "FD", "--tol", "0"]) == 5


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "fuchsian_doubles", "classify", "--fixture", "FD"],
                       capture_output=True, timeout=60)
    assert r.returncode == 0
    assert json.loads(r.stdout)["case"] == "disjoint"


def test_render_deep_tiling(fd):
    # depth-4 tiles have sides far below the printed resolution
    root = ET.fromstring(run_command("render", fd.C, fd.D, depth=4))
    layer = [g for g in root.iter(NS + "g") if g.get("class") == "tiling"][0]
    assert len(list(layer.iter(NS + "path"))) == 161
