import io
import json

import pytest

from tamerecip import cli


def call(*argv):
    out = io.StringIO()
    code = cli.run(list(argv), out=out)
    return code, out.getvalue()


def test_symbol2_value():
    code, text = call("symbol2", "--f", "t", "--g", "u", "--h", "2")
    assert code == 0 and text.startswith("symbol2: 3")


def test_symbol2_json():
    code, text = call("symbol2", "--f", "u", "--g", "t", "--h", "t", "--json")
    doc = json.loads(text)
    assert code == 0 and doc["value"] == "4" and doc["nu_fg"] == 1


def test_tame1_and_c3_agree_with_symbols():
    code, text = call("tame1", "--f", "u", "--g", "u", "--json")
    doc = json.loads(text)
    assert code == 0 and doc["value"] == "4" and doc["agree"]
    code, text = call("c3", "--f", "t", "--g", "u", "--h", "2", "--json")
    doc = json.loads(text)
    assert code == 0 and doc["value"] == doc["tame2"] == "3" and doc["c2_grade"] == 1


def test_reports_and_json_roundtrip():
    code, text = call("point", "--point", "0,0", "--f", "x", "--g", "y", "--a", "x+y")
    assert code == 0 and "verdict = true" in text
    code, text = call("global", "--f", "x", "--g", "y", "--a", "x+y", "--json")
    doc = json.loads(text)
    assert code == 0 and doc["verdict"] is True and doc["parts"]
    code, text = call("curve", "--curve", "x^2+y^2-1", "--field", "7",
                      "--f", "x", "--g", "y-3", "--a", "x+y", "--json")
    doc = json.loads(text)
    assert code == 0 and any(e["degree"] == 2 for e in doc["entries"])
    code, text = call("weil", "--f", "x", "--g", "x-1")
    assert code == 0 and "weil" in text


def test_kummer_and_commutator():
    code, text = call("kummer", "--f", "u+t", "--g", "2*t*u^-1", "--a", "u*t", "--m", "2",
                      "--json")
    doc = json.loads(text)
    assert code == 0 and doc["m"] == 2
    code, text = call("commutator", "--f", "u", "--g", "t", "--a", "2", "--n", "3", "--json")
    doc = json.loads(text)
    assert code == 0 and doc["value"] == doc["symbol"] == "2"


def test_certify_kinds():
    code, _ = call("certify", "--kind", "point", "--point", "0,0", "--a", "x+y",
                   "--samples", "x;y;1+x")
    assert code == 0
    code, _ = call("certify", "--kind", "curve", "--curve", "y", "--a", "x",
                   "--samples", "x;x-1", "--random", "2", "--seed", "3")
    assert code == 0
    assert call("certify", "--kind", "scalar", "--a", "x")[0] == 0


@pytest.mark.parametrize("argv", [
    ("kummer", "--f", "t", "--g", "u", "--a", "2", "--m", "3"),
    ("symbol2", "--f", "t+", "--g", "u", "--h", "2"),
    ("symbol2", "--f", "t"),
    ("point", "--point", "0,0,0", "--f", "x", "--g", "y", "--a", "x"),
    ("symbol2", "--field", "6", "--f", "t", "--g", "u", "--h", "2"),
    ("nonsense",),
    (),
])
def test_input_errors_exit_2(argv, capsys):
    assert cli.run(list(argv), out=io.StringIO()) == 2


def test_unsupported_geometry_exit_3():
    assert call("point", "--point", "0,0", "--f", "x", "--g", "y", "--a", "y^2-x^3")[0] == 3


def test_precision_exit_4():
    assert call("tame1", "--f", "1+u+O(u^2)", "--g", "u^20", "--cap", "8")[0] == 4
    assert call("c3", "--f", "1+t+O(t^2)", "--g", "u", "--h", "t^9", "--cap", "4")[0] == 4


def test_false_verdict_exit_1(monkeypatch):
    monkeypatch.setattr(cli, "c3_det", lambda *a, **k: cli.parse_field("5").element(2))
    assert call("c3", "--f", "t", "--g", "u", "--h", "2")[0] == 1


def test_scene_file(tmp_path):
    scene = tmp_path / "scene.toml"
    scene.write_text('query = "curve"\nfield = 5\ncurve = "y"\nf = "x"\ng = "x-1"\na = "y"\n')
    code, text = call("--scene", str(scene))
    assert code == 0 and "(0:1:0)" in text
    bad = tmp_path / "bad.toml"
    bad.write_text('colour = "blue"\n')
    assert call("--scene", str(bad))[0] == 2


def test_deterministic_output():
    argv = ("certify", "--kind", "global", "--a", "x+y", "--samples", "x;y",
            "--random", "2", "--seed", "11", "--json")
    assert call(*argv) == call(*argv)
