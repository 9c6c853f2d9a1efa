import json

import pytest

from endscope.cli import run
from endscope.graph_core import ZOO, emit_presentation, example


def _json(capsys, argv):
    code = run(argv + ["--format", "json"])
    return code, json.loads(capsys.readouterr().out)


def test_ends_fan_json(capsys):
    code, data = _json(capsys, ["ends", "--example", "fan"])
    assert code == 0 and data["schema"] == 1
    (end,) = data["ends"]
    assert end["topological"] is False and end["dominators"] == ["c0"]


def test_treedecomp_dot_double_ray(capsys):
    assert run(["treedecomp", "--example", "double_ray", "--depth", "6", "--format", "dot"]) == 0
    dot = capsys.readouterr().out
    assert dot.startswith("graph treedecomp {")
    assert dot.count('"r" -- ') == 2


def test_unfold_dot_labels(capsys):
    assert run(["unfold", "--example", "ladder", "--depth", "2", "--format", "dot"]) == 0
    out = capsys.readouterr().out
    assert '"c0" -- "c1";' in out and '"0.1.0" -- "0.1.1";' in out


def test_verify_round_trip_and_failure(tmp_path, capsys):
    good = tmp_path / "td.json"
    assert run(["treedecomp", "--example", "ray", "--depth", "4", "--format", "json"]) == 0
    good.write_text(capsys.readouterr().out)
    assert run(["verify", "--what", "td", "--in", str(good)]) == 0
    assert run(["verify", "--what", "display", "--in", str(good)]) == 0
    data = json.loads(good.read_text())
    data["nodes"][1]["part"] = "{}"
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(data))
    capsys.readouterr()
    assert run(["verify", "--what", "td", "--in", str(bad)]) == 1
    assert '"check": "T2"' in capsys.readouterr().out


def test_verify_tree(tmp_path, capsys):
    path = tmp_path / "st.json"
    assert run(["spanningtree", "--example", "comb", "--depth", "6", "--horizon", "12", "--format", "json"]) == 0
    path.write_text(capsys.readouterr().out)
    assert run(["verify", "--what", "tree", "--in", str(path)]) == 0
    data = json.loads(path.read_text())
    data["edges"] = data["edges"][:-1]
    path.write_text(json.dumps(data))
    assert run(["verify", "--what", "tree", "--in", str(path)]) == 1


@pytest.mark.parametrize(
    "argv",
    [
        ["bogus"],
        ["ends"],
        ["ends", "--example", "nosuch"],
        ["ends", "--graph", "/nonexistent/file"],
        ["closure", "--example", "ray", "--set", "{q9}"],
        ["closure", "--example", "ray", "--set", "{t5.0=(1)}"],
        ["unfold", "--example", "ray", "--depth", "-3"],
        ["verify", "--what", "td", "--in", "/nonexistent.json"],
        ["verify", "--what", "nope", "--in", "x"],
        ["ends", "--example", "ray", "--format", "dot"],
        ["starcomb", "--example", "ray", "--set", "{c0}"],
    ],
)
def test_usage_errors_exit_2(argv, capsys):
    assert run(argv) == 2


def test_parse_error_exit_2(tmp_path):
    bad = tmp_path / "g.txt"
    bad.write_text("graph g\ncore 1\nhub 0 0 0 0 0\n")
    assert run(["info", "--graph", str(bad)]) == 2


def test_env_default_depth(monkeypatch, capsys):
    monkeypatch.setenv("ENDSCOPE_DEPTH_DEFAULT", "3")
    code, data = _json(capsys, ["unfold", "--example", "ray"])
    assert code == 0 and data["depth"] == 3 and len(data["nodes"]) == 5
    monkeypatch.setenv("ENDSCOPE_DEPTH_DEFAULT", "three")
    assert run(["unfold", "--example", "ray"]) == 2


def test_graph_file_matches_example(tmp_path, capsys):
    path = tmp_path / "ladder.txt"
    path.write_text(emit_presentation(example("ladder")))
    _, a = _json(capsys, ["ends", "--graph", str(path)])
    _, b = _json(capsys, ["ends", "--example", "ladder"])
    assert a == b


@pytest.mark.parametrize(
    "argv",
    [
        ["info", "--example", "comb"],
        ["closure", "--example", "double_ray", "--seed", "4"],
        ["envelope", "--example", "ladder", "--seed", "2"],
        ["starcomb", "--example", "comb", "--set", "{t0.1=(1)}"],
        ["exhaustion", "--example", "ladder", "--layers", "4"],
        ["spanningtree", "--example", "double_ray", "--depth", "5", "--horizon", "10"],
        ["dominators", "--example", "hubbed_ladder"],
        ["zoo"],
    ],
)
def test_output_is_deterministic(argv, capsys):
    outputs = []
    for _ in range(2):
        assert run(argv + ["--format", "json"]) == 0
        outputs.append(capsys.readouterr().out)
    assert outputs[0] == outputs[1] and json.loads(outputs[0])["schema"] == 1


def test_zoo_emits_parseable_text(capsys):
    for name in ZOO:
        assert run(["zoo", "--example", name]) == 0
        assert capsys.readouterr().out == emit_presentation(example(name))


def test_envelope_checks_reported(capsys):
    code, data = _json(capsys, ["envelope", "--example", "infstar", "--set", "{t0.0=(1)}"])
    assert code == 0 and data["envelope"] == "{c0 t0.0=(1)}" and all(data["checks"].values())


def test_exhaustion_json(capsys):
    code, data = _json(capsys, ["exhaustion", "--example", "fan", "--layers", "3"])
    assert code == 0 and data["fixed_point"] == 1 and data["layers"][1]["size_class"] == "infinite"


def test_external_starcomb(capsys):
    code, data = _json(capsys, ["starcomb", "--example", "ladder", "--set", "{t0.0=(1)}", "--external"])
    assert code == 0 and data["certificate"]["external"] and data["checked"]
