"""CLI behavior: outputs, exit codes, scripts, and the gadget emitter."""

import json

import pytest

import evcover as ev
from evcover.cli import load_limits, main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_mvc_twin_k23(capsys, tmp_path):
    path = tmp_path / "g.json"
    path.write_text(ev.serialize_json(ev.twin_k23_instance()))
    code, out, _ = run(capsys, "mvc", str(path))
    assert code == 0
    doc = json.loads(out)
    assert doc["size"] == 5


def test_mvc_forced_flag(capsys, tmp_path):
    path = tmp_path / "p3.txt"
    path.write_text("a b\nb c\n")
    code, out, _ = run(capsys, "mvc", str(path), "--forced", "a")
    assert code == 0
    doc = json.loads(out)
    assert doc["size"] == 2 and doc["forced"] == ["a"]


def test_mvc_builtin_and_chordal(capsys):
    code, out, _ = run(capsys, "mvc", "builtin:c5")
    assert code == 0 and json.loads(out)["size"] == 3
    code, out, _ = run(capsys, "mvc", "builtin:two-triangles", "--chordal")
    assert code == 0 and json.loads(out)["size"] == 2


def test_parse_error_exit_code(capsys, tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("a a\n")
    code, _, err = run(capsys, "mvc", str(path))
    assert code == 2
    assert "self-loop" in err


def test_size_limit_exit_code(capsys, tmp_path, monkeypatch):
    monkeypatch.delenv("EVC_LIMITS", raising=False)
    path = tmp_path / "big.txt"
    path.write_text("\n".join(f"v{i:02d} v{i + 1:02d}" for i in range(29)))
    code, _, err = run(capsys, "mvc", str(path))
    assert code == 3
    monkeypatch.setenv("EVC_LIMITS", "exact=40,enum=20")
    code, out, _ = run(capsys, "mvc", str(path))
    assert code == 0 and json.loads(out)["size"] == 15


def test_load_limits_parsing():
    limits = load_limits("exact=30,enum=18")
    assert limits.exact_n == 30 and limits.enumeration_n == 18
    with pytest.raises(ValueError):
        load_limits("bogus=1")


def test_evc_exact_cycle(capsys):
    code, out, _ = run(capsys, "evc", "builtin:c7", "--exact")
    assert code == 0
    doc = json.loads(out)
    assert doc["evc"] == 4 and doc["mvc"] == 4


def test_evc_exact_path(capsys):
    code, out, _ = run(capsys, "evc", "builtin:p5", "--exact")
    assert code == 0 and json.loads(out)["evc"] == 4


def test_evc_char_mode_on_chordal(capsys):
    code, out, _ = run(capsys, "evc", "builtin:two-triangles", "--char")
    assert code == 0
    doc = json.loads(out)
    assert doc["verdict"] == "evc-equals-mvc-plus-1"
    assert doc["evc"] == 3 and doc["mvc"] == 2


def test_evc_auto_selects_char_for_biconnected_chordal(capsys):
    code, out, _ = run(capsys, "evc", "builtin:k4")
    assert code == 0
    doc = json.loads(out)
    assert doc["verdict"] == "evc-equals-mvc" and doc["evc"] == 3


def test_evc_char_undetermined_exit(capsys):
    code, out, err = run(capsys, "evc", "builtin:c6", "--char")
    assert code == 4
    assert json.loads(out)["verdict"] == "undetermined"
    assert "undetermined" in err


def test_evc_char_exhaustive_flag(capsys):
    code, out, _ = run(capsys, "evc", "builtin:c6", "--char",
                       "--exhaustive-class-check")
    assert code == 4  # C_6 is genuinely outside the class


def test_defend_random_rounds(capsys):
    code, out, err = run(capsys, "defend", "builtin:k5",
                         "--random-rounds", "1000", "--seed", "1")
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 1000
    last = json.loads(lines[-1])
    assert last["defended"] and last["round"] == 1000
    assert "mode=hall-equal" in err


def test_defend_plus_one_rounds(capsys):
    code, out, err = run(capsys, "defend", "builtin:two-triangles",
                         "--random-rounds", "500", "--seed", "3")
    assert code == 0
    assert len(out.strip().splitlines()) == 500
    assert "mode=connected-plus-one" in err


def test_defend_uncertified_exit(capsys):
    code, _, err = run(capsys, "defend", "builtin:c6", "--random-rounds", "5")
    assert code == 4
    assert "no certified strategy" in err


def test_defend_twin_k23_script_fails_round_two(capsys, tmp_path):
    script = tmp_path / "script.txt"
    script.write_text(
        "start x1 x4 x5 y4 y5\nattack x2 y4\nattack x5 y5\n")
    code, out, err = run(capsys, "defend", "builtin:twin-k23",
                         "--script", str(script), "--assume-class-f")
    assert code == 5
    lines = [json.loads(x) for x in out.strip().splitlines()]
    assert lines[0]["defended"] and lines[0]["round"] == 1
    assert lines[1] == {"round": 2, "attack": ["x5", "y5"],
                        "defended": False, "error": lines[1]["error"]}
    assert "round 2" in err


def test_defend_interactive(capsys, monkeypatch, tmp_path):
    import io
    monkeypatch.setattr("sys.stdin", io.StringIO("attack v0 v1\nquit\n"))
    code, out, _ = run(capsys, "defend", "builtin:k4", "--interactive")
    assert code == 0
    assert json.loads(out.strip().splitlines()[0])["defended"]


def test_cli_outputs_byte_stable(capsys):
    _, out1, _ = run(capsys, "defend", "builtin:k5",
                     "--random-rounds", "50", "--seed", "9")
    _, out2, _ = run(capsys, "defend", "builtin:k5",
                     "--random-rounds", "50", "--seed", "9")
    assert out1 == out2
    _, out3, _ = run(capsys, "evc", "builtin:c5", "--exact")
    _, out4, _ = run(capsys, "evc", "builtin:c5", "--exact")
    assert out3 == out4


def test_gadget_emitters(capsys, tmp_path):
    code, out, _ = run(capsys, "gadget", "twin-k23")
    assert code == 0
    g = ev.parse_graph(out, fmt="json")
    assert g.n == 10 and len(g.edges) == 15

    code, out, _ = run(capsys, "gadget", "cycle", "--n", "6")
    assert code == 0 and len(ev.parse_graph(out, fmt="json").edges) == 6

    code, out, _ = run(capsys, "gadget", "random-chordal", "--n", "9",
                       "--density", "0.5", "--seed", "4", "--biconnected")
    assert code == 0
    g = ev.parse_graph(out, fmt="json")
    assert ev.is_chordal(g)[0]

    src = tmp_path / "c5.json"
    src.write_text(ev.serialize_json(ev.cycle(5)))
    code, out, _ = run(capsys, "gadget", "universal", str(src))
    assert code == 0 and ev.parse_graph(out, fmt="json").n == 6

    code, out, _ = run(capsys, "gadget", "double", "builtin:k3", "--edge", "v0,v1")
    assert code == 0 and ev.parse_graph(out, fmt="json").n == 10

    code, out, _ = run(capsys, "gadget", "list")
    assert code == 0 and "twin-k23" in json.loads(out)["builtins"]


def test_gadget_triangulate_roundtrip(capsys, tmp_path):
    from evcover.graph import PlanarEmbedding, serialize_json
    face = tuple(range(4))
    doc = serialize_json(ev.cycle(4),
                         PlanarEmbedding(internal_faces=(face,), outer_face=face))
    src = tmp_path / "c4.json"
    src.write_text(doc)
    code, out, _ = run(capsys, "gadget", "triangulate", str(src))
    assert code == 0
    g = ev.parse_graph(out, fmt="json")
    assert g.n == 8 and ev.mvc_exact(g).size == 5
