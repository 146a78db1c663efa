import json
import subprocess
import sys

import pytest

from rabcone.cli import main, render_json


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--json", "-")
    return code, out, json.loads(out)


def test_rhom_text(capsys):
    code, out, _ = run(capsys, "rhom", "L", "F(0)")
    assert code == 0
    assert "H0 = 0" in out and "H1 = Q(0)" in out


def test_rab_json(capsys):
    code, text, doc = run_json(capsys, "rab", "F(0)", "F(0)", "--window", "-8", "8")
    assert code == 0 and doc["ok"] is True
    assert doc["symbolic"]["0"] == "LS"
    h0 = doc["tables"]["H0_shadow"]
    assert set(h0) == {str(q) for q in range(-6, 7)} and set(h0.values()) == {1}
    assert doc["config"]["window"] == [-8, 8] and doc["config"]["field"] == "q"


def test_json_round_trip_is_byte_identical(capsys):
    for argv in (["rab", "F(0)", "F(1)", "--window", "-6", "6"], ["rhom", "T(2,0)", "F(0)"],
                 ["verify", "appendix-b", "--n", "4", "--window", "0", "6"]):
        _, text, doc = run_json(capsys, *argv)
        assert render_json(doc) == text


def test_remark(capsys):
    code, _, doc = run_json(capsys, "remark", "F(0)", "F(0)", "--window", "-6", "6")
    assert code == 0 and doc["symbolic"]["0"] == "LS"


def test_torsion_rab_is_zero(capsys):
    code, _, doc = run_json(capsys, "rab", "T(2,0)", "F(0)", "--window", "-6", "6")
    assert code == 0 and set(doc["tables"]["H0_shadow"].values()) == {0}


def test_verify_commands(capsys):
    assert run(capsys, "verify", "appendix-b", "--n", "6", "--window", "0", "8")[0] == 0
    assert run(capsys, "verify", "extension")[0] == 0
    assert run(capsys, "verify", "extension", "--field", "fp:65537", "--n", "3",
               "--window", "0", "4", "--margin", "1")[0] == 0
    assert run(capsys, "verify", "adjunction", "--grid", "1")[0] == 0


def test_verify_reports_failure_with_exit_1(capsys, monkeypatch):
    import rabcone.cli as cli
    from rabcone.resolution import verify_exact
    monkeypatch.setattr(cli, "verify_exact", lambda res, w, m: verify_exact(res, w, m, corrupt=-3))
    code, out, _ = run(capsys, "verify", "appendix-b", "--n", "6", "--window", "0", "8")
    assert code == 1 and "FAIL" in out and "degree 3" in out


@pytest.mark.parametrize("argv", [
    ["rhom", "X(1)", "L"],
    ["rab", "F(0)", "F(0)", "--window", "3", "-3"],
    ["rab", "L", "F(0)"],
    ["rhom", "L", "F(0)", "--field", "fp:12"],
    ["nonsense"],
    ["compose", "/nonexistent/classes.json"],
])
def test_usage_errors_exit_2(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_compose(capsys, tmp_path):
    path = tmp_path / "classes.json"
    path.write_text(json.dumps({"classes": [
        {"source": "F(0)", "target": "F(0)", "f": [["0"]], "g": [["t^3"]]},
        {"source": "F(0)", "target": "F(0)", "f": [["0"]], "g": [["t^2"]]},
    ]}))
    code, _, doc = run_json(capsys, "compose", str(path))
    assert code == 0
    assert doc["symbolic"]["composite"]["g"] == [["t^5"]]
    assert doc["symbolic"]["composite"]["f"] == [["0"]]


def test_compose_with_tail_class(capsys, tmp_path):
    path = tmp_path / "classes.json"
    path.write_text(json.dumps({"classes": [
        {"source": "F(0)", "target": "F(0)", "f": [["0"]], "g": [["t^-1"]]},
        {"source": "F(0)", "target": "F(0)", "f": [["1/(1-t)"]], "g": [["1"]]},
    ]}))
    code, _, doc = run_json(capsys, "compose", str(path))
    assert code == 0
    # t^-1 / (1 - t) = t^-1 + 1/(1 - t): the tail class is unchanged
    assert doc["symbolic"]["composite"]["f"] == [["1/(1 - t)"]]


def test_exact_rationals_render_as_strings(capsys, tmp_path):
    path = tmp_path / "classes.json"
    path.write_text(json.dumps({"classes": [
        {"source": "F(0)", "target": "F(0)", "f": [["0"]], "g": [["2/3"]]},
    ]}))
    _, text, doc = run_json(capsys, "compose", str(path))
    assert doc["symbolic"]["composite"]["g"] == [["2/3"]]
    assert "0.66" not in text


def test_json_to_file(capsys, tmp_path):
    path = tmp_path / "out.json"
    code, out, _ = run(capsys, "rhom", "L", "F(0)", "--json", str(path))
    assert code == 0 and "H1" in out
    assert json.loads(path.read_text())["symbolic"]["H1"] == "Q(0)"


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "rabcone", "rhom", "F(1)", "L"], capture_output=True, text=True)
    assert r.returncode == 0 and "L(-1)" in r.stdout
