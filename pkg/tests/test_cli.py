import json
import subprocess
import sys
from pathlib import Path

import pytest

from pdgroups.cli import INCONCLUSIVE, INPUT_ERROR, OBSTRUCTED, OK, main
from pdgroups.io import dumps, graph_from_json, graph_to_json

DATA = Path(__file__).resolve().parent.parent / "data"
GRAPHS = DATA / "graphs"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_euler_theta(capsys):
    code, out, _ = run(capsys, "euler", "--graph", GRAPHS / "theta.json")
    assert code == OK and out.splitlines()[0] == "-1"


def test_check_s3_amalgam_is_obstructed(capsys):
    code, out, _ = run(capsys, "check", "--graph", GRAPHS / "s3amalgam.json", "--n", 4)
    assert code == OBSTRUCTED
    failed = {line[1] for line in out.splitlines() if "Fail" in line and line.startswith("(")}
    assert set("cdef") <= failed
    assert out.rstrip().endswith("overall: Obstructed")


def test_check_theta_is_inconclusive(capsys):
    code, out, _ = run(capsys, "check", "--graph", "theta")
    assert code == INCONCLUSIVE and "overall: Unresolved" in out


def test_check_candidate_exit_ok(capsys):
    code, _, _ = run(capsys, "check", "--graph", GRAPHS / "z4xz.json")
    assert code == OK


def test_torus_examples(capsys):
    code, out, _ = run(capsys, "torus", "--group", DATA / "groups" / "z5.json", "--theta", 2, "--k", 2)
    assert code == OK and out.strip() == "Realizable, non-orientable"
    code, out, _ = run(capsys, "torus", "--group", DATA / "groups" / "v4.json", "--k", 2)
    assert code == OBSTRUCTED and out.startswith("NotRealizable")
    code, out, _ = run(capsys, "torus", "--graph", "z6_loop_inverse", "--k", 2)
    assert code == OK and out.strip() == "Realizable, orientable"
    code, out, _ = run(capsys, "torus", "--graph", "theta", "--k", 2)
    assert code == OBSTRUCTED and out.startswith("NotSemidirect")


def test_chiswell_and_fixed(capsys):
    code, out, _ = run(capsys, "chiswell", "--graph", "z4_times_z", "--element", "v:2")
    assert code == OK and "cokernel Z/2" in out
    code, out, _ = run(capsys, "chiswell", "--graph", "s3_amalgam", "--element", "u:c")
    assert code == OBSTRUCTED
    code, out, _ = run(capsys, "fixed", "--graph", "dumbbell", "--element", "v:a")
    assert code == OK and out.startswith("ManyEnded")


def test_validate_present_tree(capsys):
    code, out, _ = run(capsys, "validate", "--graph", "theta")
    assert code == OK and "Indecomposable: ok" in out
    code, out, _ = run(capsys, "present", "--graph", "theta")
    assert code == OK and "abelianization: Z + Z + Z/2 + Z/2" in out
    code, out, _ = run(capsys, "tree", "--graph", "theta", "--radius", 2)
    assert code == OK and "sphere sizes: 1 6 30" in out


def test_input_errors(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"vertices": [{"id": "v", "group": "Nope"}]}')
    assert run(capsys, "euler", "--graph", bad)[0] == INPUT_ERROR
    assert run(capsys, "euler", "--graph", tmp_path / "missing.json")[0] == INPUT_ERROR
    assert run(capsys, "chiswell", "--graph", "theta", "--element", "q:1")[0] == INPUT_ERROR
    assert run(capsys, "torus", "--group", "Z/5", "--theta", 5, "--k", 2)[0] == INPUT_ERROR
    assert run(capsys, "torus", "--group", "Z/5", "--theta", 2)[0] == INPUT_ERROR
    with pytest.raises(SystemExit) as exc:
        main(["check", "--graph", "theta", "--n", "3"])
    assert exc.value.code == INPUT_ERROR


def test_json_output_round_trips(capsys, tmp_path):
    out = tmp_path / "report.json"
    code, _, _ = run(capsys, "check", "--graph", "theta", "--json", out)
    data = json.loads(out.read_text())
    assert data["overall"] == "Unresolved"
    assert out.read_text() == dumps(data)
    text = dumps(graph_to_json(*graph_from_json(json.loads((GRAPHS / "theta.json").read_text()))))
    assert dumps(graph_to_json(*graph_from_json(json.loads(text)))) == text


def test_enumerate_small(capsys, tmp_path):
    out = tmp_path / "survivors.jsonl"
    code, text, _ = run(capsys, "enumerate", "--groups", "V4", "--edge-groups", "Z/2", "--bounds", "2,4",
                        "--no-loops", "--output", out)
    assert code == OK and text.strip().endswith("1 survivors")
    line = json.loads(out.read_text().splitlines()[0])
    g, _ = graph_from_json(line["graph"])
    assert len(g.edges) == 3


def test_console_script_runs():
    res = subprocess.run([sys.executable, "-m", "pdgroups.cli", "euler", "--graph", "theta"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.startswith("-1")
