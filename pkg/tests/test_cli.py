import json
import subprocess
import sys

import pytest

from matrovar import chains, config, realize
from matrovar.cli import COMMANDS, main
from matrovar.fixtures import fixture, fixture_json, fixture_names
from matrovar.gca import generate_gm
from matrovar.serialize import matroid_from_json, matroid_to_json, realization_to_json


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv)
    return code, json.loads(out)


def write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(json.dumps(obj) if not isinstance(obj, str) else obj)
    return str(p)


def test_dim_nr11(capsys):
    code, rep = run_json(capsys, "dim", "fixture:nr11")
    assert code == 0 and rep["pass"]
    assert rep["result"]["dim"] == 5
    assert rep["result"]["constants"] == [1, 2] and rep["result"]["terminal_rank"] == 2
    assert rep["seed"] == 0 and rep["matroid"] == "nr11" and rep["command"] == "dim"


def test_classify_fano(capsys):
    code, rep = run_json(capsys, "classify", "fixture:fano")
    assert code == 0
    r = rep["result"]
    assert (r["solvable"], r["nilpotent"], r["forest"]) == (False, False, False)
    assert r["special"] is None


def test_validate_nested_circuits_exit_2(capsys, tmp_path):
    bad = {"ground_set": 3, "rank": 2, "presentation": {"kind": "circuits", "sets": [[1, 2], [1, 2, 3]]}}
    code, rep = run_json(capsys, "validate", write(tmp_path, "bad.json", bad))
    assert code == 2 and rep["error"]["type"] == "AxiomViolation"


def test_malformed_json_exit_2(capsys, tmp_path):
    code, out, err = run(capsys, "validate", write(tmp_path, "bad.json", "{\n  \"rank\": 3,,\n}"))
    assert code == 2
    assert "line 2" in json.loads(out)["error"]["message"]
    assert "InputError" in err


def test_missing_arguments_exit_2(capsys):
    assert run(capsys, "dim")[0] == 2
    assert run(capsys, "dim", "fixture:nope")[0] == 2
    assert run(capsys, "dim", "/nonexistent/file.json")[0] == 2
    assert run(capsys, "check-realization", "fixture:je9")[0] == 2


def test_precondition_exit_1(capsys):
    code, rep = run_json(capsys, "dim", "fixture:fano")
    assert code == 1 and rep["error"]["type"] == "PreconditionError"
    code, rep = run_json(capsys, "stable-realize", "fixture:three_lines")
    assert code == 1 and rep["error"]["witness"] == {"p_points": [7]}
    code, rep = run_json(capsys, "gm", "fixture:nr11")
    assert code == 1 and rep["error"]["type"] == "DomainError"


def test_check_realization_fail_exit_1(capsys, tmp_path):
    M = fixture("three_lines")
    r = {"dim": 3, "vectors": {str(e): ["1", str(e), str(e * e)] for e in M.elements}}
    code, rep = run_json(capsys, "check-realization", "fixture:three_lines",
                         "--realization", write(tmp_path, "r.json", r))
    assert code == 1 and rep["result"]["is_realization"] is False
    assert rep["result"]["in_circuit_variety"] is False


# check-realization needs a realization file; it is covered in test_cli_matches_library
@pytest.mark.parametrize("cmd", [c for c in COMMANDS if c not in ("fixtures", "check-realization")])
def test_every_command_runs_and_is_deterministic(capsys, cmd):
    name = {"stable-realize": "kvt7", "gm": "three_lines"}.get(cmd, "je9")
    argv = [cmd, f"fixture:{name}", "--seed", "3"]
    code1, out1, _ = run(capsys, *argv)
    code2, out2, _ = run(capsys, *argv)
    assert code1 == code2 == 0
    assert out1 == out2


def test_fixtures_command(capsys):
    code, rep = run_json(capsys, "fixtures")
    assert code == 0 and sorted(rep["result"]) == fixture_names()


def test_text_format(capsys):
    code, out, _ = run(capsys, "dim", "fixture:nr11", "--format", "text")
    assert code == 0 and "dim: 5" in out and "constants: [1, 2]" in out


def test_timing_flag(capsys):
    _, rep = run_json(capsys, "validate", "fixture:je9", "--timing")
    assert "elapsed" in rep
    _, rep = run_json(capsys, "validate", "fixture:je9")
    assert "elapsed" not in rep


def test_cli_matches_library(capsys, tmp_path):
    M = fixture("je9")
    _, rep = run_json(capsys, "report", "fixture:je9")
    assert rep["result"] == json.loads(json.dumps(config.config_report(M).to_json()))
    _, rep = run_json(capsys, "chain", "fixture:je9", "--mode", "solvable")
    assert rep["result"]["nilpotent"] == chains.nilpotent_chain(M).to_json()
    assert rep["result"]["deletion_sequence"]["sequence"] == [list(s) for s in chains.deletion_sequence(M, "solvable")]
    _, rep = run_json(capsys, "gm", "fixture:three_lines", "--depth", "1")
    assert rep["result"] == json.loads(json.dumps(generate_gm(fixture("three_lines"), 1).to_json()))
    _, rep = run_json(capsys, "liftmat", "fixture:three_lines")
    assert rep["result"] == json.loads(json.dumps(realize.liftability_matrix(fixture("three_lines")).to_json()))

    import random
    r = realize.realize_nilpotent(M, random.Random(5))
    path = write(tmp_path, "r.json", realization_to_json(r))
    _, rep = run_json(capsys, "realize", "fixture:je9", "--seed", "5")
    assert rep["result"]["realization"] == realization_to_json(r)
    code, rep = run_json(capsys, "check-realization", "fixture:je9", "--realization", path)
    assert code == 0 and rep["result"]["is_realization"] and rep["result"]["stable"]["stable"]
    q = "1,7,-3"
    code, rep = run_json(capsys, "liftdim", "fixture:je9", "--realization", path, "--q", q)
    assert rep["result"]["dim_q"] == realize.lifting_dimension_at(M, r, (1, 7, -3))
    code, rep = run_json(capsys, "certify", "fixture:je9", "--realization", path, "--q", q,
                         "--bound-kind", "thm25")
    assert code == 0 and rep["result"]["bound"] == 9 - 4


def test_matroid_file_roundtrip(capsys, tmp_path):
    for name in fixture_names():
        M = fixture(name)
        assert matroid_from_json(matroid_to_json(M)) == M
    path = write(tmp_path, "m.json", fixture_json("nr11"))
    _, a = run_json(capsys, "dim", path)
    _, b = run_json(capsys, "dim", "fixture:nr11")
    assert a == b


def test_fixture_notes():
    assert fixture("nr11").is_paving() and fixture("nr11").rank == 4
    K = fixture("kvt7")
    assert chains.is_special(K) and config.config_report(K).p_points == ()
    assert config.subspace_classes(fixture("u_3_5")) == []


def test_subprocess_byte_identical():
    cmd = [sys.executable, "-m", "matrovar", "certify", "fixture:nr11", "--seed", "7"]
    a = subprocess.run(cmd, capture_output=True, check=False)
    b = subprocess.run(cmd, capture_output=True, check=False)
    assert a.returncode == 0 and a.stdout == b.stdout


def test_ground_cap_env(capsys, monkeypatch):
    monkeypatch.setenv("MATROVAR_MAX_GROUND", "8")
    code, rep = run_json(capsys, "validate", "fixture:je9")
    assert code == 2 and rep["error"]["type"] == "GroundSetTooLarge"
