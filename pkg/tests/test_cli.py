import json
import subprocess
import sys

import pytest

from strongsep.cli import main


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_verify(capsys, example1_path):
    code, out, _ = run(capsys, "verify", example1_path, "--property", "ssm", "--d", 2)
    assert code == 0
    assert json.loads(out) == {"property": "ssm", "d": 2, "holds": True, "witness": None}
    code, out, _ = run(capsys, "verify", example1_path, "--property", "dm", "--d", 2, "--assert")
    assert code == 1
    assert json.loads(out)["witness"] == {"subset": [1, 3], "covered": 2}
    code, out, _ = run(capsys, "verify", example1_path, "--property", "sm", "--d", 2, "--bruteforce")
    assert json.loads(out)["holds"] is True


def test_verify_pretty(capsys, example1_path):
    code, out, _ = run(capsys, "verify", example1_path, "--property", "ssm", "--d", 2, "--pretty")
    assert code == 0
    assert "holds" in out and "{" not in out


def test_decode(capsys, example1_path):
    code, out, _ = run(capsys, "decode", example1_path, "1111000", "--d", 2)
    assert code == 0
    got = json.loads(out)
    assert got["outcome"] == "identified" and got["positives"] == [1, 3]
    assert got["ops"] <= 7 * 8
    _, out, _ = run(capsys, "decode", example1_path, "1111000", "--d", 2, "--method", "dm")
    assert json.loads(out)["outcome"] == "too_many"


def test_decode_bad_outcome(capsys, example1_path):
    code, _, err = run(capsys, "decode", example1_path, "11110", "--d", 2)
    assert code == 2 and "7 tests" in err
    code, _, err = run(capsys, "decode", example1_path, "11x1000", "--d", 2)
    assert code == 2


def test_simulate(capsys, example1_path):
    code, out, _ = run(capsys, "simulate", example1_path, "--d", 2, "--trials", 36, "--assert")
    assert code == 0
    got = json.loads(out)
    assert (got["trials"], got["successes"], got["exhaustive"]) == (36, 36, True)


def test_simulate_failure_assert(capsys, tmp_path):
    f = tmp_path / "tri.mat"
    f.write_text("3 3\n101\n110\n011\n")
    code, out, _ = run(capsys, "simulate", f, "--d", 2, "--exhaustive", "--size", 2, "--assert")
    assert code == 1
    assert json.loads(out)["failure_examples"]


def test_construct(capsys):
    code, out, _ = run(capsys, "construct", "--t", 3, "--n", 12, "--q", 4, "--seed", 1, "--emit", "log")
    assert code == 0
    log = json.loads(out)
    assert log["rows"] == 12 and log["initial_n"] == 12
    _, mat, _ = run(capsys, "construct", "--t", 3, "--n", 12, "--q", 4, "--seed", 1)
    assert mat.splitlines()[0] == f"12 {log['final_n']}"
    _, cw, _ = run(capsys, "construct", "--t", 3, "--n", 12, "--q", 4, "--seed", 1, "--emit", "code")
    assert cw.splitlines()[0] == f"3 {log['final_n']} 4"


def test_search(capsys):
    code, out, _ = run(capsys, "search", "--property", "ssm", "--d", 2, "--t", 4)
    got = json.loads(out)
    assert code == 0 and got["max_n"] == 4 and got["exhaustive"] and got["verified"]


def test_bounds(capsys):
    code, out, _ = run(capsys, "bounds", "--q", 4, "--known")
    got = json.loads(out)
    assert got["m_star"] == 3 and got["rounded"] == 0.2213
    assert got["known"]["R(2)"]["improved_lower"] == 0.2213


def test_convert_roundtrip(capsys, tmp_path, example1_path):
    _, js, _ = run(capsys, "convert", example1_path)
    f = tmp_path / "m.json"
    f.write_text(js)
    _, text, _ = run(capsys, "convert", f)
    assert text == example1_path.read_text()
    c = tmp_path / "c.code"
    c.write_text("2 2 3\n0 2\n1 1\n")
    _, js, _ = run(capsys, "convert", c)
    assert json.loads(js)["q"] == 3


def test_errors_exit_2(capsys, tmp_path):
    code, _, err = run(capsys, "verify", tmp_path / "missing.mat", "--property", "ssm", "--d", 2)
    assert code == 2 and "not found" in err
    bad = tmp_path / "bad.mat"
    bad.write_text("2 2\n10\n1\n")
    code, _, err = run(capsys, "verify", bad, "--property", "ssm", "--d", 2)
    assert code == 2 and "line 3" in err
    code, _, _ = run(capsys, "bounds", "--q", 1)
    assert code == 2
    with pytest.raises(SystemExit) as exc:
        main(["simulate", "x", "--d", "2", "--seed", "-1"])
    assert exc.value.code == 2


def test_module_entry(example1_path):
    proc = subprocess.run(
        [sys.executable, "-m", "strongsep", "verify", str(example1_path), "--property", "ssm", "--d", "2"],
        capture_output=True, text=True, check=True,
    )
    assert json.loads(proc.stdout)["holds"] is True
