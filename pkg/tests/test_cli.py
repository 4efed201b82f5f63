import json
import subprocess
import sys

import pytest

from recconv.cli import main

FIB = "order = 2\ninit = 0, 1\nrule = 1*r[i-1] + 1*r[i-2]\n"
SQUARE = "order = 1\ninit = -1\nrule = 1*r[i-1]^2\n"
FAMILY = "order = 3\ninit = 1, 1, 1\nrule = 1*r[i-2]^2 + 0*r[i-1] + 0*r[i-3]\ntarget = 1\n"


@pytest.fixture
def files(tmp_path):
    out = {}
    for name, text in [("fibonacci", FIB), ("square", SQUARE), ("family", FAMILY), ("nonsense", "hello world\n")]:
        p = tmp_path / f"{name}.rec"
        p.write_text(text)
        out[name] = str(p)
    return out


def run(capsys, *argv):
    code = main(list(argv))
    cap = capsys.readouterr()
    return code, cap.out, cap.err


def test_analyze_json(capsys, files):
    code, out, _ = run(capsys, "analyze", files["fibonacci"], "--target", "0", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert {"verdict", "method", "M", "target", "details"} <= set(doc)
    assert doc["verdict"] == "does-not-converge"
    assert doc["method"] == "theorem-1"
    assert doc["M"] is None and doc["target"] == "0"


def test_analyze_is_byte_stable(capsys, files):
    args = ("analyze", files["square"], "--target", "1", "--format", "json")
    _, first, _ = run(capsys, *args)
    _, second, _ = run(capsys, *args)
    assert first == second
    assert json.loads(first)["M"] == 1


def test_simulate_square(capsys, files):
    code, out, _ = run(capsys, "simulate", files["square"], "--target", "1", "--format", "json")
    doc = json.loads(out)
    assert code == 0
    assert doc["verdict"] == "converged" and doc["M"] == 1
    assert doc["details"]["prefix"] == ["-1", "1"]


def test_simulate_text_and_file_target(capsys, files):
    code, out, _ = run(capsys, "simulate", files["family"])
    assert code == 0
    assert "verdict: converged" in out and "M:       0" in out


def test_parse_error_exit_2(capsys, files):
    code, _, err = run(capsys, "analyze", files["nonsense"], "--target", "1")
    assert code == 2
    assert "parse error" in err and "line 1" in err


def test_missing_target_and_io(capsys, files, tmp_path):
    code, _, err = run(capsys, "analyze", files["fibonacci"])
    assert code == 2 and "target" in err
    code, _, _ = run(capsys, "analyze", str(tmp_path / "absent.rec"), "--target", "1")
    assert code == 3


def test_validation_error_exit_2(capsys, tmp_path):
    p = tmp_path / "bad.rec"
    p.write_text("order = 2\ninit = 1, 1\nrule = 1*r[i-1]\n")
    code, _, err = run(capsys, "analyze", str(p), "--target", "1")
    assert code == 2 and "a_L" in err


def test_unknown_flag(files):
    with pytest.raises(SystemExit) as exc:
        main(["analyze", files["fibonacci"], "--bogus"])
    assert exc.value.code == 2


def test_verify_series(capsys, files):
    code, out, _ = run(capsys, "verify-series", files["fibonacci"], "--degree", "10", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["verdict"] == "identity-holds"
    c = doc["details"]["coefficients"]
    assert c[:2] == ["0", "1"] and c[11:] == ["-89", "-55"]

    code, out, _ = run(capsys, "verify-series", files["family"], "--degree", "16", "--format", "json")
    doc = json.loads(out)
    assert doc["method"] == "gf-quadratic-family"
    assert [t["expected"] for t in doc["details"]["tail_limit"]] == ["-1", "-1", "0"]

    code, _, err = run(capsys, "verify-series", files["square"], "--degree", "5")
    assert code == 2


def test_sweep(capsys, tmp_path):
    grid = tmp_path / "grid.json"
    grid.write_text(json.dumps({"params": {"a1": [0], "a2": [0], "a3": [0], "d": [1], "c0": [1], "c1": [1], "c2": [1], "K": [1, 2]}}))
    code, out, _ = run(
        capsys, "sweep", "condition-v", str(grid),
        "--json-out", str(tmp_path / "o.json"), "--csv-out", str(tmp_path / "o.csv"), "--format", "json",
    )
    doc = json.loads(out)
    assert code == 0
    assert doc["verdict"] == "mismatch"
    assert doc["details"]["total"] == 2 and doc["details"]["mismatch_indices"] == [0]
    assert (tmp_path / "o.csv").read_text().count("\n") == 3
    grid.write_text("{not json")
    code, _, _ = run(capsys, "sweep", "linear", str(grid))
    assert code == 2


def test_module_entry_point(files):
    proc = subprocess.run(
        [sys.executable, "-m", "recconv", "analyze", files["fibonacci"], "--target", "0"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    assert "theorem-1" in proc.stdout
