import json
import subprocess
import sys

import pytest

from dmorita.algebra import triangular
from dmorita.cli import main
from dmorita.serialize import algebra_to_json, dumps


def run_json(capsys, *args):
    code = main([*args, "--json"])
    out = capsys.readouterr().out
    return code, json.loads(out)


@pytest.mark.parametrize("cmd", ["verify-prop63", "verify-dualizing", "verify-rigid", "k0-report"])
def test_suites_pass(capsys, cmd):
    code, rep = run_json(capsys, cmd)
    assert code == 0
    assert rep["algebra"] == "triangular(2)" and rep["field"] == "q" and rep["seed"] == 0
    assert rep["claims"] and all(c["status"] == "pass" for c in rep["claims"])
    assert all(c["ms"] is None for c in rep["claims"])
    assert all(c["paper_ref"] for c in rep["claims"])


def test_appendix_fp(capsys):
    code, rep = run_json(capsys, "verify-appendix", "--n", "3", "--field", "fp:101")
    assert code == 0 and rep["field"] == "fp:101"
    names = [c["name"] for c in rep["claims"]]
    assert "t^4 = s^2" in names and len(names) == 3 + 3 + 1


def test_json_is_deterministic(capsys):
    _, a = run_json(capsys, "verify-prop63")
    _, b = run_json(capsys, "verify-prop63")
    assert a == b


def test_timing_and_no_witness(capsys):
    code, rep = run_json(capsys, "verify-prop63", "--timing", "--no-witness")
    assert code == 0
    assert all(isinstance(c["ms"], float) for c in rep["claims"])
    assert all("witness" not in c for c in rep["claims"])


def test_recheck_roundtrip(tmp_path, capsys):
    out = tmp_path / "r.json"
    assert main(["verify-appendix", "--n", "3", "--json", "--out", str(out)]) == 0
    assert main(["recheck", str(out)]) == 0
    rep = json.loads(out.read_text())
    w = rep["claims"][0]["witness"]["isomorphisms"][0]
    w["matrix"][0][0] = "5"
    out.write_text(dumps(rep))
    capsys.readouterr()
    assert main(["recheck", str(out)]) == 1
    assert "BAD" in capsys.readouterr().out


def test_input_errors(tmp_path, capsys):
    assert main(["verify-appendix", "--n", "1"]) == 2
    assert main(["verify-prop63", "--n", "3"]) == 2
    assert main(["verify-prop63", "--field", "fp:100"]) == 2
    bad = tmp_path / "bad.json"
    d = algebra_to_json(triangular(2))
    d["constants"][0][3] = "2"
    bad.write_text(dumps(d))
    assert main(["verify-prop63", "--algebra", str(bad)]) == 2
    assert main(["verify-prop63", "--algebra", str(tmp_path / "missing.json")]) == 2
    q = tmp_path / "q.json"
    q.write_text(json.dumps({"vertices": 3, "arrows": [[0, 1], [1, 2]]}))
    assert main(["verify-appendix", "--quiver", str(q)]) == 2
    assert "error" in capsys.readouterr().err


def test_algebra_file_and_quiver(tmp_path, capsys):
    f = tmp_path / "a.json"
    f.write_text(dumps(algebra_to_json(triangular(2))))
    assert main(["verify-prop63", "--algebra", str(f)]) == 0
    capsys.readouterr()
    q = tmp_path / "q.json"
    q.write_text(json.dumps({"vertices": 3, "arrows": [[0, 1], [1, 2]],
                             "relations": [[["1", [0, 1]]]]}))
    code, rep = run_json(capsys, "k0-report", "--quiver", str(q))
    assert code == 0
    assert rep["claims"][0]["name"] == "order(c) finite"


def test_algebra_info(capsys):
    code, info = run_json(capsys, "algebra-info", "--n", "3")
    assert code == 0
    assert info["dim"] == 6 and info["global_dimension"] == 1 and info["center_dim"] == 1
    assert info["cartan"] == [[1, 1, 1], [0, 1, 1], [0, 0, 1]]


def test_max_len_budget_reports_failure(capsys):
    assert main(["verify-prop63", "--max-len", "1"]) == 1


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "dmorita", "k0-report"], capture_output=True, text=True)
    assert r.returncode == 0 and "all claims pass" in r.stdout
