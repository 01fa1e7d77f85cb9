import json
import subprocess
import sys

import pytest

from hboot.cli import main
from hboot.constructions import cycle
from hboot.graph import graph6_encode


def call(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_run_path(capsys):
    code, out, err = call(capsys, "run", "--rule", "cycle:3", "--graph", "path:4")
    data = json.loads(out)
    assert code == 0 and data["tau"] == 2 and data["schema"] == 1
    assert data["rounds"] == [[[0, 2], [1, 3]], [[0, 3]]]
    assert "tau=2" in err


def test_run_stable(capsys):
    code, out, _ = call(capsys, "run", "--rule", "cycle:5", "--graph", "cycle:5")
    assert code == 0 and json.loads(out)["tau"] == 0


def test_run_from_file(capsys, tmp_path):
    f = tmp_path / "g.g6"
    f.write_text(graph6_encode(cycle(3).graph) + "\n")
    code, out, _ = call(capsys, "run", "--rule", "union:4,3", "--graph", f"file:{f}")
    assert code == 0 and json.loads(out)["rule"] == "union:4,3"


def test_run_csv(capsys):
    code, out, _ = call(capsys, "run", "--rule", "cycle:3", "--graph", "path:4", "--format", "csv")
    assert out.splitlines() == ["round,u,v", "1,0,2", "1,1,3", "2,0,3"]


def test_predict(capsys):
    code, out, _ = call(capsys, "predict", "--n", "58", "--k", "5")
    data = json.loads(out)
    assert code == 0 and (data["r"], data["M"]) == (4, 4)


def test_frobenius(capsys):
    code, out, err = call(capsys, "frobenius", "3", "5")
    assert code == 0 and json.loads(out)["frobenius"] == 7 and err.strip() == "7"
    code, out, err = call(capsys, "frobenius", "3", "5", "--format", "quiet")
    assert out == "" and err.strip() == "7"
    code, _, _ = call(capsys, "frobenius", "4", "6")
    assert code == 2


def test_construct(capsys, tmp_path):
    target = tmp_path / "p.g6"
    code, out, _ = call(capsys, "construct", "pdelta:13", "-o", str(target))
    data = json.loads(out)
    assert code == 0 and data["n"] == 16 and data["labels"]["v_ell"] == 14
    assert target.read_text().strip() == data["graph6"]


def test_search_modes(capsys):
    code, out, _ = call(capsys, "search", "exhaustive", "--rule", "cycle:3", "--n", "4", "--workers", "1")
    assert code == 0 and json.loads(out)["max_tau"] == 2
    code, out, _ = call(capsys, "search", "sampled", "--rule", "cycle:3", "--n", "30", "--samples", "5")
    assert code == 0 and json.loads(out)["enumerated"] == 5
    code, out, _ = call(capsys, "search", "chord", "--k", "6")
    assert code == 0 and len(json.loads(out)["rows"]) == 2
    assert call(capsys, "search", "chord")[0] == 2
    assert call(capsys, "search", "exhaustive", "--rule", "cycle:3")[0] == 2


def test_verify_theorem(capsys):
    code, out, err = call(capsys, "verify", "theorem-cycles", "--k", "4", "--r", "4")
    data = json.loads(out)
    assert code == 0 and data["reports"][0]["verdict"] == "pass"
    assert "seconds" not in data["reports"][0]["cost"]
    assert "cycle-running-time: pass" in err


def test_verify_other_suites(capsys):
    assert call(capsys, "verify", "distance", "--graph", "path:30", "--k", "3")[0] == 0
    assert call(capsys, "verify", "union", "--graphs", "path:10", "cycle:5", "--rule", "cycle:5")[0] == 0
    assert call(capsys, "verify", "monotone", "--graph", "path:5", "--target", "path:9", "--rule", "cycle:3", "--map", "0,1,2,3,4")[0] == 0
    assert call(capsys, "verify", "multiple-cycles", "--ks", "4,3", "--n", "30", "--samples", "2")[0] == 0
    code, out, _ = call(capsys, "verify", "interval", "--k", "5", "--i", "4", "--format", "csv")
    assert code == 0 and out.startswith("statement,params,verdict,seconds")
    assert call(capsys, "verify", "theorem-cycles", "--k", "4")[0] == 2


@pytest.mark.parametrize(
    "argv",
    [
        ["run", "--rule", "cycle:2", "--graph", "path:4"],
        ["run", "--rule", "cycle:3", "--graph", "tree:4"],
        ["run", "--rule", "cycle:3", "--graph", "g6:!!"],
        ["verify", "multiple-cycles", "--ks", "4,x", "--n", "30"],
        ["predict", "--n", "1", "--k", "3"],
    ],
)
def test_parse_errors_exit_2(capsys, argv):
    assert call(capsys, *argv)[0] == 2


def test_size_guard_exit_3(capsys):
    assert call(capsys, "search", "exhaustive", "--rule", "cycle:3", "--n", "9")[0] == 3


def test_round_limit_exit(capsys):
    assert call(capsys, "run", "--rule", "cycle:3", "--graph", "path:40", "--max-rounds", "1")[0] == 1


def test_argparse_errors_exit_2():
    res = subprocess.run([sys.executable, "-m", "hboot.cli", "run"], capture_output=True, text=True)
    assert res.returncode == 2


def test_byte_identical_output():
    argv = [sys.executable, "-m", "hboot.cli", "verify", "theorem-cycles", "--k", "5", "--r", "3", "--seed", "11"]
    a = subprocess.run(argv, capture_output=True, check=True).stdout
    b = subprocess.run(argv, capture_output=True, check=True).stdout
    assert a == b and json.loads(a)["reports"][0]["params"]["seed"] == 11
