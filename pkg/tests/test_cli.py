import json
import subprocess
import sys

import pytest

from lacunary.cli import EXIT_FAIL, EXIT_OK, EXIT_USAGE, main
from lacunary.harness import TrialRecord


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_bounds_json(capsys):
    code, out, _ = run(capsys, "bounds", "--l", "2", "--json")
    assert code == EXIT_OK
    rep = json.loads(out)
    assert rep["b1"] == "(4*2)^((2*2)^((3*2)^(2+1)))"
    assert rep["b1_log2"] == "3*2^432"
    assert rep["M_log2"] == 137 and rep["two_L_log2"] == 384


def test_bounds_text(capsys):
    code, out, _ = run(capsys, "bounds", "--l", "1")
    assert code == EXIT_OK
    assert "b1: (4*1)^((2*1)^((3*1)^(1+1)))" in out
    assert "b1_log2: 2*2^9" in out


def test_verify_l2(capsys):
    code, out, _ = run(capsys, "verify-l2")
    assert code == EXIT_OK
    assert "final bound: 1114112" in out
    assert "n_2/n_1 <= 2448" in out
    code, out, _ = run(capsys, "verify-l2", "--json")
    rep = json.loads(out)
    assert rep["final_bound"] == 1_114_112 and rep["ok"]


def test_verify_chains_reports_the_false_link(capsys):
    code, out, _ = run(capsys, "verify-chains", "--l-max", "2")
    assert code == EXIT_FAIL
    assert "FAIL  exponent_chain(l=2)" in out
    assert "PASS  B1(2) = 2^(3*2^432)" in out


def test_decompose(capsys):
    code, out, _ = run(capsys, "decompose", "--poly", "x^4+1", "--degree", "2")
    assert code == EXIT_OK
    assert out.splitlines() == ["g = x^2 + 1", "h = x^2"]
    code, out, _ = run(capsys, "decompose", "--poly", "x^6")
    assert out.splitlines() == ["g = x^2", "h = x^3", "g = x^3", "h = x^2"]
    code, out, _ = run(capsys, "decompose", "--poly", "x^7+x+1")
    assert (code, out.strip()) == (EXIT_OK, "indecomposable")
    code, out, _ = run(capsys, "decompose", "--poly", "x^6+x+1", "--degree", "2")
    assert code == EXIT_FAIL


def test_expand(capsys):
    code, out, _ = run(capsys, "expand", "--f", "x^2+2*x+1", "--d", "2", "--order", "5")
    assert code == EXIT_OK
    assert out.strip() == "1 + y + O(y^5)"


def test_fuzz_stdout(capsys):
    code, out, err = run(capsys, "fuzz", "--trials", "5", "--seed", "3")
    assert code == EXIT_OK
    recs = [TrialRecord.from_json(line) for line in out.splitlines()]
    assert [r.trial_index for r in recs] == list(range(5))
    assert "5 trials, 0 with a failed check" in err


def test_fuzz_file(capsys, tmp_path):
    path = tmp_path / "out.jsonl"
    code, out, _ = run(capsys, "fuzz", "--trials", "4", "--seed", "3", "--out", str(path))
    assert code == EXIT_OK
    assert len(path.read_text().splitlines()) == 4
    assert "4 trials" in out


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["nope"],
        ["bounds"],
        ["bounds", "--l", "0"],
        ["bounds", "--l", "two"],
        ["verify-chains", "--l-max", "1"],
        ["decompose", "--poly", "x^^2"],
        ["decompose", "--poly", "7"],
        ["expand", "--f", "x+1", "--d", "0", "--order", "3"],
        ["fuzz", "--trials", "0"],
    ],
)
def test_usage_errors(capsys, argv):
    assert main(argv) == EXIT_USAGE


def test_help_exits_zero(capsys):
    assert main(["--help"]) == EXIT_OK


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "lacunary", "bounds", "--l", "2", "--json"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["b1_log2"] == "3*2^432"
