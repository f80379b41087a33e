import json
import subprocess
import sys

import pytest

from gkmhopf.cli import main
from gkmhopf.golden import golden_dir


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--format", "json")
    return code, json.loads(out)


def test_rootsys_json(capsys):
    code, data = run_json(capsys, "rootsys", "--type", "B2")
    assert code == 0
    assert len(data["elements"]) == 8
    assert data["elements"][0] == {"length": 0, "word": "e"}


def test_braid_verification_exit_code(capsys):
    code, out, _ = run(capsys, "verify", "braid", "--type", "G2", "--fgl", "additive")
    assert code == 0
    assert "overall: PASS" in out


def test_failing_verification_exits_one(capsys):
    code, out, _ = run(capsys, "verify", "braid", "--type", "I2:5", "--fgl", "connective")
    assert code == 1
    assert "FAIL" in out


@pytest.mark.parametrize(
    "argv",
    [
        ["rootsys", "--type", "F4"],
        ["rootsys", "--type", "I2:11"],
        ["classes", "--type", "A2", "--which", "nope"],
        ["multiplicities", "--type", "A2", "--u", "s3"],
        ["multiplicities", "--type", "B2", "--paper-order"],
        ["verify", "no-such-identity"],
        ["dihedral", "--p", "4"],
        ["no-such-command"],
    ],
)
def test_usage_errors_exit_two(capsys, argv):
    code, _, _ = run(capsys, *argv)
    assert code == 2


def test_json_output_is_deterministic(capsys):
    argv = ["verify", "demazure", "--type", "A2", "--fgl", "connective", "--seed", "7", "--trials", "2", "--format", "json"]
    main(argv)
    first = capsys.readouterr().out
    main(argv)
    second = capsys.readouterr().out
    assert first == second
    assert json.loads(first)["passed"]


def test_multiplicities_in_alternative_order(capsys):
    code, data = run_json(capsys, "multiplicities", "--type", "A2", "--fgl", "connective", "--u", "w0", "--paper-order")
    assert code == 0
    assert data["order"] == ["e", "s1", "s2", "s2s1", "s1s2", "s1s2s1"]
    golden = json.loads((golden_dir() / "sl3_connective_cw0.json").read_text())
    assert data["C"] == golden["entries"]


def test_classes_and_duals(capsys):
    code, data = run_json(capsys, "classes", "--type", "A1", "--which", "zeta")
    assert code == 0
    code, data = run_json(capsys, "duals", "--type", "A1")
    assert code == 0


def test_nu_keys_are_words(capsys):
    code, data = run_json(capsys, "nu", "--type", "A2", "--u", "w0")
    assert code == 0
    assert all(len(k.split(",")) == 3 for k in data["nu"])


def test_coproduct_model_matches_oracle(capsys):
    code, data = run_json(capsys, "coproduct", "--type", "A2", "--u", "w0", "--class", "s1")
    assert code == 0
    assert data["matches_product_model"]


def test_dihedral_p5(capsys):
    code, data = run_json(capsys, "dihedral", "--p", "5")
    assert code == 0
    assert data["graded_dims"] == [1, 1, 1, 1, 1]
    assert data["coefficient_rings"] == ["O", "F_5", "F_5", "F_5", "F_5"]
    assert data["top_degree_trivial"]
    assert data["a"] == {"1": 1, "2": 2, "3": 4, "4": 4}


def test_golden_subset(capsys):
    names = ["sl2_additive", "sl2_connective", "sl3_connective_cw0", "quotient_pgl2", "quotient_sl3", "dihedral_p3"]
    argv = ["golden"]
    for n in names:
        argv += ["--name", n]
    code, out, _ = run(capsys, *argv)
    assert code == 0, out


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "gkmhopf.cli", "rootsys", "--type", "A1"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert "s1" in proc.stdout
