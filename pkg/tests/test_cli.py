import json

import pytest

from synsem.cli import main
from synsem.stdlib import builtin_text

NEG = "(abs[bool,bool] (app (app (app (CondB) (var 1)) (ffff)) (tttt)))"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_reduce(capsys):
    code, out, _ = run(capsys, "reduce", "--sig", "pcf", "--term", "(app (Pred) (app (Succ) (nats 0)))")
    assert (code, out.strip()) == (0, "(nats 0)")


def test_translate_paper_style(capsys):
    code, out, _ = run(capsys, "translate", "--rep", "pcf2ulc", "--term", NEG, "--style", "paper")
    assert code == 0
    assert out.strip() == "Abs (Abs (Abs (Abs (3 @ 2 @ 1))) @ 1 @ Abs (Abs 1) @ Abs (Abs 2))"


def test_satisfy_with_y(capsys):
    code, out, _ = run(capsys, "satisfy", "--rep", "pcf2ulc", "--fix-via", "rec=(app Y $1)", "--fuel", "100")
    assert code == 1
    assert "FAIL rec_a" in out and "rec_a" in out.splitlines()[-1]


def test_satisfy_single_rule_passes(capsys):
    code, out, _ = run(capsys, "satisfy", "--rep", "pcf2ulc", "--rule", "rec_a", "--json")
    data = json.loads(out)
    assert code == 0 and data["passed"]
    (entry,) = data["results"]
    assert [w["position"] for w in entry["witness"]] == ["0", "root"]


def test_trace(capsys):
    code, out, _ = run(capsys, "trace", "--sig", "ulc", "--style", "paper",
                       "--term", "(app (abs (var 1)) (app (abs (var 1)) (abs (var 1))))")
    assert code == 0
    assert out.splitlines() == ["beta @ root : Abs 1 @ (Abs 1 @ Abs 1) ==> Abs 1 @ Abs 1",
                                "beta @ root : Abs 1 @ Abs 1 ==> Abs 1"]


def test_reduce_fuel_exhausted(capsys):
    omega = "(app (abs (app (var 1) (var 1))) (abs (app (var 1) (var 1))))"
    code, out, _ = run(capsys, "reduce", "--sig", "ulc", "--term", omega, "--fuel", "3", "--json")
    assert code == 1 and json.loads(out) == {"kind": "reduce", "normal": False, "steps": 3, "term": omega}


def test_check_variants(capsys):
    assert run(capsys, "check", "--sig", "pcf")[0] == 0
    code, out, _ = run(capsys, "check", "--sig", "pcf", "--ctx", "nat", "--term", "(app Succ (var 1))")
    assert (code, out.strip()) == (0, "nat")
    code, out, _ = run(capsys, "check", "--rep", "cpc2ipc")
    assert code == 0 and "orE" in out


def test_files(tmp_path, capsys):
    sig = tmp_path / "lam.sig"
    sig.write_text(builtin_text("ulc"))
    (tmp_path / "ulc.sig").write_text(builtin_text("ulc"))
    (tmp_path / "pcf.sig").write_text(builtin_text("pcf"))
    rep = tmp_path / "p2u.rep"
    rep.write_text(builtin_text("pcf2ulc"))
    code, out, _ = run(capsys, "reduce", "--sig", str(sig), "--term", "(app (abs (var 1)) (abs (var 1)))")
    assert (code, out.strip()) == (0, "(abs (var 1))")
    code, out, _ = run(capsys, "translate", "--rep", str(rep), "--term", "(nats 0)", "--style", "paper")
    assert (code, out.strip()) == (0, "Abs (Abs 1)")


@pytest.mark.parametrize("argv", [
    ["reduce", "--sig", "pcf"],
    ["reduce", "--sig", "nope", "--term", "x"],
    ["reduce", "--sig", "pcf", "--term", "(app tttt)"],
    ["translate", "--rep", "pcf2ulc", "--term", "(nats 0)", "--fix-via", "app"],
    ["translate", "--rep", "cpc2ipc-sorts", "--term", "(topI)"],
    ["frobnicate"],
    ["satisfy", "--rep", "pcf2ulc", "--rule", "nope"],
])
def test_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err


def test_laws_and_faithful(capsys):
    assert run(capsys, "laws", "--rep", "pcf2ulc", "--max-nodes", "3")[0] == 0
    code, out, _ = run(capsys, "faithful", "--rep", "pcf2ulc", "--max-nodes", "3", "--json")
    assert code == 0 and json.loads(out)["passed"]


def test_script_entry_point():
    import shutil
    import subprocess

    exe = shutil.which("synsem")
    if exe is None:
        pytest.skip("console script not installed")
    out = subprocess.run([exe, "translate", "--rep", "pcf2ulc", "--term", "(tttt)", "--style", "paper"],
                         capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "Abs (Abs 2)"
