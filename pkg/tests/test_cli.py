from pathlib import Path

import pytest

from bicross.cli import main
from strategies import golden

SPECS = Path(__file__).resolve().parent.parent / "specs"


def run(capsys, *argv):
    try:
        code = main(list(argv))
    except SystemExit as exc:
        code = exc.code
    out = capsys.readouterr()
    return code, out.out, out.err


def test_weyl_counit_fails_with_certificate(capsys):
    code, out, _ = run(capsys, "verify", "weyl(1)", "--suite", "counit")
    assert code == 1
    assert "CHECK counit:solve[P1,x1] FAIL witness=obstruction relation=[P1,x1] = 1 derived=0 = 1" in out
    assert out.rstrip().endswith("summary: 0 passed, 1 failed, 0 skipped")


def test_hl_full_suite_passes(capsys):
    code, out, _ = run(capsys, "verify", "hl(1)", "--max-degree", "2")
    assert code == 0
    assert "FAIL" not in out


def test_lines_report_is_deterministic(capsys):
    args = ("verify", "weyl(2)", "--suite", "half-primitive", "--report", "lines", "--seed", "5")
    first = run(capsys, *args)
    second = run(capsys, *args)
    assert first == second
    assert all(line.startswith("CHECK ") for line in first[1].splitlines())


def test_show_matches_golden(capsys):
    code, out, _ = run(capsys, "show", "hl(1)", "--order", "0")
    assert code == 0
    assert out.rstrip("\n") == golden("hl1_bicross.txt")


@pytest.mark.parametrize("argv", [
    ("verify", "weyl(1)", "--suite", "nope"),
    ("verify", "nonsense(2)"),
    ("verify", "weyl(1)", "--order", "-1"),
    ("show",),
    ("frobnicate", "weyl(1)"),
])
def test_input_errors_exit_2(capsys, argv):
    code, _, _ = run(capsys, *argv)
    assert code == 2


def test_malformed_spec_exits_2(capsys, tmp_path):
    bad = tmp_path / "bad.yaml"
    bad.write_text("algebras:\n  W:\n    generators: [P1, x1]\n    relations: ['[P1, x1] = 1 +']\n")
    code, _, err = run(capsys, "verify", str(bad))
    assert code == 2
    assert "relation" in err and "line 1" in err


def test_spec_file_suites(capsys):
    spec = str(SPECS / "weyl_counit.yaml")
    assert run(capsys, "verify", spec, "--suite", "half")[0] == 0
    code, out, _ = run(capsys, "verify", spec, "--suite", "primitive", "--order", "1")
    assert code == 1
    assert "counit:solve[P1,x1] FAIL" in out


def test_spec_file_bicross_suite(capsys):
    code, out, _ = run(capsys, "verify", str(SPECS / "heisenberg_lie.yaml"), "--max-degree", "2")
    assert code == 0
    assert "bicross:" in out


def test_kappa_poincare_verifies(capsys):
    code, out, _ = run(capsys, "verify", "kappa-poincare", "--order", "2", "--max-degree", "2")
    assert code == 0
    assert "note: convention metric=(+,+,+,-) lorentz=- eps123=+1" in out
    assert "CHECK bicross:C[P1,N1] PASS" in out
