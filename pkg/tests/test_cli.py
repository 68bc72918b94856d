import subprocess
import sys

import pytest

from unibrauer import census
from unibrauer.cli import run


def test_census_f4(capsys):
    assert run(["census", "--type", "F4", "--ell", "3"]) == 0
    assert "total 35, expected 35: match" in capsys.readouterr().out


def test_census_g2_dispute_exit_codes(capsys):
    assert run(["census", "--type", "G2", "--ell", "2"]) == 0
    out = capsys.readouterr().out
    assert "disputed" in out and "note:" in out
    assert run(["census", "--type", "G2", "--ell", "2", "--disputes-fail"]) == 1


def test_census_structured_round_trip(capsys):
    assert run(["census", "--type", "E8", "--ell", "5", "--format", "structured"]) == 0
    text = capsys.readouterr().out
    rep = census.parse_structured(text)
    assert rep.total == 162
    assert census.format_structured(rep) == text


def test_good_count(capsys):
    assert run(["good-count", "--type", "E8"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[-1] == "166"
    assert len(lines) == 47


def test_classical(capsys):
    assert run(["classical", "--series", "C", "--rank", "2", "--q", "3"]) == 0
    assert capsys.readouterr().out.strip() == "7"
    assert run(["classical", "--series", "C", "--rank", "2", "--q", "4"]) == 2


def test_type_a(capsys):
    assert run(["type-a", "--n", "2", "--q", "3", "--ell", "2", "--form", "linear"]) == 0
    assert capsys.readouterr().out.splitlines()[-1] == "3"
    assert run(["type-a", "--n", "2", "--q", "3", "--ell", "3"]) == 2


def test_unitri(tmp_path, capsys):
    f = tmp_path / "identity.txt"
    f.write_text("1 0 0\n0 1 0\n0 0 1\n")
    assert run(["unitri", "check", "--file", str(f)]) == 0
    assert capsys.readouterr().out.startswith("unitriangular: yes")
    f.write_text("1 1\n1 1\n")
    assert run(["unitri", "check", "--file", str(f)]) == 1
    assert run(["unitri", "check", "--file", str(tmp_path / "missing.txt")]) == 2


def test_validate_data(capsys):
    assert run(["validate-data"]) == 0
    out = capsys.readouterr().out
    assert out.count(": ok") == 5 and "dispute: G2 ~A1" in out


@pytest.mark.parametrize("argv", [[], ["census"], ["census", "--type", "F4", "--ell", "2", "--bogus"], ["nope"]])
def test_usage_errors(argv, capsys):
    with pytest.raises(SystemExit) as exc:
        run(argv)
    assert exc.value.code == 2
    assert "usage" in capsys.readouterr().err


def test_entry_point_deterministic():
    cmd = [sys.executable, "-m", "unibrauer.cli", "census", "--type", "F4", "--ell", "2"]
    a = subprocess.run(cmd, capture_output=True, text=True)
    b = subprocess.run(cmd, capture_output=True, text=True)
    assert a.returncode == 0 and a.stdout == b.stdout


def test_entry_point_usage_code():
    out = subprocess.run([sys.executable, "-m", "unibrauer.cli", "--bogus"], capture_output=True, text=True)
    assert out.returncode == 2
