import dataclasses

import pytest

from unibrauer import sprdata
from unibrauer.sprdata import DataError, Printed

COUNTS = {"G2": 5, "F4": 16, "E6": 21, "E7": 45, "E8": 70}


@pytest.mark.parametrize("name", sprdata.EXCEPTIONAL)
def test_load_and_validate(name):
    table = sprdata.load_class_table(name)
    assert len(table.records) == COUNTS[name]
    assert sprdata.validate_table(table) == []
    assert sum(r.special for r in table.records) == sprdata.FAMILY_COUNTS[name]
    for r in table.records:
        assert r.trivial_entry is not None


@pytest.mark.parametrize("name", sprdata.EXCEPTIONAL)
def test_round_trip(name):
    table = sprdata.load_class_table(name)
    text = sprdata.format_class_table(table)
    again = sprdata.parse_class_table(text)
    assert again.records == table.records
    assert sprdata.format_class_table(again) == text


def test_checksum_detects_edits():
    text = (sprdata.data_dir() / "G2.classes").read_text()
    tampered = text.replace("b_u: 3", "b_u: 4")
    with pytest.raises(DataError, match="checksum"):
        sprdata.parse_class_table(tampered)


def test_schema_version_is_checked():
    text = (sprdata.data_dir() / "G2.classes").read_text()
    with pytest.raises(DataError):
        sprdata.parse_class_table(text.replace(sprdata.SCHEMA, "unibrauer-classes/9"))


def test_validator_lists_offending_rows():
    table = sprdata.load_class_table("G2")
    recs = list(table.records)
    recs[3] = dataclasses.replace(recs[3], special=False)
    bad = sprdata.ClassTable("G2", table.header, recs)
    problems = sprdata.validate_table(bad)
    assert any("special classes" in p for p in problems)


def test_absolute_anchor_a_equals_b_for_specials():
    for name in ("G2", "F4"):
        table = sprdata.load_class_table(name)
        assert table.absolute
        for r in table.records:
            if r.special:
                assert r.trivial_entry.a == r.b_u


def test_special_implies_printed_for_every_ell():
    for name in sprdata.EXCEPTIONAL:
        table = sprdata.load_class_table(name)
        for r in table.records:
            for ell in sprdata.BAD_PRIMES[name]:
                if r.special:
                    assert not sprdata.corrected_printed(table, r, ell).blank


def test_springer_lookup():
    assert sprdata.springer_class_of("G2", "phi1,0") == ("G2", "1")
    assert sprdata.springer_class_of("G2", "phi1,6") == ("1", "1")
    assert sprdata.springer_class_of("G2", "phi2,1")[0] == "G2(a1)"
    with pytest.raises(KeyError):
        sprdata.springer_class_of("G2", "phi7,7")
    with pytest.raises(DataError):
        sprdata.springer_class_of("E8", "phi1,0")


def test_springer_is_injective_and_hits_every_class():
    for name in ("G2", "F4"):
        table = sprdata.load_class_table(name)
        chars = [e.char for r in table.records for e in r.springer]
        assert len(chars) == len(set(chars))


def test_expected_totals():
    assert sprdata.expected_total("E8", 2) == 131
    assert sprdata.expected_total("E8", "good") == 166
    assert sprdata.expected_total("G2", 2) == 8


def test_discrepancy_ledger():
    ds = sprdata.load_discrepancies()
    disputes = [d for d in ds if d.kind == "totals-dispute"]
    assert {(d.type_name, d.class_name) for d in disputes} == {("G2", "~A1")}
    assert all(d.reason for d in ds)
    kinds = {d.kind for d in ds}
    assert kinds <= {"row-correction", "group-correction", "totals-dispute"}


def test_corrected_columns_match_totals():
    for name in ("F4", "E6", "E7", "E8"):
        table = sprdata.load_class_table(name)
        for ell in sprdata.BAD_PRIMES[name]:
            total = sum(sprdata.corrected_printed(table, r, ell).value for r in table.records)
            assert total == sprdata.expected_total(name, ell)


def test_printed_cells():
    assert Printed.parse("blank").blank
    p = Printed.parse("S3 6")
    assert (p.gamma, p.value, p.well_formed) == ("S3", 6, True)
    garbled = Printed.parse("S3 S3")
    assert not garbled.well_formed
    assert str(Printed.parse(str(p))) == str(p)


def test_data_dir_override(tmp_path, monkeypatch):
    for f in sprdata.data_dir().iterdir():
        (tmp_path / f.name).write_text(f.read_text())
    monkeypatch.setenv("UNIBRAUER_DATA", str(tmp_path))
    sprdata.clear_caches()
    try:
        assert sprdata.data_dir() == tmp_path
        assert len(sprdata.load_class_table("G2").records) == 5
        (tmp_path / "G2.classes").write_text("% schema: nope\n")
        sprdata.clear_caches()
        with pytest.raises(DataError):
            sprdata.load_class_table("G2")
    finally:
        monkeypatch.delenv("UNIBRAUER_DATA")
        sprdata.clear_caches()


def test_data_files_match_the_freeze_script():
    import subprocess
    import sys
    from pathlib import Path

    script = Path(__file__).resolve().parents[1] / "scripts" / "freeze_data.py"
    out = subprocess.run([sys.executable, str(script), "--check"], capture_output=True, text=True)
    assert out.returncode == 0, out.stdout + out.stderr
