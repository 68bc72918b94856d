import pytest

from unibrauer import census, sprdata

TOTALS = {
    ("F4", 2): 28, ("F4", 3): 35,
    ("E6", 2): 27, ("E6", 3): 28,
    ("E7", 2): 64, ("E7", 3): 72,
    ("E8", 2): 131, ("E8", 3): 150, ("E8", 5): 162,
}
GOOD = {"G2": 10, "F4": 37, "E6": 30, "E7": 76, "E8": 166}


@pytest.mark.parametrize("key", sorted(TOTALS))
def test_alpha_totals(key):
    rep = census.alpha(*key)
    assert rep.total == TOTALS[key] == rep.expected
    assert rep.verdict == "match"
    assert all(r.verdict == "match" for r in rep.rows)
    assert rep.total == sum(r.alpha for r in rep.rows if r.ell_special)


@pytest.mark.parametrize("name", sorted(GOOD))
def test_good_count(name):
    assert census.unipotent_character_count(name) == GOOD[name]
    assert sum(n for _, _, n in census.good_count_breakdown(name)) == GOOD[name]


def test_f4_three_special_set_is_computed():
    s = census.ell_special_classes("F4", 3)
    assert s.source == "computed-j-induction"
    assert len(s.classes) == 12
    assert {"~A2+A1", "F4(a3)"} <= set(s.classes)
    table = sprdata.load_class_table("F4")
    assert set(s.classes) == set(sprdata.curated_ell_special(table, 3))
    for cls, ws in s.witnesses.items():
        assert ws and all(w.induced for w in ws)


@pytest.mark.parametrize("name", ["G2", "F4", "E6", "E7", "E8"])
def test_special_classes_always_included(name):
    table = sprdata.load_class_table(name)
    specials = {r.class_name for r in table.records if r.special}
    for ell in (2, 3, 5, 7):
        assert specials <= set(census.ell_special_classes(name, ell).classes)
    assert set(census.ell_special_classes(name, 7).classes) == specials


def test_f4_computed_and_curated_agree():
    for ell in (2, 3):
        assert set(census.computed_ell_special("F4", ell).classes) == set(census.curated_special("F4", ell).classes)
        assert not any("differ" in n for n in census.alpha("F4", ell).notes)


def test_f4_gamma_labels_match_corrected_printed_table():
    table = sprdata.load_class_table("F4")
    for ell in (2, 3):
        rep = census.alpha("F4", ell)
        for r in rep.rows:
            p = sprdata.corrected_printed(table, table.record(r.class_name), ell)
            if not p.blank:
                assert r.gamma == p.gamma


def test_g2_computed_sets():
    # computed from the dual extended diagram: differs from the printed table only in ~A1 / A1
    assert set(census.computed_ell_special("G2", 2).classes) == {"1", "~A1", "G2(a1)", "G2"}
    assert set(census.computed_ell_special("G2", 3).classes) == {"1", "A1", "G2(a1)", "G2"}


def test_g2_report_is_a_documented_dispute():
    for ell in (2, 3):
        rep = census.alpha("G2", ell)
        assert rep.verdict == "disputed"
        assert any("~A1" in n for n in rep.notes)


def test_e_types_use_curated_flags():
    assert census.ell_special_classes("E8", 5).source == "curated"
    with pytest.raises(sprdata.DataError):
        census.computed_ell_special("E6", 2)


def test_structured_round_trip():
    for key in [("F4", 2), ("G2", 3), ("E6", 3)]:
        rep = census.alpha(*key)
        text = census.format_structured(rep)
        assert census.parse_structured(text) == rep
        assert census.format_structured(census.parse_structured(text)) == text


def test_human_report_mentions_total():
    text = census.alpha("F4", 2).human()
    assert "total 28, expected 28: match" in text


def test_rejects_non_exceptional():
    with pytest.raises(sprdata.DataError):
        census.alpha("A3", 2)
