#!/usr/bin/env python3
"""Regenerate the checksummed data files under src/unibrauer/data.

Inputs are embedded below:

* the printed table cells for every exceptional type, verbatim
  (``name | A | cells for l=2 | l=3 [| l=5]``, ``.`` for an empty cell);
* the Springer correspondence for G2 and F4 with a-values read off the
  families of the Weyl group;
* the list of corrections to misprinted rows.

For E6, E7 and E8 only relative a-values are recorded. They are chosen, per
class, as the first pattern (preferring ``top``, then ``lower``, then
``absent`` for each non-trivial psi) such that the l-special quotient computed
by ``lmod`` reproduces every corrected printed Gamma. The script refuses to
write anything if a check fails.

Usage: python3 scripts/freeze_data.py [--check]
"""

from __future__ import annotations

import argparse
import itertools
import sys
from pathlib import Path

from unibrauer import lmod, sprdata
from unibrauer.sprdata import ClassTable, Discrepancy, Printed, SpringerEntry, UnipotentClassRecord

ROWS = {
    "G2": """
1 | 1 | 1 1 | 1 1
A1 | 1 | . . | 1 1
~A1 | 1 | 1 1 | . .
G2(a1) | S3 | S3 6 | S3 5
G2 | 1 | 1 1 | 1 1
""",
    "F4": """
1 | 1 | 1 1 | 1 1
A1 | 1 | 1 1 | . .
~A1 | S2 | S2 2 | S2 4
A1+~A1 | 1 | 1 1 | 1 1
~A2 | 1 | 1 1 | 1 1
A2 | S2 | S2 2 | 1 1
A2+~A1 | 1 | 1 1 | . .
~A2+A1 | 1 | . . | 1 1
B2 | S2 | S2 2 | . .
C3(a1) | S1 | S1 2 | . .
F4(a3) | S4 | S4 8 | S4 18
C3 | 1 | 1 1 | 1 1
B3 | 1 | 1 1 | 1 1
F4(a2) | S2 | S2 2 | 1 1
F4(a1) | S2 | S2 2 | S2 4
F4 | 1 | 1 1 | 1 1
""",
    "E6": """
1 | 1 | 1 1 | 1 1
A1 | 1 | 1 1 | 1 1
2A1 | 1 | 1 1 | 1 1
3A1 | 1 | 1 1 | . .
A2 | S2 | S2 2 | S2 4
A2+A1 | 1 | 1 1 | 1 1
A2+2A1 | 1 | 1 1 | 1 .
2A2 | 1 | 1 1 | 1 1
2A2+A1 | 1 | . . | 1 1
A3 | 1 | 1 1 | 1 1
A3+A1 | 1 | 1 1 | . .
D4(a1) | S3 | S3 6 | S3 5
A4 | 1 | 1 1 | 1 1
D4 | 1 | 1 1 | 1 1
A4+A1 | 1 | 1 1 | 1 1
D5(a1) | 1 | 1 1 | 1 1
A5 | 1 | 1 1 | . .
E6(a3) | S2 | S2 2 | S2 4
D5 | 1 | 1 1 | 1 1
E6(a1) | 1 | 1 1 | 1 1
E6 | 1 | 1 1 | 1 1
""",
    "E7": """
1 | 1 | 1 1 | 1 1
A1 | 1 | 1 1 | 1 1
2A1 | 1 | 1 1 | 1 1
3A1' | 1 | 1 1 | . .
3A1'' | 1 | 1 1 | 1 1
A2 | S2 | S2 2 | S2 4
4A1 | 1 | 1 1 | . .
A2+A1 | S2 | S2 2 | S2 4
A2+2A1 | 1 | 1 1 | 1 1
A2+3A1 | 1 | 1 1 | 1 1
A3 | 1 | 1 1 | 1 1
2A2 | 1 | 1 1 | 1 1
2A2+A1 | 1 | . 1 | 1 1
(A3+A1)'' | 1 | 1 1 | 1 1
(A3+A1)' | 1 | 1 1 | . .
A3+2A1 | 1 | 1 1 | . .
D4(a1) | S3 | S3 6 | S3 5
D4(a1)+A1 | S2 | S2 2 | S2 4
A3+A2 | S2 | S2 2 | 1 1
A4 | S2 | S2 2 | S2 4
A3+A2+A1 | 1 | 1 1 | 1 1
D4 | 1 | 1 1 | 1 1
A4+A1 | S2 | S2 2 | S2 4
D4+A1 | 1 | 1 1 | . .
D5(a1) | S2 | S2 2 | S2 4
A5'' | 1 | 1 1 | 1 1
A4+A2 | 1 | 1 1 | 1 1
A5+A1 | 1 | . 1 | 1 1
D5(a1)+A1 | 1 | 1 1 | 1 1
A5' | 1 | 1 1 | . .
E6(a3) | S2 | S2 2 | S2 4
D6(a2) | 1 | 1 1 | . .
D5 | 1 | 1 1 | 1 1
E7(a5) | S3 | S3 6 | S3 5
D6(a1) | 1 | 1 1 | 1 1
D5+A1 | 1 | 1 1 | 1 1
A6 | 1 | 1 1 | 1 1
E7(a4) | S2 | S2 2 | 1 1
D6 | 1 | 1 1 | . .
E6(a1) | S2 | S2 2 | S2 4
E7(a3) | S2 | S2 2 | S2 4
E6 | 1 | 1 1 | 1 1
E7(a2) | 1 | 1 1 | 1 1
E7(a1) | 1 | 1 1 | 1 1
E7 | 1 | 1 1 | 1 1
""",
    "E8": """
1 | 1 | 1 1 | 1 1 | 1 1
A1 | 1 | 1 1 | 1 1 | 1 1
2A1 | 1 | 1 1 | 1 1 | 1 1
3A1 | 1 | 1 1 | . . | . .
A2 | S2 | S2 2 | S2 4 | S2 4
4A1 | 1 | 1 1 | . . | . .
A2+A1 | S2 | S2 2 | S2 4 | S2 4
A2+2A1 | 1 | 1 1 | 1 1 | 1 1
A2+3A1 | 1 | 1 1 | . . | . .
2A2 | 2 | 2 2 | S2 4 | S2 4
A3 | 1 | 1 1 | 1 1 | 1 1
2A2+A1 | 1 | . . | 1 1 | . .
A3+A1 | 1 | 1 1 | . . | . .
2A2+2A1 | 1 | . 1 | 1 1 | . .
D4(a1) | S3 | S3 6 | S3 5 | S3 8
A3+2A1 | 1 | 1 1 | . . | . .
D4(a1)+A1 | S3 | S3 6 | S3 5 | S3 8
A3+A2 | S2 | S2 2 | S2 1 | 1 1
A3+A2+A1 | 1 | 1 1 | . . | . .
D4(a1)+A2 | S2 | S2 2 | S2 4 | S2 4
A4 | S2 | S2 2 | S2 4 | S2 4
D4 | 1 | 1 1 | 1 1 | 1 1
2A3 | 1 | 1 1 | . . | . .
A4+A1 | S2 | S2 2 | S2 4 | S2 4
D4+A1 | 1 | 1 1 | . . | . .
A4+2A1 | S2 | S2 2 | S2 4 | S2 4
A4+A2 | 1 | 1 1 | 1 1 | 1 1
D5(a1) | S2 | S2 2 | S2 4 | S2 4
D5(a1)+A1 | 1 | 1 1 | 1 1 | 1 1
A4+A2+A1 | 1 | 1 1 | 1 1 | 1 1
A5 | 1 | 1 1 | . . | . .
D4+A2 | S2 | S2 2 | 1 1 | 1 1
A4+A3 | 1 | . . | . . | 1 1
D5(a1)+A2 | 1 | 1 1 | . . | . .
A5+A1 | 1 | . . | . . | . .
E6(a3) | S2 | S2 2 | . . | S2 4
D6(a2) | S2 | S2 2 | . . | . .
E6(a3)+A1 | S2 | . S2 | 4 . | . .
D5 | 1 | 1 1 | 1 1 | 1 1
E7(a5) | S3 | S3 6 | . . | . .
D5+A1 | 1 | 1 1 | . . | . .
E8(a7) | S5 | S5 18 | S5 27 | S5 34
A6 | 1 | 1 1 | 1 1 | 1 1
D6(a1) | S2 | S2 2 | S2 4 | S2 4
A6+A1 | 1 | 1 1 | 1 1 | 1 1
E7(a4) | S2 | S2 2 | 1 1 | 1 1
D5+A2 | S2 | S2 2 | 1 1 | 1 1
E6(a1) | S2 | S2 2 | S2 4 | S2 4
D7(a2) | S2 | S2 2 | S2 4 | S2 4
A7 | 1 | 1 1 | . . | . .
E6(a1)+A1 | S2 | S2 2 | S2 4 | S2 4
D6 | 1 | 1 1 | . . | . .
E8(b6) | S3 | S3 2 | S3 5 | S2 4
E7(a3) | S2 | S2 2 | S2 4 | S2 4
E6 | 1 | 1 1 | 1 1 | 1 1
D7(a1) | S2 | S2 2 | 1 1 | 1 1
E6+A1 | 1 | . . | 1 1 | . .
E8(a6) | S3 | S3 6 | S3 5 | S3 8
E7(a2) | 1 | 1 1 | . . | . .
D7 | 1 | 1 1 | . . | . .
E8(b5) | S3 | S3 6 | S3 5 | S3 8
E8(a5) | S2 | S2 2 | S2 4 | S2 4
E7(a1) | 1 | 1 1 | 1 1 | 1 1
E8(b4) | S2 | S2 2 | 1 1 | 1 1
E8(a4) | S2 | S2 2 | S2 4 | S2 4
E7 | 1 | 1 1 | . . | . .
E8(a3) | S2 | S2 2 | S2 4 | S2 4
E8(a2) | 1 | 1 1 | 1 1 | 1 1
E8(a1) | 1 | 1 1 | 1 1 | 1 1
E8 | 1 | 1 1 | 1 1 | 1 1
""",
}

# Springer correspondence, normalised so that the trivial class goes to the
# sign character: class -> (b_u, component group, {psi: character}).
SPRINGER = {
    "G2": {
        "1": (6, "1", {"1": "phi1,6"}),
        "A1": (3, "1", {"1": "phi1,3''"}),
        "~A1": (2, "1", {"1": "phi2,2"}),
        "G2(a1)": (1, "S3", {"3": "phi2,1", "21": "phi1,3'"}),
        "G2": (0, "1", {"1": "phi1,0"}),
    },
    "F4": {
        "1": (24, "1", {"1": "phi1,24"}),
        "A1": (16, "1", {"1": "phi2,16''"}),
        "~A1": (13, "S2", {"2": "phi4,13", "11": "phi2,16'"}),
        "A1+~A1": (10, "1", {"1": "phi9,10"}),
        "~A2": (9, "1", {"1": "phi8,9'"}),
        "A2": (9, "S2", {"2": "phi8,9''", "11": "phi1,12''"}),
        "A2+~A1": (7, "1", {"1": "phi4,7''"}),
        "~A2+A1": (6, "1", {"1": "phi6,6''"}),
        "B2": (6, "S2", {"2": "phi9,6''", "11": "phi4,8"}),
        "C3(a1)": (5, "S2", {"2": "phi16,5", "11": "phi4,7'"}),
        "F4(a3)": (4, "S4", {"4": "phi12,4", "31": "phi9,6'", "22": "phi6,6'", "211": "phi1,12'"}),
        "C3": (3, "1", {"1": "phi8,3'"}),
        "B3": (3, "1", {"1": "phi8,3''"}),
        "F4(a2)": (2, "S2", {"2": "phi9,2", "11": "phi2,4''"}),
        "F4(a1)": (1, "S2", {"2": "phi4,1", "11": "phi2,4'"}),
        "F4": (0, "1", {"1": "phi1,0"}),
    },
}

# Families of Irr(W): (a-value, members). The first member is the special one.
FAMILIES = {
    "G2": [(0, ["phi1,0"]), (1, ["phi2,1", "phi2,2", "phi1,3'", "phi1,3''"]), (6, ["phi1,6"])],
    "F4": [
        (0, ["phi1,0"]),
        (1, ["phi4,1", "phi2,4'", "phi2,4''"]),
        (2, ["phi9,2"]),
        (3, ["phi8,3'"]),
        (3, ["phi8,3''"]),
        (4, ["phi12,4", "phi9,6'", "phi9,6''", "phi6,6'", "phi6,6''", "phi4,7'", "phi4,7''",
             "phi1,12'", "phi1,12''", "phi4,8", "phi16,5"]),
        (9, ["phi8,9'"]),
        (9, ["phi8,9''"]),
        (10, ["phi9,10"]),
        (13, ["phi4,13", "phi2,16'", "phi2,16''"]),
        (24, ["phi1,24"]),
    ],
}

ROW_CORRECTIONS = [
    # (type, class, ell, corrected, reason)
    ("F4", "C3(a1)", 2, "S2 2", "A(u) = S2 printed as S1; alpha = 2 = M~_2(S2) confirms S2"),
    ("E6", "A2+2A1", 3, "1 1", "alpha cell missing; trivial Gamma forces alpha = 1 and the column then sums to 28"),
    ("E7", "2A2+A1", 2, "blank", "Gamma cell empty; the alpha entry 1 belongs to no 2-special class (column sums to 64 without it)"),
    ("E7", "A5+A1", 2, "blank", "Gamma cell empty; the alpha entry 1 belongs to no 2-special class (column sums to 64 without it)"),
    ("E8", "2A2", 2, "S2 2", "A(u) = S2 printed as 2"),
    ("E8", "2A2+2A1", 2, "blank", "Gamma cell empty; stray alpha entry (column sums to 131 without it)"),
    ("E8", "A3+A2", 3, "1 1", "Gamma = S2 with alpha = 1 is impossible (M~_3(S2) = 4); alpha = 1 needs Gamma = 1"),
    ("E8", "E6(a3)", 3, "S2 4", "special class, hence 3-special; its cells were shifted onto the next row"),
    ("E8", "E6(a3)+A1", 2, "blank", "cells shifted one place left; the S2 printed here is the l=3 Gamma"),
    ("E8", "E6(a3)+A1", 3, "S2 4", "cells shifted one place left; Gamma S2 and alpha 4 = M~_3(S2) form the l=3 entry"),
    ("E8", "E8(b6)", 2, "S2 2", "alpha = 2 = M~_2(S2) while M~_2(S3) = 6; the printed Gamma S3 is inconsistent"),
]
GROUP_CORRECTIONS = [
    ("F4", "C3(a1)", "S1", "S2", "the component group of C3(a1) is S2"),
    ("E8", "2A2", "2", "S2", "the component group of 2A2 is S2"),
]
DISPUTES = [
    ("G2", "~A1", 2, "1 1", "blank",
     "printed l=2 column sums to 9 but the expected total is 8; j-induction from A1+~A1 gives phi2,2 = E(~A1,1), "
     "so ~A1 is 2-special and the sum 9 stands; the totals reading needs this row blank"),
    ("G2", "~A1", 3, "blank", "1 1",
     "printed l=3 column sums to 8 but the expected total is 9; j-induction from ~A2 gives phi1,3'' = E(A1,1), "
     "so A1 is 3-special and ~A1 is not; no special character of an l=3 subsystem reaches E(~A1,1)"),
]

EXPECTED = {
    ("G2", "2"): 8, ("G2", "3"): 9, ("G2", "good"): 10,
    ("F4", "2"): 28, ("F4", "3"): 35, ("F4", "good"): 37,
    ("E6", "2"): 27, ("E6", "3"): 28, ("E6", "good"): 30,
    ("E7", "2"): 64, ("E7", "3"): 72, ("E7", "good"): 76,
    ("E8", "2"): 131, ("E8", "3"): 150, ("E8", "5"): 162, ("E8", "good"): 166,
}

SOURCES = "printed table cells (verbatim); Springer correspondence and families of the Weyl group"


def parse_rows(type_name: str):
    primes = sprdata.BAD_PRIMES[type_name]
    out = []
    for line in ROWS[type_name].strip().splitlines():
        parts = [p.strip() for p in line.split("|")]
        name, group, cells = parts[0], parts[1], parts[2:]
        assert len(cells) == len(primes), line
        printed = {}
        for ell, cell in zip(primes, cells):
            g, a = cell.split()
            printed[ell] = Printed(None if g == "." else g, None if a == "." else a)
        out.append((name, group, printed))
    return out


def corrected(type_name, name, ell, printed):
    for t, c, e, fix, _ in ROW_CORRECTIONS:
        if (t, c, e) == (type_name, name, ell):
            return Printed.parse(fix)
    return printed


def corrected_group(type_name, name, group):
    for t, c, old, new, _ in GROUP_CORRECTIONS:
        if (t, c) == (type_name, name):
            assert old == group, (name, group)
            return new
    return group


def absolute_table(type_name: str) -> ClassTable:
    avals = {}
    specials = set()
    for a, members in FAMILIES[type_name]:
        specials.add(members[0])
        for m in members:
            avals[m] = a
    records = []
    for name, group, printed in parse_rows(type_name):
        b_u, grp, spr = SPRINGER[type_name][name]
        assert corrected_group(type_name, name, group) == grp, name
        entries = tuple(SpringerEntry(psi, ch, avals[ch]) for psi, ch in spr.items())
        triv = entries[0]
        records.append(UnipotentClassRecord(name, grp, triv.char in specials, entries, b_u, printed))
    header = {"type": type_name, "a-scale": "absolute", "labels": "weyl-characters", "sources": SOURCES}
    return ClassTable(type_name, header, records)


def _psi_labels(group: str) -> list[str]:
    if group == "1":
        return ["1"]
    n = int(group[1:])
    return ["".join(map(str, p)) for p in lmod._partitions(n)]


def _gamma_ok(rec: UnipotentClassRecord, ell: int, want: str) -> bool:
    return lmod.ell_special_quotient(rec, ell).label == ("1" if want == "1" else want)


def relative_record(type_name, name, group, printed):
    cols = {ell: corrected(type_name, name, ell, p) for ell, p in printed.items()}
    special = all(not p.blank for p in cols.values())
    psis = _psi_labels(group)
    triv, others = psis[0], psis[1:]
    options = [0, -1, None]  # top, lower, absent
    for choice in itertools.product(options, repeat=len(others)):
        entries = [SpringerEntry(triv, "*", 0)] + [SpringerEntry(p, "*", a) for p, a in zip(others, choice) if a is not None]
        rec = UnipotentClassRecord(name, group, special, tuple(entries), None, printed)
        if all(p.blank or _gamma_ok(rec, ell, p.gamma) for ell, p in cols.items()):
            return rec
    raise SystemExit(f"{type_name} {name}: no a-pattern reproduces the printed Gamma columns")


def relative_table(type_name: str) -> ClassTable:
    records = []
    for name, group, printed in parse_rows(type_name):
        grp = corrected_group(type_name, name, group)
        records.append(relative_record(type_name, name, grp, printed))
    header = {"type": type_name, "a-scale": "relative", "labels": "a-values-only", "sources": SOURCES}
    return ClassTable(type_name, header, records)


def discrepancies() -> list[Discrepancy]:
    items = []
    for t, c, old, new, why in GROUP_CORRECTIONS:
        items.append(Discrepancy(t, c, None, "group-correction", old, new, why))
    for t, c, ell, fix, why in ROW_CORRECTIONS:
        row = next(p for n, _, p in parse_rows(t) if n == c)
        items.append(Discrepancy(t, c, ell, "row-correction", str(row[ell]), fix, why))
    for t, c, ell, old, new, why in DISPUTES:
        items.append(Discrepancy(t, c, ell, "totals-dispute", old, new, why))
    return items


def check_absolute(table: ClassTable):
    """Gamma^l computed from the Springer data must equal the corrected print."""
    bad = []
    for rec in table.records:
        for ell, p in rec.printed.items():
            p = corrected(table.type_name, rec.class_name, ell, p)
            if not p.blank and not _gamma_ok(rec, ell, p.gamma):
                bad.append(f"{table.type_name} {rec.class_name} l={ell}: {lmod.ell_special_quotient(rec, ell).label} vs {p.gamma}")
    return bad


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--check", action="store_true", help="compare with the files on disk instead of writing")
    ap.add_argument("--out", type=Path, default=sprdata.data_dir())
    args = ap.parse_args(argv)

    files = {}
    tables = [absolute_table("G2"), absolute_table("F4")] + [relative_table(t) for t in ("E6", "E7", "E8")]
    problems = []
    for tab in tables:
        if tab.absolute:
            problems += check_absolute(tab)
        files[f"{tab.type_name}.classes"] = sprdata.format_class_table(tab)
    files["discrepancies"] = sprdata.format_discrepancies(discrepancies(), SOURCES)
    files["expected_totals"] = sprdata.format_totals(EXPECTED, "summary table of unipotent Brauer character counts")
    if problems:
        print("\n".join(problems), file=sys.stderr)
        return 1

    if args.check:
        stale = [n for n, text in files.items() if not (args.out / n).exists() or (args.out / n).read_text() != text]
        print("stale: " + ", ".join(stale) if stale else "data files are current")
        return 1 if stale else 0
    args.out.mkdir(parents=True, exist_ok=True)
    for n, text in files.items():
        (args.out / n).write_text(text)
    sprdata.clear_caches()
    report = sprdata.validate_all()
    for t, probs in report.items():
        print(f"{t}: {'ok' if not probs else '; '.join(probs)}")
    return 0 if not any(report.values()) else 1


if __name__ == "__main__":
    sys.exit(main())
