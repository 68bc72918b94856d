"""Acceptance criteria, one test each.

Every test prints a single ``criterion N: PASS|FAIL ...`` line before
asserting; pytest repeats them in an end-of-session summary. Run directly with
``python3 tests/test_acceptance.py`` for just the summary lines.
"""

from __future__ import annotations

import json
import random
import subprocess
import sys
import time

from unibrauer import census, classical, lmod, sprdata, unitri
from unibrauer.cyclo import Cyc
from unibrauer.permgrp import instantiate, symmetric_group
from unibrauer.rootsys import CartanType, pseudo_levi_subsystems
from unibrauer.weylchar import ReflectionGroup, special_characters, weyl_characters


LINES: dict[int, str] = {}  # collected for the end-of-session summary (see conftest)


def report(n: int, ok: bool, detail: str):
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}"
    LINES[n] = line
    sys.__stdout__.write(line + "\n")
    sys.__stdout__.flush()
    return line


def _fresh(code: str) -> dict:
    """Run code in a clean interpreter (cold caches) and return its JSON output."""
    out = subprocess.run([sys.executable, "-c", code], capture_output=True, text=True, check=True)
    return json.loads(out.stdout.strip().splitlines()[-1])


# 1 -------------------------------------------------------------------------------

M_TILDE_ELL = {(3, 2): 6, (3, 3): 5, (4, 2): 8, (4, 3): 18, (5, 2): 18, (5, 3): 27, (5, 5): 34}


def test_criterion_1_m_tilde_ell_counts():
    start = time.perf_counter()
    got = {(n, ell): lmod.m_tilde_ell(symmetric_group(n), None, ell) for n, ell in M_TILDE_ELL}
    elapsed = time.perf_counter() - start
    ok = got == M_TILDE_ELL and elapsed < 1.0
    report(1, ok, f"M~_l(S_n) = {[got[k] for k in M_TILDE_ELL]} in {elapsed:.2f}s")
    assert got == M_TILDE_ELL
    assert elapsed < 1.0


# 2 -------------------------------------------------------------------------------

CENSUS = {
    ("F4", 2): 28, ("F4", 3): 35,
    ("E6", 2): 27, ("E6", 3): 28,
    ("E7", 2): 64, ("E7", 3): 72,
    ("E8", 2): 131, ("E8", 3): 150, ("E8", 5): 162,
}

_CENSUS_CODE = """
import json, time
t0 = time.perf_counter()
from unibrauer import census
out = {}
for t, ell in %r:
    rep = census.alpha(t, ell)
    out[f"{t},{ell}"] = [rep.total, rep.verdict, census.ell_special_classes(t, ell).source]
print(json.dumps({"results": out, "seconds": time.perf_counter() - t0}))
""" % (list(CENSUS),)


def test_criterion_2_census_totals():
    res = _fresh(_CENSUS_CODE)
    got = {tuple([k.split(",")[0], int(k.split(",")[1])]): v for k, v in res["results"].items()}
    totals = {k: v[0] for k, v in got.items()}
    sources_ok = all(got[k][2] == ("computed-j-induction" if k[0] == "F4" else "curated") for k in got)
    verdicts_ok = all(v[1] == "match" for v in got.values())
    ok = totals == CENSUS and sources_ok and verdicts_ok and res["seconds"] < 30
    report(2, ok, f"totals {[totals[k] for k in CENSUS]} in {res['seconds']:.1f}s (cold)")
    assert totals == CENSUS
    assert sources_ok and verdicts_ok
    assert res["seconds"] < 30


# 3 -------------------------------------------------------------------------------

GOOD = {"G2": 10, "F4": 37, "E6": 30, "E7": 76, "E8": 166}


def test_criterion_3_good_characteristic_counts():
    got = {t: census.unipotent_character_count(t) for t in GOOD}
    ok = got == GOOD
    report(3, ok, f"unipotent character counts {list(got.values())}")
    assert got == GOOD


# 4 -------------------------------------------------------------------------------


def test_criterion_4_g2_adjudication():
    reps = {ell: census.alpha("G2", ell) for ell in (2, 3)}
    totals = (reps[2].total, reps[3].total)
    disputes = [d for d in sprdata.load_discrepancies("G2") if d.kind == "totals-dispute"]
    flagged = all(r.verdict == "disputed" and r.notes for r in reps.values())
    names = sorted({d.class_name for d in disputes})
    ok = totals == (8, 9) and flagged and bool(disputes)
    report(
        4, ok,
        f"computed (alpha_2, alpha_3) = {totals}, required (8, 9); dispute report names rows {names}",
    )
    assert flagged and disputes
    assert totals == (8, 9)


# 5 -------------------------------------------------------------------------------

_CLASSICAL_CODE = """
import json, time
t0 = time.perf_counter()
from unibrauer import classical
formula = classical.rational_unipotent_count("C", 2, 3)
brute = classical.brute_force_class_count("C", 2, 3)
sl2 = classical.alpha_type_a(2, 2, 3, "linear")
print(json.dumps({"formula": formula, "brute": brute, "sl2": sl2.total, "sl2_oracle": sl2.oracle_total,
                  "seconds": time.perf_counter() - t0}))
"""


def test_criterion_5_classical_oracle():
    res = _fresh(_CLASSICAL_CODE)
    ok = res["formula"] == res["brute"] == 7 and res["sl2"] == res["sl2_oracle"] == 3 and res["seconds"] < 60
    report(
        5, ok,
        f"Sp4(3): formula {res['formula']}, brute force {res['brute']}; SL2(3) type A total {res['sl2']} "
        f"({res['seconds']:.1f}s)",
    )
    assert res["formula"] == res["brute"] == 7
    assert res["sl2"] == res["sl2_oracle"] == 3
    assert res["seconds"] < 60


# 6 -------------------------------------------------------------------------------


def test_criterion_6_type_a_convention_audit():
    audit = classical.type_a_convention_audit()
    ok = not audit.adopted_mismatches and bool(audit.literal_mismatches)
    report(6, ok, audit.verdict)
    assert audit.adopted_mismatches == ()
    assert audit.literal_mismatches  # exactly one of the two signs works


# 7 -------------------------------------------------------------------------------


def _lower_unitriangular(rng, n, hi):
    return [[1 if i == j else (rng.randint(0, hi) if j < i else 0) for j in range(n)] for i in range(n)]


def constructed_instance(rng):
    """Nonnegative A, B (entries <= 3) with AB lower unitriangular.

    A = L P and B = P^-1 M for lower unitriangular L, M and a permutation P.
    """
    n = rng.randint(1, 6)
    L, M = _lower_unitriangular(rng, n, 3), _lower_unitriangular(rng, n, 3)
    perm = list(range(n))
    rng.shuffle(perm)
    A = [[L[i][perm.index(j)] for j in range(n)] for i in range(n)]  # columns of L moved by perm
    B = [M[perm.index(j)] for j in range(n)]
    return A, B


def test_criterion_7_unitriangular_lemma():
    rng = random.Random(20261014)
    failures, disagreements, factor_errors = 0, 0, 0
    for _ in range(1000):
        A, B = constructed_instance(rng)
        C = unitri.matmul(A, B)
        if not unitri.verify_factorization(A, B, C):
            factor_errors += 1
        r = unitri.column_unitriangularize(A)
        if not r.ok or not unitri.is_lower_unitriangular(unitri.permute_columns(A, r.sigma)):
            failures += 1
        # the exhaustive referee runs on every instance (n <= 6 keeps it cheap)
        if (unitri.exhaustive_columns(A) is not None) != r.ok:
            disagreements += 1
        # a perturbed copy is usually not unitriangular; the two searches must still agree
        P = [row[:] for row in A]
        i, j = rng.randrange(len(P)), rng.randrange(len(P))
        P[i][j] = rng.randint(0, 3)
        if (unitri.exhaustive_columns(P) is not None) != unitri.column_unitriangularize(P).ok:
            disagreements += 1
    ok = failures == disagreements == factor_errors == 0
    report(7, ok, f"1000 constructed instances: {failures} failures, {disagreements} disagreements with exhaustive search")
    assert factor_errors == 0
    assert failures == 0
    assert disagreements == 0


# 8 -------------------------------------------------------------------------------


def _orthogonality_failures(G) -> int:
    table = G.character_table
    bad = 0
    for i, chi in enumerate(table):
        for j, psi in enumerate(table):
            if G.inner(chi, psi) != (1 if i == j else 0):
                bad += 1
    zero = Cyc.integer(G.exponent, 0)
    for a, ca in enumerate(G.classes):
        for b in range(len(G.classes)):
            s = zero
            for chi in table:
                s = s + chi.values[a] * chi.values[b].conj()
            if s != Cyc.integer(G.exponent, G.order // ca.size if a == b else 0):
                bad += 1
    return bad


def test_criterion_8_exact_invariants():
    groups = ["S3", "S4", "S5", "Z6", "Z2^3", "S2xS3", "Weyl(G2)", "Weyl(F4)"]
    orth = {g: _orthogonality_failures(instantiate(g)) for g in groups}
    poincare = {t: weyl_characters(CartanType.parse(t)).poincare_identity_holds() for t in ("G2", "F4")}
    checked, broken = 0, 0
    for t in ("G2", "F4"):
        W = weyl_characters(CartanType.parse(t))
        for src, ref in ((W.rs, None), (W.rs.dual(), W.rs)):
            for sub in pseudo_levi_subsystems(src, ref):
                H = ReflectionGroup(W.rs, sub.simple_roots)
                for w in special_characters(H):
                    checked += 1
                    broken += W.j_induce(H, w).b != w.b
    ok = not any(orth.values()) and all(poincare.values()) and broken == 0
    report(
        8, ok,
        f"orthogonality failures {sum(orth.values())} over {len(groups)} groups; Poincare G2/F4 "
        f"{'exact' if all(poincare.values()) else 'FAILS'}; b preserved in {checked - broken}/{checked} j-inductions",
    )
    assert not any(orth.values())
    assert all(poincare.values())
    assert broken == 0


if __name__ == "__main__":
    failed = 0
    for name, fn in sorted((k, v) for k, v in dict(globals()).items() if k.startswith("test_criterion_")):
        try:
            fn()
        except AssertionError:
            failed += 1
    sys.exit(1 if failed else 0)
