import time

import pytest

from unibrauer import lmod, sprdata
from unibrauer.permgrp import FAction, cyclic_group, direct_product, instantiate, symmetric_group
from unibrauer.sprdata import SpringerEntry, UnipotentClassRecord

INVENTORY = ["1", "S2", "S3", "S4", "S5", "Z3", "Z4", "Z6", "Z2^2", "Z2^3", "S2xS3", "S2xS2xS3", "S3xS3"]


@pytest.mark.parametrize("label", INVENTORY)
@pytest.mark.parametrize("ell", [2, 3, 5])
def test_decomposition_data_verifies(label, ell):
    G = instantiate(label)
    data = lmod.decomposition_data(G, ell)
    assert lmod.verify_decomposition(data) == []
    C = data.cartan()
    assert C == C.T
    if G.order % ell:
        n = len(G.character_table)
        assert data.matrix == tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def _pims(label, ell):
    return sorted(sorted(P.labelled().items()) for P in lmod.pim_set(instantiate(label), ell))


def test_pim_examples():
    assert _pims("S3", 2) == [[("111", 1), ("3", 1)], [("21", 1)]]
    assert _pims("S3", 5) == [[("111", 1)], [("21", 1)], [("3", 1)]]
    (P,) = lmod.pim_set(cyclic_group(4), 2)
    assert P.multiplicities == (1, 1, 1, 1)


def test_projective_character_rejects_bad_multiplicities():
    G = symmetric_group(3)
    with pytest.raises(ValueError):
        lmod.ProjectiveCharacter(G, (0, 0, 0))
    with pytest.raises(ValueError):
        lmod.ProjectiveCharacter(G, (1, -1, 0))


def test_outside_inventory():
    from unibrauer.permgrp import Group

    D4 = Group(4, [(1, 2, 3, 0), (3, 2, 1, 0)])  # dihedral of order 8
    with pytest.raises(lmod.InventoryError):
        lmod.pim_set(D4, 2)


def test_murnaghan_nakayama_small_values():
    assert lmod.murnaghan_nakayama((2, 1), (1, 1, 1)) == 2
    assert lmod.murnaghan_nakayama((2, 1), (3,)) == -1
    assert lmod.murnaghan_nakayama((3, 1, 1), (5,)) == 1


def _record(group, entries, b_u):
    return UnipotentClassRecord("test", group, True, tuple(SpringerEntry(p, "*", a) for p, a in entries), b_u)


def test_canonical_quotient_examples():
    g2 = sprdata.load_class_table("G2")
    assert lmod.canonical_quotient(g2.record("G2(a1)")).label == "S3"
    assert lmod.canonical_quotient(g2.record("G2")).label == "1"
    f4 = sprdata.load_class_table("F4")
    assert lmod.canonical_quotient(f4.record("F4(a3)")).label == "S4"


def test_ell_special_quotient_examples():
    g2 = sprdata.load_class_table("G2")
    assert lmod.ell_special_quotient(g2.record("G2(a1)"), 2).label == "S3"
    rec = _record("Z6", [("0", 3)], 3)
    assert lmod.ell_special_quotient(rec, 2).order == 2
    assert lmod.ell_special_quotient(rec, 3).order == 3


@pytest.mark.parametrize("name", sprdata.EXCEPTIONAL)
def test_coprime_ell_gives_canonical_quotient(name):
    # the canonical quotient needs a psi with a = b_u, which only special classes have
    table = sprdata.load_class_table(name)
    for r in (r for r in table.records if r.special):
        A = instantiate(r.component_group)
        canon = lmod.canonical_quotient_data(r)
        for ell in (2, 3, 5, 7):
            if A.order % ell:
                q = lmod.ell_special_quotient_data(r, ell)
                assert q.kernel == canon.kernel


@pytest.mark.parametrize("name", sprdata.EXCEPTIONAL)
def test_quotients_are_minimal(name):
    table = sprdata.load_class_table(name)
    for r in (r for r in table.records if r.special):
        A = instantiate(r.component_group)
        if A.order == 1:
            continue
        canon = lmod.canonical_quotient_data(r)
        labels = lmod.irreducible_labels(A)
        assert lmod.is_minimal_quotient(A, canon.kernel, [labels[p] for p in canon.characters])
        for ell in sprdata.BAD_PRIMES[name]:
            q = lmod.ell_special_quotient_data(r, ell)
            assert A.order % q.group.order == 0


def test_m_tilde_values():
    assert lmod.m_tilde(instantiate("1")) == 1
    assert lmod.m_tilde(symmetric_group(2)) == 4
    assert lmod.m_tilde(symmetric_group(3)) == 8
    assert lmod.m_tilde(symmetric_group(4)) == 21
    assert lmod.m_tilde(symmetric_group(5)) == 39


def test_m_tilde_ell_values_and_runtime():
    start = time.perf_counter()
    got = {
        (n, ell): lmod.m_tilde_ell(symmetric_group(n), None, ell)
        for n, ell in [(3, 2), (3, 3), (4, 2), (4, 3), (5, 2), (5, 3), (5, 5)]
    }
    assert got == {(3, 2): 6, (3, 3): 5, (4, 2): 8, (4, 3): 18, (5, 2): 18, (5, 3): 27, (5, 5): 34}
    assert time.perf_counter() - start < 1.0


@pytest.mark.parametrize("label", INVENTORY)
def test_m_tilde_ell_degenerations(label):
    G = instantiate(label)
    for ell in (2, 3, 5, 7):
        if G.order % ell:
            assert lmod.m_tilde_ell(G, None, ell) == lmod.m_tilde(G)
        n = G.order
        while n % ell == 0:
            n //= ell
        if n == 1 and G.order > 1:
            assert lmod.m_tilde_ell(G, None, ell) == len(G.classes)


def test_trivial_faction_matches_none():
    G = direct_product(symmetric_group(2), symmetric_group(3))
    assert lmod.m_tilde(G, FAction.trivial(G)) == lmod.m_tilde(G)


def test_nontrivial_f_is_flagged():
    Z4 = cyclic_group(4)
    inv = FAction((tuple((i - 1) % 4 for i in range(4)),))
    m = lmod.m_tilde(Z4, inv)
    assert isinstance(m, lmod.BestEffort) and m.flagged and int(m) == 4
    m2 = lmod.m_tilde_ell(Z4, inv, 2)
    assert isinstance(m2, lmod.BestEffort) and int(m2) == 2


def test_canonical_quotient_needs_a_psi_at_b_u():
    from unibrauer.weylchar import IntegrityError

    rec = sprdata.load_class_table("F4").record("B2")
    assert not rec.special
    with pytest.raises(IntegrityError):
        lmod.canonical_quotient(rec)
