import pytest

from unibrauer import sprdata
from unibrauer.permgrp import symmetric_group
from unibrauer.rootsys import CartanType, build_root_system, pseudo_levi_subsystems
from unibrauer.weylchar import (
    FAMILY_COUNTS,
    IntegrityError,
    ReflectionGroup,
    special_characters,
    weyl_characters,
)

COMPUTED = ["A2", "B3", "C3", "D4", "G2", "F4"]


def W(name):
    return weyl_characters(CartanType.parse(name))


@pytest.mark.parametrize("name", COMPUTED)
def test_poincare_identity(name):
    G = W(name)
    assert G.poincare_identity_holds()
    assert G.trivial.fake_degree.coefficients == (1,)
    assert G.sign.fake_degree.valuation == len(G.rs.positive_roots)
    for w in G.characters:
        fd = w.fake_degree
        assert fd.at_one() == w.degree
        assert all(c >= 0 for c in fd.coefficients)
        assert fd.valuation <= fd.top_degree


def test_g2_fake_degrees():
    G = W("G2")
    assert G.sign.fake_degree.coefficients == (0,) * 6 + (1,)
    assert G.degrees == (2, 6)
    assert sorted(w.key for w in G.characters) == [(1, 0), (1, 3), (1, 3), (1, 6), (2, 1), (2, 2)]


def test_f4_reflection_representation():
    G = W("F4")
    refl = [w for w in G.characters if w.degree == 4 and w.b == 1]
    assert len(refl) == 1 and refl[0].label == "phi4,1"
    assert len(G.characters) == 25


def test_special_counts():
    assert len(special_characters(W("A2"))) == 3
    # the families of W(G2) are {phi1,0}, {phi1,6} and the four-element family
    assert len(special_characters(W("G2"))) == FAMILY_COUNTS["G2"] == 3
    assert len(special_characters(W("F4"))) == FAMILY_COUNTS["F4"] == 11


def test_j_induction_trivial_cases():
    G = W("G2")
    for sub in pseudo_levi_subsystems(G.rs):
        H = ReflectionGroup(G.rs, sub.simple_roots)
        assert G.j_induce(H, H.trivial).label == G.trivial.label
    assert G.j_induce(G, G.sign).label == G.sign.label


def test_j_induction_from_a2_sign():
    G = W("G2")
    a2 = next(s for s in pseudo_levi_subsystems(G.rs) if str(s.sub_type) == "A2")
    H = ReflectionGroup(G.rs, a2.simple_roots)
    J = G.j_induce(H, H.sign)
    assert J.b == 3 == H.sign.b
    ind = G.induce(H, H.sign.character)
    assert [lab for lab in ind if G.by_label(lab).b == 3] == [J.label]


def _subsystem_groups(name):
    G = W(name)
    rs = G.rs
    for src, ref in ((rs, None), (rs.dual(), rs)):
        for sub in pseudo_levi_subsystems(src, ref):
            yield src is not rs, G, ReflectionGroup(rs, sub.simple_roots)


@pytest.mark.parametrize("name", ["G2", "F4"])
def test_j_induction_preserves_b(name):
    for _, G, H in _subsystem_groups(name):
        for w in special_characters(H):
            assert G.j_induce(H, w).b == w.b


@pytest.mark.parametrize("name", ["G2", "F4"])
def test_j_induced_specials_of_dual_subsystems_are_springer_trivial(name):
    table = sprdata.load_class_table(name)
    for dual, G, H in _subsystem_groups(name):
        if not dual:
            continue
        for w in special_characters(H):
            cls, psi = sprdata.springer_class_of(name, G.j_induce(H, w).label)
            assert psi == sprdata.trivial_psi(table.record(cls).component_group)


def test_j_induction_rejects_a_wrong_b_invariant():
    # sign of a rank-one subgroup with its b-invariant forged to 0: no
    # constituent of the induced character has b = 0
    from dataclasses import replace

    G = W("A2")
    H = ReflectionGroup(G.rs, [G.rs.simple_roots[0]])
    forged = replace(H.sign, fake_degree=replace(H.sign.fake_degree, coefficients=(1,)))
    with pytest.raises(IntegrityError):
        G.j_induce(H, forged)


def test_weyl_group_of_a3_is_s4():
    assert W("A3").group.order == symmetric_group(4).order
