"""Step one for G2 under both readings of the extended diagram.

The census reads pseudo-Levi subsystems off the dual root system. This script
also runs the direct reading, lists every j-induced special character with its
Springer preimage, and prints the resulting alpha_2 and alpha_3 next to the
required totals.
"""

from unibrauer import lmod, sprdata
from unibrauer.rootsys import CartanType, build_root_system, ell_relevant_subsystems
from unibrauer.weylchar import ReflectionGroup, special_characters, weyl_characters


def step_one(rs, W, src, ref, ell):
    table = sprdata.load_class_table("G2")
    found = set()
    for sub in ell_relevant_subsystems(src, ell, ref):
        H = W if sub.d == 1 else ReflectionGroup(rs, sub.simple_roots)
        for w in special_characters(H):
            J = W.j_induce(H, w)
            cls, psi = sprdata.springer_class_of("G2", J.label)
            trivial = psi == sprdata.trivial_psi(table.record(cls).component_group)
            print(f"  {str(sub.sub_type):<7} d={sub.d}  {w.label:<8} -> {J.label:<8} = E({cls}, {psi}){'' if trivial else '  (psi nontrivial)'}")
            if trivial:
                found.add(cls)
    total = sum(lmod.m_tilde_ell(lmod.ell_special_quotient(table.record(c), ell), None, ell) for c in found)
    return sorted(found), total


def main():
    t = CartanType.parse("G2")
    rs = build_root_system(t)
    W = weyl_characters(t)
    for label, src, ref in (("dual (used by the census)", rs.dual(), rs), ("direct", rs, None)):
        print(f"reading: {label}")
        totals = []
        for ell in (2, 3):
            print(f" l = {ell}")
            classes, total = step_one(rs, W, src, ref, ell)
            print(f"  {ell}-special: {classes}, alpha_{ell} = {total}")
            totals.append(total)
        print(f" (alpha_2, alpha_3) = {tuple(totals)}; required {(sprdata.expected_total('G2', 2), sprdata.expected_total('G2', 3))}")
        print()


if __name__ == "__main__":
    main()
