"""The counting pipeline.

Step one finds the l-special unipotent classes. For G2 and F4 this is computed:
every special character of the Weyl group of an l-relevant pseudo-Levi
subsystem is j-induced to W and looked up in the Springer table. The
subsystems come from the extended diagram of the dual root system (their Weyl
groups are the centralisers of isolated elements of the dual group, acting on
the same reflections), and a class counts when the j-induced character is
E_{u,1}. For the E types the flags are curated data.

Step two computes Gamma^l_u and adds up |M~_l(Gamma^l_u)| over those classes.
"""

from __future__ import annotations

from dataclasses import dataclass, field, fields

from . import lmod, sprdata
from .rootsys import CartanType, build_root_system, ell_relevant_subsystems
from .sprdata import DataError, trivial_psi
from .weylchar import IntegrityError, ReflectionGroup, special_characters, weyl_characters

COMPUTED_TYPES = ("G2", "F4")


def _tname(t) -> str:
    name = str(CartanType.parse(t) if isinstance(t, str) else t)
    if name not in sprdata.EXCEPTIONAL:
        raise DataError(f"{name} is not an exceptional type")
    return name


@dataclass(frozen=True)
class Witness:
    subsystem: str
    character: str
    induced: str

    def __str__(self):
        return f"j[{self.subsystem}]({self.character})={self.induced}"


@dataclass(frozen=True)
class SpecialSet:
    type_name: str
    ell: int
    source: str  # computed-j-induction | curated
    classes: tuple[str, ...]
    witnesses: dict = field(default_factory=dict, compare=False, hash=False)


def computed_ell_special(t, ell: int) -> SpecialSet:
    name = _tname(t)
    if name not in COMPUTED_TYPES:
        raise DataError(f"no computed step one for {name}; use the curated flags")
    rs = build_root_system(CartanType.parse(name))
    W = weyl_characters(CartanType.parse(name))
    table = sprdata.load_class_table(name)
    found: dict[str, list[Witness]] = {}
    for sub in ell_relevant_subsystems(rs.dual(), ell, length_reference=rs):
        H = W if sub.d == 1 else ReflectionGroup(rs, sub.simple_roots, label=str(sub.sub_type))
        for w in special_characters(H):
            J = W.j_induce(H, w)
            cls, psi = sprdata.springer_class_of(name, J.label)
            rec = table.record(cls)
            if psi == trivial_psi(rec.component_group):
                found.setdefault(cls, []).append(Witness(str(sub.sub_type), w.label, J.label))
    order = [r.class_name for r in table.records if r.class_name in found]
    return SpecialSet(name, ell, "computed-j-induction", tuple(order), found)


def curated_special(t, ell: int) -> SpecialSet:
    name = _tname(t)
    table = sprdata.load_class_table(name)
    return SpecialSet(name, ell, "curated", tuple(sprdata.curated_ell_special(table, ell)))


def ell_special_classes(t, ell: int) -> SpecialSet:
    """Computed for G2 and F4, curated for the E types."""
    name = _tname(t)
    table = sprdata.load_class_table(name)
    if ell not in sprdata.BAD_PRIMES[name]:
        return SpecialSet(name, ell, "special", tuple(r.class_name for r in table.records if r.special))
    s = computed_ell_special(name, ell) if name in COMPUTED_TYPES else curated_special(name, ell)
    missing = [r.class_name for r in table.records if r.special and r.class_name not in s.classes]
    if missing:
        raise IntegrityError(f"special classes missing from the {ell}-special set: {missing}")
    return s


# -- reports ----------------------------------------------------------------------


@dataclass(frozen=True)
class CensusRow:
    class_name: str
    component_group: str
    ell_special: bool
    source: str
    gamma: str
    alpha: int
    expected_alpha: int
    verdict: str  # match | mismatch | disputed


@dataclass
class CensusReport:
    type_name: str
    ell: int
    rows: list[CensusRow]
    total: int
    expected: int
    verdict: str  # match | mismatch | disputed
    notes: list[str]

    def row(self, name: str) -> CensusRow:
        return next(r for r in self.rows if r.class_name == name)

    @property
    def special_classes(self) -> list[str]:
        return [r.class_name for r in self.rows if r.ell_special]

    def human(self) -> str:
        head = f"{self.type_name}, l = {self.ell}"
        lines = [head, "-" * len(head)]
        w = max(len(r.class_name) for r in self.rows)
        lines.append(f"{'class':<{w}}  A    Gamma  alpha  printed  source                verdict")
        for r in self.rows:
            if not r.ell_special and not r.expected_alpha:
                continue
            g = r.gamma if r.ell_special else "."
            a = str(r.alpha) if r.ell_special else "."
            lines.append(
                f"{r.class_name:<{w}}  {r.component_group:<4} {g:<6} {a:<6} {r.expected_alpha or '.':<8} {r.source:<21} {r.verdict}"
            )
        lines.append(f"total {self.total}, expected {self.expected}: {self.verdict}")
        lines += [f"note: {n}" for n in self.notes]
        return "\n".join(lines)


_ROW_FIELDS = [f.name for f in fields(CensusRow)]


def format_structured(rep: CensusReport) -> str:
    out = [f"type: {rep.type_name}", f"ell: {rep.ell}", f"total: {rep.total}", f"expected: {rep.expected}", f"verdict: {rep.verdict}"]
    out += [f"note: {n}" for n in rep.notes]
    out.append("rows: " + "\t".join(_ROW_FIELDS))
    for r in rep.rows:
        vals = [getattr(r, k) for k in _ROW_FIELDS]
        out.append("row: " + "\t".join(("yes" if v else "no") if isinstance(v, bool) else str(v) for v in vals))
    return "\n".join(out) + "\n"


def parse_structured(text: str) -> CensusReport:
    head: dict[str, str] = {}
    notes, rows = [], []
    cols = _ROW_FIELDS
    for line in text.splitlines():
        if not line.strip():
            continue
        key, _, val = line.partition(": ")
        if key == "note":
            notes.append(val)
        elif key == "rows":
            cols = val.split("\t")
        elif key == "row":
            d = dict(zip(cols, val.split("\t")))
            rows.append(
                CensusRow(
                    d["class_name"], d["component_group"], d["ell_special"] == "yes", d["source"], d["gamma"],
                    int(d["alpha"]), int(d["expected_alpha"]), d["verdict"],
                )
            )
        else:
            head[key] = val
    return CensusReport(head["type"], int(head["ell"]), rows, int(head["total"]), int(head["expected"]), head["verdict"], notes)


def alpha(t, ell: int) -> CensusReport:
    """alpha_l = sum over l-special u of |M~_l(Gamma^l_u)|, with F acting trivially."""
    name = _tname(t)
    table = sprdata.load_class_table(name)
    sset = ell_special_classes(name, ell)
    disputes = [d for d in sprdata.load_discrepancies(name) if d.ell == ell and d.kind == "totals-dispute"]
    disputed_rows = {d.class_name for d in disputes}
    rows = []
    for rec in table.records:
        printed = sprdata.corrected_printed(table, rec, ell) if ell in rec.printed else None
        exp_alpha = printed.value if printed is not None else 0
        if rec.class_name in sset.classes:
            q = lmod.ell_special_quotient(rec, ell)
            a = lmod.m_tilde_ell(q, None, ell)
            gamma = q.label
        else:
            a, gamma = 0, "-"
        if printed is None:
            verdict = "match"
        elif a == exp_alpha and (printed.blank or printed.gamma == gamma):
            verdict = "match"
        else:
            verdict = "disputed" if rec.class_name in disputed_rows else "mismatch"
        rows.append(CensusRow(rec.class_name, rec.component_group, rec.class_name in sset.classes, sset.source, gamma, a, exp_alpha, verdict))
    total = sum(r.alpha for r in rows)
    expected = sprdata.expected_total(name, ell) if ell in sprdata.BAD_PRIMES[name] else unipotent_character_count(name)
    notes = []
    if total == expected:
        verdict = "match" if all(r.verdict == "match" for r in rows) else "mismatch"
    else:
        verdict = "disputed" if disputes else "mismatch"
    printed_total = sum(r.expected_alpha for r in rows)
    if disputes or total != expected:
        notes.append(f"computed total {total}, printed column sums to {printed_total}, expected total {expected}")
        for d in disputes:
            notes.append(f"printed row {d.class_name} (l={ell}) printed '{d.printed}', totals reading needs '{d.corrected}': {d.reason}")
    if sset.source == "computed-j-induction":
        cur = curated_special(name, ell)
        if set(cur.classes) != set(sset.classes):
            extra = sorted(set(cur.classes) ^ set(sset.classes))
            notes.append(f"computed and curated l-special sets differ in {extra}")
    return CensusReport(name, ell, rows, total, expected, verdict, notes)


def unipotent_character_count(t) -> int:
    """Sum over special classes of |M~(Gamma_u)|: the good-characteristic count."""
    name = _tname(t)
    table = sprdata.load_class_table(name)
    return sum(int(lmod.m_tilde(lmod.canonical_quotient(r))) for r in table.records if r.special)


def good_count_breakdown(t) -> list[tuple[str, str, int]]:
    name = _tname(t)
    table = sprdata.load_class_table(name)
    out = []
    for r in table.records:
        if r.special:
            q = lmod.canonical_quotient(r)
            out.append((r.class_name, q.label, int(lmod.m_tilde(q))))
    return out
