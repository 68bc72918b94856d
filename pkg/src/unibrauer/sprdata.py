"""Curated unipotent-class tables for the exceptional types.

File format (``data/<type>.classes``) is line oriented. Header lines start with
``%`` and carry ``key: value`` pairs; the body is a sequence of stanzas
separated by blank lines, one ``field: value`` per line. Fields:

``class``       class name (``~`` marks short-root components)
``group``       component group label (1, S2, S3, S4, S5)
``special``     yes | no
``b_u``         dimension of the Springer fibre (absolute a-scale only)
``springer``    space separated ``psi=char@a`` entries; ``psi`` is a partition
                label of an irreducible of the component group, ``char`` a
                Weyl character label (``*`` when only the a-value is recorded),
                ``a`` its a-value
``printed.<l>`` the printed cells for the prime l: ``<Gamma> <alpha>`` or ``blank``

The header ``checksum`` is the sha256 of the body text. ``a-scale`` is
``absolute`` (true a-values, b_u present) or ``relative`` (a-values only
meaningful up to a common shift; the value attached to psi = trivial plays
the role of b_u).
"""

from __future__ import annotations

import hashlib
import os
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path

SCHEMA = "unibrauer-classes/1"
DISCREPANCY_SCHEMA = "unibrauer-discrepancies/1"
TOTALS_SCHEMA = "unibrauer-totals/1"
NORMALIZATION = "trivial-class=sign regular-class=trivial"
EXCEPTIONAL = ("G2", "F4", "E6", "E7", "E8")
BAD_PRIMES = {"G2": (2, 3), "F4": (2, 3), "E6": (2, 3), "E7": (2, 3), "E8": (2, 3, 5)}
RECORD_COUNTS = {"G2": 5, "F4": 16, "E6": 21, "E7": 45, "E8": 70}
GROUP_LABELS = ("1", "S2", "S3", "S4", "S5")
FAMILY_COUNTS = {"G2": 3, "F4": 11, "E6": 17, "E7": 35, "E8": 46}


class DataError(ValueError):
    def __init__(self, message: str, problems: list[str] | None = None):
        self.problems = problems or []
        full = message + ("".join(f"\n  - {p}" for p in self.problems))
        super().__init__(full)


def data_dir() -> Path:
    env = os.environ.get("UNIBRAUER_DATA")
    return Path(env) if env else Path(__file__).with_name("data")


@dataclass(frozen=True)
class SpringerEntry:
    psi: str
    char: str  # "*" when unconstrained
    a: int

    def __str__(self):
        return f"{self.psi}={self.char}@{self.a}"

    @classmethod
    def parse(cls, text: str) -> "SpringerEntry":
        psi, rest = text.split("=", 1)
        char, a = rest.rsplit("@", 1)
        return cls(psi, char, int(a))


@dataclass(frozen=True)
class Printed:
    """One printed cell pair, kept verbatim; ``None`` marks an empty cell.

    A well-formed entry has both cells, with an integer alpha; a blank entry
    (class not l-special) has neither. Anything else is a printing defect that
    must be covered by a row correction.
    """

    gamma: str | None
    alpha: str | None

    @property
    def blank(self) -> bool:
        return self.gamma is None and self.alpha is None

    @property
    def well_formed(self) -> bool:
        return self.blank or (self.gamma is not None and self.alpha is not None and self.alpha.isdigit())

    @property
    def value(self) -> int:
        return int(self.alpha) if self.alpha is not None and self.alpha.isdigit() else 0

    def __str__(self):
        if self.blank:
            return "blank"
        return f"{self.gamma or '-'} {self.alpha or '-'}"

    @classmethod
    def parse(cls, text: str) -> "Printed":
        text = text.strip()
        if text == "blank":
            return cls(None, None)
        g, a = text.split()
        return cls(None if g == "-" else g, None if a == "-" else a)


@dataclass(frozen=True)
class UnipotentClassRecord:
    class_name: str
    component_group: str
    special: bool
    springer: tuple[SpringerEntry, ...]
    b_u: int | None
    printed: dict = field(default_factory=dict, hash=False, compare=True)

    def entry(self, psi: str) -> SpringerEntry | None:
        for e in self.springer:
            if e.psi == psi:
                return e
        return None

    @property
    def trivial_entry(self) -> SpringerEntry:
        e = self.entry(trivial_psi(self.component_group))
        if e is None:
            raise DataError(f"{self.class_name}: no entry for the trivial character")
        return e

    @property
    def a_values(self) -> dict[str, int]:
        return {e.psi: e.a for e in self.springer}

    @property
    def anchor(self) -> int:
        """b_u on the absolute scale, or a(psi = 1) on the relative scale."""
        return self.b_u if self.b_u is not None else self.trivial_entry.a


@dataclass
class ClassTable:
    type_name: str
    header: dict
    records: list[UnipotentClassRecord]

    @property
    def absolute(self) -> bool:
        return self.header.get("a-scale") == "absolute"

    def record(self, name: str) -> UnipotentClassRecord:
        for r in self.records:
            if r.class_name == name:
                return r
        raise KeyError(name)


@dataclass(frozen=True)
class Discrepancy:
    type_name: str
    class_name: str
    ell: int | None
    kind: str  # row-correction | group-correction | totals-dispute
    printed: str
    corrected: str
    reason: str


def trivial_psi(group: str) -> str:
    if group == "1":
        return "1"
    if group.startswith("S"):
        return group[1:]
    raise DataError(f"unknown component group {group}")


# -- parsing / writing ------------------------------------------------------


def _split(text: str):
    header, body = {}, []
    for line in text.splitlines():
        if line.startswith("%"):
            k, _, v = line[1:].strip().partition(":")
            header[k.strip()] = v.strip()
        else:
            body.append(line)
    return header, "\n".join(body).strip("\n") + "\n"


def checksum(body: str) -> str:
    return "sha256:" + hashlib.sha256(body.encode()).hexdigest()


def _stanzas(body: str):
    cur = {}
    for line in body.splitlines():
        if not line.strip():
            if cur:
                yield cur
                cur = {}
            continue
        k, sep, v = line.partition(":")
        if not sep:
            raise DataError(f"malformed line {line!r}")
        k = k.strip()
        if k in cur:
            raise DataError(f"duplicate field {k!r} in stanza")
        cur[k] = v.strip()
    if cur:
        yield cur


def _check_header(header: dict, schema: str, where: str):
    if header.get("schema") != schema:
        raise DataError(f"{where}: unsupported schema {header.get('schema')!r} (expected {schema})")


def parse_class_table(text: str, where: str = "<text>", verify_checksum: bool = True) -> ClassTable:
    header, body = _split(text)
    _check_header(header, SCHEMA, where)
    if header.get("normalization") != NORMALIZATION:
        raise DataError(f"{where}: unexpected Springer normalization {header.get('normalization')!r}")
    if verify_checksum and header.get("checksum") != checksum(body):
        raise DataError(f"{where}: checksum mismatch")
    records = []
    for st in _stanzas(body):
        try:
            printed = {int(k.split(".")[1]): Printed.parse(v) for k, v in st.items() if k.startswith("printed.")}
            rec = UnipotentClassRecord(
                class_name=st["class"],
                component_group=st["group"],
                special={"yes": True, "no": False}[st["special"]],
                springer=tuple(SpringerEntry.parse(x) for x in st["springer"].split()),
                b_u=int(st["b_u"]) if "b_u" in st else None,
                printed=printed,
            )
        except (KeyError, ValueError) as exc:
            raise DataError(f"{where}: bad stanza {st.get('class', '?')!r}: {exc}") from None
        records.append(rec)
    return ClassTable(header.get("type", "?"), header, records)


def format_class_table(table: ClassTable) -> str:
    lines = []
    for r in table.records:
        lines.append(f"class: {r.class_name}")
        lines.append(f"group: {r.component_group}")
        lines.append(f"special: {'yes' if r.special else 'no'}")
        if r.b_u is not None:
            lines.append(f"b_u: {r.b_u}")
        lines.append("springer: " + " ".join(str(e) for e in r.springer))
        for ell in sorted(r.printed):
            lines.append(f"printed.{ell}: {r.printed[ell]}")
        lines.append("")
    body = "\n".join(lines).strip("\n") + "\n"
    header = dict(table.header)
    header["schema"] = SCHEMA
    header["normalization"] = NORMALIZATION
    header["checksum"] = checksum(body)
    order = ["schema", "type", "normalization", "a-scale", "labels", "sources", "checksum"]
    keys = [k for k in order if k in header] + sorted(k for k in header if k not in order)
    head = "".join(f"% {k}: {header[k]}\n" for k in keys)
    return head + "\n" + body


def parse_discrepancies(text: str, where: str = "<text>") -> list[Discrepancy]:
    header, body = _split(text)
    _check_header(header, DISCREPANCY_SCHEMA, where)
    if header.get("checksum") != checksum(body):
        raise DataError(f"{where}: checksum mismatch")
    out = []
    for st in _stanzas(body):
        ell = st.get("ell", "-")
        out.append(
            Discrepancy(st["type"], st["class"], None if ell == "-" else int(ell), st["kind"], st["printed"], st["corrected"], st["reason"])
        )
    return out


def format_discrepancies(items: list[Discrepancy], sources: str = "") -> str:
    lines = []
    for d in items:
        lines += [
            f"type: {d.type_name}",
            f"class: {d.class_name}",
            f"ell: {'-' if d.ell is None else d.ell}",
            f"kind: {d.kind}",
            f"printed: {d.printed}",
            f"corrected: {d.corrected}",
            f"reason: {d.reason}",
            "",
        ]
    body = "\n".join(lines).strip("\n") + "\n"
    head = f"% schema: {DISCREPANCY_SCHEMA}\n"
    if sources:
        head += f"% sources: {sources}\n"
    return head + f"% checksum: {checksum(body)}\n\n" + body


def parse_totals(text: str, where: str = "<text>") -> dict[tuple[str, str], int]:
    header, body = _split(text)
    _check_header(header, TOTALS_SCHEMA, where)
    if header.get("checksum") != checksum(body):
        raise DataError(f"{where}: checksum mismatch")
    out = {}
    for line in body.splitlines():
        if not line.strip() or line.startswith("type"):
            continue
        t, ell, m = line.split()
        out[(t, ell)] = int(m)
    return out


def format_totals(totals: dict[tuple[str, str], int], sources: str = "") -> str:
    body = "type ell m1\n" + "".join(f"{t} {ell} {m}\n" for (t, ell), m in totals.items())
    head = f"% schema: {TOTALS_SCHEMA}\n"
    if sources:
        head += f"% sources: {sources}\n"
    return head + f"% checksum: {checksum(body)}\n\n" + body


# -- loading ------------------------------------------------------------------


def _type_name(t) -> str:
    name = str(t)
    if name not in EXCEPTIONAL:
        raise DataError(f"no class table for type {name}")
    return name


@lru_cache(maxsize=None)
def _load_raw(name: str, root: str) -> ClassTable:
    path = Path(root) / f"{name}.classes"
    if not path.exists():
        raise DataError(f"missing data file {path}")
    return parse_class_table(path.read_text(), str(path))


def load_class_table(t, validate: bool = True) -> ClassTable:
    name = _type_name(t)
    table = _load_raw(name, str(data_dir()))
    if validate:
        problems = validate_table(table)
        if problems:
            raise DataError(f"{name}: class table fails validation", problems)
    return table


@lru_cache(maxsize=None)
def _load_discrepancies(root: str) -> tuple[Discrepancy, ...]:
    path = Path(root) / "discrepancies"
    return tuple(parse_discrepancies(path.read_text(), str(path)))


def load_discrepancies(type_name: str | None = None) -> list[Discrepancy]:
    items = _load_discrepancies(str(data_dir()))
    return [d for d in items if type_name is None or d.type_name == type_name]


@lru_cache(maxsize=None)
def _load_totals(root: str) -> dict:
    path = Path(root) / "expected_totals"
    return parse_totals(path.read_text(), str(path))


def expected_total(type_name: str, ell) -> int:
    key = (type_name, str(ell))
    totals = _load_totals(str(data_dir()))
    if key not in totals:
        raise DataError(f"no expected total for {type_name}, {ell}")
    return totals[key]


def clear_caches():
    _load_raw.cache_clear()
    _load_discrepancies.cache_clear()
    _load_totals.cache_clear()


# -- corrected printed view ----------------------------------------------------


def corrected_printed(table: ClassTable, rec: UnipotentClassRecord, ell: int) -> Printed:
    """Printed cell for (rec, ell) after row corrections (totals disputes keep the print)."""
    for d in load_discrepancies(table.type_name):
        if d.class_name == rec.class_name and d.ell == ell and d.kind == "row-correction":
            return Printed.parse(d.corrected)
    return rec.printed.get(ell, Printed(None, None))


def curated_ell_special(table: ClassTable, ell: int) -> list[str]:
    return [r.class_name for r in table.records if not corrected_printed(table, r, ell).blank]


# -- validation -----------------------------------------------------------------


def validate_table(table: ClassTable) -> list[str]:
    name = table.type_name
    problems = []
    recs = table.records
    if len(recs) != RECORD_COUNTS.get(name, len(recs)):
        problems.append(f"{len(recs)} records, expected {RECORD_COUNTS[name]}")
    names = [r.class_name for r in recs]
    if len(set(names)) != len(names):
        problems.append("duplicate class names")
    for r in recs:
        try:
            triv = r.trivial_entry
        except DataError as exc:
            problems.append(str(exc))
            continue
        if table.absolute and r.b_u is None:
            problems.append(f"{r.class_name}: absolute scale without b_u")
        if r.special and table.absolute and triv.a != r.b_u:
            problems.append(f"{r.class_name}: special but a(psi=1) = {triv.a} != b_u = {r.b_u}")
        if r.b_u is not None and any(e.a > r.b_u for e in r.springer):
            problems.append(f"{r.class_name}: a-value above b_u")
        for ell in BAD_PRIMES[name]:
            if ell not in r.printed:
                problems.append(f"{r.class_name}: no printed entry for ell={ell}")
                continue
            p = corrected_printed(table, r, ell)
            if not p.well_formed or (p.gamma is not None and p.gamma not in GROUP_LABELS):
                problems.append(f"{r.class_name}, ell={ell}: malformed entry {p!s} needs a row correction")
            if r.special and p.blank:
                problems.append(f"{r.class_name}: special but not {ell}-special")
    nspecial = sum(r.special for r in recs)
    if nspecial != FAMILY_COUNTS[name]:
        problems.append(f"{nspecial} special classes, expected {FAMILY_COUNTS[name]} families")
    if table.absolute:
        chars = [e.char for r in recs for e in r.springer]
        if "*" in chars:
            problems.append("absolute table with unconstrained characters")
        if len(set(chars)) != len(chars):
            problems.append("Springer correspondence is not injective")
    disputed = {d.ell for d in load_discrepancies(name) if d.kind == "totals-dispute"}
    for ell in BAD_PRIMES[name]:
        total = sum(corrected_printed(table, r, ell).value for r in recs)
        want = expected_total(name, ell)
        if total != want and ell not in disputed:
            problems.append(f"ell={ell}: corrected printed column sums to {total}, expected {want}")
    return problems


def validate_all() -> dict[str, list[str]]:
    out = {}
    for name in EXCEPTIONAL:
        try:
            table = load_class_table(name, validate=False)
            out[name] = validate_table(table)
        except DataError as exc:
            out[name] = [str(exc)]
    return out


def springer_class_of(t, char: str) -> tuple[str, str]:
    """Inverse Springer lookup: Weyl character label -> (class name, psi)."""
    table = load_class_table(t)
    if not table.absolute:
        raise DataError(f"{table.type_name}: table records a-values only; no character labels")
    hits = [(r.class_name, e.psi) for r in table.records for e in r.springer if e.char == char]
    if not hits:
        raise KeyError(f"{char} is not in the image of the Springer correspondence")
    if len(hits) > 1:
        raise DataError(f"{char} has several Springer preimages")
    return hits[0]
