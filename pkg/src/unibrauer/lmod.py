"""l-modular layer for small component groups.

Projective indecomposable characters are read off decomposition matrices. For
abelian groups these are computed (two ordinary characters reduce to the same
Brauer character iff they agree on l-regular elements). For S3, S4 and S5 they
are embedded constants, checked on first use. Direct products are handled
factorwise. The quotients and the pair counts M~ and M~_l are built on top.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import sympy

from . import permgrp
from .cyclo import Cyc
from .permgrp import FAction, Group, GroupError, inverse, mul

# Embedded decomposition matrices of symmetric groups: rows are partitions in
# the listed order, columns Brauer characters.
_SYM_DECOMPOSITION = {
    (2, 2): (("2", "11"), ((1,), (1,))),
    (3, 2): (("3", "21", "111"), ((1, 0), (0, 1), (1, 0))),
    (3, 3): (("3", "21", "111"), ((1, 0), (1, 1), (0, 1))),
    (4, 2): (("4", "31", "22", "211", "1111"), ((1, 0), (1, 1), (0, 1), (1, 1), (1, 0))),
    (4, 3): (
        ("4", "31", "22", "211", "1111"),
        ((1, 0, 0, 0), (0, 0, 1, 0), (1, 1, 0, 0), (0, 0, 0, 1), (0, 1, 0, 0)),
    ),
    (5, 2): (
        ("5", "41", "32", "311", "221", "2111", "11111"),
        ((1, 0, 0), (0, 1, 0), (1, 0, 1), (2, 0, 1), (1, 0, 1), (0, 1, 0), (1, 0, 0)),
    ),
    (5, 3): (
        ("5", "41", "32", "311", "221", "2111", "11111"),
        ((1, 0, 0, 0, 0), (0, 0, 1, 0, 0), (0, 0, 1, 1, 0), (0, 0, 0, 0, 1), (1, 1, 0, 0, 0), (0, 1, 0, 0, 0), (0, 0, 0, 1, 0)),
    ),
    (5, 5): (
        ("5", "41", "32", "311", "221", "2111", "11111"),
        (
            (1, 0, 0, 0, 0, 0),
            (1, 1, 0, 0, 0, 0),
            (0, 0, 0, 0, 1, 0),
            (0, 1, 1, 0, 0, 0),
            (0, 0, 0, 0, 0, 1),
            (0, 0, 1, 1, 0, 0),
            (0, 0, 0, 1, 0, 0),
        ),
    ),
}


class InventoryError(GroupError):
    """The group is outside the supported small-group inventory."""


# -- symmetric group characters ------------------------------------------------


def _partition_str(p) -> str:
    return "".join(str(x) for x in p)


@lru_cache(maxsize=None)
def murnaghan_nakayama(lam: tuple[int, ...], mu: tuple[int, ...]) -> int:
    """chi^lam evaluated on the class of cycle type mu."""
    if not mu:
        return 1 if sum(lam) == 0 else 0
    r, rest = mu[0], mu[1:]
    k = len(lam)
    beta = [lam[i] + k - 1 - i for i in range(k)]
    bset = set(beta)
    total = 0
    for b in beta:
        c = b - r
        if c < 0 or c in bset:
            continue
        sign = (-1) ** sum(1 for x in beta if c < x < b)
        nb = sorted((bset - {b}) | {c}, reverse=True)
        new = tuple(x for x in (nb[i] - (k - 1 - i) for i in range(k)) if x > 0)
        total += sign * murnaghan_nakayama(new, rest)
    return total


def _partitions(n: int, largest: int | None = None):
    largest = n if largest is None else largest
    if n == 0:
        yield ()
        return
    for k in range(min(n, largest), 0, -1):
        for rest in _partitions(n - k, k):
            yield (k,) + rest


@lru_cache(maxsize=None)
def _sym_class_shapes(n: int) -> dict:
    """(element order, class size) -> cycle type; injective for n <= 5."""
    S = permgrp.symmetric_group(n)
    out = {}
    for c in S.classes:
        ct = [len_ for len_ in permgrp.cycle_type(c.representative)]
        ct += [1] * (n - sum(ct))
        key = (c.order, c.size)
        if key in out:
            raise InventoryError(f"classes of S{n} are not separated by (order, size)")
        out[key] = tuple(sorted(ct, reverse=True))
    return out


def _sym_degree(G: Group) -> int | None:
    for n in (2, 3, 4, 5):
        if G.order == math.factorial(n) and permgrp.identify(G) == f"S{n}":
            return n
    return None


def _irreducible_labels_uncached(G: Group) -> dict[str, int]:
    table = G.character_table
    if G.order == 1:
        return {"1": 0}
    n = _sym_degree(G)
    if n is not None:
        shapes = _sym_class_shapes(n)
        mus = [shapes[(c.order, c.size)] for c in G.classes]
        out = {}
        for lam in _partitions(n):
            target = tuple(murnaghan_nakayama(lam, mu) for mu in mus)
            hits = [i for i, chi in enumerate(table) if chi.is_rational() and chi.integer_values() == target]
            if len(hits) != 1:
                raise InventoryError(f"cannot label the character {lam} of S{n}")
            out[_partition_str(lam)] = hits[0]
        return out
    factors = _factors(G)
    if factors is not None:
        out = {}
        for labels in _product_labels(factors):
            chi = _lift_product(G, factors, [F.character_table[F_labels[lab]] for F, F_labels, lab in labels])
            out[".".join(lab for _, _, lab in labels)] = _find_irreducible(G, chi)
        return out
    if G.is_abelian() and len(G.generators) == 1:
        g = G.generators[0]
        m = G.order
        e = G.exponent
        out = {}
        for i, chi in enumerate(table):
            v = chi(g)
            for k in range(m):
                if v == Cyc.from_exponents(e, {k * e // m: 1}):
                    out[str(k)] = i
                    break
        if len(out) == m:
            return out
    return {f"#{i}": i for i in range(len(table))}


_LABEL_CACHE: dict[int, tuple[Group, dict]] = {}


def irreducible_labels(G: Group) -> dict[str, int]:
    """Label -> index into G.character_table.

    Symmetric groups use partitions (``"21"``), cyclic groups the exponent k
    of the value zeta^k on the generator, products dot-joined factor labels;
    anything else falls back to ``#i``.
    """
    key = id(G)
    hit = _LABEL_CACHE.get(key)
    if hit is None or hit[0] is not G:
        hit = (G, _irreducible_labels_uncached(G))
        _LABEL_CACHE[key] = hit
    return hit[1]


# -- direct products ---------------------------------------------------------------


def _factors(G: Group):
    label = G.label or ""
    if "x" not in label or label.startswith("Weyl"):
        return None
    parts = [permgrp.instantiate(p) for p in label.split("x")]
    if sum(P.degree for P in parts) != G.degree:
        return None
    return parts


def _product_labels(factors):
    combos = [[]]
    for F in factors:
        labs = irreducible_labels(F)
        combos = [c + [(F, labs, lab)] for c in combos for lab in labs]
    return combos


def _restrict(g, offset: int, degree: int):
    return tuple(g[offset + j] - offset for j in range(degree))


def _lift_product(G: Group, factors, funcs) -> permgrp.ClassFunction:
    """Outer tensor product of class functions on the factors."""
    e = G.exponent
    vals = []
    for c in G.classes:
        g = c.representative
        off = 0
        v = Cyc.integer(e, 1)
        for F, f in zip(factors, funcs):
            x = f(_restrict(g, off, F.degree))
            v = v * _rescale(x, e)
            off += F.degree
        vals.append(v)
    return permgrp.ClassFunction(G, tuple(vals))


def _rescale(x: Cyc, e: int) -> Cyc:
    if x.e == e:
        return x
    if e % x.e:
        raise GroupError("conductor does not divide the exponent")
    step = e // x.e
    return Cyc.from_exponents(e, {s * step: a for s, a in enumerate(x.c) if a})


def _find_irreducible(G: Group, chi) -> int:
    for i, psi in enumerate(G.character_table):
        if psi.values == chi.values:
            return i
    raise GroupError("tensor product is not irreducible")


# -- decomposition data ----------------------------------------------------------


@dataclass(frozen=True)
class ProjectiveCharacter:
    """sum_chi d_{chi,phi} chi, stored as multiplicities over G.character_table."""

    group: Group
    multiplicities: tuple[int, ...]

    def __post_init__(self):
        if any(m < 0 for m in self.multiplicities) or not any(self.multiplicities):
            raise ValueError("projective character must have nonnegative, not all zero, multiplicities")

    @property
    def constituents(self) -> tuple[int, ...]:
        return tuple(i for i, m in enumerate(self.multiplicities) if m)

    @property
    def character(self) -> permgrp.ClassFunction:
        table = self.group.character_table
        total = None
        for i in self.constituents:
            term = table[i].scale(self.multiplicities[i])
            total = term if total is None else total + term
        return total

    def labelled(self) -> dict[str, int]:
        names = {i: lab for lab, i in irreducible_labels(self.group).items()}
        return {names[i]: self.multiplicities[i] for i in self.constituents}


@dataclass(frozen=True)
class DecompositionData:
    group: Group
    ell: int
    matrix: tuple[tuple[int, ...], ...]  # rows follow G.character_table

    @property
    def columns(self) -> list[ProjectiveCharacter]:
        ncol = len(self.matrix[0])
        return [ProjectiveCharacter(self.group, tuple(row[j] for row in self.matrix)) for j in range(ncol)]

    def cartan(self):
        D = sympy.Matrix(self.matrix)
        return D.T * D


def _is_power_of(n: int, p: int) -> bool:
    while n > 1 and n % p == 0:
        n //= p
    return n == 1


def verify_decomposition(data: DecompositionData) -> list[str]:
    """Structural checks on a decomposition matrix; returns the list of failures."""
    G, ell, D = data.group, data.ell, data.matrix
    problems = []
    ncol = len(D[0]) if D else 0
    if ncol != permgrp.ell_regular_class_count(G, ell):
        problems.append(f"{ncol} columns, expected {permgrp.ell_regular_class_count(G, ell)}")
    if any(x < 0 for row in D for x in row):
        problems.append("negative entry")
    if any(all(row[j] == 0 for row in D) for j in range(ncol)):
        problems.append("zero column")
    C = data.cartan()
    det = C.det()
    if C != C.T or det <= 0 or not _is_power_of(int(det), ell):
        problems.append(f"Cartan determinant {det} is not a power of {ell}")
    for Phi in data.columns:
        if any(c.order % ell == 0 and v != 0 for c, v in zip(G.classes, Phi.character.values)):
            problems.append("a column does not vanish on l-singular elements")
    # Brauer degrees from chi(1) = sum_phi d phi(1); then sum phi(1) Phi(1) = |G|
    Dm = sympy.Matrix(D)
    degs = sympy.Matrix([chi.degree for chi in G.character_table])
    sol = (Dm.T * Dm).inv() * Dm.T * degs
    if Dm * sol != degs or any(x <= 0 or not x.is_integer for x in sol):
        problems.append("ordinary degrees do not decompose into positive Brauer degrees")
    else:
        reg = sum(int(sol[j]) * Phi.character.degree for j, Phi in enumerate(data.columns))
        if reg != G.order:
            problems.append(f"projectives weighted by Brauer degrees give {reg}, not |G| = {G.order}")
    return problems


def _abelian_decomposition(G: Group, ell: int):
    regular = [i for i, c in enumerate(G.classes) if c.order % ell]
    keys = []
    rows = []
    for chi in G.character_table:
        k = tuple(chi.values[i] for i in regular)
        if k not in keys:
            keys.append(k)
        rows.append(keys.index(k))
    return tuple(tuple(int(r == j) for j in range(len(keys))) for r in rows)


def _sym_decomposition(G: Group, n: int, ell: int):
    labels = irreducible_labels(G)
    parts, mat = _SYM_DECOMPOSITION[(n, ell)]
    rows = [None] * len(G.character_table)
    for p, row in zip(parts, mat):
        rows[labels[p]] = row
    return tuple(rows)


def _product_decomposition(G: Group, factors, ell: int):
    pims = [pim_set(F, ell) for F in factors]
    combos = [[]]
    for ps in pims:
        combos = [c + [P] for c in combos for P in ps]
    cols = []
    for combo in combos:
        chi = _lift_product(G, factors, [P.character for P in combo])
        cols.append(tuple(G.inner(chi, psi) for psi in G.character_table))
    return tuple(tuple(col[i] for col in cols) for i in range(len(G.character_table)))


_DEC_CACHE: dict[tuple[int, int], tuple[Group, DecompositionData]] = {}


def decomposition_data(G: Group, ell: int) -> DecompositionData:
    """Decomposition matrix of G at ell, verified the first time it is built."""
    hit = _DEC_CACHE.get((id(G), ell))
    if hit is not None and hit[0] is G:
        return hit[1]
    n_irr = len(G.character_table)
    if G.order % ell:
        mat = tuple(tuple(int(i == j) for j in range(n_irr)) for i in range(n_irr))
    elif G.is_abelian():
        mat = _abelian_decomposition(G, ell)
    elif (n := _sym_degree(G)) is not None and (n, ell) in _SYM_DECOMPOSITION:
        mat = _sym_decomposition(G, n, ell)
    elif (factors := _factors(G)) is not None:
        mat = _product_decomposition(G, factors, ell)
    else:
        raise InventoryError(f"{G.label or permgrp.identify(G)} at l={ell} is outside the decomposition inventory")
    data = DecompositionData(G, ell, mat)
    problems = verify_decomposition(data)
    if problems:
        raise GroupError(f"decomposition matrix of {G.label} at l={ell} fails verification: " + "; ".join(problems))
    _DEC_CACHE[(id(G), ell)] = (G, data)
    return data


def pim_set(G: Group, ell: int) -> list[ProjectiveCharacter]:
    return decomposition_data(G, ell).columns


# -- kernels and quotients ---------------------------------------------------------


def kernel(G: Group, indices) -> frozenset:
    """Intersection of the kernels of the given irreducibles of G."""
    N = G.element_set
    for i in indices:
        N = N & permgrp.kernel_of_character(G, G.character_table[i])
    return N


def projective_kernel(Phi: ProjectiveCharacter) -> frozenset:
    """{g : Psi(g) = Psi(1)}, computed both ways and cross-checked."""
    G = Phi.group
    chi = Phi.character
    direct = permgrp.kernel_of_character(G, chi)
    if direct != kernel(G, Phi.constituents):
        raise GroupError("kernel of a character differs from the intersection of constituent kernels")
    return direct


def quotient_by(G: Group, N: frozenset) -> Group:
    Q = permgrp.quotient(G, N).group
    Q.label = permgrp.identify(Q)
    return Q


def is_minimal_quotient(G: Group, N: frozenset, indices) -> bool:
    """No strictly larger normal subgroup lies in every kernel (checked by a full sweep)."""
    kers = [permgrp.kernel_of_character(G, G.character_table[i]) for i in indices]
    ok = [M for M in permgrp.normal_subgroups(G) if all(M <= K for K in kers)]
    return max(ok, key=len) == N and all(M <= N for M in ok)


@dataclass(frozen=True)
class QuotientResult:
    source: Group
    kernel: frozenset
    group: Group
    characters: tuple[str, ...]  # labels of the characters factoring through

    @property
    def label(self) -> str:
        return self.group.label


def _record_group(rec) -> Group:
    return permgrp.instantiate(rec.component_group)


def _psi_index(G: Group, psi: str) -> int:
    labels = irreducible_labels(G)
    if psi not in labels:
        raise GroupError(f"unknown character {psi!r} of {G.label}")
    return labels[psi]


def canonical_quotient_data(rec) -> QuotientResult:
    A = _record_group(rec)
    anchor = rec.anchor
    S = [e.psi for e in rec.springer if e.a == anchor]
    if not S:
        from .weylchar import IntegrityError

        raise IntegrityError(f"{rec.class_name}: no psi with a = b_u")
    N = kernel(A, [_psi_index(A, p) for p in S])
    return QuotientResult(A, N, quotient_by(A, N), tuple(S))


def canonical_quotient(rec) -> Group:
    return canonical_quotient_data(rec).group


def ell_special_quotient_data(rec, ell: int) -> QuotientResult:
    A = _record_group(rec)
    labels = irreducible_labels(A)
    names = {i: lab for lab, i in labels.items()}
    avals = rec.a_values
    scored = []
    for Phi in pim_set(A, ell):
        present = [avals[names[i]] for i in Phi.constituents if names[i] in avals]
        if present:
            scored.append((min(present), Phi))
    if not scored:
        raise GroupError(f"{rec.class_name}: no projective has a Springer constituent")
    top = max(a for a, _ in scored)
    chosen = [Phi for a, Phi in scored if a == top]
    N = A.element_set
    for Phi in chosen:
        N = N & projective_kernel(Phi)
    desc = tuple("+".join(Phi.labelled()) for Phi in chosen)
    return QuotientResult(A, N, quotient_by(A, N), desc)


def ell_special_quotient(rec, ell: int) -> Group:
    return ell_special_quotient_data(rec, ell).group


# -- pair counts ---------------------------------------------------------------------


@dataclass(frozen=True)
class BestEffort:
    """A count under a nontrivial F; exposed as an extension, not a theorem."""

    value: int
    note: str

    flagged = True

    def __int__(self):
        return self.value


_EXTENSION_NOTE = (
    "nontrivial F: sum over F-twisted classes of counts for the twisted centraliser; "
    "the fusion of pairs under powers of F is not pinned down, so this is a best-effort value"
)


def twisted_centraliser(G: Group, x, fmap: dict) -> Group:
    elems = [g for g in G.elements if mul(mul(g, x), inverse(fmap[g])) == x]
    return Group.from_elements(G.degree, elems)


def _pair_count(G: Group, F: FAction | None, per_centraliser) -> int | BestEffort:
    if F is None or F.is_trivial(G):
        return sum(per_centraliser(G.centraliser(c.representative)) for c in G.classes)
    fmap = F.extend(G)
    total = 0
    for orbit in permgrp.twisted_classes(G, F):
        x = min(orbit)
        total += per_centraliser(twisted_centraliser(G, x, fmap))
    return BestEffort(total, _EXTENSION_NOTE)


def m_tilde(G: Group, F: FAction | None = None) -> int | BestEffort:
    """|M~(G)|: pairs (x, sigma) with sigma an ordinary irreducible of C(x)."""
    return _pair_count(G, F, lambda C: len(C.classes))


def m_tilde_ell(G: Group, F: FAction | None = None, ell: int = 2) -> int | BestEffort:
    """|M~_l(G)|: pairs (x, phi) with phi an l-modular irreducible of C(x)."""
    return _pair_count(G, F, lambda C: permgrp.ell_regular_class_count(C, ell))
