"""Weyl group characters: fake degrees, b-invariants, j-induction, special characters."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property, lru_cache

from .permgrp import ClassFunction, Group
from .rootsys import (
    CartanType,
    Component,
    RootSystem,
    classify,
    direction_in,
    element_matrix,
    reflection_perm,
    weyl_group,
)


class IntegrityError(RuntimeError):
    """A computed invariant contradicts the theory (data or convention bug)."""


# -- small exact polynomial helpers (coefficient lists, index = degree) -----


def _padd(a, b):
    n = max(len(a), len(b))
    return [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)]


def _pmul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _pdiv_exact(num, den):
    """Exact quotient when den[0] == 1 and den divides num."""
    if den[0] != 1:
        raise ValueError("divisor must have constant term 1")
    num = list(num)
    qlen = len(num) - len(den) + 1
    if qlen <= 0:
        raise ValueError("division is not exact")
    quo = [0] * qlen
    for i in range(qlen):
        c = num[i]
        quo[i] = c
        if c:
            for j, d in enumerate(den):
                num[i + j] -= c * d
    if any(num):
        raise ValueError("division is not exact")
    return quo


def _trim(a):
    a = list(a)
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    return a


def charpoly(m) -> list[int]:
    """det(t*I - m) for an integer matrix (Faddeev-LeVerrier), ascending coefficients."""
    n = len(m)
    ident = [[int(i == j) for j in range(n)] for i in range(n)]
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    mk = [[0] * n for _ in range(n)]
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c_{n-k+1} I
        prev = [[mk[i][j] + coeffs[n - k + 1] * ident[i][j] for j in range(n)] for i in range(n)]
        mk = [[sum(m[i][t] * prev[t][j] for t in range(n)) for j in range(n)] for i in range(n)]
        tr = sum(mk[i][i] for i in range(n))
        if tr % k:
            raise ArithmeticError("non-integral characteristic polynomial")
        coeffs[n - k] = -tr // k
    return coeffs


def eigenvalue_one_multiplicity(cp) -> int:
    k = 0
    p = list(cp)
    while sum(p) == 0:
        # divide by (t - 1)
        q = [0] * (len(p) - 1)
        acc = 0
        for i in range(len(p) - 1, 0, -1):
            acc = p[i] + acc
            q[i - 1] = acc
        p = q
        k += 1
    return k


# -- fake degrees -----------------------------------------------------------


@dataclass(frozen=True)
class FakeDegree:
    coefficients: tuple[int, ...]

    @property
    def valuation(self) -> int:
        return next(i for i, c in enumerate(self.coefficients) if c)

    @property
    def top_degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def b(self) -> int:
        """The b-invariant: lowest degree in which the character occurs."""
        return self.valuation

    def at_one(self) -> int:
        return sum(self.coefficients)

    def __str__(self):
        terms = []
        for i, c in enumerate(self.coefficients):
            if c:
                mono = "1" if i == 0 else ("q" if i == 1 else f"q^{i}")
                terms.append(mono if c == 1 and i else f"{c}" if i == 0 else f"{c}*{mono}")
        return " + ".join(terms) or "0"


@dataclass(frozen=True)
class WeylCharacter:
    label: str
    character: ClassFunction
    fake_degree: FakeDegree

    @property
    def degree(self) -> int:
        return self.character.degree

    @property
    def b(self) -> int:
        return self.fake_degree.b

    @property
    def key(self) -> tuple[int, int]:
        return (self.degree, self.b)


class ReflectionGroup:
    """A reflection subgroup of W(rs), realised on the roots of rs.

    ``roots`` generate the subgroup (defaults to the simple roots, giving W).
    """

    def __init__(self, rs: RootSystem, roots=None, label: str | None = None):
        self.rs = rs
        self.full = roots is None
        self.roots = tuple(rs.simple_roots if roots is None else (direction_in(rs, r) for r in roots))
        if self.full:
            self.group = weyl_group(rs)
        else:
            gens = [reflection_perm(rs, r) for r in self.roots]
            self.group = Group(len(rs.roots), gens, label)
        self.label = label or f"W({rs.cartan_type})"

    def __repr__(self):
        return f"ReflectionGroup({self.label}, order={self.group.order})"

    @cached_property
    def cartan_type(self) -> CartanType:
        t, _ = classify(list(self.roots), self.rs.long_norm)
        return t

    @cached_property
    def class_matrices(self):
        return [element_matrix(self.rs, c.representative) for c in self.group.classes]

    @cached_property
    def class_charpolys(self):
        return [charpoly(m) for m in self.class_matrices]

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        """Degrees of the basic invariants on the ambient space (1 for fixed directions)."""
        n = self.rs.rank
        poly = [0] * (n + 1)
        for c, cp in zip(self.group.classes, self.class_charpolys):
            poly[eigenvalue_one_multiplicity(cp)] += c.size
        exps = []
        p = poly
        for m in range(0, 200):
            while len(p) > 1 and _eval(p, -m) == 0:
                p = _synthetic_div(p, -m)
                exps.append(m)
            if len(p) == 1:
                break
        if len(exps) != n or p != [1]:
            raise IntegrityError("Shephard-Todd factorisation failed")
        return tuple(sorted(m + 1 for m in exps))

    @cached_property
    def _molien_terms(self):
        big = [1]
        for d in self.degrees:
            big = _pmul(big, [1] + [0] * (d - 1) + [-1])
        terms = []
        for cp in self.class_charpolys:
            det = list(reversed(cp))  # det(1 - q w)
            terms.append(_pdiv_exact(big, det))
        return terms

    def fake_degree(self, chi: ClassFunction) -> FakeDegree:
        acc = [0]
        for c, v, t in zip(self.group.classes, chi.values, self._molien_terms):
            if not v.is_rational():
                raise IntegrityError("Weyl group character with irrational value")
            acc = _padd(acc, [x * c.size * v.rational() for x in t])
        if any(x % self.group.order for x in acc):
            raise IntegrityError("fake degree is not integral")
        coeffs = _trim([x // self.group.order for x in acc])
        if any(x < 0 for x in coeffs) or sum(coeffs) != chi.degree:
            raise IntegrityError("fake degree fails positivity or degree check")
        return FakeDegree(tuple(coeffs))

    @cached_property
    def characters(self) -> tuple[WeylCharacter, ...]:
        table = self.group.character_table
        fakes = [self.fake_degree(chi) for chi in table]
        labels = _labels(self, table, fakes)
        out = [WeylCharacter(lab, chi, fd) for lab, chi, fd in zip(labels, table, fakes)]
        out.sort(key=lambda w: (w.b, w.degree, w.label))
        return tuple(out)

    def by_label(self, label: str) -> WeylCharacter:
        for w in self.characters:
            if w.label == label:
                return w
        raise KeyError(label)

    def identify(self, chi: ClassFunction) -> WeylCharacter:
        for w in self.characters:
            if w.character.values == chi.values:
                return w
        raise KeyError("not an irreducible character of this group")

    @property
    def trivial(self) -> WeylCharacter:
        return self.characters[0]

    @cached_property
    def sign(self) -> WeylCharacter:
        return max(self.characters, key=lambda w: (w.degree == 1, w.b))

    def poincare_polynomial(self) -> list[int]:
        out = [1]
        for d in self.degrees:
            out = _pmul(out, [1] * d)
        return out

    def poincare_identity_holds(self) -> bool:
        acc = [0]
        for w in self.characters:
            acc = _padd(acc, [w.degree * x for x in w.fake_degree.coefficients])
        return _trim(acc) == _trim(self.poincare_polynomial())

    def reflection_class_indices(self, long: bool) -> list[int]:
        idx = set()
        for r in self.rs.positive_roots:
            if self.rs.is_long(r) == long:
                p = reflection_perm(self.rs, r)
                if p in self.group.element_set:
                    idx.add(self.group.class_index[p])
        return sorted(idx)

    def restrict_multiplicity(self, sub: "ReflectionGroup", big: ClassFunction, small: ClassFunction) -> int:
        """<Res_sub big, small>_sub; sub must live on the same root set."""
        total = 0
        ci = self.group.class_index
        for c, v in zip(sub.group.classes, small.values):
            total += c.size * v.rational() * big.values[ci[c.representative]].rational()
        if total % sub.group.order:
            raise IntegrityError("non-integral restriction multiplicity")
        return total // sub.group.order

    def induce(self, sub: "ReflectionGroup", chi: ClassFunction) -> dict[str, int]:
        """Multiplicities of the irreducibles of self in Ind_sub^self chi (Frobenius reciprocity)."""
        return {
            w.label: m
            for w in self.characters
            if (m := self.restrict_multiplicity(sub, w.character, chi))
        }

    def j_induce(self, sub: "ReflectionGroup", chi: WeylCharacter) -> WeylCharacter:
        ind = self.induce(sub, chi.character)
        if not ind:
            raise IntegrityError("empty induced character")
        bs = {lab: self.by_label(lab).b for lab in ind}
        if min(bs.values()) < chi.b:
            raise IntegrityError(f"induced constituent below b = {chi.b}")
        hits = [lab for lab in ind if bs[lab] == chi.b]
        if len(hits) != 1 or ind[hits[0]] != 1:
            raise IntegrityError(f"j-induction of {chi.label} is not well defined: {hits}")
        return self.by_label(hits[0])


def _eval(p, x):
    return sum(c * x**i for i, c in enumerate(p))


def _synthetic_div(p, r):
    """Divide p by (t - r); remainder must vanish."""
    n = len(p) - 1
    q = [0] * n
    acc = 0
    for i in range(n, 0, -1):
        acc = acc * r + p[i]
        q[i - 1] = acc
    return q


# -- labels -----------------------------------------------------------------


def _labels(G: ReflectionGroup, table, fakes) -> list[str]:
    """Labels phi{d},{b}; pairs sharing (d, b) get ' and '' (see prime_rule)."""
    base = [f"phi{chi.degree},{fd.b}" for chi, fd in zip(table, fakes)]
    out = list(base)
    groups: dict[str, list[int]] = {}
    for i, b in enumerate(base):
        groups.setdefault(b, []).append(i)
    for key, idx in groups.items():
        if len(idx) == 1:
            continue
        order = _prime_order(G, [table[i] for i in idx]) if len(idx) == 2 else None
        if order is None:
            for k, i in enumerate(sorted(idx, key=lambda i: tuple(v.c for v in table[i].values))):
                out[i] = f"{key}#{k + 1}"
        else:
            out[idx[order[0]]] = key + "'"
            out[idx[order[1]]] = key + "''"
    return out


def _prime_order(G: ReflectionGroup, pair):
    """Return (index of ', index of '') or None.

    The double-primed member takes the larger value on a reflection in a long
    root. Ties are broken by the multiplicity of the trivial character in the
    restriction to the parabolic subgroup generated by the long simple roots
    and the last simple root (the larger multiplicity gets '').
    """
    long_cls = G.reflection_class_indices(True)
    if not long_cls or not G.reflection_class_indices(False):
        return None
    vl = [pair[k].values[long_cls[0]].rational() for k in (0, 1)]
    if vl[0] != vl[1]:
        return (0, 1) if vl[0] < vl[1] else (1, 0)
    if not G.full:
        return None
    rs = G.rs
    gens = [r for r in rs.simple_roots if rs.is_long(r)] + [rs.simple_roots[-1]]
    sub = ReflectionGroup(rs, gens, label="tiebreak")
    triv = sub.group.class_function([1] * len(sub.group.classes))
    m = [G.restrict_multiplicity(sub, pair[k], triv) for k in (0, 1)]
    if m[0] != m[1]:
        return (0, 1) if m[0] < m[1] else (1, 0)
    return None


# -- special characters -------------------------------------------------------

FAMILY_COUNTS = {"G2": 3, "F4": 11, "E6": 17, "E7": 35, "E8": 46}

_EXCEPTIONAL_SPECIAL_KEYS = {
    "G2": {(1, 0), (2, 1), (1, 6)},
    "F4": {(1, 0), (4, 1), (9, 2), (8, 3), (12, 4), (9, 10), (8, 9), (4, 13), (1, 24)},
}


def partitions(n: int, maxpart: int | None = None):
    maxpart = n if maxpart is None else maxpart
    if n == 0:
        yield ()
        return
    for k in range(min(n, maxpart), 0, -1):
        for rest in partitions(n - k, k):
            yield (k,) + rest


def hook_dimension(lam) -> int:
    n = sum(lam)
    conj = [sum(1 for x in lam if x > j) for j in range(lam[0])] if lam else []
    prod = 1
    for i, row in enumerate(lam):
        for j in range(row):
            prod *= row - j + conj[j] - i - 1
    return math.factorial(n) // prod


def n_invariant(lam) -> int:
    return sum(i * x for i, x in enumerate(lam))


def bipartitions(n: int):
    for k in range(n, -1, -1):
        for a in partitions(k):
            for b in partitions(n - k):
                yield a, b


def bipartition_key(a, b) -> tuple[int, int]:
    n = sum(a) + sum(b)
    d = math.comb(n, sum(a)) * hook_dimension(a) * hook_dimension(b)
    return d, 2 * n_invariant(a) + 2 * n_invariant(b) + sum(b)


def bipartition_is_special(a, b) -> bool:
    m = max(len(a) - 1, len(b), 0)
    lam = sorted(list(a) + [0] * (m + 1 - len(a)))
    mu = sorted(list(b) + [0] * (m - len(b)))
    lam = [x + i for i, x in enumerate(lam)]
    mu = [x + i for i, x in enumerate(mu)]
    seq = []
    for i in range(m):
        seq += [lam[i], mu[i]]
    seq.append(lam[m])
    return all(x <= y for x, y in zip(seq, seq[1:]))


@lru_cache(maxsize=None)
def special_keys(series: str, rank: int) -> frozenset | None:
    """(degree, b) keys of the special characters; None means every character is special."""
    if series == "A":
        return None
    if series in "BC":
        spec = {bipartition_key(a, b) for a, b in bipartitions(rank) if bipartition_is_special(a, b)}
        other = {bipartition_key(a, b) for a, b in bipartitions(rank) if not bipartition_is_special(a, b)}
        if spec & other:
            raise IntegrityError(f"special keys of {series}{rank} are ambiguous")
        return frozenset(spec)
    name = f"{series}{rank}"
    if name in _EXCEPTIONAL_SPECIAL_KEYS:
        return frozenset(_EXCEPTIONAL_SPECIAL_KEYS[name])
    raise KeyError(f"no special-character inventory for {name}")


def component_subgroups(G: ReflectionGroup) -> list[tuple[Component, ReflectionGroup]]:
    t, orders = classify(list(G.roots), G.rs.long_norm)
    out = []
    for comp, order in zip(t.components, orders):
        roots = [G.roots[i] for i in order]
        out.append((comp, ReflectionGroup(G.rs, roots, label=str(comp))))
    return out


def special_characters(G: ReflectionGroup) -> list[WeylCharacter]:
    """Special characters of a reflection subgroup: component-wise products of specials."""
    comps = component_subgroups(G)
    if len(comps) == 1:
        comp, _ = comps[0]
        keys = special_keys(comp.series, comp.rank)
        chars = [w for w in G.characters if keys is None or w.key in keys]
        if comp.series in "EFG" and len(chars) != FAMILY_COUNTS[f"{comp.series}{comp.rank}"]:
            raise IntegrityError("special count differs from the family count")
        return chars
    out = []
    for w in G.characters:
        ok = True
        for comp, H in comps:
            keys = special_keys(comp.series, comp.rank)
            if keys is None:
                continue
            factor = _factor_on(G, H, w)
            if factor.key not in keys:
                ok = False
                break
        if ok:
            out.append(w)
    return out


def _factor_on(G: ReflectionGroup, H: ReflectionGroup, w: WeylCharacter) -> WeylCharacter:
    """The irreducible chi_H with Res_H w a multiple of chi_H."""
    found = [x for x in H.characters if G.restrict_multiplicity(H, w.character, x.character)]
    if len(found) != 1:
        raise IntegrityError("restriction to a direct factor is not isotypic")
    return found[0]


def weyl_characters(t: CartanType) -> ReflectionGroup:
    from .rootsys import build_root_system

    return _full(build_root_system(t))


@lru_cache(maxsize=None)
def _full(rs: RootSystem) -> ReflectionGroup:
    return ReflectionGroup(rs)
