"""Finite permutation groups with exact character theory.

Permutations are tuples of images on points 0..n-1. Products compose left to
right: ``mul(g, h)`` applies ``g`` first, then ``h``.
"""

from __future__ import annotations

import math
import re
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from itertools import product as iproduct

from sympy import primitive_root

from .cyclo import Cyc

Perm = tuple[int, ...]

ENUMERATION_BUDGET = 10**6
TABLE_BUDGET = 1152


class GroupError(ValueError):
    pass


class BudgetError(GroupError):
    pass


def mul(g: Perm, h: Perm) -> Perm:
    return tuple(h[i] for i in g)


def inverse(g: Perm) -> Perm:
    inv = [0] * len(g)
    for i, j in enumerate(g):
        inv[j] = i
    return tuple(inv)


def identity(n: int) -> Perm:
    return tuple(range(n))


def perm_order(g: Perm) -> int:
    seen = [False] * len(g)
    order = 1
    for i in range(len(g)):
        if not seen[i]:
            length = 0
            j = i
            while not seen[j]:
                seen[j] = True
                j = g[j]
                length += 1
            order = order * length // math.gcd(order, length)
    return order


def cycle_type(g: Perm) -> tuple[int, ...]:
    seen = [False] * len(g)
    lengths = []
    for i in range(len(g)):
        if not seen[i]:
            length = 0
            j = i
            while not seen[j]:
                seen[j] = True
                j = g[j]
                length += 1
            lengths.append(length)
    return tuple(sorted(lengths, reverse=True))


def power(g: Perm, k: int) -> Perm:
    result = identity(len(g))
    base = g
    while k:
        if k & 1:
            result = mul(result, base)
        base = mul(base, base)
        k >>= 1
    return result


@dataclass(frozen=True)
class ConjugacyClass:
    representative: Perm
    elements: frozenset
    order: int  # element order

    @property
    def size(self) -> int:
        return len(self.elements)


class Group:
    """A finite group of permutations, enumerated explicitly."""

    def __init__(self, degree: int, generators, label: str | None = None, expected_order: int | None = None):
        self.degree = degree
        gens = [tuple(g) for g in generators]
        for g in gens:
            if len(g) != degree or sorted(g) != list(range(degree)):
                raise GroupError(f"invalid permutation {g}")
        self.generators = tuple(g for g in gens if g != identity(degree)) or (identity(degree),)
        self.label = label
        if expected_order is not None and self.order != expected_order:
            raise GroupError(f"{label}: closure has order {self.order}, expected {expected_order}")

    @classmethod
    def from_elements(cls, degree: int, elements, label: str | None = None) -> "Group":
        """Subgroup given by its full element list (assumed closed)."""
        elements = list(elements)
        G = cls.__new__(cls)
        G.degree = degree
        G.label = label
        G.generators = tuple(_small_generating_set(degree, elements))
        G.__dict__["elements"] = tuple(sorted(elements))
        return G

    def __repr__(self):
        return f"Group({self.label or '?'}, order={self.order})"

    @cached_property
    def elements(self) -> tuple[Perm, ...]:
        e = identity(self.degree)
        seen = {e}
        queue = deque([e])
        while queue:
            g = queue.popleft()
            for s in self.generators:
                h = mul(g, s)
                if h not in seen:
                    seen.add(h)
                    if len(seen) > ENUMERATION_BUDGET:
                        raise BudgetError("group exceeds enumeration budget")
                    queue.append(h)
        return tuple(sorted(seen))

    @cached_property
    def element_set(self) -> frozenset:
        return frozenset(self.elements)

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def one(self) -> Perm:
        return identity(self.degree)

    @cached_property
    def exponent(self) -> int:
        return math.lcm(*(c.order for c in self.classes))

    def is_abelian(self) -> bool:
        return all(mul(a, b) == mul(b, a) for a in self.generators for b in self.generators)

    # -- conjugacy -------------------------------------------------------

    @cached_property
    def classes(self) -> tuple[ConjugacyClass, ...]:
        assigned = set()
        out = []
        gens = [(s, inverse(s)) for s in self.generators]
        for x in self.elements:
            if x in assigned:
                continue
            orbit = {x}
            queue = deque([x])
            while queue:
                y = queue.popleft()
                for s, si in gens:
                    z = mul(mul(si, y), s)
                    if z not in orbit:
                        orbit.add(z)
                        queue.append(z)
            assigned |= orbit
            out.append(ConjugacyClass(x, frozenset(orbit), perm_order(x)))
        # identity first, then by element order and size
        out.sort(key=lambda c: (c.order, len(c.elements), min(c.elements)))
        return tuple(out)

    @cached_property
    def class_index(self) -> dict:
        idx = {}
        for i, c in enumerate(self.classes):
            for x in c.elements:
                idx[x] = i
        return idx

    def centraliser(self, x: Perm) -> "Group":
        elems = [g for g in self.elements if mul(g, x) == mul(x, g)]
        return Group.from_elements(self.degree, elems)

    @cached_property
    def power_maps(self) -> tuple[tuple[int, ...], ...]:
        """power_maps[i][k] = class index of rep_i ** k, for 0 <= k < exponent."""
        e = self.exponent
        out = []
        for c in self.classes:
            g = c.representative
            row = []
            h = self.one
            for _ in range(e):
                row.append(self.class_index[h])
                h = mul(h, g)
            out.append(tuple(row))
        return tuple(out)

    @cached_property
    def inverse_class(self) -> tuple[int, ...]:
        return tuple(self.class_index[inverse(c.representative)] for c in self.classes)

    # -- characters ------------------------------------------------------

    @cached_property
    def character_table(self) -> tuple["ClassFunction", ...]:
        if self.order > TABLE_BUDGET:
            raise BudgetError(f"character table budget exceeded (|G| = {self.order})")
        return tuple(_dixon(self))

    def class_function(self, values) -> "ClassFunction":
        e = self.exponent
        vals = tuple(v if isinstance(v, Cyc) else Cyc.integer(e, v) for v in values)
        return ClassFunction(self, vals)

    def inner(self, chi: "ClassFunction", psi: "ClassFunction"):
        total = Cyc.integer(self.exponent, 0)
        for c, a, b in zip(self.classes, chi.values, psi.values):
            total = total + a * b.conj() * c.size
        v = total.rational()
        if v % self.order:
            raise GroupError("inner product is not an integer")
        return v // self.order


@dataclass(frozen=True)
class ClassFunction:
    group: Group
    values: tuple[Cyc, ...]

    @property
    def degree(self) -> int:
        return self.values[0].rational()

    def __call__(self, g: Perm) -> Cyc:
        return self.values[self.group.class_index[g]]

    def __add__(self, other: "ClassFunction") -> "ClassFunction":
        return ClassFunction(self.group, tuple(a + b for a, b in zip(self.values, other.values)))

    def scale(self, k: int) -> "ClassFunction":
        return ClassFunction(self.group, tuple(a * k for a in self.values))

    def __mul__(self, other: "ClassFunction") -> "ClassFunction":
        return ClassFunction(self.group, tuple(a * b for a, b in zip(self.values, other.values)))

    def is_rational(self) -> bool:
        return all(v.is_rational() for v in self.values)

    def integer_values(self) -> tuple[int, ...]:
        return tuple(v.rational() for v in self.values)

    def __eq__(self, other):
        return isinstance(other, ClassFunction) and self.group is other.group and self.values == other.values

    def __hash__(self):
        return hash(self.values)


# -- Dixon's algorithm ---------------------------------------------------


def _class_structure_constants(G: Group):
    """a[j][i][k] = #{x in C_i : x^-1 z_k in C_j} for fixed reps z_k."""
    r = len(G.classes)
    idx = G.class_index
    a = [[[0] * r for _ in range(r)] for _ in range(r)]
    for k, c in enumerate(G.classes):
        z = c.representative
        for x in G.elements:
            i = idx[x]
            j = idx[mul(inverse(x), z)]
            a[j][i][k] += 1
    return a


def _nullspace_mod(rows, p):
    """Basis of {v : M v = 0} over F_p for M given as a list of rows."""
    m = [list(r) for r in rows]
    ncols = len(m[0]) if m else 0
    pivots = []
    rank = 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(m)) if m[i][col] % p), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = pow(m[rank][col], p - 2, p)
        m[rank] = [(v * inv) % p for v in m[rank]]
        for i in range(len(m)):
            if i != rank and m[i][col] % p:
                f = m[i][col]
                m[i] = [(a - f * b) % p for a, b in zip(m[i], m[rank])]
        pivots.append(col)
        rank += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fcol in free:
        v = [0] * ncols
        v[fcol] = 1
        for i, pc in enumerate(pivots):
            v[pc] = (-m[i][fcol]) % p
        basis.append(v)
    return basis


def _solve_in_basis(basis, vec, p):
    """Coordinates of vec in the span of basis vectors (columns), over F_p."""
    k = len(basis)
    n = len(vec)
    aug = [[basis[j][i] for j in range(k)] + [vec[i]] for i in range(n)]
    sol = _nullspace_mod([row for row in aug], p)
    for s in sol:
        if s[k] % p:
            inv = pow(s[k], p - 2, p)
            return [(-x * inv) % p for x in s[:k]]
    raise GroupError("vector outside subspace")


def _dixon(G: Group):
    r = len(G.classes)
    n = G.order
    e = G.exponent
    if r == 1:
        return [G.class_function([1])]
    a = _class_structure_constants(G)
    sizes = [c.size for c in G.classes]
    lower = 2 * math.isqrt(n) + 2
    k = 1
    while True:
        p = k * e + 1
        k += 1
        if p <= lower or not _isprime(p):
            continue
        result = _dixon_mod(G, a, sizes, p)
        if result is not None:
            return result


def _isprime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % d for d in range(2, math.isqrt(p) + 1))


def _dixon_mod(G: Group, a, sizes, p):
    r = len(G.classes)
    n = G.order
    e = G.exponent
    spaces = [[[1 if i == j else 0 for i in range(r)] for j in range(r)]]
    for j in range(1, r):
        if all(len(s) == 1 for s in spaces):
            break
        mat = a[j]  # rows i, cols k
        new_spaces = []
        for basis in spaces:
            if len(basis) == 1:
                new_spaces.append(basis)
                continue
            k = len(basis)
            images = [[sum(mat[i][kk] * b[kk] for kk in range(r)) % p for i in range(r)] for b in basis]
            coords = [_solve_in_basis(basis, img, p) for img in images]
            # restriction matrix X: column t = coords[t]
            found = 0
            for lam in range(p):
                rows = [[(coords[t][s] - (lam if s == t else 0)) % p for t in range(k)] for s in range(k)]
                ns = _nullspace_mod(rows, p)
                if ns:
                    vecs = [[sum(v[t] * basis[t][i] for t in range(k)) % p for i in range(r)] for v in ns]
                    new_spaces.append(vecs)
                    found += len(ns)
                if found == k:
                    break
            if found != k:
                return None
        spaces = new_spaces
    if not all(len(s) == 1 for s in spaces):
        return None
    inv_cls = G.inverse_class
    ident = 0
    z = pow(primitive_root(p), (p - 1) // e, p)
    chars = []
    for (v,) in spaces:
        if v[ident] % p == 0:
            return None
        inv = pow(v[ident], p - 2, p)
        omega = [(x * inv) % p for x in v]
        denom = sum(omega[i] * omega[inv_cls[i]] * pow(sizes[i], p - 2, p) for i in range(r)) % p
        if denom == 0:
            return None
        d2 = (n * pow(denom, p - 2, p)) % p
        d = next((d for d in range(1, math.isqrt(n) + 1) if (d * d - d2) % p == 0), None)
        if d is None:
            return None
        vals_mod = [(d * omega[i] * pow(sizes[i], p - 2, p)) % p for i in range(r)]
        inv_e = pow(e, p - 2, p)
        values = []
        for i in range(r):
            pm = G.power_maps[i]
            mults = []
            for s in range(e):
                acc = sum(vals_mod[pm[k]] * pow(z, (-s * k) % (p - 1), p) for k in range(e)) % p
                m = (acc * inv_e) % p
                if m > d:
                    return None
                mults.append(m)
            if sum(mults) != d:
                return None
            values.append(Cyc.from_exponents(e, mults))
        chars.append(ClassFunction(G, tuple(values)))
    chars.sort(key=lambda c: (c.degree, tuple(tuple(-x for x in v.c) for v in c.values)))
    # validate exactly
    if sum(c.degree ** 2 for c in chars) != n:
        return None
    for x in chars:
        for y in chars:
            if G.inner(x, y) != (1 if x is y else 0):
                return None
    return chars


# -- subgroups, kernels, quotients ----------------------------------------


def _small_generating_set(degree: int, elements) -> list[Perm]:
    target = len(elements)
    elems = sorted(elements, key=lambda g: (-perm_order(g), g))
    gens: list[Perm] = []
    span = {identity(degree)}
    for g in elems:
        if g in span:
            continue
        gens.append(g)
        span = set(Group(degree, gens).elements)
        if len(span) == target:
            break
    return gens or [identity(degree)]


def subgroup(G: Group, generators, label: str | None = None) -> Group:
    return Group(G.degree, generators, label)


def kernel_of_character(G: Group, chi: ClassFunction) -> frozenset:
    d = chi.values[0]
    keep = [i for i, v in enumerate(chi.values) if v == d]
    return frozenset().union(*(G.classes[i].elements for i in keep))


def is_normal(G: Group, N) -> bool:
    N = frozenset(N)
    return all(mul(mul(inverse(s), x), s) in N for s in G.generators for x in N)


@dataclass(frozen=True)
class Quotient:
    group: Group
    cosets: tuple[frozenset, ...]
    image: dict  # element of G -> element of quotient

    def __call__(self, g: Perm) -> Perm:
        return self.image[g]


def quotient(G: Group, N) -> Quotient:
    N = frozenset(N)
    if G.one not in N or not is_normal(G, N) or any(mul(a, b) not in N for a in N for b in N):
        raise GroupError("not a normal subgroup")
    coset_of = {}
    cosets = []
    for g in G.elements:
        if g in coset_of:
            continue
        cs = frozenset(mul(n, g) for n in N)
        for x in cs:
            coset_of[x] = len(cosets)
        cosets.append(cs)
    m = len(cosets)
    reps = [min(c) for c in cosets]

    def act(h):
        return tuple(coset_of[mul(reps[i], h)] for i in range(m))

    gens = [act(s) for s in G.generators]
    Q = Group(m, gens, label=None)
    image = {g: act(g) for g in G.elements}
    if Q.order * len(N) != G.order:
        raise GroupError("quotient order mismatch")
    return Quotient(Q, tuple(cosets), image)


def normal_subgroups(G: Group) -> list[frozenset]:
    """All normal subgroups, as unions of classes closed under products."""
    classes = [c.elements for c in G.classes[1:]]
    found = {frozenset([G.one])}
    frontier = [frozenset([G.one])]
    while frontier:
        nxt = []
        for N in frontier:
            for c in classes:
                if c <= N:
                    continue
                gens = set(N) | set(c)
                H = frozenset(Group(G.degree, gens).elements)
                if H not in found:
                    found.add(H)
                    nxt.append(H)
        frontier = nxt
    return sorted(found, key=len)


# -- twisted conjugacy -----------------------------------------------------


@dataclass(frozen=True)
class FAction:
    """An automorphism given by the images of the group's generators."""

    images: tuple[Perm, ...]

    @classmethod
    def trivial(cls, G: Group) -> "FAction":
        return cls(tuple(G.generators))

    def extend(self, G: Group) -> dict:
        if len(self.images) != len(G.generators):
            raise GroupError("F must give one image per generator")
        fmap = {G.one: G.one}
        queue = deque([G.one])
        while queue:
            g = queue.popleft()
            for s, fs in zip(G.generators, self.images):
                h = mul(g, s)
                fh = mul(fmap[g], fs)
                if h in fmap:
                    if fmap[h] != fh:
                        raise GroupError("F does not extend to a homomorphism")
                else:
                    fmap[h] = fh
                    queue.append(h)
        if set(fmap.values()) != G.element_set:
            raise GroupError("F is not bijective")
        return fmap

    def is_trivial(self, G: Group) -> bool:
        return tuple(self.images) == tuple(G.generators)

    def order(self, G: Group) -> int:
        fmap = self.extend(G)
        k = 1
        cur = dict(fmap)
        while any(cur[g] != g for g in G.generators):
            cur = {g: fmap[cur[g]] for g in G.elements}
            k += 1
        return k


def twisted_classes(G: Group, F: FAction) -> list[frozenset]:
    fmap = F.extend(G)
    gens = [(s, inverse(fmap[s])) for s in G.generators]
    seen = set()
    orbits = []
    for x in G.elements:
        if x in seen:
            continue
        orbit = {x}
        queue = deque([x])
        while queue:
            y = queue.popleft()
            for s, fsi in gens:
                z = mul(mul(s, y), fsi)
                if z not in orbit:
                    orbit.add(z)
                    queue.append(z)
        seen |= orbit
        orbits.append(frozenset(orbit))
    return orbits


def ell_regular_class_count(G: Group, ell: int) -> int:
    return sum(1 for c in G.classes if c.order % ell)


# -- labelled groups -------------------------------------------------------


def symmetric_group(n: int) -> Group:
    if n <= 1:
        return Group(1, [identity(1)], "1", 1)
    gens = [tuple([1, 0] + list(range(2, n)))]
    if n > 2:
        gens.append(tuple(list(range(1, n)) + [0]))
    return Group(n, gens, f"S{n}", math.factorial(n))


def cyclic_group(m: int) -> Group:
    if m == 1:
        return Group(1, [identity(1)], "1", 1)
    return Group(m, [tuple((i + 1) % m for i in range(m))], f"Z{m}", m)


def elementary_abelian_2(r: int) -> Group:
    if r == 0:
        return Group(1, [identity(1)], "1", 1)
    gens = []
    for k in range(r):
        gens.append(tuple(i ^ (1 << k) for i in range(2 ** r)))
    return Group(2 ** r, gens, f"Z2^{r}", 2 ** r)


def direct_product(*groups: Group) -> Group:
    offsets = []
    total = 0
    for H in groups:
        offsets.append(total)
        total += H.degree
    gens = []
    for H, off in zip(groups, offsets):
        for s in H.generators:
            g = list(range(total))
            for i, j in enumerate(s):
                g[off + i] = off + j
            gens.append(tuple(g))
    label = "x".join(H.label or "?" for H in groups)
    return Group(total, gens, label, math.prod(H.order for H in groups))


_LABEL = re.compile(r"^\s*(?:(Sym|S)\(?(\d+)\)?|(Cyclic|Z)\(?(\d+)\)?|(ElemAb2)\((\d+)\)|Z2\^(\d+)|(Weyl)\((\w+)\)|(1))\s*$")


def instantiate(label: str) -> Group:
    """Build a group from a label such as S3, Sym(4), Z6, Z2^2, Weyl(F4) or Product(S2,S3)."""
    label = label.strip()
    if label.startswith("Product(") and label.endswith(")"):
        parts = _split_args(label[len("Product("):-1])
        return direct_product(*(instantiate(p) for p in parts))
    if "x" in label and not label.startswith("Weyl"):
        return direct_product(*(instantiate(p) for p in label.split("x")))
    m = _LABEL.match(label)
    if not m:
        raise GroupError(f"unknown group label {label!r}")
    if m.group(2):
        return symmetric_group(int(m.group(2)))
    if m.group(4):
        return cyclic_group(int(m.group(4)))
    if m.group(6):
        return elementary_abelian_2(int(m.group(6)))
    if m.group(7):
        return elementary_abelian_2(int(m.group(7)))
    if m.group(9):
        from .rootsys import CartanType, build_root_system, weyl_group

        rs = build_root_system(CartanType.parse(m.group(9)))
        W = weyl_group(rs)
        if W.order > TABLE_BUDGET:
            raise BudgetError(f"Weyl({m.group(9)}) exceeds the computed-table budget; use curated data")
        return W
    return Group(1, [identity(1)], "1", 1)


def _split_args(s: str) -> list[str]:
    depth, cur, out = 0, "", []
    for ch in s:
        if ch == "," and depth == 0:
            out.append(cur)
            cur = ""
            continue
        depth += ch == "("
        depth -= ch == ")"
        cur += ch
    out.append(cur)
    return [p.strip() for p in out if p.strip()]


def fingerprint(G: Group) -> tuple:
    return (G.order, tuple(sorted(c.size for c in G.classes)), tuple(sorted(c.order for c in G.classes)))


_INVENTORY_CACHE: dict = {}


def identify(G: Group) -> str:
    """Name of G within the small inventory {1, Z_m, Z2^r, S3, S4, S5}, else '?'."""
    fp = fingerprint(G)
    n = G.order
    if n == 1:
        return "1"
    if G.is_abelian():
        orders = [c.order for c in G.classes]
        if max(orders) == n:
            return "S2" if n == 2 else f"Z{n}"
        if all(o <= 2 for o in orders):
            return f"Z2^{n.bit_length() - 1}"
        return "?"
    for k in (3, 4, 5):
        if n == math.factorial(k):
            key = f"S{k}"
            if key not in _INVENTORY_CACHE:
                _INVENTORY_CACHE[key] = fingerprint(symmetric_group(k))
            if fp == _INVENTORY_CACHE[key]:
                return key
    return "?"
