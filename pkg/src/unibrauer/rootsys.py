"""Irreducible root systems, highest roots and pseudo-Levi subsystems.

Roots are integer vectors in the standard orthonormal models (F4 and E-types
scaled by 2 so every coordinate is an integer).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import combinations, product

Vector = tuple[int, ...]

_RANK_OK = {
    "A": lambda n: n >= 1,
    "B": lambda n: n >= 2,
    "C": lambda n: n >= 2,
    "D": lambda n: n >= 4,
    "E": lambda n: n in (6, 7, 8),
    "F": lambda n: n == 4,
    "G": lambda n: n == 2,
}

_POSITIVE_COUNT = {
    "A": lambda n: n * (n + 1) // 2,
    "B": lambda n: n * n,
    "C": lambda n: n * n,
    "D": lambda n: n * (n - 1),
    "E": lambda n: {6: 36, 7: 63, 8: 120}[n],
    "F": lambda n: 24,
    "G": lambda n: 6,
}


class RootSystemError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Component:
    series: str
    rank: int
    short: bool = False  # all roots short inside a non-simply-laced ambient system

    def __str__(self):
        return ("~" if self.short else "") + f"{self.series}{self.rank}"


@dataclass(frozen=True)
class CartanType:
    components: tuple[Component, ...]

    def __post_init__(self):
        for c in self.components:
            if c.series not in _RANK_OK:
                raise RootSystemError(f"unknown series {c.series}")
            ok = _RANK_OK[c.series](c.rank)
            # inside subsystems small B/C/D ranks occur under their low-rank names
            if not ok and not (c.series in "BC" and c.rank >= 1) and not (c.series == "D" and c.rank >= 2):
                raise RootSystemError(f"invalid rank {c.series}{c.rank}")
        object.__setattr__(self, "components", tuple(sorted(self.components, key=_component_key)))

    @classmethod
    def parse(cls, text: str) -> "CartanType":
        parts = [p for p in re.split(r"\s*\+\s*", text.strip()) if p]
        comps = []
        for p in parts:
            m = re.fullmatch(r"(\d*)(~?)([A-G])(\d+)", p)
            if not m:
                raise RootSystemError(f"cannot parse Cartan type {text!r}")
            mult = int(m.group(1) or 1)
            comps += [Component(m.group(3), int(m.group(4)), bool(m.group(2)))] * mult
        return cls(tuple(comps))

    @property
    def rank(self) -> int:
        return sum(c.rank for c in self.components)

    def is_irreducible(self) -> bool:
        return len(self.components) == 1

    def __str__(self):
        return "+".join(str(c) for c in self.components) or "empty"


def _component_key(c: Component):
    order = "EFGBCDA"
    return (order.index(c.series), -c.rank, c.short)


def _models(series: str, n: int) -> list[Vector]:
    """All roots of the standard model."""
    roots = []
    if series == "A":
        d = n + 1
        for i, j in product(range(d), repeat=2):
            if i != j:
                v = [0] * d
                v[i], v[j] = 1, -1
                roots.append(tuple(v))
    elif series in "BCD":
        for i, j in combinations(range(n), 2):
            for si, sj in product((1, -1), repeat=2):
                v = [0] * n
                v[i], v[j] = si, sj
                roots.append(tuple(v))
        if series in "BC":
            k = 1 if series == "B" else 2
            for i in range(n):
                for s in (1, -1):
                    v = [0] * n
                    v[i] = s * k
                    roots.append(tuple(v))
    elif series == "G":
        for i, j in permutations2(3):
            v = [0, 0, 0]
            v[i], v[j] = 1, -1
            roots.append(tuple(v))
        for i in range(3):
            for s in (1, -1):
                v = [-s, -s, -s]
                v[i] = 2 * s
                roots.append(tuple(v))
    elif series == "F":
        for i, j in combinations(range(4), 2):
            for si, sj in product((2, -2), repeat=2):
                v = [0] * 4
                v[i], v[j] = si, sj
                roots.append(tuple(v))
        for i in range(4):
            for s in (2, -2):
                v = [0] * 4
                v[i] = s
                roots.append(tuple(v))
        roots += [tuple(s) for s in product((1, -1), repeat=4)]
    elif series == "E":
        e8 = []
        for i, j in combinations(range(8), 2):
            for si, sj in product((2, -2), repeat=2):
                v = [0] * 8
                v[i], v[j] = si, sj
                e8.append(tuple(v))
        for s in product((1, -1), repeat=8):
            if s.count(-1) % 2 == 0:
                e8.append(tuple(s))
        if n == 8:
            roots = e8
        else:
            # E7 / E6: roots orthogonal to one / two roots of an A2 inside E8
            a = (0, 0, 0, 0, 0, 0, 2, 2)
            b = (0, 0, 0, 0, 0, 2, -2, 0)
            orth = [a] if n == 7 else [a, b]
            roots = [r for r in e8 if all(_dot(r, o) == 0 for o in orth)]
    return roots


def permutations2(k):
    return [(i, j) for i in range(k) for j in range(k) if i != j]


def _dot(u, v) -> int:
    return sum(a * b for a, b in zip(u, v))


def _norm(u) -> int:
    return _dot(u, u)


@dataclass(frozen=True)
class RootSystem:
    cartan_type: CartanType
    simple_roots: tuple[Vector, ...]
    positive_roots: tuple[Vector, ...]
    highest_root: Vector
    marks: tuple[int, ...]
    affine_node_index: int = 0
    coords: dict = field(default_factory=dict, compare=False, repr=False)

    @property
    def rank(self) -> int:
        return len(self.simple_roots)

    @cached_property
    def roots(self) -> tuple[Vector, ...]:
        return self.positive_roots + tuple(tuple(-x for x in r) for r in self.positive_roots)

    @cached_property
    def root_index(self) -> dict:
        return {r: i for i, r in enumerate(self.roots)}

    @cached_property
    def long_norm(self) -> int:
        return max(_norm(r) for r in self.roots)

    def is_long(self, r: Vector) -> bool:
        return _norm(r) == self.long_norm

    def coordinates(self, v: Vector) -> tuple[int, ...]:
        """Expansion of a root over the simple roots."""
        return self.coords[tuple(v)]

    def cartan_matrix(self, vectors=None) -> list[list[int]]:
        vs = self.simple_roots if vectors is None else vectors
        return [[2 * _dot(a, b) // _norm(b) for b in vs] for a in vs]

    def reflect(self, r: Vector, v: Vector) -> Vector:
        k = Fraction(2 * _dot(v, r), _norm(r))
        out = tuple(Fraction(x) - k * y for x, y in zip(v, r))
        if any(x.denominator != 1 for x in out):
            raise RootSystemError("non-integral reflection")
        return tuple(int(x) for x in out)

    def dual(self) -> "RootSystem":
        """The dual system, realised in the same space: long roots kept, short scaled up."""
        L = self.long_norm
        short = min(_norm(r) for r in self.roots)
        ratio = L // short

        def scale(r):
            return tuple(x * ratio for x in r) if _norm(r) != L else tuple(r)

        simple = tuple(scale(r) for r in self.simple_roots)
        return _finish(simple, _dual_type(self.cartan_type))


def _dual_type(t: CartanType) -> CartanType:
    comps = []
    for c in t.components:
        s = {"B": "C", "C": "B"}.get(c.series, c.series)
        comps.append(Component(s, c.rank))
    return CartanType(tuple(comps))


def _lex_functional(dim: int) -> tuple[int, ...]:
    return tuple(10 ** (3 * (dim - i)) + i for i in range(dim))


def _simple_system(roots: list[Vector]) -> list[Vector]:
    f = _lex_functional(len(roots[0]))
    pos = [r for r in roots if _dot(r, f) > 0]
    pos_set = set(pos)
    simple = []
    for r in pos:
        decomposable = any(
            tuple(a - b for a, b in zip(r, s)) in pos_set for s in pos if s != r
        )
        if not decomposable:
            simple.append(r)
    return simple


def _expand(simple: list[Vector], v: Vector) -> tuple[int, ...]:
    """Solve v = sum c_i simple_i exactly (least squares via Gram matrix)."""
    n = len(simple)
    gram = [[Fraction(_dot(a, b)) for b in simple] for a in simple]
    rhs = [Fraction(_dot(a, v)) for a in simple]
    m = [row + [r] for row, r in zip(gram, rhs)]
    for col in range(n):
        piv = next(i for i in range(col, n) if m[i][col] != 0)
        m[col], m[piv] = m[piv], m[col]
        for i in range(n):
            if i != col and m[i][col] != 0:
                f = m[i][col] / m[col][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[col])]
    sol = [m[i][n] / m[i][i] for i in range(n)]
    if any(x.denominator != 1 for x in sol):
        raise RootSystemError("non-integral expansion")
    return tuple(int(x) for x in sol)


def _adjacency(vectors) -> dict[int, set[int]]:
    adj = {i: set() for i in range(len(vectors))}
    for i, j in combinations(range(len(vectors)), 2):
        if _dot(vectors[i], vectors[j]) != 0:
            adj[i].add(j)
            adj[j].add(i)
    return adj


def _components(vectors) -> list[list[int]]:
    adj = _adjacency(vectors)
    seen, comps = set(), []
    for i in range(len(vectors)):
        if i in seen:
            continue
        stack, comp = [i], []
        seen.add(i)
        while stack:
            x = stack.pop()
            comp.append(x)
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        comps.append(sorted(comp))
    return comps


def classify(vectors, ambient_long_norm: int | None = None) -> tuple[CartanType, list[list[int]]]:
    """Cartan type of a set of linearly independent roots, plus a Bourbaki ordering per component."""
    comps = []
    orders = []
    for comp in _components(vectors):
        vs = [vectors[i] for i in comp]
        c, order = _classify_connected(vs)
        if ambient_long_norm is not None and c.series in "AD E".replace(" ", ""):
            if _norm(vs[0]) != ambient_long_norm:
                c = Component(c.series, c.rank, True)
        comps.append(c)
        orders.append([comp[i] for i in order])
    paired = sorted(zip(comps, orders), key=lambda t: _component_key(t[0]))
    return CartanType(tuple(c for c, _ in paired)), [o for _, o in paired]


def _classify_connected(vs: list[Vector]) -> tuple[Component, list[int]]:
    n = len(vs)
    adj = _adjacency(vs)
    norms = [_norm(v) for v in vs]
    long = max(norms)

    def bond(i, j):
        a = 2 * _dot(vs[i], vs[j]) // norms[j]
        b = 2 * _dot(vs[j], vs[i]) // norms[i]
        return a * b

    if n == 1:
        return Component("A", 1), [0]
    degs = {i: len(adj[i]) for i in range(n)}
    multi = [(i, j) for i in range(n) for j in adj[i] if i < j and bond(i, j) > 1]
    if any(bond(i, j) == 3 for i, j in multi):
        short_i = 0 if norms[0] < norms[1] else 1
        return Component("G", 2), [short_i, 1 - short_i]
    branch = [i for i in range(n) if degs[i] == 3]
    if not branch:
        ends = [i for i in range(n) if degs[i] == 1]
        path = _walk(adj, ends[0])
        if not multi:
            return Component("A", n), path
        i, j = multi[0]
        if n == 4 and degs[i] == 2 and degs[j] == 2:
            # F4: long end first
            if norms[path[0]] != long:
                path.reverse()
            return Component("F", 4), path
        # B/C: the double bond sits at the end of the path
        if {i, j} & {path[0]} and n > 2:
            path.reverse()
        if n == 2:
            if norms[path[0]] != long:
                path.reverse()
            return Component("B", 2), path
        last = path[-1]
        series = "B" if norms[last] != long else "C"
        return Component(series, n), path
    b = branch[0]
    legs = []
    for nb in adj[b]:
        leg = [nb]
        prev, cur = b, nb
        while True:
            nxt = [x for x in adj[cur] if x != prev]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            leg.append(cur)
        legs.append(leg)
    legs.sort(key=len)
    lens = [len(l) for l in legs]
    if lens[0] == 1 and lens[1] == 1:
        # D_n: alpha_1 .. alpha_{n-2} along the long leg, then the two short legs
        order = list(reversed(legs[2])) + [b] + [legs[0][0], legs[1][0]]
        return Component("D", n), order
    if lens[0] == 1 and lens[1] == 2 and lens[2] in (2, 3, 4):
        # Bourbaki E_n: 1 - 3 - 4 - 5 - ..., with 2 attached to 4
        a2 = legs[0][0]
        a3, a1 = legs[1]
        rest = legs[2]
        order = [a1, a2, a3, b] + rest
        return Component("E", n), order
    raise RootSystemError("unrecognised Dynkin diagram")


def _walk(adj, start) -> list[int]:
    path = [start]
    prev = None
    cur = start
    while True:
        nxt = [x for x in adj[cur] if x != prev]
        if not nxt:
            return path
        prev, cur = cur, nxt[0]
        path.append(cur)


def _finish(simple: tuple[Vector, ...], t: CartanType) -> RootSystem:
    # generate all roots by reflection closure
    roots = set(simple) | {tuple(-x for x in s) for s in simple}
    frontier = list(roots)
    rsys = RootSystem(t, simple, (), (0,), (), 0)
    while frontier:
        nxt = []
        for r in frontier:
            for s in simple:
                v = rsys.reflect(s, r)
                if v not in roots:
                    roots.add(v)
                    nxt.append(v)
        frontier = nxt
    coords = {r: _expand(list(simple), r) for r in roots}
    positive = sorted((r for r in roots if all(c >= 0 for c in coords[r])), key=lambda r: (sum(coords[r]), coords[r]))
    if len(positive) * 2 != len(roots):
        raise RootSystemError("roots are not split by the simple system")
    t_irr = t.components[0]
    if len(positive) != _POSITIVE_COUNT[t_irr.series](t_irr.rank):
        raise RootSystemError("positive root count does not match the type")
    highest = max(positive, key=lambda r: (sum(coords[r]), coords[r]))
    marks = coords[highest]
    return RootSystem(t, tuple(simple), tuple(positive), highest, tuple(marks), 0, coords)


@lru_cache(maxsize=None)
def build_root_system(t: CartanType) -> RootSystem:
    if not t.is_irreducible():
        raise RootSystemError("build_root_system expects an irreducible type")
    c = t.components[0]
    if not _RANK_OK[c.series](c.rank):
        raise RootSystemError(f"unsupported type {c}")
    roots = _models(c.series, c.rank)
    simple = _simple_system(roots)
    found, orders = classify(simple)
    if str(found) != f"{c.series}{c.rank}":
        raise RootSystemError(f"model produced {found}, expected {c}")
    ordered = tuple(simple[i] for i in orders[0])
    return _finish(ordered, CartanType((Component(c.series, c.rank),)))


# -- pseudo-Levi subsystems --------------------------------------------------


@dataclass(frozen=True)
class SubsystemRecord:
    deleted_node: int  # 0 = affine node, i = simple root alpha_i (1-based)
    d: int
    sub_type: CartanType
    simple_roots: tuple[Vector, ...]  # the remaining nodes of the extended diagram


def extended_nodes(rs: RootSystem) -> list[Vector]:
    return [tuple(-x for x in rs.highest_root)] + list(rs.simple_roots)


def pseudo_levi_subsystems(rs: RootSystem, length_reference: RootSystem | None = None) -> list[SubsystemRecord]:
    """One record per node of the extended diagram.

    ``length_reference`` relabels long/short decorations with respect to another
    system sharing the root directions (used when transporting from the dual).
    """
    nodes = extended_nodes(rs)
    marks = (1,) + rs.marks
    out = []
    for i in range(len(nodes)):
        rest = tuple(nodes[:i] + nodes[i + 1:])
        t = _label_subsystem(rest, rs, length_reference)
        out.append(SubsystemRecord(i, marks[i], t, rest))
    return out


def _label_subsystem(vectors, rs: RootSystem, ref: RootSystem | None) -> CartanType:
    if ref is None:
        t, _ = classify(list(vectors), rs.long_norm)
        return t
    # express the nodes as roots of ref (same directions), then classify there
    mapped = [direction_in(ref, v) for v in vectors]
    t, _ = classify(mapped, ref.long_norm)
    return t


def direction_in(rs: RootSystem, v: Vector) -> Vector:
    """The root of rs positively proportional to v."""
    for r in rs.roots:
        if _dot(r, v) > 0 and _dot(r, v) ** 2 == _norm(r) * _norm(v):
            return r
    raise RootSystemError("no root in that direction")


def is_power_of(d: int, ell: int) -> bool:
    while d % ell == 0:
        d //= ell
    return d == 1


def ell_relevant_subsystems(rs: RootSystem, ell: int, length_reference: RootSystem | None = None) -> list[SubsystemRecord]:
    if ell < 2 or any(ell % k == 0 for k in range(2, ell)):
        raise RootSystemError(f"{ell} is not prime")
    return [s for s in pseudo_levi_subsystems(rs, length_reference) if is_power_of(s.d, ell)]


# -- Weyl groups as permutation groups of roots ------------------------------------


def reflection_perm(rs: RootSystem, r: Vector) -> tuple[int, ...]:
    idx = rs.root_index
    return tuple(idx[rs.reflect(r, v)] for v in rs.roots)


@lru_cache(maxsize=None)
def weyl_group(rs: RootSystem):
    from .permgrp import Group

    gens = [reflection_perm(rs, s) for s in rs.simple_roots]
    G = Group(len(rs.roots), gens, f"Weyl({rs.cartan_type})")
    return G


def element_matrix(rs: RootSystem, g) -> tuple[tuple[int, ...], ...]:
    """Matrix of a Weyl group element on the root lattice (columns = images of simple roots)."""
    idx = rs.root_index
    cols = [rs.coordinates(rs.roots[g[idx[s]]]) for s in rs.simple_roots]
    n = rs.rank
    return tuple(tuple(cols[j][i] for j in range(n)) for i in range(n))
