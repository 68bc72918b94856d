"""Classical types: unipotent classes by partitions, rational counts, type A.

Series and groups (split forms, q odd):

* A: SL_n, or SU_n for the unitary form; A(u) = Z_{m}, m = gcd(parts)_{p'}.
* B: SO_{2n+1}; A(u) = (Z_2)^r, r = max(0, #distinct odd parts - 1).
* C: Sp_{2n}; r = #distinct even parts.
* D: SO_{2n}; r = max(0, #distinct odd parts - 1); very even partitions give
  two classes.

F acts trivially on the 2-groups A(u) of B/C/D, so each algebraic class splits
into |A(u)| rational classes. In type A, F acts on A(u) (a quotient of the
centre) by x -> x^q, or x -> x^(-q) for SU.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from itertools import product

from . import permgrp
from .permgrp import BudgetError, Group

SERIES = "ABCD"


class ClassicalError(ValueError):
    pass


class ConventionError(ClassicalError):
    """Formula and oracle disagree under the adopted sign convention."""

    def __init__(self, report: list[str]):
        self.report = report
        super().__init__("type-A sign convention mismatch:\n  " + "\n  ".join(report))


def _prime_power(q: int) -> tuple[int, int]:
    """(p, e) with q = p^e, p odd."""
    if q < 3:
        raise ClassicalError(f"q = {q} must be an odd prime power")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    e, r = 0, q
    while r % p == 0:
        r //= p
        e += 1
    if r != 1 or p == 2:
        raise ClassicalError(f"q = {q} must be an odd prime power")
    return p, e


def _strip(n: int, p: int) -> int:
    while n % p == 0:
        n //= p
    return n


def ell_part(n: int, ell: int) -> int:
    out = 1
    while n % ell == 0:
        n //= ell
        out *= ell
    return out


def partitions(n: int, largest: int | None = None):
    largest = n if largest is None else largest
    if n == 0:
        yield ()
        return
    for k in range(min(n, largest), 0, -1):
        for rest in partitions(n - k, k):
            yield (k,) + rest


@dataclass(frozen=True)
class PartitionClass:
    series: str
    partition: tuple[int, ...]
    two_rank: int = 0  # B/C/D
    m: int = 1  # type A: gcd of the parts
    very_even: str = ""  # D: "+" or "-" for the two classes, else ""

    @property
    def component_order(self) -> int:
        return self.m if self.series == "A" else 2**self.two_rank

    def m_prime(self, p: int) -> int:
        return _strip(self.m, p)

    def __str__(self):
        return "(" + ",".join(map(str, self.partition)) + ")" + self.very_even


def _mult(lam):
    out: dict[int, int] = {}
    for x in lam:
        out[x] = out.get(x, 0) + 1
    return out


def _admissible(series: str, lam) -> bool:
    mult = _mult(lam)
    if series in "BD":
        return all(k % 2 == 0 for x, k in mult.items() if x % 2 == 0)
    if series == "C":
        return all(k % 2 == 0 for x, k in mult.items() if x % 2 == 1)
    return True


def _size(series: str, rank: int) -> int:
    return {"A": rank + 1, "B": 2 * rank + 1, "C": 2 * rank, "D": 2 * rank}[series]


def _check(series: str, rank: int):
    if series not in SERIES:
        raise ClassicalError(f"unknown series {series!r}")
    if rank < 1 or (series == "D" and rank < 2):
        raise ClassicalError(f"invalid rank {rank} for series {series}")


def unipotent_class_data(series: str, rank: int) -> list[PartitionClass]:
    """The unipotent classes of the simple group of the given series and rank.

    ``rank`` is the Lie rank, so type A with rank n - 1 is SL_n.
    """
    _check(series, rank)
    N = _size(series, rank)
    out = []
    for lam in partitions(N):
        if not _admissible(series, lam):
            continue
        distinct = set(lam)
        if series == "A":
            out.append(PartitionClass("A", lam, m=math.gcd(*lam)))
        elif series == "C":
            out.append(PartitionClass("C", lam, two_rank=sum(1 for x in distinct if x % 2 == 0)))
        else:
            odd = sum(1 for x in distinct if x % 2 == 1)
            r = max(0, odd - 1)
            if series == "D" and odd == 0:
                out.append(PartitionClass("D", lam, r, very_even="+"))
                out.append(PartitionClass("D", lam, r, very_even="-"))
            else:
                out.append(PartitionClass(series, lam, r))
    return out


def merge_very_even(classes: list[PartitionClass]) -> list[PartitionClass]:
    """Forget the very-even marker (one entry per partition)."""
    seen, out = set(), []
    for c in classes:
        if c.partition not in seen:
            seen.add(c.partition)
            out.append(PartitionClass(c.series, c.partition, c.two_rank, c.m))
    return out


def f_classes_cyclic(m: int, t: int) -> int:
    """Number of F-classes of Z_m under F(x) = t x, by orbit enumeration."""
    if m < 1:
        raise ClassicalError("m must be positive")
    if math.gcd(t, m) != 1:
        raise ClassicalError(f"{t} is not invertible modulo {m}")
    seen = [False] * m
    orbits = 0
    for x in range(m):
        if seen[x]:
            continue
        orbits += 1
        queue = deque([x])
        seen[x] = True
        while queue:
            y = queue.popleft()
            z = (y + 1 - t) % m  # g . y = g + y - F(g), with g the generator
            if not seen[z]:
                seen[z] = True
                queue.append(z)
    return orbits


def _cyclic_twisted(m: int, t: int) -> int:
    return f_classes_cyclic(m, t % m) if m > 1 else 1


def rational_unipotent_count(series: str, rank: int, q: int, form: str = "linear") -> int:
    """Number of unipotent conjugacy classes of G(q)."""
    p, _ = _prime_power(q)
    classes = unipotent_class_data(series, rank)
    if series == "A":
        t = q if form == "linear" else -q
        return sum(_cyclic_twisted(c.m_prime(p), t) for c in classes)
    if form != "linear":
        raise ClassicalError("only split forms are supported for B, C, D")
    return sum(c.component_order for c in classes)


# -- type A ------------------------------------------------------------------------

# Adopted convention: alpha_{l,u} = gcd(m, q - 1)_l for SL_n, gcd(m, q + 1)_l for SU_n.
ADOPTED_SIGN = {"linear": -1, "unitary": +1}
LITERAL_SIGN = {"linear": +1, "unitary": -1}


@dataclass(frozen=True)
class TypeARow:
    partition: tuple[int, ...]
    m: int
    formula: int  # gcd(m, q + eps)_l with the adopted eps
    literal: int  # the same with the opposite sign
    oracle: int  # F-classes of Z_{m_l} under x -> t x


@dataclass(frozen=True)
class TypeAResult:
    n: int
    ell: int
    q: int
    form: str
    rows: tuple[TypeARow, ...]

    @property
    def total(self) -> int:
        return sum(r.formula for r in self.rows)

    @property
    def oracle_total(self) -> int:
        return sum(r.oracle for r in self.rows)


def alpha_type_a(n: int, ell: int, q: int, form: str = "linear", strict: bool = True) -> TypeAResult:
    """alpha_l for SL_n(q) (linear) or SU_n(q) (unitary), with the oracle alongside."""
    if form not in ADOPTED_SIGN:
        raise ClassicalError(f"unknown form {form!r}")
    p, _ = _prime_power(q)
    if ell == p:
        raise ClassicalError("l must differ from the defining characteristic")
    t = q if form == "linear" else -q
    rows = []
    for lam in partitions(n):
        m = _strip(math.gcd(*lam), p)
        ml = ell_part(m, ell)
        adopted = ell_part(math.gcd(m, q + ADOPTED_SIGN[form]), ell)
        literal = ell_part(math.gcd(m, q + LITERAL_SIGN[form]), ell)
        oracle = _cyclic_twisted(ml, t)
        rows.append(TypeARow(lam, m, adopted, literal, oracle))
    res = TypeAResult(n, ell, q, form, tuple(rows))
    bad = [f"n={n} l={ell} q={q} {form} {r.partition}: formula {r.formula}, oracle {r.oracle}" for r in rows if r.formula != r.oracle]
    if bad and strict:
        raise ConventionError(bad)
    return res


@dataclass(frozen=True)
class ConventionAudit:
    cases: int
    adopted_mismatches: tuple[str, ...]
    literal_mismatches: tuple[str, ...]

    @property
    def verdict(self) -> str:
        if self.adopted_mismatches:
            return "no single convention matches the oracle"
        if not self.literal_mismatches:
            return "both conventions match the oracle on this grid"
        return (
            "eps = -1 for SL_n (gcd with q - 1) and eps = +1 for SU_n (gcd with q + 1) matches the oracle "
            f"in all {self.cases} cases; the opposite sign fails in {len(self.literal_mismatches)}"
        )


def type_a_convention_audit(ns=range(1, 7), ells=(2, 3, 5), qs=(3, 5, 7, 9)) -> ConventionAudit:
    adopted, literal, cases = [], [], 0
    for n, ell, q, form in product(ns, ells, qs, ("linear", "unitary")):
        if q % ell == 0:
            continue
        res = alpha_type_a(n, ell, q, form, strict=False)
        for r in res.rows:
            cases += 1
            tag = f"n={n} l={ell} q={q} {form} {r.partition}"
            if r.formula != r.oracle:
                adopted.append(f"{tag}: adopted {r.formula} vs oracle {r.oracle}")
            if r.literal != r.oracle:
                literal.append(f"{tag}: opposite sign {r.literal} vs oracle {r.oracle}")
    return ConventionAudit(cases, tuple(adopted), tuple(literal))


# -- brute-force oracle ------------------------------------------------------------


def _group_order(series: str, rank: int, q: int) -> int:
    n = rank
    if series == "A":
        return q ** (n * (n + 1) // 2) * math.prod(q**i - 1 for i in range(2, n + 2))
    if series in "BC":
        return q ** (n * n) * math.prod(q ** (2 * i) - 1 for i in range(1, n + 1))
    return q ** (n * (n - 1)) * (q**n - 1) * math.prod(q ** (2 * i) - 1 for i in range(1, n))


def _vectors(N: int, p: int):
    return list(product(range(p), repeat=N))


def _as_perm(f, vecs, index):
    return tuple(index[f(v)] for v in vecs)


def _matrix_action(M, p):
    def f(v):
        return tuple(sum(M[i][j] * v[j] for j in range(len(v))) % p for i in range(len(M)))

    return f


def _bilinear(J, p):
    def b(u, v):
        return sum(u[i] * J[i][j] * v[j] for i in range(len(u)) for j in range(len(v))) % p

    return b


def _forms(series: str, rank: int):
    """Gram matrix of the defining form: symplectic for C, symmetric for B/D."""
    if series == "C":
        N = 2 * rank
        J = [[0] * N for _ in range(N)]
        for i in range(rank):
            J[i][rank + i] = 1
            J[rank + i][i] = -1
        return J
    N = _size(series, rank)
    J = [[0] * N for _ in range(N)]
    for i in range(N):
        J[i][N - 1 - i] = 1  # split form: sum x_i x_{N-1-i}
    return J


def _generator_candidates(series: str, rank: int, p: int):
    N = _size(series, rank)
    vecs = _vectors(N, p)
    if series == "A":
        for i in range(N):
            for j in range(N):
                if i != j:
                    M = [[int(a == b) for b in range(N)] for a in range(N)]
                    M[i][j] = 1
                    yield _matrix_action(M, p)
        return
    J = _forms(series, rank)
    b = _bilinear(J, p)
    if series == "C":
        for v in vecs[1:]:
            # symplectic transvection x -> x + b(x, v) v
            yield (lambda v: lambda x: tuple((x[i] + b(x, v) * v[i]) % p for i in range(N)))(v)
        return
    inv2 = pow(2, -1, p)
    aniso = [v for v in vecs if b(v, v) % p]

    def refl(v):
        qv = b(v, v) * inv2 % p  # Q(v) with b(x, x) = 2 Q(x)
        qinv = pow(qv, -1, p)

        def r(x):
            c = b(x, v) * qinv % p
            return tuple((x[i] - c * v[i]) % p for i in range(N))

        return r

    r0 = refl(aniso[0])
    for v in aniso[1:]:
        rv = refl(v)
        yield (lambda rv: lambda x: r0(rv(x)))(rv)


def classical_group(series: str, rank: int, q: int) -> Group:
    """SL_{n+1}(q), SO_{2n+1}(q), Sp_{2n}(q) or SO^+_{2n}(q) acting on F_q^N (q prime)."""
    _check(series, rank)
    p, e = _prime_power(q)
    if e != 1:
        raise ClassicalError("the brute-force oracle needs q prime")
    N = _size(series, rank)
    if p**N > 5000:
        raise BudgetError(f"{p}^{N} vectors exceed the oracle budget")
    target = _group_order(series, rank, q)
    if target > 10**7:
        raise BudgetError(f"|G| = {target} exceeds the oracle budget")
    vecs = _vectors(N, p)
    index = {v: i for i, v in enumerate(vecs)}
    ident = tuple(range(len(vecs)))
    gens: list[tuple] = []
    current = frozenset([ident])
    for f in _generator_candidates(series, rank, p):
        g = _as_perm(f, vecs, index)
        if g in current:
            continue
        gens.append(g)
        current = Group(len(vecs), gens).element_set
        if len(current) >= target:
            break
    order = len(current)
    if order != target:
        raise ClassicalError(f"generated a group of order {order}, expected {target}")
    return Group(len(vecs), gens, f"{series}{rank}({q})", target)


def brute_force_class_count(series: str, rank: int, q: int) -> int:
    """Unipotent conjugacy classes of G(q) by explicit enumeration (rank 0 gives 1)."""
    if rank == 0:
        return 1
    p, _ = _prime_power(q)
    G = classical_group(series, rank, q)

    def is_p_power(k):
        while k % p == 0:
            k //= p
        return k == 1

    unip = [g for g in G.elements if is_p_power(permgrp.perm_order(g))]
    unip_set = set(unip)
    gens = [(s, permgrp.inverse(s)) for s in G.generators]
    seen = set()
    count = 0
    for x in unip:
        if x in seen:
            continue
        count += 1
        seen.add(x)
        queue = deque([x])
        while queue:
            y = queue.popleft()
            for s, si in gens:
                z = permgrp.mul(permgrp.mul(si, y), s)
                if z not in seen:
                    seen.add(z)
                    queue.append(z)
    assert seen == unip_set
    return count
