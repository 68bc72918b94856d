"""Exact arithmetic in cyclotomic integer rings Z[zeta_e].

An element is stored as its coefficient vector over 1, zeta, ..., zeta^(phi(e)-1)
after reduction modulo the e-th cyclotomic polynomial, so equality is structural.
"""

from __future__ import annotations

from functools import lru_cache

from sympy import Poly, Symbol, cyclotomic_poly

_x = Symbol("x")


@lru_cache(maxsize=None)
def cyclotomic_coeffs(e: int) -> tuple[int, ...]:
    """Coefficients of Phi_e, lowest degree first."""
    return tuple(int(c) for c in reversed(Poly(cyclotomic_poly(e, _x), _x).all_coeffs()))


def _reduce(coeffs: list[int], e: int) -> tuple[int, ...]:
    phi = cyclotomic_coeffs(e)
    n = len(phi) - 1
    c = list(coeffs)
    for k in range(len(c) - 1, n - 1, -1):
        t = c[k]
        if t:
            # Phi_e is monic: subtract t * x^(k-n) * Phi_e
            for j in range(n + 1):
                c[k - n + j] -= t * phi[j]
    c = c[:n] + [0] * max(0, n - len(c))
    return tuple(c)


class Cyc:
    """An element of Z[zeta_e] (or Q(zeta_e) when built from fractions)."""

    __slots__ = ("e", "c")

    def __init__(self, e: int, coeffs):
        self.e = e
        self.c = _reduce(list(coeffs), e)

    @classmethod
    def integer(cls, e: int, n: int) -> "Cyc":
        return cls(e, [n])

    @classmethod
    def from_exponents(cls, e: int, mult: dict[int, int] | list[int]) -> "Cyc":
        """Sum of m_s * zeta^s, given as a mapping s -> m_s or a length-e list."""
        v = [0] * e
        items = mult.items() if isinstance(mult, dict) else enumerate(mult)
        for s, m in items:
            v[s % e] += m
        return cls(e, v)

    def _coerce(self, other) -> "Cyc":
        if isinstance(other, Cyc):
            if other.e != self.e:
                raise ValueError("conductor mismatch")
            return other
        return Cyc(self.e, [other])

    def __add__(self, other):
        o = self._coerce(other)
        return Cyc(self.e, [a + b for a, b in zip(self.c, o.c)])

    __radd__ = __add__

    def __neg__(self):
        return Cyc(self.e, [-a for a in self.c])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        prod = [0] * (len(self.c) + len(o.c))
        for i, a in enumerate(self.c):
            if a:
                for j, b in enumerate(o.c):
                    if b:
                        prod[i + j] += a * b
        return Cyc(self.e, prod)

    __rmul__ = __mul__

    def conj(self) -> "Cyc":
        v = [0] * self.e
        for s, a in enumerate(self.c):
            v[(-s) % self.e] += a
        return Cyc(self.e, v)

    def is_rational(self) -> bool:
        return all(a == 0 for a in self.c[1:])

    def rational(self):
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        return self.c[0]

    def __eq__(self, other):
        if isinstance(other, (int,)) or not isinstance(other, Cyc):
            try:
                other = self._coerce(other)
            except (TypeError, ValueError):
                return NotImplemented
        return self.e == other.e and self.c == other.c

    def __hash__(self):
        return hash((self.e, self.c))

    def __repr__(self):
        if self.is_rational():
            return str(self.c[0])
        terms = [f"{a}*z{self.e}^{s}" for s, a in enumerate(self.c) if a]
        return " + ".join(terms)
