"""Exact arithmetic in Z[zeta_e].

A :class:`CycInt` stores the coefficients of an element in the power basis
1, zeta, ..., zeta^(phi(e)-1) after reduction modulo the cyclotomic polynomial,
so equal ring elements have equal coefficient tuples.  Python integers keep
everything exact.

For e = l^2 the prime above l is totally ramified, (l) = (1 - zeta)^phi(e),
and ``lambda_valuation`` computes the order of an element at that prime.
Writing a = sum a_i (zeta - 1)^i with i < phi(e), the term a_i (zeta - 1)^i has
valuation i + phi(e) * v_l(a_i).  These values are distinct for distinct i
(they differ mod phi(e)), so the valuation of the sum is their minimum.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from functools import lru_cache

INF = math.inf


@lru_cache(maxsize=None)
def euler_phi(n: int) -> int:
    out, m, f = n, n, 2
    while f * f <= m:
        if m % f == 0:
            while m % f == 0:
                m //= f
            out -= out // f
        f += 1
    if m > 1:
        out -= out // m
    return out


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def poly_divexact(num: list[int], den: list[int]) -> list[int]:
    """Exact division of integer polynomials (low degree first), den monic."""
    num = list(num)
    dd = len(den) - 1
    if den[-1] != 1:
        raise ValueError("divisor must be monic")
    quot = [0] * (len(num) - dd)
    for top in range(len(num) - 1, dd - 1, -1):
        c = num[top]
        quot[top - dd] = c
        if c:
            for k in range(dd + 1):
                num[top - dd + k] -= c * den[k]
    if any(num[:dd]):
        raise ArithmeticError("division is not exact")
    return quot


def poly_mul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


@lru_cache(maxsize=None)
def cyclotomic_poly(e: int) -> tuple[int, ...]:
    """Coefficients of Phi_e, low degree first: (x^e - 1) / prod_{d | e, d < e} Phi_d."""
    if e < 1:
        raise ValueError("e must be >= 1")
    num = [-1] + [0] * (e - 1) + [1]
    for d in divisors(e)[:-1]:
        num = poly_divexact(num, list(cyclotomic_poly(d)))
    return tuple(num)


@lru_cache(maxsize=None)
def _power_table(e: int) -> tuple[tuple[int, ...], ...]:
    """Canonical coefficients of zeta_e^t for 0 <= t < e."""
    phi_poly = cyclotomic_poly(e)
    n = len(phi_poly) - 1
    rows = []
    cur = [1] + [0] * (n - 1)
    for _ in range(e):
        rows.append(tuple(cur))
        # multiply by x, then subtract top * Phi_e
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            for k in range(n):
                cur[k] -= top * phi_poly[k]
    return tuple(rows)


def _fold(e: int, counts) -> tuple[int, ...]:
    n = euler_phi(e)
    table = _power_table(e)
    out = list(counts[:n]) + [0] * max(0, n - len(counts))
    for t in range(n, len(counts)):
        c = counts[t]
        if c:
            row = table[t % e]
            for k in range(n):
                out[k] += c * row[k]
    return tuple(out)


@dataclass(frozen=True)
class ExpHistogram:
    """Multiplicities of zeta_e^t, t in [0, e)."""

    e: int
    counts: tuple[int, ...]

    def total(self) -> int:
        return sum(self.counts)


@dataclass(frozen=True)
class CycInt:
    e: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) != euler_phi(self.e):
            raise ValueError(f"expected {euler_phi(self.e)} coefficients for e={self.e}")

    @classmethod
    def from_int(cls, e: int, c: int) -> CycInt:
        return cls(e, (c,) + (0,) * (euler_phi(e) - 1))

    @classmethod
    def zero(cls, e: int) -> CycInt:
        return cls.from_int(e, 0)

    @classmethod
    def one(cls, e: int) -> CycInt:
        return cls.from_int(e, 1)

    @classmethod
    def zeta(cls, e: int, t: int = 1) -> CycInt:
        return cls(e, _power_table(e)[t % e])

    @classmethod
    def from_poly(cls, e: int, coeffs) -> CycInt:
        """Reduce an arbitrary integer polynomial in zeta_e."""
        folded = [0] * e
        for t, c in enumerate(coeffs):
            folded[t % e] += c
        return reduce(ExpHistogram(e, tuple(folded)))

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def _coerce(self, other) -> CycInt:
        if isinstance(other, int):
            return CycInt.from_int(self.e, other)
        if not isinstance(other, CycInt):
            return NotImplemented
        if other.e != self.e:
            raise ValueError(f"mismatched orders {self.e} and {other.e}")
        return other

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return add(self, other)

    __radd__ = __add__

    def __neg__(self):
        return negate(self)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return add(self, negate(other))

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return add(other, negate(self))

    def __mul__(self, other):
        if isinstance(other, int):
            return CycInt(self.e, tuple(other * c for c in self.coeffs))
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return mul(self, other)

    __rmul__ = __mul__

    def conj(self) -> CycInt:
        return galois(self, -1)

    def to_json(self) -> dict:
        return {"e": self.e, "coeffs": [str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, obj) -> CycInt:
        if isinstance(obj, str):
            obj = json.loads(obj)
        return cls(int(obj["e"]), tuple(int(c) for c in obj["coeffs"]))


def reduce(h: ExpHistogram) -> CycInt:
    return CycInt(h.e, _fold(h.e, h.counts))


def _same_order(a: CycInt, b: CycInt) -> None:
    if a.e != b.e:
        raise ValueError(f"mismatched orders {a.e} and {b.e}")


def add(a: CycInt, b: CycInt) -> CycInt:
    _same_order(a, b)
    return CycInt(a.e, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))


def negate(a: CycInt) -> CycInt:
    return CycInt(a.e, tuple(-x for x in a.coeffs))


def mul(a: CycInt, b: CycInt) -> CycInt:
    _same_order(a, b)
    return CycInt(a.e, _fold(a.e, poly_mul(list(a.coeffs), list(b.coeffs))))


def galois(a: CycInt, k: int) -> CycInt:
    """Apply the automorphism zeta_e -> zeta_e^k."""
    e = a.e
    if math.gcd(k, e) != 1:
        raise ValueError(f"gcd({k}, {e}) != 1")
    counts = [0] * e
    for i, c in enumerate(a.coeffs):
        counts[i * k % e] += c
    return reduce(ExpHistogram(e, tuple(counts)))


def embed_halforder(a: CycInt) -> CycInt:
    """Z[zeta_e] -> Z[zeta_2e] for odd e, zeta_e -> zeta_2e^2."""
    if a.e % 2 == 0:
        raise ValueError("embed_halforder needs an odd order")
    counts = [0] * (2 * a.e)
    for i, c in enumerate(a.coeffs):
        counts[2 * i] += c
    return reduce(ExpHistogram(2 * a.e, tuple(counts)))


def project_halforder(a: CycInt) -> CycInt:
    """Inverse of embed_halforder, via zeta_2e = -zeta_e^((e+1)/2)."""
    if a.e % 4 != 2:
        raise ValueError("project_halforder needs order 2 * odd")
    e = a.e // 2
    half = (e + 1) // 2
    counts = [0] * e
    for i, c in enumerate(a.coeffs):
        counts[i * half % e] += -c if i % 2 else c
    out = reduce(ExpHistogram(e, tuple(counts)))
    if embed_halforder(out) != a:
        raise ValueError("element is not in the image of Z[zeta_e]")
    return out


def taylor_shift(coeffs, c: int) -> list[int]:
    """Coefficients of P(y + c) given those of P(y), low degree first."""
    a = list(coeffs)
    n = len(a)
    for i in range(n - 1):
        for j in range(n - 2, i - 1, -1):
            a[j] += c * a[j + 1]
    return a


def shift_basis(a: CycInt) -> list[int]:
    """Coefficients a_i with a = sum a_i (zeta - 1)^i."""
    return taylor_shift(a.coeffs, 1)


def unshift_basis(e: int, coeffs) -> CycInt:
    return CycInt(e, tuple(taylor_shift(coeffs, -1)))


def int_valuation(n: int, l: int) -> int:
    if n == 0:
        return INF
    v = 0
    while n % l == 0:
        n //= l
        v += 1
    return v


def lambda_valuation(a: CycInt, l: int):
    """Valuation of a at (1 - zeta_{l^2}); INF for zero."""
    if a.e != l * l:
        raise ValueError(f"lambda_valuation needs e = l^2 = {l * l}, got {a.e}")
    phi = l * (l - 1)
    best = INF
    for i, c in enumerate(shift_basis(a)):
        if c:
            best = min(best, i + phi * int_valuation(c, l))
    return best


def congruent(a: CycInt, b: CycInt, m: int, l: int) -> bool:
    """a == b mod (1 - zeta_{l^2})^m."""
    return lambda_valuation(a - b, l) >= m
