"""Finite fields F_{p^r} with a full discrete-log (index) table.

Elements are coefficient tuples over Z/p, low degree first, of length r.  The
rank of an element is ``sum(c_i * p**i)``; the index table is an array indexed
by rank.  For r = 1 the modulus is the polynomial ``x`` and elements are
length-1 tuples, so the same arithmetic covers prime fields.
"""

from __future__ import annotations

import itertools
import struct
import zlib
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import kernels

MAX_Q = 1 << 24
MAGIC = b"JSIX"
VERSION = 1

Poly = tuple[int, ...]


class CacheError(Exception):
    """Base class for index-table cache problems."""


class CacheFormatError(CacheError):
    pass


class CacheVersionError(CacheError):
    pass


class CacheTruncatedError(CacheError):
    pass


class CacheChecksumError(CacheError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of n by trial division, ascending."""
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1 if f == 2 else 2
    if n > 1:
        out.append(n)
    return out


# polynomial arithmetic over Z/p, coefficient lists low degree first

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def poly_mod(a: list[int], f: Poly, p: int) -> list[int]:
    """Remainder of a modulo the monic polynomial f."""
    a = [c % p for c in a]
    d = len(f) - 1
    for top in range(len(a) - 1, d - 1, -1):
        c = a[top]
        if c:
            base = top - d
            for k in range(d + 1):
                a[base + k] = (a[base + k] - c * f[k]) % p
    return _trim(a[:d] if len(a) > d else a)


def poly_mulmod(a: list[int], b: list[int], f: Poly, p: int) -> list[int]:
    if not a or not b:
        return []
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] += x * y
    return poly_mod(prod, f, p)


def poly_powmod(a: list[int], n: int, f: Poly, p: int) -> list[int]:
    result = poly_mod([1], f, p)
    base = poly_mod(list(a), f, p)
    while n:
        if n & 1:
            result = poly_mulmod(result, base, f, p)
        base = poly_mulmod(base, base, f, p)
        n >>= 1
    return result


def poly_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    a = _trim([c % p for c in a])
    b = _trim([c % p for c in b])
    while b:
        inv = pow(b[-1], -1, p)
        monic = tuple(c * inv % p for c in b)
        a, b = b, poly_mod(a, monic, p)
    return a


def is_irreducible(f: Poly, p: int) -> bool:
    """Ben-Or test: gcd(x^(p^k) - x, f) = 1 for 1 <= k <= deg/2."""
    r = len(f) - 1
    if r == 1:
        return True
    if f[0] % p == 0:
        return False
    xp = [0, 1]
    for _ in range(r // 2):
        xp = poly_powmod(xp, p, f, p)
        diff = list(xp) + [0] * max(0, 2 - len(xp))
        diff[1] -= 1
        g = poly_gcd(list(f), diff, p)
        if len(g) > 1:
            return False
    return True


def find_irreducible(p: int, r: int) -> Poly:
    """Lex-smallest monic irreducible polynomial of degree r over Z/p.

    The low-degree coefficient tuple (c_0, ..., c_{r-1}) is compared
    lexicographically, c_0 first.  For r = 1 this is ``x`` itself.
    """
    if r < 1:
        raise ValueError("degree must be >= 1")
    if not is_prime(p):
        raise ValueError(f"p={p} is not prime")
    for low in itertools.product(range(p), repeat=r):
        f = tuple(low) + (1,)
        if is_irreducible(f, p):
            return f
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


def rank_of(coeffs, p: int) -> int:
    m = 0
    for c in reversed(coeffs):
        m = m * p + c
    return m


def element_of(m: int, p: int, r: int) -> Poly:
    out = []
    for _ in range(r):
        m, c = divmod(m, p)
        out.append(c)
    return tuple(out)


def find_generator(p: int, modulus: Poly) -> Poly:
    """First element in rank order whose multiplicative order is q - 1."""
    r = len(modulus) - 1
    q = p**r
    exps = [(q - 1) // s for s in prime_factors(q - 1)]
    one = poly_mod([1], modulus, p)
    for m in range(1, q):
        g = list(element_of(m, p, r))
        if all(poly_powmod(g, x, modulus, p) != one for x in exps):
            return tuple(g)
    raise RuntimeError(f"internal error: no generator for p={p}, modulus={modulus}")


def multiplication_matrix(gamma: Poly, modulus: Poly, p: int) -> list[int]:
    """Row-major r x r matrix M with M @ c = coeffs of gamma * c mod modulus."""
    r = len(modulus) - 1
    cols = []
    for j in range(r):
        xj = [0] * j + [1]
        prod = poly_mulmod(xj, list(gamma), modulus, p)
        cols.append(prod + [0] * (r - len(prod)))
    return [cols[b][a] for a in range(r) for b in range(r)]


@dataclass(frozen=True, eq=False)
class IndexedField:
    p: int
    r: int
    modulus: Poly
    gamma: Poly
    index: np.ndarray

    @property
    def q(self) -> int:
        return self.p**self.r

    def rank(self, elem) -> int:
        return rank_of(elem, self.p)

    def element(self, m: int) -> Poly:
        return element_of(m, self.p, self.r)

    def ind(self, elem) -> int:
        """Discrete log of a nonzero element (coefficient tuple or rank)."""
        m = elem if isinstance(elem, int) else self.rank(elem)
        if not 0 < m < self.q:
            raise ValueError("index is defined for nonzero elements only")
        return int(self.index[m])

    def mul(self, a, b) -> Poly:
        prod = poly_mulmod(list(a), list(b), self.modulus, self.p)
        return tuple(prod + [0] * (self.r - len(prod)))

    def power(self, a, n: int) -> Poly:
        out = poly_powmod(list(a), n, self.modulus, self.p)
        return tuple(out + [0] * (self.r - len(out)))

    def __eq__(self, other) -> bool:
        if not isinstance(other, IndexedField):
            return NotImplemented
        return (
            (self.p, self.r, self.modulus, self.gamma) == (other.p, other.r, other.modulus, other.gamma)
            and np.array_equal(self.index, other.index)
        )

    def __hash__(self) -> int:
        return hash((self.p, self.r, self.modulus, self.gamma))

    def summary(self) -> dict:
        return {
            "p": self.p,
            "r": self.r,
            "q": self.q,
            "modulus": list(self.modulus),
            "gamma": list(self.gamma),
            "w": ind2(self) if self.p != 2 else None,
        }


def check_field_params(p: int, r: int) -> None:
    if r < 1:
        raise ValueError("extension degree r must be >= 1")
    if not is_prime(p):
        raise ValueError(f"p={p} is not prime")
    if p**r > MAX_Q:
        raise ValueError(f"q={p}^{r} exceeds the 2^24 bound")


def build_index_table(p: int, modulus: Poly, gamma: Poly, backend: str | None = None) -> IndexedField:
    r = len(modulus) - 1
    q = p**r
    index = kernels.fill_index(multiplication_matrix(gamma, modulus, p), p, r, q, backend=backend)
    if q > 1 and (index[1:] == kernels.NO_INDEX).any():
        raise ValueError("index table incomplete: gamma is not a generator")
    return IndexedField(p, r, tuple(modulus), tuple(gamma), index)


def build_field(p: int, r: int = 1, backend: str | None = None) -> IndexedField:
    check_field_params(p, r)
    modulus = find_irreducible(p, r)
    gamma = find_generator(p, modulus)
    return build_index_table(p, modulus, gamma, backend=backend)


def ind2(field: IndexedField) -> int:
    """Index of the field element 1 + 1."""
    if field.p == 2:
        raise ValueError("2 = 0 in characteristic 2")
    return field.ind((2,) + (0,) * (field.r - 1))


# cache file

def encode_table(field: IndexedField) -> bytes:
    body = bytearray(MAGIC)
    body += struct.pack("<BQI", VERSION, field.p, field.r)
    body += struct.pack(f"<{field.r + 1}Q", *field.modulus)
    body += struct.pack(f"<{field.r}Q", *field.gamma)
    body += field.index[1:].astype("<u4").tobytes()
    body += struct.pack("<I", zlib.crc32(body))
    return bytes(body)


def decode_table(data: bytes) -> IndexedField:
    if len(data) < 4:
        raise CacheTruncatedError("file shorter than the magic")
    if data[:4] != MAGIC:
        raise CacheFormatError(f"bad magic {data[:4]!r}")
    if len(data) < 5:
        raise CacheTruncatedError("missing version byte")
    if data[4] != VERSION:
        raise CacheVersionError(f"unsupported version {data[4]}")
    head = struct.calcsize("<BQI")
    if len(data) < 4 + head:
        raise CacheTruncatedError("header truncated")
    _, p, r = struct.unpack_from("<BQI", data, 4)
    if r < 1 or p < 2 or p**r > MAX_Q:
        raise CacheFormatError(f"implausible header p={p} r={r}")
    q = p**r
    expected = 4 + head + 8 * (2 * r + 1) + 4 * (q - 1) + 4
    if len(data) < expected:
        raise CacheTruncatedError(f"expected {expected} bytes, got {len(data)}")
    if len(data) > expected:
        raise CacheFormatError(f"{len(data) - expected} trailing bytes")
    (crc,) = struct.unpack_from("<I", data, expected - 4)
    if zlib.crc32(data[: expected - 4]) != crc:
        raise CacheChecksumError("CRC32 mismatch")
    off = 4 + head
    modulus = struct.unpack_from(f"<{r + 1}Q", data, off)
    off += 8 * (r + 1)
    gamma = struct.unpack_from(f"<{r}Q", data, off)
    off += 8 * r
    index = np.empty(q, dtype=np.uint32)
    index[0] = kernels.NO_INDEX
    index[1:] = np.frombuffer(data, dtype="<u4", count=q - 1, offset=off)
    return IndexedField(p, r, tuple(modulus), tuple(gamma), index)


def save_table(field: IndexedField, path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(path.suffix + ".tmp")
    tmp.write_bytes(encode_table(field))
    tmp.replace(path)
    return path


def load_table(path) -> IndexedField:
    return decode_table(Path(path).read_bytes())


def cache_path(cache_dir, p: int, r: int) -> Path:
    return Path(cache_dir) / f"field_p{p}_r{r}.jsix"


def load_or_build(p: int, r: int, cache_dir=None, backend: str | None = None) -> IndexedField:
    """Load the cached table for (p, r) or build and store it.

    A corrupt cache file raises; it is never silently rebuilt.
    """
    check_field_params(p, r)
    if cache_dir is None:
        return build_field(p, r, backend=backend)
    path = cache_path(cache_dir, p, r)
    if path.exists():
        field = load_table(path)
        if (field.p, field.r) != (p, r):
            raise CacheFormatError(f"{path} holds p={field.p} r={field.r}")
        return field
    field = build_field(p, r, backend=backend)
    save_table(field, path)
    return field
