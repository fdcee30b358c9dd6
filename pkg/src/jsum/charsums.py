"""Cyclotomic numbers, Jacobi sums and Dickson-Hurwitz sums over an indexed field.

Characters are never evaluated as complex numbers: chi_e^i(v) is carried as
the exponent i * ind(v) mod e of zeta_e, and sums over v become exponent
histograms that are reduced exactly in Z[zeta_e].

Conventions used throughout (gamma fixed by the field):

* J_e(i, j) = sum_v chi^i(v) chi^j(v + 1), with chi(0) = 0.
* (a, b)_e counts v != 0, -1 with ind(v) = a, ind(v + 1) = b (mod e).
* B_e(i, j) = sum_h (h, i - j h)_e, the number of v with
  ind(v + 1) + j ind(v) = i (mod e).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .cycring import CycInt, ExpHistogram, reduce, shift_basis
from .fieldtab import IndexedField


def _check_order(q: int, e: int) -> None:
    if e < 1 or (q - 1) % e:
        raise ValueError(f"e={e} does not divide q-1={q - 1}")


def minus_one_exponent(q: int, e: int) -> int:
    """t with chi_e(-1) = zeta_e^t (always 0 or e/2)."""
    if q % 2 == 0:
        return 0
    return ((q - 1) // 2) % e


def chi_minus_one(q: int, e: int, power: int = 1) -> CycInt:
    return CycInt.zeta(e, power * minus_one_exponent(q, e))


@dataclass(frozen=True, eq=False)
class CycNumTable:
    e: int
    q: int
    cells: np.ndarray

    @property
    def k(self) -> int:
        return (self.q - 1) // self.e

    def __getitem__(self, ab) -> int:
        a, b = ab
        return int(self.cells[a % self.e, b % self.e])

    def to_json(self) -> dict:
        return {"e": self.e, "q": self.q, "cells": self.cells.tolist()}


@dataclass(frozen=True, eq=False)
class DHTable:
    e: int
    q: int
    bvals: np.ndarray

    @property
    def k(self) -> int:
        return (self.q - 1) // self.e

    def __call__(self, i: int, j: int) -> int:
        return int(self.bvals[i % self.e, j % self.e])

    def column(self, j: int) -> list[int]:
        return [int(x) for x in self.bvals[:, j % self.e]]

    def to_json(self) -> dict:
        return {"e": self.e, "q": self.q, "bvals": self.bvals.tolist()}


def cyclotomic_numbers(field: IndexedField, e: int, threads: int | None = None,
                       backend: str | None = None) -> CycNumTable:
    _check_order(field.q, e)
    counts = kernels.cycnum_counts(field.index, field.p, field.q, e, threads=threads, backend=backend)
    return CycNumTable(e, field.q, np.array(counts, dtype=np.int64).reshape(e, e))


def jacobi_direct(field: IndexedField, e: int, i: int, j: int, threads: int | None = None,
                  backend: str | None = None) -> CycInt:
    """J_e(i, j) by a sweep over every field element."""
    _check_order(field.q, e)
    counts = kernels.jacobi_histogram(field.index, field.p, field.q, e, i, j,
                                      threads=threads, backend=backend)
    return reduce(ExpHistogram(e, tuple(counts)))


def _grid(e: int) -> tuple[np.ndarray, np.ndarray]:
    a, b = np.meshgrid(np.arange(e), np.arange(e), indexing="ij")
    return a.ravel(), b.ravel()


def jacobi_from_cycnums(table: CycNumTable, i: int, j: int) -> CycInt:
    """J_e(i, j) = sum_{a,b} (a, b)_e zeta^(i a + j b)."""
    e = table.e
    a, b = _grid(e)
    exps = (i % e * a + j % e * b) % e
    hist = np.bincount(exps, weights=table.cells.ravel(), minlength=e)
    return reduce(ExpHistogram(e, tuple(int(round(x)) for x in hist)))


class JacobiSums:
    """Memoized J_e(i, j) for one field and order, computed from cyclotomic numbers."""

    def __init__(self, table: CycNumTable):
        self.table = table
        self.e = table.e
        self.q = table.q
        self._cache: dict[tuple[int, int], CycInt] = {}

    def __call__(self, i: int, j: int) -> CycInt:
        key = (i % self.e, j % self.e)
        val = self._cache.get(key)
        if val is None:
            val = self._cache[key] = jacobi_from_cycnums(self.table, *key)
        return val

    def chi_minus_one(self, power: int = 1) -> CycInt:
        return chi_minus_one(self.q, self.e, power)


def dickson_hurwitz(table: CycNumTable) -> DHTable:
    e = table.e
    h = np.arange(e)
    bvals = np.zeros((e, e), dtype=np.int64)
    for i in range(e):
        for j in range(e):
            bvals[i, j] = table.cells[h, (i - j * h) % e].sum()
    return DHTable(e, table.q, bvals)


def dickson_sign_exponent(dh: DHTable, n: int) -> int:
    """t with chi^(n+1)(-1) = zeta_e^t."""
    return (n + 1) * minus_one_exponent(dh.q, dh.e) % dh.e


def dickson_sum(dh: DHTable, n: int) -> CycInt:
    """sum_i B_e(i, n) zeta_e^i, reduced; no sign applied."""
    return reduce(ExpHistogram(dh.e, tuple(dh.column(n))))


def jacobi_from_dickson(dh: DHTable, n: int) -> CycInt:
    """J_e(1, n) = chi^(n+1)(-1) * sum_i B_e(i, n) zeta_e^i."""
    return CycInt.zeta(dh.e, dickson_sign_exponent(dh, n)) * dickson_sum(dh, n)


def _require_order(dh: DHTable, e: int) -> None:
    if dh.e != e:
        raise ValueError(f"expected a table of order {e}, got {dh.e}")


def coeffs_b(dh: DHTable, l: int, n: int) -> list[int]:
    """b_{i,n} = B(i, n) - B(l(l-1) + (i mod l), n) for order l^2."""
    _require_order(dh, l * l)
    top = l * (l - 1)
    return [dh(i, n) - dh(top + i % l, n) for i in range(top)]


def reduce_b_vector(dh: DHTable, n: int) -> list[int]:
    """Canonical coefficients of sum_i B_{2l^2}(i, n) zeta^i modulo Phi_{2l^2}."""
    if dh.e % 2:
        raise ValueError("reduce_b_vector needs an even order 2l^2")
    return list(dickson_sum(dh, n).coeffs)


def coeffs_d(dh: DHTable, l: int, n: int) -> list[int]:
    """Closed-form coefficients for order 2l^2.

    For i = t l + j (0 <= j < l, 0 <= t <= l-2):
    d_i = B(i) + (-1)^(t+1) B(l(l-1) + j) - B(l^2 + i) + (-1)^t B(2l^2 - l + j),
    all at second argument n.
    """
    _require_order(dh, 2 * l * l)
    top = l * (l - 1)
    out = []
    for i in range(top):
        t, j = divmod(i, l)
        s = 1 if t % 2 == 0 else -1
        out.append(dh(i, n) - s * dh(top + j, n) - dh(l * l + i, n) + s * dh(2 * l * l - l + j, n))
    return out


def extract_c(J: CycInt, l: int) -> tuple[list[int], bool]:
    """Residues c_3..c_l with J = -1 + sum c_i (zeta - 1)^i mod lambda^(l+1).

    The flag is False when J + 1 is not divisible by lambda^3.
    """
    if J.e != l * l:
        raise ValueError(f"extract_c needs e = l^2 = {l * l}")
    a = shift_basis(J + 1)
    a += [0] * max(0, l + 1 - len(a))
    valid = all(a[i] % l == 0 for i in range(3))
    return [a[i] % l for i in range(3, l + 1)], valid


def coefficient_vector_json(values) -> list[str]:
    return [str(int(v)) for v in values]
