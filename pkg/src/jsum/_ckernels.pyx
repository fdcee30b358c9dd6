# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled sweep kernels; see ``_pykernels`` for the reference semantics."""

import numpy as np

cdef unsigned int NO_INDEX = 0xFFFFFFFF


def fill_index(mulmat, long long p, int r, long long q):
    cdef unsigned int[::1] table
    cdef long long[::1] mat = np.asarray(mulmat, dtype=np.int64)
    cdef long long[::1] coeffs = np.zeros(r, dtype=np.int64)
    cdef long long[::1] nxt = np.zeros(r, dtype=np.int64)
    cdef long long[::1] powers = np.array([p ** i for i in range(r)], dtype=np.int64)
    cdef long long t, m, x, g, acc
    cdef int a, b
    cdef long long collided = -1

    out = np.full(q, NO_INDEX, dtype=np.uint32)
    table = out
    with nogil:
        if r == 1:
            g = mat[0] % p
            x = 1
            for t in range(q - 1):
                if table[x] != NO_INDEX:
                    collided = t
                    break
                table[x] = <unsigned int>t
                x = x * g % p
        else:
            coeffs[0] = 1
            for t in range(q - 1):
                m = 0
                for a in range(r):
                    m += coeffs[a] * powers[a]
                if table[m] != NO_INDEX:
                    collided = t
                    break
                table[m] = <unsigned int>t
                for a in range(r):
                    acc = 0
                    for b in range(r):
                        acc += mat[a * r + b] * coeffs[b]
                    nxt[a] = acc % p
                for a in range(r):
                    coeffs[a] = nxt[a]
    if collided >= 0:
        raise ValueError(f"index collision at t={collided}: gamma is not a generator")
    return out


def cycnum_counts(const unsigned int[::1] index, long long p, long long q, long long e,
                  long long start, long long stop):
    cdef long long[::1] counts
    cdef long long m, nxt, pm1 = p - 1
    out = np.zeros(e * e, dtype=np.int64)
    counts = out
    if start < 1:
        start = 1
    with nogil:
        for m in range(start, stop):
            if m % p == pm1:
                nxt = m - pm1
            else:
                nxt = m + 1
            if nxt == 0:
                continue
            counts[(index[m] % e) * e + index[nxt] % e] += 1
    return out.tolist()


def jacobi_histogram(const unsigned int[::1] index, long long p, long long q, long long e,
                     long long i, long long j, long long start, long long stop):
    cdef long long[::1] counts
    cdef long long m, nxt, pm1 = p - 1
    out = np.zeros(e, dtype=np.int64)
    counts = out
    i = i % e
    j = j % e
    if i < 0:
        i += e
    if j < 0:
        j += e
    if start < 1:
        start = 1
    with nogil:
        for m in range(start, stop):
            if m % p == pm1:
                nxt = m - pm1
            else:
                nxt = m + 1
            if nxt == 0:
                continue
            counts[(i * (index[m] % e) + j * (index[nxt] % e)) % e] += 1
    return out.tolist()
