"""Pure-Python versions of the sweep kernels.

Elements of F_q are addressed by rank ``m = sum(c_i * p**i)``.  ``v + 1`` only
touches the constant coefficient, so its rank is computed without any field
arithmetic.  Every function here has a twin in ``_ckernels.pyx`` with the
same signature and output.
"""

NO_INDEX = 0xFFFFFFFF


def fill_index(mulmat, p, r, q):
    """Return the index table as a list of length ``q`` (slot 0 is NO_INDEX).

    ``mulmat`` is the r x r matrix of multiplication by gamma, row-major,
    acting on coefficient vectors (low degree first).
    """
    table = [NO_INDEX] * q
    if r == 1:
        g = mulmat[0] % p
        x = 1
        for t in range(q - 1):
            if table[x] != NO_INDEX:
                raise ValueError(f"index collision at t={t}: gamma is not a generator")
            table[x] = t
            x = x * g % p
        return table

    coeffs = [0] * r
    coeffs[0] = 1
    powers = [p**i for i in range(r)]
    rows = [mulmat[i * r:(i + 1) * r] for i in range(r)]
    for t in range(q - 1):
        m = 0
        for i in range(r):
            m += coeffs[i] * powers[i]
        if table[m] != NO_INDEX:
            raise ValueError(f"index collision at t={t}: gamma is not a generator")
        table[m] = t
        coeffs = [sum(a * b for a, b in zip(row, coeffs)) % p for row in rows]
    return table


def cycnum_counts(index, p, q, e, start, stop):
    """Flat e*e histogram of (ind(v) mod e, ind(v+1) mod e) over ranks [start, stop)."""
    counts = [0] * (e * e)
    pm1 = p - 1
    for m in range(max(start, 1), stop):
        nxt = m - pm1 if m % p == pm1 else m + 1
        if nxt == 0:
            continue
        counts[(index[m] % e) * e + index[nxt] % e] += 1
    return counts


def jacobi_histogram(index, p, q, e, i, j, start, stop):
    """Histogram of i*ind(v) + j*ind(v+1) mod e over ranks [start, stop)."""
    counts = [0] * e
    pm1 = p - 1
    i %= e
    j %= e
    for m in range(max(start, 1), stop):
        nxt = m - pm1 if m % p == pm1 else m + 1
        if nxt == 0:
            continue
        counts[(i * index[m] + j * index[nxt]) % e] += 1
    return counts
