import cmath
import math
import random

import pytest

from jsum import charsums as cs
from jsum.cycring import INF, CycInt, embed_halforder, galois, lambda_valuation

PRIME_CASES = [(19, 18), (19, 9), (37, 18), (37, 9), (101, 50), (101, 25)]


def dlog_by_powers(field):
    """Discrete logs from repeated multiplication by gamma, independent of the index table."""
    out, x = {}, (1,) + (0,) * (field.r - 1)
    for k in range(field.q - 1):
        out[field.rank(x)] = k
        x = tuple(field.mul(x, field.gamma))
    assert len(out) == field.q - 1
    return out


def complex_jacobi(field, e, i, j):
    logs = dlog_by_powers(field)
    z = cmath.exp(2j * math.pi / e)
    total = 0
    for m in range(1, field.q):
        n = field.rank(tuple((c + (1 if k == 0 else 0)) % field.p
                             for k, c in enumerate(field.element(m))))
        if n == 0:
            continue
        total += z ** ((i * logs[m] + j * logs[n]) % e)
    return total


def evaluate(a: CycInt):
    z = cmath.exp(2j * math.pi / a.e)
    return sum(c * z**t for t, c in enumerate(a.coeffs))


@pytest.mark.parametrize("q,e", PRIME_CASES[:4])
def test_jacobi_direct_matches_complex_oracle(field, q, e):
    f = field(q)
    for i, j in [(1, 1), (1, 2), (2, 5), (3, e - 1), (0, 4), (1, e - 1)]:
        assert abs(evaluate(cs.jacobi_direct(f, e, i, j)) - complex_jacobi(f, e, i, j)) < 1e-8


def test_jacobi_direct_matches_complex_oracle_extension(field):
    f = field(7, 3)
    for i, j in [(1, 1), (1, 9), (2, 3)]:
        assert abs(evaluate(cs.jacobi_direct(f, 18, i, j)) - complex_jacobi(f, 18, i, j)) < 1e-6


def test_frozen_values_q19(field):
    f = field(19)
    assert cs.jacobi_direct(f, 18, 1, 1).coeffs == (2, 1, 0, -4, 1, -2)
    assert cs.jacobi_direct(f, 9, 1, 1).coeffs == (2, 1, 4, 0, -1, 2)


def test_cyclotomic_numbers_basic(field):
    for q, e in PRIME_CASES:
        t = cs.cyclotomic_numbers(field(q), e)
        assert int(t.cells.sum()) == q - 2
        assert (t.cells >= 0).all()
    assert cs.cyclotomic_numbers(field(19), 18)[0, 0] == 0
    with pytest.raises(ValueError):
        cs.cyclotomic_numbers(field(19), 5)
    with pytest.raises(ValueError):
        cs.jacobi_direct(field(19), 7, 1, 1)


@pytest.mark.parametrize("q,e", [(19, 18), (37, 9), (7**3, 18)])
def test_cycnums_oracle_agrees_exhaustively(field, q, e):
    f = field(7, 3) if q == 343 else field(q)
    table = cs.cyclotomic_numbers(f, e)
    for i in range(e):
        for j in range(e):
            assert cs.jacobi_from_cycnums(table, i, j) == cs.jacobi_direct(f, e, i, j)


def test_trivial_and_opposite_exponents(field):
    f = field(19)
    table = cs.cyclotomic_numbers(f, 18)
    assert cs.jacobi_from_cycnums(table, 0, 0) == CycInt.from_int(18, 17)
    for j in range(1, 18):
        assert cs.jacobi_direct(f, 18, 0, j) == CycInt.from_int(18, -1)
        assert cs.jacobi_direct(f, 18, j, 18 - j) == CycInt.from_int(18, -1)


@pytest.mark.parametrize("q,e", PRIME_CASES)
def test_symmetry_and_norm(field, q, e):
    J = cs.JacobiSums(cs.cyclotomic_numbers(field(q), e))
    for m in range(e):
        for n in range(e):
            # v -> -1 - v swaps the arguments at the cost of chi^(m+n)(-1)
            assert J(m, n) == J.chi_minus_one(m + n) * J(n, m)
    for n in range(1, e - 1):
        assert J(1, n) * J(1, n).conj() == CycInt.from_int(e, q)


def test_galois_transports_jacobi_sums(field):
    J = cs.JacobiSums(cs.cyclotomic_numbers(field(37), 18))
    for k in (5, 7, 11, 13, 17):
        for m, n in [(1, 1), (1, 4), (2, 7)]:
            assert galois(J(m, n), k) == J(k * m, k * n)


def test_halving_identity(field):
    # J_{2e}(2, e) ... via the squaring map: J_e(1, n) lifted equals J_{2e}(2, 2n)
    q = 37
    J1 = cs.JacobiSums(cs.cyclotomic_numbers(field(q), 9))
    J2 = cs.JacobiSums(cs.cyclotomic_numbers(field(q), 18))
    for n in range(9):
        assert embed_halforder(J1(1, n)) == J2(2, 2 * n)


def test_product_formula_random_triples(field):
    # J(m,n) J(m+n,s) = J(m,n+s) J(n,s) when no sum is 0 mod e
    rng = random.Random(5)
    J = cs.JacobiSums(cs.cyclotomic_numbers(field(73), 18))
    hits = 0
    while hits < 30:
        m, n, s = (rng.randrange(1, 18) for _ in range(3))
        if (m + n) % 18 and (n + s) % 18 and (m + n + s) % 18:
            assert J(m, n) * J(m + n, s) == J(m, n + s) * J(n, s)
            hits += 1


def test_dickson_relations(field):
    for q, e in PRIME_CASES:
        dh = cs.dickson_hurwitz(cs.cyclotomic_numbers(field(q), e))
        k = dh.k
        assert dh(0, 0) == k - 1
        assert all(dh(i, 0) == k for i in range(1, e))
        assert all(sum(dh.column(j)) == q - 2 for j in range(e))
        for j in range(e):
            if math.gcd(j, e) == 1:
                jb = pow(j, -1, e)
                assert all(dh(i * jb, jb) == dh(i, j) for i in range(e))
        assert all(dh(i, j) == dh(i, e - 1 - j) for i in range(e) for j in range(e))


def test_dickson_printed_symmetry_counterexample(field):
    dh = cs.dickson_hurwitz(cs.cyclotomic_numbers(field(19), 9))
    # B(i, e - i - j) at (0, 1) would pair column 1 with column 8
    assert dh(0, 1) != dh(0, 8)
    assert dh(0, 1) == dh(0, 7)


def test_dickson_spot_values_q19(field):
    dh = cs.dickson_hurwitz(cs.cyclotomic_numbers(field(19), 18))
    assert dh(0, 0) == 0
    assert dh(4, 0) == 1
    dh9 = cs.dickson_hurwitz(cs.cyclotomic_numbers(field(37), 9))
    assert all(sum(dh9.column(j)) == 35 for j in range(9))


@pytest.mark.parametrize("q", [19, 37, 73])
def test_jacobi_from_dickson_signs(field, q):
    f = field(q)
    dh = cs.dickson_hurwitz(cs.cyclotomic_numbers(f, 18))
    for n in range(18):
        direct = cs.jacobi_direct(f, 18, 1, n)
        assert cs.jacobi_from_dickson(dh, n) == direct
        plain = cs.dickson_sum(dh, n)
        if dh.k % 2 == 0 or n % 2 == 1:
            assert plain == direct
        else:
            assert plain == -direct


def test_constant_dickson_weights_vanish():
    dh = cs.DHTable(18, 19, __import__("numpy").full((18, 18), 7))
    assert cs.dickson_sum(dh, 3).is_zero()
    assert cs.reduce_b_vector(dh, 3) == [0] * 6


@pytest.mark.parametrize("q,l,n", [(19, 3, 1), (19, 3, 4), (37, 3, 2), (101, 5, 2), (101, 5, 5)])
def test_coeffs_b_reconstructs(field, q, l, n):
    f = field(q)
    dh = cs.dickson_hurwitz(cs.cyclotomic_numbers(f, l * l))
    b = cs.coeffs_b(dh, l, n)
    assert len(b) == l * (l - 1)
    assert CycInt(l * l, tuple(b)) == cs.jacobi_direct(f, l * l, 1, n)


@pytest.mark.parametrize("q,l", [(19, 3), (37, 3), (101, 5)])
def test_coeffs_d_matches_reduction(field, q, l):
    f = field(q)
    dh = cs.dickson_hurwitz(cs.cyclotomic_numbers(f, 2 * l * l))
    for n in range(2 * l * l):
        d = cs.coeffs_d(dh, l, n)
        assert d == cs.reduce_b_vector(dh, n)
        signed = CycInt.zeta(2 * l * l, cs.dickson_sign_exponent(dh, n)) * CycInt(2 * l * l, tuple(d))
        assert signed == cs.jacobi_direct(f, 2 * l * l, 1, n)


def test_coeffs_d_frozen_q37(field):
    dh = cs.dickson_hurwitz(cs.cyclotomic_numbers(field(37), 18))
    assert cs.coeffs_d(dh, 3, 1) == [-2, -1, 0, 4, 5, -2]


def test_order_checks(field):
    dh9 = cs.dickson_hurwitz(cs.cyclotomic_numbers(field(19), 9))
    dh18 = cs.dickson_hurwitz(cs.cyclotomic_numbers(field(19), 18))
    with pytest.raises(ValueError):
        cs.coeffs_b(dh18, 3, 1)
    with pytest.raises(ValueError):
        cs.coeffs_d(dh9, 3, 1)
    with pytest.raises(ValueError):
        cs.reduce_b_vector(dh9, 1)
    with pytest.raises(ValueError):
        cs.extract_c(CycInt.one(18), 3)


def test_extract_c(field):
    assert cs.extract_c(CycInt.from_int(9, -1), 3) == ([0], True)
    f = field(19)
    assert cs.extract_c(cs.jacobi_direct(f, 9, 1, 3), 3) == ([0], True)
    assert cs.extract_c(cs.jacobi_direct(f, 9, 1, 1), 3) == ([1], True)
    assert cs.extract_c(CycInt.zero(9), 3)[1] is False


@pytest.mark.parametrize("q,l", [(19, 3), (37, 3), (101, 5), (151, 5)])
def test_order_l2_congruence(field, q, l):
    J = cs.JacobiSums(cs.cyclotomic_numbers(field(q), l * l))
    for n in range(1, l * l - 1):
        v = lambda_valuation(J(1, n) + 1, l)
        assert v >= (l + 1 if n % l == 0 else 3)
    assert lambda_valuation(J(1, 0) + 1, l) == INF or J(1, 0) == CycInt.from_int(l * l, -1)


def test_minus_one_exponent():
    assert cs.minus_one_exponent(19, 18) == 9
    assert cs.minus_one_exponent(37, 18) == 0
    assert cs.minus_one_exponent(19, 9) == 0
    assert cs.minus_one_exponent(8, 7) == 0
    assert cs.chi_minus_one(19, 18) == CycInt.from_int(18, -1)


def test_tables_json(field):
    t = cs.cyclotomic_numbers(field(19), 9)
    obj = t.to_json()
    assert obj["e"] == 9 and len(obj["cells"]) == 9
    assert cs.coefficient_vector_json([1, -2]) == ["1", "-2"]
