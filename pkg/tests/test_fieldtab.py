import itertools
import random
import struct

import numpy as np
import pytest

from jsum import fieldtab as ft


def brute_force_irreducible(f, p):
    """No monic factor of degree 1..deg/2, by trial division."""
    r = len(f) - 1
    for d in range(1, r // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            g = tuple(low) + (1,)
            if not ft.poly_mod(list(f), g, p):
                return False
    return True


def multiplicative_order(g, p):
    x, k = g % p, 1
    while x != 1:
        x, k = x * g % p, k + 1
    return k


@pytest.mark.parametrize(
    "p, r, expected",
    [
        (19, 1, (0, 1)),
        (2, 2, (1, 1, 1)),
    ],
)
def test_find_irreducible_trivial(p, r, expected):
    assert ft.find_irreducible(p, r) == expected


def test_find_irreducible_cubic_over_7_matches_enumeration():
    # a cubic without roots is irreducible; first such in (c0, c1, c2) lex order
    def has_root(c):
        return any((c[0] + c[1] * x + c[2] * x * x + x**3) % 7 == 0 for x in range(7))

    expected = next(c + (1,) for c in itertools.product(range(7), repeat=3) if not has_root(c))
    assert ft.find_irreducible(7, 3) == expected == (1, 0, 1, 1)


@pytest.mark.parametrize("p, r", [(2, 3), (2, 4), (3, 3), (5, 2), (7, 3), (7, 4), (3, 5)])
def test_found_modulus_is_irreducible_by_brute_force(p, r):
    assert brute_force_irreducible(ft.find_irreducible(p, r), p)


@pytest.mark.parametrize("p, r", [(3, 2), (5, 3), (2, 4)])
def test_ben_or_agrees_with_trial_division(p, r):
    for low in itertools.product(range(p), repeat=r):
        f = low + (1,)
        assert ft.is_irreducible(f, p) == brute_force_irreducible(f, p), f


@pytest.mark.parametrize("p, r", [(4, 1), (1, 1), (9, 2), (7, 0)])
def test_bad_field_parameters_rejected(p, r):
    with pytest.raises(ValueError):
        ft.find_irreducible(p, r)


def test_q_bound_enforced():
    with pytest.raises(ValueError, match="2\\^24"):
        ft.build_field(2, 25)


@pytest.mark.parametrize("p, expected", [(19, 2), (37, 2), (7, 3), (73, 5), (101, 2)])
def test_find_generator_prime_fields(p, expected):
    # oracle: the least element whose order, by repeated multiplication, is p - 1
    least = next(g for g in range(1, p) if multiplicative_order(g, p) == p - 1)
    assert least == expected
    assert ft.find_generator(p, (0, 1)) == (expected,)


def test_generator_order_test_spot_values():
    assert pow(2, 9, 19) != 1 and pow(2, 6, 19) != 1
    assert pow(2, 18, 37) == 36 and pow(2, 12, 37) != 1


@pytest.mark.parametrize("p, r", [(19, 1), (37, 1), (7, 3), (2, 4), (3, 4), (5, 2)])
def test_index_table_invariants(field, p, r):
    F = field(p, r)
    q = F.q
    assert F.ind(1) == 0
    assert F.ind(F.gamma) == 1
    assert sorted(F.index[1:].tolist()) == list(range(q - 1))
    for s in ft.prime_factors(q - 1):
        assert F.power(F.gamma, (q - 1) // s) != F.element(1)
    x = F.element(1)
    for t in range(q - 1):
        assert F.ind(x) == t
        x = F.mul(x, F.gamma)


@pytest.mark.parametrize("p, r", [(19, 1), (73, 1), (7, 3), (3, 4), (7, 4)])
def test_index_is_a_homomorphism(field, p, r):
    F = field(p, r)
    rng = random.Random(p * 100 + r)
    for _ in range(100):
        a, b = F.element(rng.randrange(1, F.q)), F.element(rng.randrange(1, F.q))
        assert F.ind(F.mul(a, b)) == (F.ind(a) + F.ind(b)) % (F.q - 1)


def test_index_of_four_in_f19():
    F = ft.build_field(19)
    assert F.gamma == (2,)
    assert F.ind((4,)) == 2


def test_ind2(field):
    assert ft.ind2(field(19)) == 1
    assert ft.ind2(field(37)) == 1
    F = field(73)
    g = F.gamma[0]
    assert ft.ind2(F) == next(t for t in range(72) if pow(g, t, 73) == 2)
    with pytest.raises(ValueError):
        ft.ind2(field(2, 3))


def test_rebuild_is_deterministic():
    assert ft.build_field(7, 3) == ft.build_field(7, 3)


def test_build_rejects_non_generator():
    with pytest.raises(ValueError, match="generator"):
        ft.build_index_table(19, (0, 1), (4,))


def test_cache_round_trip(tmp_path, field):
    for p, r in [(19, 1), (7, 3)]:
        F = field(p, r)
        path = ft.save_table(F, tmp_path / f"{p}_{r}.jsix")
        G = ft.load_table(path)
        assert G == F
        assert ft.encode_table(G) == path.read_bytes()


def test_cache_layout(field):
    F = field(19)
    data = ft.encode_table(F)
    assert data[:4] == b"JSIX" and data[4] == 1
    assert struct.unpack_from("<QI", data, 5) == (19, 1)
    assert struct.unpack_from("<2Q", data, 17) == (0, 1)
    assert struct.unpack_from("<Q", data, 33) == (2,)
    entries = np.frombuffer(data, dtype="<u4", count=18, offset=41)
    assert entries[0] == 0 and entries[1] == 1 and entries[3] == 2  # ranks 1, 2, 4
    assert len(data) == 41 + 4 * 18 + 4


def test_cache_errors_are_distinct(tmp_path, field):
    data = bytearray(ft.encode_table(field(19)))
    with pytest.raises(ft.CacheFormatError):
        ft.decode_table(b"XXXX" + bytes(data[4:]))
    bad_version = bytearray(data)
    bad_version[4] = 2
    with pytest.raises(ft.CacheVersionError):
        ft.decode_table(bytes(bad_version))
    with pytest.raises(ft.CacheTruncatedError):
        ft.decode_table(bytes(data[:-10]))
    flipped = bytearray(data)
    flipped[50] ^= 0xFF
    with pytest.raises(ft.CacheChecksumError):
        ft.decode_table(bytes(flipped))


def test_load_or_build_uses_cache(tmp_path):
    F = ft.load_or_build(37, 1, tmp_path)
    path = ft.cache_path(tmp_path, 37, 1)
    assert path.exists()
    assert ft.load_or_build(37, 1, tmp_path) == F
    raw = bytearray(path.read_bytes())
    raw[-1] ^= 0x01
    path.write_bytes(bytes(raw))
    with pytest.raises(ft.CacheError):
        ft.load_or_build(37, 1, tmp_path)
