import random

import pytest

from fibcong.residue import (
    PadicScaled,
    RingDescriptor,
    inv_mod,
    is_prime,
    legendre,
    odd_primes,
    padic_div,
    padic_mul,
    padic_to_residue,
    sieve_primes,
    split_padic,
)

RING_GRID = [(3, 6), (5, 5), (7, 4), (11, 3), (13, 3)]


def brute_legendre(m: int, p: int) -> int:
    # independent oracle: enumerate the nonzero squares mod p
    if m % p == 0:
        return 0
    squares = {x * x % p for x in range(1, p)}
    return 1 if m % p in squares else -1


def test_sieve_known_prefix():
    assert sieve_primes(30) == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert odd_primes(13) == [3, 5, 7, 11, 13]
    assert sieve_primes(1) == []


def test_is_prime_small():
    assert [n for n in range(2, 30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert not is_prime(1) and not is_prime(0) and not is_prime(-7)


def test_ring_descriptor_validation():
    ring = RingDescriptor(3, 3)
    assert ring.modulus == 27
    assert str(ring) == "3^3"
    with pytest.raises(ValueError):
        RingDescriptor(2, 3)
    with pytest.raises(ValueError):
        RingDescriptor(9, 2)
    with pytest.raises(ValueError):
        RingDescriptor(5, 0)


def test_legendre_examples():
    assert legendre(-1, 5) == 1          # 2^2 = 4 = -1 (mod 5)
    assert legendre(10, 5) == 0
    assert legendre(5, 7) == -1          # squares mod 7 are {1, 2, 4}


def test_legendre_rejects_bad_p():
    with pytest.raises(ValueError):
        legendre(3, 2)
    with pytest.raises(ValueError):
        legendre(3, 10)


def test_legendre_brute_force_all_small_primes():
    for p in odd_primes(199):
        for m in range(p):
            assert legendre(m, p) == brute_legendre(m, p)


def test_legendre_euler_criterion_congruence():
    for p in odd_primes(199):
        for m in range(p):
            assert legendre(m, p) % p == pow(m, (p - 1) // 2, p)


def test_inv_mod_examples():
    assert inv_mod(2, RingDescriptor(3, 3)).rep == 14   # 2*14 = 28 = 1 (mod 27)
    assert inv_mod(1, RingDescriptor(7, 4)).rep == 1
    with pytest.raises(ValueError):
        inv_mod(3, RingDescriptor(3, 2))


def test_inv_mod_random_units():
    rng = random.Random(7)
    for p, k in RING_GRID:
        ring = RingDescriptor(p, k)
        m = ring.modulus
        count = 0
        while count < 1000:
            u = rng.randrange(1, m)
            if u % p == 0:
                continue
            assert u * inv_mod(u, ring).rep % m == 1
            count += 1


def test_split_padic_examples():
    assert split_padic(12, 3) == (1, 4)
    assert split_padic(-7, 7) == (1, -1)
    assert split_padic(100, 3) == (0, 100)
    with pytest.raises(ValueError):
        split_padic(0, 5)


def test_padic_examples():
    ring = RingDescriptor(3, 4)
    a = PadicScaled(ring, False, 1, 2)
    b = PadicScaled(ring, False, 2, 5)
    prod = padic_mul(a, b)
    assert (prod.v, prod.u) == (3, 10)

    ring3 = RingDescriptor(3, 3)
    deep = PadicScaled(ring3, False, 5, 1)
    assert padic_to_residue(deep).rep == 0

    q = padic_div(PadicScaled(ring3, False, 2, 8), PadicScaled(ring3, False, 1, 2))
    assert (q.v, q.u) == (1, 4)


def test_padic_errors():
    ring = RingDescriptor(3, 3)
    zero = PadicScaled.zero(ring)
    one = PadicScaled.one(ring)
    with pytest.raises(ZeroDivisionError):
        padic_div(one, zero)
    with pytest.raises(ValueError):
        padic_div(one, PadicScaled(ring, False, 1, 2))
    assert padic_div(zero, one).is_zero
    assert padic_mul(zero, one).is_zero
    assert padic_to_residue(zero).rep == 0


def test_padic_roundtrip_random_against_plain_arithmetic():
    rng = random.Random(20260501)
    for p, k in RING_GRID:
        ring = RingDescriptor(p, k)
        m = ring.modulus
        for _ in range(10_000):
            a = rng.randrange(1, m * p * p)
            b = rng.randrange(1, m * p * p)
            via_padic = padic_to_residue(
                padic_mul(PadicScaled.from_int(a, ring), PadicScaled.from_int(b, ring))
            ).rep
            assert via_padic == a * b % m


def test_from_int_zero_and_units():
    ring = RingDescriptor(5, 3)
    assert PadicScaled.from_int(0, ring).is_zero
    x = PadicScaled.from_int(50, ring)
    assert (x.v, x.u) == (2, 2)
    assert padic_to_residue(x).rep == 50
