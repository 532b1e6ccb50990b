"""Arithmetic in the residue rings Z/p^k for odd primes p.

Values are plain Python integers throughout; nothing here ever leaves
exact arithmetic.  The ``PadicScaled`` carrier represents a p-adically
scaled value p^v * u with the unit u held to exactly k digits: every
division performed by the streaming sums subtracts valuations *before*
inverting units, so the valuation field holds all the headroom and the
residue width stays fixed.

All types are immutable and all operations are pure functions, so
everything in this module is safe to share across workers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import isqrt


def sieve_primes(limit: int) -> list[int]:
    """All primes <= limit, by a plain Eratosthenes sieve."""
    if limit < 2:
        return []
    mark = bytearray([1]) * (limit + 1)
    mark[0] = mark[1] = 0
    for q in range(2, isqrt(limit) + 1):
        if mark[q]:
            mark[q * q :: q] = bytearray(len(mark[q * q :: q]))
    return [i for i in range(limit + 1) if mark[i]]


def odd_primes(limit: int) -> list[int]:
    """All odd primes <= limit."""
    return [p for p in sieve_primes(limit) if p > 2]


def is_prime(n: int) -> bool:
    """Deterministic trial division; fine at sweep scale."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    for q in range(3, isqrt(n) + 1, 2):
        if n % q == 0:
            return False
    return True


@dataclass(frozen=True)
class RingDescriptor:
    """The ring Z/p^k for an odd prime p and exponent k >= 1."""

    p: int
    k: int
    modulus: int = field(init=False, compare=False, repr=False)

    def __post_init__(self) -> None:
        if self.p <= 2 or not is_prime(self.p):
            raise ValueError(f"p must be an odd prime, got {self.p}")
        if self.k < 1:
            raise ValueError(f"exponent must be >= 1, got {self.k}")
        object.__setattr__(self, "modulus", self.p**self.k)

    def __str__(self) -> str:
        return f"{self.p}^{self.k}"


@dataclass(frozen=True)
class Residue:
    """A canonical representative in [0, p^k)."""

    ring: RingDescriptor
    rep: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "rep", self.rep % self.ring.modulus)

    def __int__(self) -> int:
        return self.rep


@dataclass(frozen=True)
class PadicScaled:
    """p^v * u in Z/p^(k+v), or the distinguished zero.

    When not zero: v >= 0 and u in [0, p^k) with gcd(u, p) = 1.
    """

    ring: RingDescriptor
    is_zero: bool
    v: int
    u: int

    @classmethod
    def zero(cls, ring: RingDescriptor) -> "PadicScaled":
        return cls(ring, True, 0, 0)

    @classmethod
    def one(cls, ring: RingDescriptor) -> "PadicScaled":
        return cls(ring, False, 0, 1)

    @classmethod
    def from_int(cls, n: int, ring: RingDescriptor) -> "PadicScaled":
        if n == 0:
            return cls.zero(ring)
        v, u = split_padic(n, ring.p)
        return cls(ring, False, v, u % ring.modulus)


def legendre(m: int, p: int) -> int:
    """Legendre symbol (m/p) in {-1, 0, +1}, by Euler's criterion.

    p must be an odd prime; primality itself is the caller's problem
    (sweeps draw p from the sieve).
    """
    if p <= 2 or p % 2 == 0:
        raise ValueError(f"p must be an odd prime, got {p}")
    r = pow(m % p, (p - 1) // 2, p)
    return r - p if r == p - 1 else r


def inv_mod(u: int, ring: RingDescriptor) -> Residue:
    """The inverse of u in Z/p^k; u must be a unit."""
    if u % ring.p == 0:
        raise ValueError(f"{u} is not a unit modulo {ring}")
    return Residue(ring, pow(u, -1, ring.modulus))


def split_padic(n: int, p: int) -> tuple[int, int]:
    """Write n = p^v * u with p not dividing u; the sign stays in u."""
    if n == 0:
        raise ValueError("0 has no p-adic split; use PadicScaled.zero")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v, n


def padic_mul(a: PadicScaled, b: PadicScaled) -> PadicScaled:
    if a.is_zero or b.is_zero:
        return PadicScaled.zero(a.ring)
    return PadicScaled(a.ring, False, a.v + b.v, a.u * b.u % a.ring.modulus)


def padic_div(a: PadicScaled, b: PadicScaled) -> PadicScaled:
    if b.is_zero:
        raise ZeroDivisionError("division by the zero element")
    if a.is_zero:
        return a
    v = a.v - b.v
    if v < 0:
        raise ValueError(f"negative valuation {v} in p-adic division")
    m = a.ring.modulus
    return PadicScaled(a.ring, False, v, a.u * pow(b.u, -1, m) % m)


def padic_to_residue(a: PadicScaled) -> Residue:
    """Collapse p^v * u to its class mod p^k (zero once v >= k)."""
    if a.is_zero or a.v >= a.ring.k:
        return Residue(a.ring, 0)
    return Residue(a.ring, a.ring.p**a.v * a.u % a.ring.modulus)


def reduce_fraction(num: int, den: int, ring: RingDescriptor) -> int:
    """num/den mod p^k, for den coprime to p.  Returns the raw representative."""
    m = ring.modulus
    if den == 1:
        return num % m
    if den % ring.p == 0:
        raise ValueError(f"denominator {den} is not invertible modulo {ring}")
    return num * pow(den, -1, m) % m
