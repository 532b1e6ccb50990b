"""Integer sequences: Fibonacci/Lucas, their rarefied companions, the
Pell-like pair U/V, Apery numbers, and the streaming hypergeometric kernels.

The kernel streams advance by multiplying an incremental term ratio, one
O(1) batch of big-number operations per index, instead of recomputing
binomials.  In the modular carrier every integer factor of the ratio is
split into p-valuation and unit first, so the division is exact inside
Z/p^k.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterator

from .residue import PadicScaled, RingDescriptor, split_padic


def binom(n: int, k: int) -> int:
    """Binomial coefficient; 0 outside 0 <= k <= n."""
    if k < 0 or k > n:
        return 0
    return comb(n, k)


def _fib_pair(n: int) -> tuple[int, int]:
    # fast doubling: returns (F(n), F(n+1))
    if n == 0:
        return 0, 1
    a, b = _fib_pair(n >> 1)
    c = a * (2 * b - a)
    d = a * a + b * b
    if n & 1:
        return d, c + d
    return c, d


def fib(n: int) -> int:
    """F(n) with F(0)=0, F(1)=1."""
    if n < 0:
        raise ValueError("negative index")
    return _fib_pair(n)[0]


def lucas(n: int) -> int:
    """L(n) with L(0)=2, L(1)=1."""
    if n < 0:
        raise ValueError("negative index")
    a, b = _fib_pair(n)
    return 2 * b - a


@dataclass(frozen=True)
class SecondOrderSpec:
    """a(n+1) = c1*a(n) + c0*a(n-1), seeded with a0, a1."""

    a0: int
    a1: int
    c1: int
    c0: int


# Rarefied Fibonacci/Lucas companions and the U/V pair, with the recurrence
# signs read off the generating-function denominators 1-47t+t^2,
# 1-1364t-t^2 and 1-98t+t^2.
F8 = SecondOrderSpec(0, 21, 47, -1)
L8 = SecondOrderSpec(2, 47, 47, -1)
F15 = SecondOrderSpec(0, 610, 1364, +1)
L15 = SecondOrderSpec(2, 1364, 1364, +1)
U = SecondOrderSpec(0, 1, 98, -1)
V = SecondOrderSpec(1, 49, 98, -1)

COMPANION_SPECS: dict[str, SecondOrderSpec] = {
    "f8": F8, "l8": L8, "f15": F15, "l15": L15, "u": U, "v": V,
}


def second_order_stream(spec: SecondOrderSpec, modulus: int | None = None) -> Iterator[int]:
    """Yield a0, a1, a2, ... (reduced mod ``modulus`` when given).

    Linear recurrences commute with reduction, so the modular stream is
    just the recurrence run on representatives.
    """
    a, b = spec.a0, spec.a1
    if modulus is None:
        while True:
            yield a
            a, b = b, spec.c1 * b + spec.c0 * a
    else:
        a %= modulus
        b %= modulus
        while True:
            yield a
            a, b = b, (spec.c1 * b + spec.c0 * a) % modulus


def apery_stream() -> Iterator[int]:
    """A(0), A(1), ... via the three-term recurrence

        (n+1)^3 A(n+1) = (34n^3 + 51n^2 + 27n + 5) A(n) - n^3 A(n-1)

    on exact integers.  The division is always exact; running it inside a
    residue ring would break whenever p | (n+1), which is why the sums
    keep the Apery kernel exact and reduce per step.
    """
    a_prev, a_cur = 1, 5
    n = 0
    yield 1
    while True:
        n += 1
        yield a_cur
        num = (34 * n**3 + 51 * n**2 + 27 * n + 5) * a_cur - n**3 * a_prev
        den = (n + 1) ** 3
        q, r = divmod(num, den)
        assert r == 0, "Apery recurrence division must be exact"
        a_prev, a_cur = a_cur, q


def apery(n: int) -> int:
    """A(n), by the exact recurrence."""
    if n < 0:
        raise ValueError("negative index")
    it = apery_stream()
    for _ in range(n):
        next(it)
    return next(it)


def apery_double_sum(n: int) -> int:
    """Oracle: A(n) = sum_k C(n,k)^2 C(n+k,k)^2 straight from the definition."""
    return sum(comb(n, k) ** 2 * comb(n + k, k) ** 2 for k in range(n + 1))


KERNEL_IDS = ("K1", "K2", "K3")


class ExactKernelStream:
    """Kernel values as exact Fractions.

    K1(n) = C(2n,n)^3 / 2^(12n)
    K2(n) = (-1)^n C(2n,n)^4 C(3n,n) / 2^(6n)
    K3(n) = A(n)
    """

    def __init__(self, kernel_id: str):
        if kernel_id not in KERNEL_IDS:
            raise ValueError(f"unknown kernel {kernel_id!r}")
        self.kernel_id = kernel_id
        self.n = 0
        self._c = 1          # C(2n,n) for K1/K2
        self._t = 1          # C(3n,n) for K2
        self._apery = apery_stream() if kernel_id == "K3" else None
        if self._apery is not None:
            self._a = next(self._apery)
        self.value = self._current()

    def _current(self) -> Fraction:
        n = self.n
        if self.kernel_id == "K1":
            return Fraction(self._c**3, 1 << (12 * n))
        if self.kernel_id == "K2":
            sign = -1 if n & 1 else 1
            return Fraction(sign * self._c**4 * self._t, 1 << (6 * n))
        return Fraction(self._a)

    def advance(self) -> None:
        n = self.n
        if self.kernel_id in ("K1", "K2"):
            c = self._c * 2 * (2 * n + 1)
            q, r = divmod(c, n + 1)
            assert r == 0
            self._c = q
            if self.kernel_id == "K2":
                t = self._t * (3 * n + 1) * (3 * n + 2) * (3 * n + 3)
                q, r = divmod(t, (n + 1) * (2 * n + 1) * (2 * n + 2))
                assert r == 0
                self._t = q
        else:
            self._a = next(self._apery)
        self.n = n + 1
        self.value = self._current()


class ModularKernelStream:
    """Kernel values as PadicScaled carriers over Z/p^k, p odd.

    Advancing multiplies the incremental ratio; each integer factor goes
    through split_padic so only units are ever inverted.  The running
    valuation is that of the kernel itself and never goes negative for
    odd p (asserted).
    """

    def __init__(self, kernel_id: str, ring: RingDescriptor):
        if kernel_id not in KERNEL_IDS:
            raise ValueError(f"unknown kernel {kernel_id!r}")
        self.kernel_id = kernel_id
        self.ring = ring
        self.n = 0
        m = ring.modulus
        self._inv_2_12 = pow(4096, -1, m)
        self._inv_2_6 = pow(64, -1, m)
        self._apery = apery_stream() if kernel_id == "K3" else None
        if self._apery is not None:
            self._a = next(self._apery)
            self.value = PadicScaled.from_int(self._a, ring)
        else:
            self.value = PadicScaled.one(ring)

    def advance(self) -> None:
        n = self.n
        ring = self.ring
        m = ring.modulus
        p = ring.p
        if self.kernel_id == "K1":
            nv, nu = split_padic(2 * (2 * n + 1), p)
            dv, du = split_padic(n + 1, p)
            v = self.value.v + 3 * (nv - dv)
            assert v >= 0
            u = self.value.u * pow(nu, 3, m) * pow(du, -3, m) * self._inv_2_12 % m
            self.value = PadicScaled(ring, False, v, u)
        elif self.kernel_id == "K2":
            num_v, num_u = 0, 1
            den_v, den_u = 0, 1
            fv, fu = split_padic(2 * (2 * n + 1), p)
            num_v += 4 * fv
            num_u = num_u * pow(fu, 4, m) % m
            for f in (3 * n + 1, 3 * n + 2, 3 * n + 3):
                fv, fu = split_padic(f, p)
                num_v += fv
                num_u = num_u * fu % m
            fv, fu = split_padic(n + 1, p)
            den_v += 5 * fv
            den_u = den_u * pow(fu, 5, m) % m
            for f in (2 * n + 1, 2 * n + 2):
                fv, fu = split_padic(f, p)
                den_v += fv
                den_u = den_u * fu % m
            v = self.value.v + num_v - den_v
            assert v >= 0
            u = self.value.u * num_u % m * pow(den_u, -1, m) % m * self._inv_2_6 % m
            u = -u % m  # the (-1)^n sign flip
            self.value = PadicScaled(ring, False, v, u)
        else:
            self._a = next(self._apery)
            self.value = PadicScaled.from_int(self._a, ring)
        self.n = n + 1


def kernel_stream(kernel_id: str, ring: RingDescriptor | None = None):
    """Exact carrier when ring is None, else the PadicScaled carrier."""
    if ring is None:
        return ExactKernelStream(kernel_id)
    return ModularKernelStream(kernel_id, ring)
