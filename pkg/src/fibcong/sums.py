"""The six truncated sums S1..S6: declarative specs plus exact-rational
and residue-ring evaluation.

Each summand is kernel(n) * weight(n), where weight(n) is an integer
combination f*Fcomp(n) + l*Lcomp(n) per power of n, with the companion
pair (Fcomp, Lcomp) drawn from the rarefied Fibonacci/Lucas streams or
the U/V pair.  The modular path streams PadicScaled kernel terms against
companions reduced in the ring, collapsing each term to a residue before
accumulating; it never materialises the huge exact rationals.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .residue import PadicScaled, Residue, RingDescriptor, reduce_fraction
from .sequences import COMPANION_SPECS, kernel_stream, second_order_stream


@dataclass(frozen=True)
class SumSpec:
    sum_id: str
    kernel_id: str
    companions: tuple[str, str]
    # (f, l) coefficient pairs indexed by the power of n
    weights: tuple[tuple[int, int], ...]

    def weight(self, n: int, fcomp: int, lcomp: int) -> int:
        total = 0
        npow = 1
        for f, l in self.weights:
            total += (f * fcomp + l * lcomp) * npow
            npow *= n
        return total


SUM_SPECS: dict[str, SumSpec] = {
    "S1": SumSpec("S1", "K1", ("f8", "l8"), ((1, 5), (-30, 42))),
    "S2": SumSpec("S2", "K1", ("f8", "l8"), ((25, 1), (210, -30))),
    "S3": SumSpec("S3", "K2", ("f15", "l15"), ((336, 150), (1818, 810), (2440, 1080))),
    "S4": SumSpec("S4", "K2", ("f15", "l15"), ((750, 336), (4050, 1818), (5400, 2440))),
    "S5": SumSpec("S5", "K3", ("u", "v"), ((640, 13), (800, 16))),
    "S6": SumSpec("S6", "K3", ("u", "v"), ((1560, 32), (1920, 40))),
}


@dataclass(frozen=True)
class ExactSum:
    value: Fraction
    length: int


def _companion_streams(spec: SumSpec, modulus: int | None = None):
    fs, ls = spec.companions
    return (
        second_order_stream(COMPANION_SPECS[fs], modulus),
        second_order_stream(COMPANION_SPECS[ls], modulus),
    )


def term_exact(spec: SumSpec, n: int) -> Fraction:
    """The single n-th summand as an exact rational."""
    if n < 0:
        raise ValueError("negative index")
    ks = kernel_stream(spec.kernel_id)
    fstream, lstream = _companion_streams(spec)
    for _ in range(n):
        ks.advance()
        next(fstream)
        next(lstream)
    return ks.value * spec.weight(n, next(fstream), next(lstream))


def running_sums_exact(spec: SumSpec) -> Iterator[Fraction]:
    """Exact partial sums S(0)=0, S(1), S(2), ... in one pass."""
    ks = kernel_stream(spec.kernel_id)
    fstream, lstream = _companion_streams(spec)
    acc = Fraction(0)
    n = 0
    yield acc
    while True:
        acc += ks.value * spec.weight(n, next(fstream), next(lstream))
        yield acc
        ks.advance()
        n += 1


def sum_exact(spec: SumSpec, length: int) -> ExactSum:
    """Sum of the first ``length`` terms, exactly."""
    if length < 0:
        raise ValueError("negative length")
    it = running_sums_exact(spec)
    value = Fraction(0)
    for _ in range(length + 1):
        value = next(it)
    return ExactSum(value, length)


def running_sums_mod(spec: SumSpec, ring: RingDescriptor) -> Iterator[int]:
    """Residue-ring partial sums S(0)=0, S(1), ... as raw representatives.

    Each PadicScaled kernel term is collapsed to its residue, multiplied
    by the (reduced) integer weight and accumulated; valuations >= k
    contribute zero.
    """
    m = ring.modulus
    ks = kernel_stream(spec.kernel_id, ring)
    fstream, lstream = _companion_streams(spec, m)
    acc = 0
    n = 0
    yield acc
    while True:
        kval: PadicScaled = ks.value
        if not kval.is_zero and kval.v < ring.k:
            rep = ring.p**kval.v * kval.u % m
            acc = (acc + rep * spec.weight(n, next(fstream), next(lstream))) % m
        else:
            next(fstream)
            next(lstream)
        yield acc
        ks.advance()
        n += 1


def sum_mod(spec: SumSpec, length: int, ring: RingDescriptor) -> Residue:
    """sum_exact(spec, length) reduced into the ring, without big rationals."""
    if length < 0:
        raise ValueError("negative length")
    it = running_sums_mod(spec, ring)
    rep = 0
    for _ in range(length + 1):
        rep = next(it)
    return Residue(ring, rep)


def sum_mod_pair(spec: SumSpec, n_small: int, n_large: int, ring: RingDescriptor) -> tuple[Residue, Residue]:
    """(S(n_small), S(n_large)) mod p^k from a single stream pass."""
    if not 0 <= n_small <= n_large:
        raise ValueError("need 0 <= n_small <= n_large")
    it = running_sums_mod(spec, ring)
    small = large = 0
    for n in range(n_large + 1):
        large = next(it)
        if n == n_small:
            small = large
    return Residue(ring, small), Residue(ring, large)


def reduce_exact(value: Fraction, ring: RingDescriptor) -> Residue:
    """Reduce an exact sum into the ring (denominator must be a unit)."""
    return Residue(ring, reduce_fraction(value.numerator, value.denominator, ring))
