"""Certified arbitrary-precision evaluation of the convergent series and
comparison against their closed-form limits in pi.

Numbers are fixed-point: an integer mantissa scaled by 2^prec.  Addition
is then exact, and every multiplication or division truncates by at most
one ulp, which keeps the rounding budget trivially auditable: with
64 + log2(terms) guard bits beyond the requested decimal precision, the
accumulated rounding stays orders of magnitude below the certified tail
bound.

The pi oracle is a Machin arctangent evaluation with explicit
alternating-series error control, and the square-root oracle is an
integer-shifted isqrt.  Neither shares anything with the series under
test, so the limit comparison cannot be circular.

Each registered series carries a hard tail-ratio bound r < 1 derived
from the kernel asymptotics (C(2n,n)^3 grows < 64^n,
C(2n,n)^4 C(3n,n) < 1728^n, A(n+1)/A(n) < (1+sqrt2)^4) together with the
weight-growth factor; the bound is asserted against the observed ratios
while summing.  Summation stops once |t| * r/(1-r) certifies the tail
below 10^-(digits+5).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Callable, Iterator

from .sequences import COMPANION_SPECS, apery_stream, second_order_stream
from .sums import SUM_SPECS, SumSpec

_LOG2_10 = math.log2(10)


@dataclass(frozen=True)
class BigFloat:
    """mant / 2^prec, prec >= 64 bits."""

    prec: int
    mant: int

    def __post_init__(self) -> None:
        if self.prec < 64:
            raise ValueError("precision must be >= 64 bits")

    def to_fraction(self) -> Fraction:
        return Fraction(self.mant, 1 << self.prec)

    def __float__(self) -> float:
        return self.mant / (1 << self.prec)

    def to_decimal(self, places: int) -> str:
        """Decimal string with ``places`` digits after the point, rounded."""
        neg = self.mant < 0
        scaled = (abs(self.mant) * 10**places + (1 << (self.prec - 1))) >> self.prec
        digits = str(scaled).rjust(places + 1, "0")
        out = digits[:-places] + "." + digits[-places:] if places else digits
        return "-" + out if neg else out


def _fp_mul(a: int, b: int, prec: int) -> int:
    return (a * b) >> prec


def _fp_div(a: int, b: int, prec: int) -> int:
    return (a << prec) // b


def _fp_pow(x: int, k: int, prec: int) -> int:
    r = 1 << prec
    while k:
        if k & 1:
            r = (r * x) >> prec
        x = (x * x) >> prec
        k >>= 1
    return r


def _sqrt_mant(d: int, prec: int) -> int:
    return isqrt(d << (2 * prec))


def _arctan_inv_mant(x: int, prec: int) -> int:
    # arctan(1/x) = 1/x - 1/(3x^3) + 1/(5x^5) - ...; each floor costs at
    # most one ulp and the cut tail is below the first omitted term.
    total = term = (1 << prec) // x
    n = 0
    xx = x * x
    while term:
        n += 1
        term //= -xx
        total += term // (2 * n + 1)
    return total


def _pi_mant(prec: int) -> int:
    # Machin: pi = 16 arctan(1/5) - 4 arctan(1/239).  32 working guard
    # bits absorb the per-term truncations (a few thousand ulps at most).
    wp = prec + 32
    pi = 16 * _arctan_inv_mant(5, wp) - 4 * _arctan_inv_mant(239, wp)
    return pi >> 32


def pi_oracle(digits: int) -> BigFloat:
    """pi, correct to ``digits`` decimal digits."""
    if digits < 10:
        raise ValueError("digits must be >= 10")
    prec = int(digits * _LOG2_10) + 32
    return BigFloat(prec, _pi_mant(prec))


def sqrt_oracle(d: int, digits: int) -> BigFloat:
    """sqrt(d), correct to ``digits`` decimal digits."""
    if digits < 10:
        raise ValueError("digits must be >= 10")
    if d <= 0:
        raise ValueError("d must be positive")
    prec = int(digits * _LOG2_10) + 32
    return BigFloat(prec, _sqrt_mant(d, prec))


@dataclass(frozen=True)
class SeriesSpec:
    """One registered series: term stream plus claimed limit.

    The limit is limit_coeff / (pi^pi_power * sqrt(sqrt_d)).  tail_ratio
    bounds |t(n+1)/t(n)| for every n >= min_terms - 1; min_terms > 1
    covers series whose first ratio transiently exceeds the bound.
    """

    series_id: str
    description: str
    terms: Callable[[int], Iterator[int]]
    limit_coeff: int
    pi_power: int
    sqrt_d: int | None
    tail_ratio: Fraction
    min_terms: int


def _poly_weight_terms(
    prec: int,
    ratio: Callable[[int], tuple[int, int]],
    x_mant: int,
    weight_mants: tuple[int, ...],
) -> Iterator[int]:
    # t(n) = kernel(n) * x^n * weight(n); g = kernel * x^n is streamed by
    # the integer ratio and one fp multiply per step.
    g = 1 << prec
    n = 0
    while True:
        w = 0
        npow = 1
        for wm in weight_mants:
            w += wm * npow
            npow *= n
        yield (g * w) >> prec
        num, den = ratio(n)
        g = g * num // den
        g = (g * x_mant) >> prec
        n += 1


def _ratio_cub(n: int) -> tuple[int, int]:
    return 8 * (2 * n + 1) ** 3, (n + 1) ** 3


def _ratio_quart(n: int) -> tuple[int, int]:
    num = (2 * (2 * n + 1)) ** 4 * (3 * n + 1) * (3 * n + 2) * (3 * n + 3)
    den = (n + 1) ** 5 * (2 * n + 1) * (2 * n + 2)
    return num, den


def _terms_e1(prec: int) -> Iterator[int]:
    one = 1 << prec
    s5 = _sqrt_mant(5, prec)
    x = _fp_pow((s5 - one) // 2, 8, prec) >> 12
    return _poly_weight_terms(prec, _ratio_cub, x, (5 * s5 - one, 30 * one + 42 * s5))


def _terms_e2(prec: int) -> Iterator[int]:
    one = 1 << prec
    s5 = _sqrt_mant(5, prec)
    x = _fp_pow((s5 + one) // 2, 8, prec) >> 12
    return _poly_weight_terms(prec, _ratio_cub, x, (-5 * s5 - one, 30 * one - 42 * s5))


def _terms_e8(prec: int) -> Iterator[int]:
    one = 1 << prec
    s5 = _sqrt_mant(5, prec)
    x = _fp_pow((s5 - one) // 2, 15, prec) >> 6
    weights = (168 * one - 75 * s5, 909 * one - 405 * s5, 1220 * one - 540 * s5)
    return _poly_weight_terms(prec, _ratio_quart, x, weights)


def _terms_truncated_sum(spec: SumSpec, prec: int) -> Iterator[int]:
    # Exact integer numerators over a power of two: a single shift per
    # term, so each term is exact to one ulp.
    fstream = second_order_stream(COMPANION_SPECS[spec.companions[0]])
    lstream = second_order_stream(COMPANION_SPECS[spec.companions[1]])
    c = 1
    n = 0
    while True:
        num = c**3 * spec.weight(n, next(fstream), next(lstream))
        shift = prec - 12 * n
        yield num << shift if shift >= 0 else num >> -shift
        c = c * 2 * (2 * n + 1) // (n + 1)
        n += 1


def _terms_e3(prec: int) -> Iterator[int]:
    return _terms_truncated_sum(SUM_SPECS["S1"], prec)


def _terms_e4(prec: int) -> Iterator[int]:
    return _terms_truncated_sum(SUM_SPECS["S2"], prec)


def _terms_ecz(prec: int) -> Iterator[int]:
    one = 1 << prec
    s6 = _sqrt_mant(6, prec)
    rho = _fp_div(one, 5 * one + 2 * s6, prec)
    rho2 = _fp_mul(rho, rho, prec)
    # Stream h = A(n) * rho^(2n+1) as one quantity: its factors split
    # apart (34^n against 10^-2n) would each outrun the fixed-point
    # window even though their product decays gently.
    h = rho
    ap = apery_stream()
    a_cur = next(ap)
    n = 0
    while True:
        yield (8 * n + 4) * h - ((h * s6) >> prec)
        a_next = next(ap)
        h = h * a_next // a_cur
        h = _fp_mul(h, rho2, prec)
        a_cur = a_next
        n += 1


SERIES_SPECS: dict[str, SeriesSpec] = {
    s.series_id: s
    for s in (
        SeriesSpec(
            "E1",
            "sum C(2n,n)^3 ((30+42*sqrt5)n + (-1+5*sqrt5)) x^n, x = phi^-8/2^12",
            _terms_e1, 32, 1, None, Fraction(1, 1000), 1,
        ),
        SeriesSpec(
            "E2",
            "sum C(2n,n)^3 ((30-42*sqrt5)n + (-1-5*sqrt5)) x^n, x = phi^8/2^12",
            _terms_e2, -96, 1, None, Fraction(3, 4), 1,
        ),
        SeriesSpec(
            "E3",
            "sum of the S1 term sequence to infinity",
            _terms_e3, 128, 1, 5, Fraction(3, 4), 1,
        ),
        SeriesSpec(
            "E4",
            "sum of the S2 term sequence to infinity",
            _terms_e4, 64, 1, None, Fraction(3, 4), 2,
        ),
        SeriesSpec(
            "E8",
            "sum C(2n,n)^4 C(3n,n) (quadratic weight) x^n, x = phi^-15/2^6",
            _terms_e8, 3, 2, None, Fraction(1, 20), 1,
        ),
        SeriesSpec(
            "ECZ",
            "sum A(n) (8n+4-sqrt6) rho^(2n+1), rho = 5-2*sqrt6",
            _terms_ecz, 1, 1, 2, Fraction(9, 25), 1,
        ),
    )
}


@dataclass(frozen=True)
class SeriesEvaluation:
    series_id: str
    digits: int
    value: BigFloat
    terms_used: int
    tail_bound: BigFloat


def _working_prec(digits: int, est_terms: int) -> int:
    return int(digits * _LOG2_10) + 1 + 64 + est_terms.bit_length()


def _estimate_terms(spec: SeriesSpec, digits: int) -> int:
    r = float(spec.tail_ratio)
    return int((digits + 6) * math.log(10) / -math.log(r)) + spec.min_terms + 8


def eval_series(spec: SeriesSpec, digits: int, extra_terms: int = 0) -> SeriesEvaluation:
    """Sum the series until the geometric tail bound certifies ``digits``.

    The returned tail bound, |t| * r/(1-r) at the last added term (plus
    one ulp), is a rigorous cap on the omitted tail; the working
    precision keeps accumulated rounding far below it.
    """
    if digits < 10:
        raise ValueError("digits must be >= 10")
    est = _estimate_terms(spec, digits)
    prec = _working_prec(digits, est)
    threshold = (1 << prec) // 10 ** (digits + 5)
    rn, rd = spec.tail_ratio.numerator, spec.tail_ratio.denominator
    max_terms = 4 * est + 64

    acc = 0
    t_abs = 0
    prev_abs = 0
    terms_used = 0
    remaining_extra = extra_terms
    stream = spec.terms(prec)
    for n in range(max_terms):
        t = next(stream)
        acc += t
        t_abs = abs(t)
        if n >= spec.min_terms:
            # observed ratio must respect the hard bound (16-ulp slack)
            if t_abs * rd > prev_abs * rn + 16 * rd:
                raise AssertionError(
                    f"{spec.series_id}: term ratio exceeded bound {spec.tail_ratio} at n={n}"
                )
        prev_abs = t_abs
        terms_used = n + 1
        if terms_used >= spec.min_terms:
            tail = t_abs * rn // (rd - rn) + 1
            if tail < threshold:
                if remaining_extra == 0:
                    break
                remaining_extra -= 1
    else:
        raise AssertionError(f"{spec.series_id}: tail bound failed to shrink")

    tail = t_abs * rn // (rd - rn) + 1
    return SeriesEvaluation(
        spec.series_id, digits, BigFloat(prec, acc), terms_used, BigFloat(prec, tail)
    )


@dataclass(frozen=True)
class LimitReport:
    series_id: str
    digits: int
    value: BigFloat
    limit: BigFloat
    abs_error: BigFloat
    digits_matched: int
    terms_used: int
    tail_bound: BigFloat
    passed: bool


def claimed_limit_mant(spec: SeriesSpec, prec: int) -> int:
    """limit_coeff / (pi^pi_power * sqrt(sqrt_d)) at prec bits."""
    denom = _pi_mant(prec)
    if spec.pi_power == 2:
        denom = _fp_mul(denom, denom, prec)
    if spec.sqrt_d is not None:
        denom = _fp_mul(denom, _sqrt_mant(spec.sqrt_d, prec), prec)
    return (spec.limit_coeff << (2 * prec)) // denom


def verify_limit(spec: SeriesSpec, digits: int) -> LimitReport:
    """Evaluate and compare with the claimed limit via the oracles.

    Passes when |value - limit| < 10^-(digits-2).
    """
    ev = eval_series(spec, digits)
    prec = ev.value.prec
    one = 1 << prec
    limit = claimed_limit_mant(spec, prec)
    err = abs(ev.value.mant - limit)

    matched = 0
    cap = digits + 10
    scaled = err
    while matched < cap:
        scaled *= 10
        if scaled >= one:
            break
        matched += 1

    passed = err * 10 ** (digits - 2) < one
    return LimitReport(
        series_id=spec.series_id,
        digits=digits,
        value=ev.value,
        limit=BigFloat(prec, limit),
        abs_error=BigFloat(prec, err),
        digits_matched=matched,
        terms_used=ev.terms_used,
        tail_bound=ev.tail_bound,
        passed=passed,
    )
