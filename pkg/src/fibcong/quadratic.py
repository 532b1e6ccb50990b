"""Exact arithmetic in Q(sqrt5) and Q(sqrt6).

A QuadraticNumber is a + b*sqrt(d) with rational a, b; half-integers such
as the golden ratio are first-class.  Only d in {5, 6} is admitted: the
series weights and bases live in these two fields and nothing else is
needed.  Rationals are kept reduced (Fraction does that), so equality is
structural.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .sequences import fib, lucas, second_order_stream, U, V

_ALLOWED_D = (5, 6)

Rat = int | Fraction


@dataclass(frozen=True)
class QuadraticNumber:
    d: int
    a: Fraction
    b: Fraction

    def __post_init__(self) -> None:
        if self.d not in _ALLOWED_D:
            raise ValueError(f"radicand must be one of {_ALLOWED_D}, got {self.d}")
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))

    # -- ring structure -------------------------------------------------

    def _coerce(self, other) -> "QuadraticNumber | None":
        if isinstance(other, QuadraticNumber):
            if other.d != self.d:
                raise ValueError(f"mixed radicands sqrt{self.d} and sqrt{other.d}")
            return other
        if isinstance(other, (int, Fraction)):
            return QuadraticNumber(self.d, Fraction(other), Fraction(0))
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadraticNumber(self.d, self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return QuadraticNumber(self.d, -self.a, -self.b)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadraticNumber(self.d, self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        return -self + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadraticNumber(
            self.d,
            self.a * o.a + self.d * self.b * o.b,
            self.a * o.b + self.b * o.a,
        )

    __rmul__ = __mul__

    def conj(self) -> "QuadraticNumber":
        """The field conjugate a - b*sqrt(d)."""
        return QuadraticNumber(self.d, self.a, -self.b)

    def norm(self) -> Fraction:
        """a^2 - d*b^2 (multiplicative)."""
        return self.a * self.a - self.d * self.b * self.b

    def inverse(self) -> "QuadraticNumber":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("zero has no inverse")
        return QuadraticNumber(self.d, self.a / n, -self.b / n)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int) -> "QuadraticNumber":
        if k < 0:
            return self.inverse() ** (-k)
        result = QuadraticNumber(self.d, Fraction(1), Fraction(0))
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def is_rational(self) -> bool:
        return self.b == 0

    def __str__(self) -> str:
        return f"{self.a} + {self.b}*sqrt{self.d}"


def quad(d: int, a: Rat, b: Rat = 0) -> QuadraticNumber:
    return QuadraticNumber(d, Fraction(a), Fraction(b))


PHI = quad(5, Fraction(1, 2), Fraction(1, 2))       # golden ratio
SQRT5 = quad(5, 0, 1)
SQRT6 = quad(6, 0, 1)
RHO = quad(6, 5, -2)                                 # (sqrt3 - sqrt2)^2
UNIT6 = quad(6, 5, 2)                                # 5 + 2*sqrt6 = 1/RHO


def closed_form_uv(n: int) -> tuple[int, int]:
    """(U(n), V(n)) from the closed forms

        U(n) = ((5+2r6)^(2n) - (5-2r6)^(2n)) / (40*sqrt6)
        V(n) = ((5+2r6)^(2n) + (5-2r6)^(2n)) / 2
    """
    w = UNIT6 ** (2 * n)
    wc = w.conj()
    u = (w - wc) / (40 * SQRT6)
    v = (w + wc) / 2
    assert u.is_rational() and v.is_rational()
    assert u.a.denominator == 1 and v.a.denominator == 1
    return int(u.a), int(v.a)


def check_structural_identities() -> list[str]:
    """Exact identities tying the quadratic constants to the sequences.

    Returns a list of failure descriptions; an empty list means all hold.
      (i)   1 - 10*rho + rho^2 = 0
      (ii)  U/V closed forms match the second-order streams, n <= 200
      (iii) phi^m = (L(m) + F(m)*sqrt5)/2, m <= 300
      (iv)  rho * (5 + 2*sqrt6) = 1
    """
    failures: list[str] = []

    if quad(6, 1) - 10 * RHO + RHO * RHO != quad(6, 0):
        failures.append("1 - 10*rho + rho^2 != 0")

    ustream = second_order_stream(U)
    vstream = second_order_stream(V)
    for n in range(201):
        un, vn = next(ustream), next(vstream)
        cu, cv = closed_form_uv(n)
        if (un, vn) != (cu, cv):
            failures.append(f"U/V closed form mismatch at n={n}")
            break

    for m in range(301):
        expected = quad(5, Fraction(lucas(m), 2), Fraction(fib(m), 2))
        if PHI**m != expected:
            failures.append(f"phi^{m} != (L+F*sqrt5)/2")
            break

    if RHO * UNIT6 != quad(6, 1):
        failures.append("rho * (5+2*sqrt6) != 1")

    return failures
