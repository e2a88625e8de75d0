"""Exact arithmetic in a real quadratic field Q(sqrt(d)).

Edges of the rho=9 prism can meet a dome at points that are not lattice
rational; their coordinates live in Q(sqrt(d)) for the discriminant of the
intersection quadratic.  Signs of such numbers are decided exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt


def squarefree_split(n: int) -> tuple[int, int]:
    """Write ``n = s**2 * d`` with d squarefree; returns ``(s, d)``."""
    if n <= 0:
        raise ValueError("squarefree_split needs a positive integer")
    s, d, p = 1, n, 2
    while p * p <= d:
        while d % (p * p) == 0:
            d //= p * p
            s *= p
        p += 1
    return s, d


@dataclass(frozen=True)
class Surd:
    """The number ``a + b*sqrt(d)`` with rational a, b and squarefree d > 1."""

    a: Fraction
    b: Fraction
    d: int

    @classmethod
    def sqrt_of(cls, q: Fraction | int) -> "Surd | Fraction":
        """Exact square root of a non-negative rational; rational when possible."""
        q = Fraction(q)
        if q < 0:
            raise ValueError("negative radicand")
        num = q.numerator * q.denominator
        s, d = squarefree_split(num) if num else (0, 1)
        coeff = Fraction(s, q.denominator)
        if d == 1:
            return coeff
        return cls(Fraction(0), coeff, d)

    def _coerce(self, other) -> "Surd":
        if isinstance(other, Surd):
            if other.d != self.d:
                raise ValueError(f"mixing sqrt({self.d}) and sqrt({other.d})")
            return other
        return Surd(Fraction(other), Fraction(0), self.d)

    def __add__(self, other):
        o = self._coerce(other)
        return Surd(self.a + o.a, self.b + o.b, self.d)

    __radd__ = __add__

    def __neg__(self):
        return Surd(-self.a, -self.b, self.d)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        return Surd(self.a * o.a + self.b * o.b * self.d, self.a * o.b + self.b * o.a, self.d)

    __rmul__ = __mul__

    def conjugate(self) -> "Surd":
        return Surd(self.a, -self.b, self.d)

    def norm(self) -> Fraction:
        return self.a * self.a - self.b * self.b * self.d

    def __truediv__(self, other):
        o = self._coerce(other)
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt(d))")
        num = self * o.conjugate()
        return Surd(num.a / n, num.b / n, self.d)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def sign(self) -> int:
        sa = (self.a > 0) - (self.a < 0)
        sb = (self.b > 0) - (self.b < 0)
        if sb == 0:
            return sa
        if sa == 0 or sa == sb:
            return sb
        # opposite signs: compare a^2 with b^2 d
        diff = self.a * self.a - self.b * self.b * self.d
        return sa if diff > 0 else sb

    def __eq__(self, other):
        if isinstance(other, (Surd, int, Fraction)):
            return (self - other).sign() == 0
        return NotImplemented

    def __hash__(self):
        # equal to a rational exactly when b == 0, so hash like it
        return hash(self.a) if self.b == 0 else hash((self.a, self.b, self.d))

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __le__(self, other):
        return (self - other).sign() <= 0

    def __gt__(self, other):
        return (self - other).sign() > 0

    def __ge__(self, other):
        return (self - other).sign() >= 0

    def __float__(self):
        return float(self.a) + float(self.b) * (self.d ** 0.5)

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        sb = "+" if self.b > 0 else "-"
        head = f"{self.a} {sb} " if self.a else ("-" if self.b < 0 else "")
        return f"{head}{abs(self.b)}*sqrt({self.d})"


def sign(x) -> int:
    """Exact sign of an int, Fraction or Surd."""
    if isinstance(x, Surd):
        return x.sign()
    return (x > 0) - (x < 0)


def is_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n
