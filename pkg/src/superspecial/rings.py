"""Exact arithmetic in Z[i] and Z[w] (w = (1+sqrt(-3))/2), plus divisor sums.

Elements carry a ring tag so mixed-ring arithmetic is caught early.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Union

import numpy as np
from sympy import divisors

GAUSS = "GAUSS"
EISEN = "EISEN"
RINGS = (GAUSS, EISEN)

Rational = Union[int, Fraction]


def sigma_divisors(n: Rational) -> int:
    """Sum of positive divisors; 0 for anything that is not a positive integer."""
    n = Fraction(n)
    if n.denominator != 1 or n <= 0:
        return 0
    return sum(divisors(int(n)))


def count_four_squares(n: int) -> int:
    """Number of ordered integer solutions of x^2+y^2+z^2+w^2 = n."""
    if n < 1:
        raise ValueError("n must be positive")
    return 8 * sigma_divisors(n) - 32 * sigma_divisors(Fraction(n, 4))


def count_double_hexagonal(n: int) -> int:
    """Number of ordered integer solutions of x^2+xy+y^2+z^2+zw+w^2 = n."""
    if n < 1:
        raise ValueError("n must be positive")
    return 12 * sigma_divisors(n) - 36 * sigma_divisors(Fraction(n, 3))


def _round_half_up(q: Fraction) -> int:
    return (q + Fraction(1, 2)).__floor__()


@dataclass(frozen=True, order=True)
class ImQuadInt:
    """a + b*i in Z[i] (GAUSS) or a + b*w in Z[w] (EISEN), w^2 = w - 1."""

    ring: str
    a: int
    b: int

    def __post_init__(self):
        if self.ring not in RINGS:
            raise ValueError(f"unknown ring {self.ring!r}")

    @classmethod
    def of(cls, ring: str, a: int, b: int = 0) -> "ImQuadInt":
        return cls(ring, int(a), int(b))

    def _coerce(self, other) -> "ImQuadInt":
        if isinstance(other, int):
            return ImQuadInt(self.ring, other, 0)
        if not isinstance(other, ImQuadInt):
            return NotImplemented
        if other.ring != self.ring:
            raise ValueError("mixed rings")
        return other

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return ImQuadInt(self.ring, self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __neg__(self):
        return ImQuadInt(self.ring, -self.a, -self.b)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b, c, d = self.a, self.b, other.a, other.b
        if self.ring == GAUSS:
            return ImQuadInt(GAUSS, a * c - b * d, a * d + b * c)
        return ImQuadInt(EISEN, a * c - b * d, a * d + b * c + b * d)

    __rmul__ = __mul__

    def conjugate(self) -> "ImQuadInt":
        if self.ring == GAUSS:
            return ImQuadInt(GAUSS, self.a, -self.b)
        # conj(w) = 1 - w
        return ImQuadInt(EISEN, self.a + self.b, -self.b)

    def norm(self) -> int:
        a, b = self.a, self.b
        if self.ring == GAUSS:
            return a * a + b * b
        return a * a + a * b + b * b

    def trace(self) -> int:
        if self.ring == GAUSS:
            return 2 * self.a
        return 2 * self.a + self.b

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def is_unit(self) -> bool:
        return self.norm() == 1

    def divmod(self, other: "ImQuadInt") -> tuple["ImQuadInt", "ImQuadInt"]:
        """Euclidean division with remainder of strictly smaller norm."""
        other = self._coerce(other)
        n = other.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero")
        num = self * other.conjugate()
        q = ImQuadInt(self.ring, _round_half_up(Fraction(num.a, n)), _round_half_up(Fraction(num.b, n)))
        return q, self - q * other

    def exact_div(self, other: "ImQuadInt") -> "ImQuadInt | None":
        """self / other if it lies in the ring, else None."""
        q, r = self.divmod(other)
        return q if r.is_zero() else None

    def divides(self, other: "ImQuadInt") -> bool:
        if self.is_zero():
            return other.is_zero()
        return other.exact_div(self) is not None

    def operator(self, modulus: int | None = None) -> np.ndarray:
        """Matrix of multiplication-by-self on the basis (S, X S), X = i or w; reduced if `modulus` is given."""
        a, b = self.a, self.b
        if self.ring == GAUSS:
            m = [[a, -b], [b, a]]
        else:
            m = [[a, -b], [b, a + b]]
        m = np.array(m, dtype=np.int64)
        return m % modulus if modulus else m

    def __str__(self):
        sym = "i" if self.ring == GAUSS else "w"
        if self.b == 0:
            return str(self.a)
        coef = {1: "", -1: "-"}.get(self.b, str(self.b))
        if self.a == 0:
            return f"{coef}{sym}"
        sign = "+" if self.b > 0 else "-"
        mag = "" if abs(self.b) == 1 else str(abs(self.b))
        return f"{self.a}{sign}{mag}{sym}"


def units(ring: str) -> list[ImQuadInt]:
    if ring == GAUSS:
        return [ImQuadInt(GAUSS, a, b) for a, b in ((1, 0), (0, 1), (-1, 0), (0, -1))]
    return [ImQuadInt(EISEN, a, b) for a, b in ((1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1), (1, -1))]


def is_canonical_associate(x: ImQuadInt) -> bool:
    if x.ring == GAUSS:
        return x.a > 0 and x.b >= 0
    # sector -30deg < arg <= 30deg
    return -x.a < 2 * x.b <= 2 * x.a


def canonical_associate(x: ImQuadInt) -> ImQuadInt:
    if x.is_zero():
        return x
    for u in units(x.ring):
        y = u * x
        if is_canonical_associate(y):
            return y
    raise AssertionError(f"no canonical associate for {x}")


def solve_norm_equation(ring: str, n: int) -> tuple[list[ImQuadInt], ImQuadInt | None]:
    """All elements of norm n, and the canonical solution (None if there is none).

    The canonical solution is the canonical-form associate with the largest `a`.
    """
    if n < 1:
        raise ValueError("n must be positive")
    sols = []
    if ring == GAUSS:
        r = isqrt(n)
        for a in range(-r, r + 1):
            rest = n - a * a
            b = isqrt(rest)
            if b * b == rest:
                sols.extend({(a, b), (a, -b)})
    else:
        # a^2+ab+b^2 = n  <=>  (2a+b)^2 + 3b^2 = 4n
        r = isqrt(4 * n // 3)
        for b in range(-r, r + 1):
            rest = 4 * n - 3 * b * b
            s = isqrt(rest)
            if s * s != rest:
                continue
            for u in {s, -s}:
                if (u - b) % 2 == 0:
                    sols.append(((u - b) // 2, b))
    elems = sorted(ImQuadInt(ring, a, b) for a, b in set(sols)) if sols else []
    canon = [x for x in elems if is_canonical_associate(x)]
    lam = max(canon, key=lambda x: (x.a, x.b)) if canon else None
    return elems, lam


def ring_gcd(x: ImQuadInt, y: ImQuadInt) -> ImQuadInt:
    """Greatest common divisor, normalized to its canonical associate."""
    if x.ring != y.ring:
        raise ValueError("mixed rings")
    if x.is_zero() and y.is_zero():
        raise ValueError("gcd(0, 0) is undefined")
    while not y.is_zero():
        _, r = x.divmod(y)
        x, y = y, r
    return canonical_associate(x)

