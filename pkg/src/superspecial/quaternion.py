"""Maximal orders of the quaternion algebra ramified at p and infinity.

Four explicit orders are supported, each given by a Z-basis inside the
algebra with i^2 = -a, j^2 = -p, ij = -ji = k:

    O1728    Z + Zi + Z(1+j)/2 + Z(i+k)/2                a = 1
    O0       Z + Z(1+i)/2 + Z(i+k)/3 + Z(j+k)/2          a = 3
    OQ       Z + Z(1+i)/2 + Z(j-k)/2 + Z(ri-k)/q         a = q
    OPRIMEQ  Z + Z(1+j)/2 + Zi + Z(r'i-k)/(2q)           a = q

Elements are stored as integer coordinates on the order basis.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import product

import sympy
from sympy import isprime, legendre_symbol

from .rings import EISEN, GAUSS, ImQuadInt

O1728 = "O1728"
O0 = "O0"
OQ = "OQ"
OPRIMEQ = "OPRIMEQ"
KINDS = (O1728, O0, OQ, OPRIMEQ)

F = Fraction


class OrderError(ValueError):
    pass


def _alg_mul(x, y, a, b):
    """Product in the algebra with i^2 = a, j^2 = b (coordinates on 1, i, j, k)."""
    x0, x1, x2, x3 = x
    y0, y1, y2, y3 = y
    return (
        x0 * y0 + a * x1 * y1 + b * x2 * y2 - a * b * x3 * y3,
        x0 * y1 + x1 * y0 - b * x2 * y3 + b * x3 * y2,
        x0 * y2 + x2 * y0 + a * x1 * y3 - a * x3 * y1,
        x0 * y3 + x3 * y0 + x1 * y2 - x2 * y1,
    )


def _solve(rows, v):
    """Coordinates c with sum_k c_k rows[k] = v (exact Gaussian elimination)."""
    n = len(rows)
    m = [[F(rows[k][r]) for k in range(n)] + [F(v[r])] for r in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if m[r][col] != 0)
        m[col], m[piv] = m[piv], m[col]
        pv = m[col][col]
        m[col] = [e / pv for e in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [e - f * g for e, g in zip(m[r], m[col])]
    return [m[r][n] for r in range(n)]


def _smallest_sqrt(target, modulus):
    for r in range(modulus):
        if (r * r - target) % modulus == 0:
            return r
    return None


@dataclass(frozen=True, eq=False)
class QuatOrder:
    kind: str
    p: int
    q: int | None = None
    r: int | None = None
    basis: tuple = field(repr=False, default=())
    names: tuple = field(repr=False, default=())

    @property
    def i_square(self) -> int:
        return {O1728: -1, O0: -3}.get(self.kind, -(self.q or 0))

    @property
    def j_square(self) -> int:
        return -self.p

    def key(self):
        return (self.kind, self.p, self.q, self.r)

    def __eq__(self, other):
        return isinstance(other, QuatOrder) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def alg_mul(self, x, y):
        return _alg_mul(x, y, self.i_square, self.j_square)

    def to_basis(self, v) -> tuple[int, ...]:
        c = _solve(self.basis, v)
        if any(e.denominator != 1 for e in c):
            raise OrderError(f"{v} is not in the order")
        return tuple(int(e) for e in c)

    @cached_property
    def mult_table(self) -> tuple:
        """table[a][b] = coordinates of basis[a] * basis[b] on the basis."""
        return tuple(
            tuple(self.to_basis(self.alg_mul(self.basis[a], self.basis[b])) for b in range(4))
            for a in range(4)
        )

    @cached_property
    def conj_table(self) -> tuple:
        out = []
        for v in self.basis:
            out.append(self.to_basis((v[0], -v[1], -v[2], -v[3])))
        return tuple(out)

    @cached_property
    def norm_form(self) -> tuple:
        """Gram matrix Q with Nrd(x) = x^T Q x on basis coordinates (exact rationals)."""
        def nrd(v):
            a, b = self.i_square, self.j_square
            return v[0] ** 2 - a * v[1] ** 2 - b * v[2] ** 2 + a * b * v[3] ** 2

        q = [[F(0)] * 4 for _ in range(4)]
        for s in range(4):
            q[s][s] = F(nrd(self.basis[s]))
        for s in range(4):
            for t in range(s + 1, 4):
                both = tuple(x + y for x, y in zip(self.basis[s], self.basis[t]))
                q[s][t] = q[t][s] = (F(nrd(both)) - q[s][s] - q[t][t]) / 2
        return tuple(tuple(r) for r in q)

    def element(self, *coords) -> "QuatElem":
        if len(coords) == 1:
            coords = tuple(coords[0])
        return QuatElem(self, tuple(int(c) for c in coords))

    def one(self) -> "QuatElem":
        return self.element(1, 0, 0, 0)

    def zero(self) -> "QuatElem":
        return self.element(0, 0, 0, 0)

    def from_standard(self, v) -> "QuatElem":
        return QuatElem(self, self.to_basis(v))

    def check(self):
        """Verify associativity on basis triples and integrality of the structure constants."""
        t = self.mult_table  # raises OrderError on non-integral constants
        for a, b, c in product(range(4), repeat=3):
            x, y, z = (self.element(*[int(s == n) for s in range(4)]) for n in (a, b, c))
            if (x * y) * z != x * (y * z):
                raise OrderError(f"multiplication not associative on basis {a},{b},{c}")
        one = self.to_basis((1, 0, 0, 0))
        if one != (1, 0, 0, 0):
            raise OrderError("first basis vector must be 1")
        # maximal iff the reduced discriminant is p, i.e. det(trace form) = p^2
        gram = sympy.Matrix(4, 4, lambda s, u: 2 * self.norm_form[s][u])
        if abs(gram.det()) != self.p ** 2:
            raise OrderError(f"order is not maximal: discriminant {gram.det()}")
        return t

    def quadratic_subring(self):
        """GAUSS or EISEN when the first two basis vectors span Z[i] resp. Z[w], else None."""
        if self.kind == O1728:
            return GAUSS
        if self.kind == O0:
            return EISEN
        return None


def make_order(kind: str, p: int, q: int | None = None) -> QuatOrder:
    """Build one of the four maximal orders after checking its congruence conditions."""
    if kind not in KINDS:
        raise OrderError(f"unknown order kind {kind!r}")
    if not isprime(p) or p <= 3:
        raise OrderError(f"p={p} must be a prime > 3")
    r = None
    if kind == O1728:
        if p % 4 != 3:
            raise OrderError(f"O1728 needs p = 3 mod 4, got p={p} = {p % 4} mod 4")
        basis = ((1, 0, 0, 0), (0, 1, 0, 0), (F(1, 2), 0, F(1, 2), 0), (0, F(1, 2), 0, F(1, 2)))
        names = ("1", "i", "(1+j)/2", "(i+k)/2")
    elif kind == O0:
        if p % 3 != 2:
            raise OrderError(f"O0 needs p = 2 mod 3, got p={p} = {p % 3} mod 3")
        basis = ((1, 0, 0, 0), (F(1, 2), F(1, 2), 0, 0), (0, F(1, 3), 0, F(1, 3)), (0, 0, F(1, 2), F(1, 2)))
        names = ("1", "(1+i)/2", "(i+k)/3", "(j+k)/2")
    else:
        if q is None:
            q = default_q(p, kind)
        if not isprime(q) or q % 8 != 3:
            raise OrderError(f"q={q} must be a prime = 3 mod 8")
        if kind == OQ and q == 3:
            raise OrderError("q=3 gives an order containing the cube roots of unity (j=0); use O0")
        if legendre_symbol(p % q, q) != -1:
            raise OrderError(f"(p/q) must be -1, got ({p}/{q}) = {legendre_symbol(p % q, q)}")
        if kind == OQ:
            r = _smallest_sqrt(-p, q)
            basis = ((1, 0, 0, 0), (F(1, 2), F(1, 2), 0, 0), (0, 0, F(1, 2), F(-1, 2)), (0, F(r, q), 0, F(-1, q)))
            names = ("1", "(1+i)/2", "(j-k)/2", f"({r}i-k)/{q}")
        else:
            r = _smallest_sqrt(-p, 4 * q)
            if r is None:
                raise OrderError(f"OPRIMEQ needs r'^2 = -p mod 4q solvable; fails for p={p}, q={q}")
            basis = ((1, 0, 0, 0), (F(1, 2), 0, F(1, 2), 0), (0, 1, 0, 0), (0, F(r, 2 * q), 0, F(-1, 2 * q)))
            names = ("1", "(1+j)/2", "i", f"({r}i-k)/{2 * q}")
    basis = tuple(tuple(F(c) for c in v) for v in basis)
    order = QuatOrder(kind, p, q, r, basis, names)
    order.check()
    return order


def default_q(p: int, kind: str = OQ) -> int:
    """Smallest prime q = 3 mod 8 with (p/q) = -1 (and r' solvable for OPRIMEQ)."""
    if kind == OPRIMEQ and p % 4 != 3:
        raise OrderError(f"OPRIMEQ needs p = 3 mod 4 so that r'^2 = -p mod 4q is solvable, got p={p}")
    q = 3
    while True:
        if isprime(q) and legendre_symbol(p % q, q) == -1 and not (kind == OQ and q == 3):
            if kind != OPRIMEQ or _smallest_sqrt(-p, 4 * q) is not None:
                return q
        q += 8


@dataclass(frozen=True)
class QuatElem:
    order: QuatOrder
    coords: tuple[int, int, int, int]

    def _check(self, other):
        if not isinstance(other, QuatElem):
            return NotImplemented
        if other.order != self.order:
            raise ValueError("elements belong to different orders")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return QuatElem(self.order, tuple(x + y for x, y in zip(self.coords, other.coords)))

    def __neg__(self):
        return QuatElem(self.order, tuple(-x for x in self.coords))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return QuatElem(self.order, tuple(other * x for x in self.coords))
        other = self._check(other)
        if other is NotImplemented:
            return other
        table = self.order.mult_table
        out = [0, 0, 0, 0]
        for a, xa in enumerate(self.coords):
            if not xa:
                continue
            row = table[a]
            for b, yb in enumerate(other.coords):
                if not yb:
                    continue
                s = xa * yb
                t = row[b]
                for c in range(4):
                    out[c] += s * t[c]
        return QuatElem(self.order, tuple(out))

    def __rmul__(self, other):
        if isinstance(other, int):
            return self * other
        return NotImplemented

    def conjugate(self) -> "QuatElem":
        table = self.order.conj_table
        out = [0, 0, 0, 0]
        for a, xa in enumerate(self.coords):
            for c in range(4):
                out[c] += xa * table[a][c]
        return QuatElem(self.order, tuple(out))

    def reduced_norm(self) -> int:
        q = self.order.norm_form
        x = self.coords
        n = sum(q[s][t] * x[s] * x[t] for s in range(4) for t in range(4))
        assert n.denominator == 1
        return int(n)

    def reduced_trace(self) -> int:
        return 2 * int(self.standard()[0])

    def standard(self) -> tuple[Fraction, ...]:
        """Coordinates on 1, i, j, k."""
        out = [F(0)] * 4
        for xa, v in zip(self.coords, self.order.basis):
            for c in range(4):
                out[c] += xa * v[c]
        return tuple(out)

    def is_zero(self) -> bool:
        return not any(self.coords)

    def to_quadratic(self) -> ImQuadInt | None:
        """The same element in Z[i] (O1728) or Z[w] (O0), or an integer for other orders; None if not there."""
        x = self.coords
        kind = self.order.kind
        if kind == O1728 and x[2] == 0 and x[3] == 0:
            return ImQuadInt(GAUSS, x[0], x[1])
        if kind == O0 and x[2] == 0 and x[3] == 0:
            return ImQuadInt(EISEN, x[0], x[1])
        if kind in (OQ, OPRIMEQ) and not any(x[1:]):
            return ImQuadInt(GAUSS, x[0], 0)
        return None

    def __str__(self):
        terms = [f"{c}*{n}" for c, n in zip(self.coords, self.order.names) if c]
        return " + ".join(terms) if terms else "0"


def closed_form_norm(x: QuatElem) -> Fraction:
    """Reduced norm from the completed-square expression of each order."""
    o = x.order
    a, b, c, d = (F(v) for v in x.coords)
    p = o.p
    if o.kind == O1728:
        return (a + c / 2) ** 2 + (b + d / 2) ** 2 + p * (c * c + d * d) / 4
    if o.kind == O0:
        return (a + b / 2) ** 2 + 3 * (b / 2 + c / 3) ** 2 + p * (c * c + 3 * c * d + 3 * d * d) / 3
    q, r = o.q, o.r
    if o.kind == OQ:
        return (a + b / 2) ** 2 + q * (b / 2 + r * d / q) ** 2 + p * c * c / 4 + p * q * (c / 2 + d / q) ** 2
    return (a + b / 2) ** 2 + q * (c + r * d / (2 * q)) ** 2 + p * (q * b * b + d * d) / (4 * q)


def _ldl(qf):
    """d, m with x^T Q x = sum_i d_i (x_i + sum_{j>i} m_ij x_j)^2."""
    n = len(qf)
    d = [F(0)] * n
    m = [[F(0)] * n for _ in range(n)]
    for i in range(n):
        d[i] = qf[i][i] - sum(d[k] * m[k][i] ** 2 for k in range(i))
        for j in range(i + 1, n):
            m[i][j] = (qf[i][j] - sum(d[k] * m[k][i] * m[k][j] for k in range(i))) / d[i]
    return d, m


def enumerate_by_norm(order: QuatOrder, n: int, *, up_to: bool = False) -> list[QuatElem]:
    """All elements of reduced norm exactly n (or at most n with up_to=True), n >= 1."""
    if n < 1:
        raise ValueError("n must be positive")
    d, m = _ldl(order.norm_form)
    bound = F(n)
    found = []
    x = [0, 0, 0, 0]

    def rec(i, remaining):
        if i < 0:
            if up_to or remaining == 0:
                found.append(tuple(x))
            return
        c = sum(m[i][j] * x[j] for j in range(i + 1, 4))
        # d_i (x_i + c)^2 <= remaining
        span = math.sqrt(float(remaining / d[i])) + 1
        lo = math.floor(float(-c) - span)
        hi = math.ceil(float(-c) + span)
        for xi in range(lo, hi + 1):
            term = d[i] * (xi + c) ** 2
            if term <= remaining:
                x[i] = xi
                rec(i - 1, remaining - term)
        x[i] = 0

    rec(3, bound)
    out = [QuatElem(order, t) for t in found if any(t)]
    return sorted(out, key=lambda e: e.coords)
