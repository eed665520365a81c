"""2x2 matrices over quaternion orders: unit groups, Gram solutions and degree-ell^4 loops.

A loop of degree m on E x E' is a matrix M with M^+ M = m I, up to left
multiplication by the unit group G.  When the characteristic is large
compared with m, the entries of M lie in Z[i] (resp. Z[w]), so the
quadratic-ring route `solve_gram_ring` is the working tool for symbolic
computations; `solve_gram` goes through the quaternion order itself.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from functools import lru_cache
from itertools import product

import numpy as np
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form

from .cases import E0_SQ, E1728_SQ, PAIR_DISTINCT, SQUARE_GENERIC, check_case
from .quaternion import O0, O1728, OPRIMEQ, OQ, QuatElem, QuatOrder, enumerate_by_norm, make_order
from .rings import EISEN, GAUSS, ImQuadInt, solve_norm_equation

DEFAULT_PRIMES = {E1728_SQ: 103, E0_SQ: 101, PAIR_DISTINCT: 103, SQUARE_GENERIC: 103}
CASE_RING = {E1728_SQ: GAUSS, E0_SQ: EISEN, PAIR_DISTINCT: GAUSS, SQUARE_GENERIC: GAUSS}


class PreconditionError(ValueError):
    pass


# ---------------------------------------------------------------- matrices


@dataclass(frozen=True)
class Mat2Quat:
    """[[e0, e1], [e2, e3]] with entries in one quaternion order."""

    order: QuatOrder
    entries: tuple[QuatElem, QuatElem, QuatElem, QuatElem]

    @classmethod
    def of(cls, order: QuatOrder, rows) -> "Mat2Quat":
        flat = [x if isinstance(x, QuatElem) else order.one() * int(x) for r in rows for x in r]
        return cls(order, tuple(flat))

    def __mul__(self, other: "Mat2Quat") -> "Mat2Quat":
        a, b, c, d = self.entries
        e, f, g, h = other.entries
        return Mat2Quat(self.order, (a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h))

    def conj_transpose(self) -> "Mat2Quat":
        a, b, c, d = (x.conjugate() for x in self.entries)
        return Mat2Quat(self.order, (a, c, b, d))

    def is_scalar(self, m: int) -> bool:
        a, b, c, d = self.entries
        return b.is_zero() and c.is_zero() and a.coords == (m, 0, 0, 0) and d.coords == (m, 0, 0, 0)

    def key(self):
        return tuple(x.coords for x in self.entries)

    def to_ring(self) -> "RingMat":
        """The same matrix over Z[i] or Z[w]; fails if an entry leaves that subring."""
        ring = self.order.quadratic_subring() or GAUSS
        out = []
        for x in self.entries:
            y = x.to_quadratic()
            if y is None:
                raise PreconditionError(f"entry {x} is not in the quadratic subring")
            out.append(ImQuadInt(ring, y.a, y.b))
        return RingMat(ring, tuple(out))

    def __str__(self):
        a, b, c, d = self.entries
        return f"[[{a}, {b}], [{c}, {d}]]"


@dataclass(frozen=True, order=True)
class RingMat:
    """[[a, b], [c, d]] over Z[i] or Z[w]."""

    ring: str
    entries: tuple[ImQuadInt, ImQuadInt, ImQuadInt, ImQuadInt]

    @classmethod
    def of(cls, ring: str, rows) -> "RingMat":
        flat = []
        for r in rows:
            for x in r:
                if isinstance(x, ImQuadInt):
                    flat.append(x)
                elif isinstance(x, tuple):
                    flat.append(ImQuadInt(ring, *x))
                else:
                    flat.append(ImQuadInt(ring, int(x), 0))
        return cls(ring, tuple(flat))

    def __mul__(self, other):
        if isinstance(other, (int, ImQuadInt)):
            return RingMat(self.ring, tuple(other * x for x in self.entries))
        a, b, c, d = self.entries
        e, f, g, h = other.entries
        return RingMat(self.ring, (a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h))

    def __rmul__(self, other):
        if isinstance(other, (int, ImQuadInt)):
            return self * other
        return NotImplemented

    def conj_transpose(self) -> "RingMat":
        a, b, c, d = (x.conjugate() for x in self.entries)
        return RingMat(self.ring, (a, c, b, d))

    def gram(self) -> "RingMat":
        return self.conj_transpose() * self

    def is_scalar(self, m: int) -> bool:
        a, b, c, d = self.entries
        one = ImQuadInt(self.ring, m, 0)
        return a == one and d == one and b.is_zero() and c.is_zero()

    def key(self):
        return tuple((x.a, x.b) for x in self.entries)

    def block(self, modulus: int | None = None) -> np.ndarray:
        """4x4 integer action on (P, Q) with both factors in the basis (S, X S)."""
        a, b, c, d = (x.operator() for x in self.entries)
        m = np.block([[a, b], [c, d]])
        return m % modulus if modulus else m

    def __str__(self):
        a, b, c, d = self.entries
        return f"[[{a}, {b}], [{c}, {d}]]"


def conj_transpose(m):
    return m.conj_transpose()


# ---------------------------------------------------------------- unit groups


@dataclass(frozen=True)
class UnitGroup:
    case: str
    order: QuatOrder
    elements: tuple[Mat2Quat, ...]

    def __len__(self):
        return len(self.elements)

    def ring_matrices(self) -> tuple[RingMat, ...]:
        return tuple(g.to_ring() for g in self.elements)


def default_order(case: str, p: int | None = None, q: int | None = None, kind: str | None = None) -> QuatOrder:
    """The endomorphism order of the first factor for `case`."""
    check_case(case)
    p = p or DEFAULT_PRIMES[case]
    if case == E1728_SQ:
        return make_order(O1728, p)
    if case == E0_SQ:
        return make_order(O0, p)
    return make_order(kind or OQ, p, q)


def unit_group(case: str, p: int | None = None, q: int | None = None, kind: str | None = None) -> UnitGroup:
    """Aut(E x E'): all g in M_2 with g^+ g = I, searched over unit-or-zero entries.

    Columns of a unitary g have norms summing to 1, so every entry is a unit or 0.
    For PairDistinct the factors are not isomorphic: off-diagonal entries vanish,
    Aut(E) comes from the order and Aut(E') = {+-1} since j(E') is not 0 or 1728.
    """
    order = default_order(case, p, q, kind)
    us = enumerate_by_norm(order, 1)
    one = order.one()
    if case == PAIR_DISTINCT:
        zero = order.zero()
        elems = [Mat2Quat(order, (u, zero, zero, s)) for u in us for s in (one, -one)]
    else:
        cands = us + [order.zero()]
        elems = []
        for e in product(cands, repeat=4):
            g = Mat2Quat(order, e)
            if (g.conj_transpose() * g).is_scalar(1):
                elems.append(g)
    elems.sort(key=Mat2Quat.key)
    return UnitGroup(case, order, tuple(elems))


@lru_cache(maxsize=None)
def ring_unit_group(case: str) -> tuple[RingMat, ...]:
    """Unit group as matrices over Z[i]/Z[w]; independent of p once p > 3."""
    return unit_group(case).ring_matrices()


# ---------------------------------------------------------------- Gram equation


def _check_gram_precondition(order: QuatOrder, m: int):
    p, q = order.p, order.q
    if order.kind == O1728 and not p > 4 * m:
        raise PreconditionError(f"need p > 4m for O1728, got p={p}, m={m}")
    if order.kind == O0 and not p > 3 * m:
        raise PreconditionError(f"need p > 3m for O0, got p={p}, m={m}")
    if order.kind == OQ and not (q > 4 * m and p > q * m):
        raise PreconditionError(f"need q > 4m and p > qm for OQ, got p={p}, q={q}, m={m}")
    if order.kind == OPRIMEQ and not (q > m and p > 4 * q * m):
        raise PreconditionError(f"need q > m and p > 4qm for OPRIMEQ, got p={p}, q={q}, m={m}")


def _group_classes(sols, group, key):
    """Partition `sols` into left classes {gM}, each class sorted, classes sorted by representative."""
    seen = {}
    for s in sols:
        k = key(s)
        if k in seen:
            continue
        cls = {key(g * s): g * s for g in group}
        rep = max(cls)
        for kk in cls:
            seen[kk] = rep
    classes = defaultdict(list)
    for s in sols:
        classes[seen[key(s)]].append(s)
    return [tuple(sorted(v, key=key)) for _, v in sorted(classes.items())]


def solve_gram(order: QuatOrder, case: str, m: int) -> list[tuple[Mat2Quat, ...]]:
    """All M in M_2(order) with M^+ M = m I, grouped into left-unit classes."""
    check_case(case)
    if case == PAIR_DISTINCT:
        raise PreconditionError("Gram solving needs both factors in one order; PairDistinct has none")
    if m < 1:
        raise ValueError("m must be positive")
    _check_gram_precondition(order, m)
    by_norm = defaultdict(list)
    for x in enumerate_by_norm(order, m, up_to=True):
        by_norm[x.reduced_norm()].append(x)
    zero = order.zero()
    by_norm[0] = [zero]
    sols = []
    # rows (a, b), (c, d): Nrd a + Nrd b = m, Nrd c = Nrd b, Nrd d = Nrd a, a c^ + b d^ = 0
    for na in range(m + 1):
        nb = m - na
        for a in by_norm[na]:
            for b in by_norm[nb]:
                if nb == 0:
                    sols.extend(Mat2Quat(order, (a, b, zero, d)) for d in by_norm[m])
                    continue
                for c in by_norm[nb]:
                    # d^ = -b^{-1} a c^  =>  d = -c a^ b / Nrd b
                    num = c * a.conjugate() * b
                    if any(x % nb for x in num.coords):
                        continue
                    d = QuatElem(order, tuple(-x // nb for x in num.coords))
                    if d.reduced_norm() == na and (a * c.conjugate() + b * d.conjugate()).is_zero():
                        sols.append(Mat2Quat(order, (a, b, c, d)))
    sols = [s for s in sols if (s.conj_transpose() * s).is_scalar(m)]
    group = unit_group(case, order.p, order.q, order.kind).elements
    return _group_classes(sols, group, Mat2Quat.key)


@lru_cache(maxsize=None)
def _ring_elements_by_norm(ring: str, m: int):
    out = {0: [ImQuadInt(ring, 0, 0)]}
    for k in range(1, m + 1):
        out[k] = solve_norm_equation(ring, k)[0]
    return out


@lru_cache(maxsize=None)
def solve_gram_ring(case: str, m: int) -> tuple[tuple[RingMat, ...], ...]:
    """Gram solutions over Z[i]/Z[w] (the large-p regime), grouped into left-unit classes."""
    check_case(case)
    if case == PAIR_DISTINCT:
        raise PreconditionError("Gram solving needs both factors in one order; PairDistinct has none")
    ring = CASE_RING[case]
    by_norm = _ring_elements_by_norm(ring, m)
    if case == SQUARE_GENERIC:
        by_norm = {k: [x for x in v if x.b == 0] for k, v in by_norm.items()}
    zero = ImQuadInt(ring, 0, 0)
    sols = []
    for na in range(m + 1):
        nb = m - na
        for a in by_norm[na]:
            for b in by_norm[nb]:
                if nb == 0:
                    sols.extend(RingMat(ring, (a, b, zero, d)) for d in by_norm[m])
                    continue
                for c in by_norm[nb]:
                    # commutative: d = -c a^ / b^
                    d = (-(c * a.conjugate())).exact_div(b.conjugate())
                    if d is not None:
                        sols.append(RingMat(ring, (a, b, c, d)))
    sols = [s for s in sols if s.gram().is_scalar(m)]
    return tuple(_group_classes(sols, ring_unit_group(case), RingMat.key))


# ---------------------------------------------------------------- degree ell^4 loops

CASE_I, CASE_II, CASE_III = "I", "II", "III"


@dataclass(frozen=True)
class L4Loop:
    case: str
    invariant_factors: tuple[int, int, int, int]


def expected_factors(tag: str, ell: int) -> tuple[int, int, int, int]:
    """Generic kernel shape of each case; lambda^2 I and conj(lambda)^2 I are Case III with shape (1,1,l^2,l^2)."""
    return {
        CASE_I: (ell, ell, ell, ell),
        CASE_II: (1, 1, ell * ell, ell * ell),
        CASE_III: (1, ell, ell, ell * ell),
    }[tag]


def kernel_invariants(m: RingMat) -> tuple[int, ...]:
    """Invariant factors of the 4x4 integer action, i.e. the shape of ker M on the l-adic lattice."""
    snf = smith_normal_form(Matrix(m.block().tolist()), domain=ZZ)
    return tuple(sorted(abs(int(snf[i, i])) for i in range(4)))


def classify_l4_loop(m, ell: int) -> L4Loop:
    """Case I (M/ell unitary), III (M = lambda M' with M' a degree-ell loop) or II."""
    if isinstance(m, Mat2Quat):
        m = m.to_ring()
    if not m.gram().is_scalar(ell * ell):
        raise ValueError(f"{m} does not satisfy M^+ M = ell^2 I")
    ell_elem = ImQuadInt(m.ring, ell, 0)
    if all(ell_elem.divides(x) for x in m.entries):
        tag = CASE_I
    else:
        primes = solve_norm_equation(m.ring, ell)[0]
        tag = CASE_II
        for lam in primes:
            if all(lam.divides(x) for x in m.entries):
                tag = CASE_III
                break
    return L4Loop(tag, kernel_invariants(m))
