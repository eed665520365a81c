"""Explicit supersingular curves over F_{p^2} at small p.

E1728: y^2 = x^3 + x with i(x, y) = (-x, u y), u^2 = -1.
E0:    y^2 = x^3 + 1 with w(x, y) = (z x, -y), z a primitive cube root of 1,
       so w = -rho for rho(x, y) = (z x, y) and w^2 = w - 1.

Only ell | p + 1 is supported, so E[ell] lies in E(F_{p^2}) = (Z/(p+1))^2.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
from sympy import isprime, legendre_symbol, multiplicity

from .cases import E0_SQ, E1728_SQ
from .kernels import (
    Diagonal,
    KernelDesc,
    _diag_label,
    _eigen_setup,
    _invariant_lines,
    _nondiag_label,
    canonical_kernel,
    index_line,
)
from .hermitian import RingMat, ring_unit_group, solve_gram_ring
from .modlinalg import nullspace
from .rings import ImQuadInt

CENSUS_P_LIMIT = 200
SEED = 20240101

# ---------------------------------------------------------------- F_{p^2}


class Fp2:
    """F_p[s]/(s^2 - n) with n the smallest positive non-residue mod p."""

    def __init__(self, p: int):
        if not isprime(p) or p == 2:
            raise ValueError("p must be an odd prime")
        self.p = p
        self.n = next(a for a in range(2, p) if legendre_symbol(a, p) == -1)

    def __call__(self, a: int, b: int = 0) -> "Fp2Elem":
        return Fp2Elem(self, a % self.p, b % self.p)

    def __eq__(self, other):
        return isinstance(other, Fp2) and other.p == self.p

    def __hash__(self):
        return hash(("Fp2", self.p))

    def elements(self):
        for a in range(self.p):
            for b in range(self.p):
                yield Fp2Elem(self, a, b)

    def random(self, rng: random.Random) -> "Fp2Elem":
        return Fp2Elem(self, rng.randrange(self.p), rng.randrange(self.p))

    def sqrt(self, z: "Fp2Elem") -> "Fp2Elem | None":
        """A square root, or None for non-squares (Tonelli-Shanks in F_{p^2}^*)."""
        if z.is_zero():
            return z
        q = self.p * self.p - 1
        if z ** (q // 2) != self(1):
            return None
        s, t = 0, q
        while t % 2 == 0:
            s, t = s + 1, t // 2
        nr = self._nonsquare()
        c = nr**t
        x = z ** ((t + 1) // 2)
        b = z**t
        m = s
        while b != self(1):
            k, bb = 0, b
            while bb != self(1):
                bb, k = bb * bb, k + 1
            g = c ** (2 ** (m - k - 1))
            x, c = x * g, g * g
            b, m = b * c, k
        return x

    @cached_property
    def _nonsquare_cache(self):
        q = self.p * self.p - 1
        for a in range(self.p):
            for b in range(1, self.p):
                e = self(a, b)
                if e ** (q // 2) != self(1):
                    return e
        raise AssertionError("no non-square found")

    def _nonsquare(self):
        return self._nonsquare_cache


@dataclass(frozen=True, slots=True)
class Fp2Elem:
    F: Fp2 = field(repr=False, compare=False, hash=False)
    a: int
    b: int

    def _lift(self, o):
        return o if type(o) is Fp2Elem else self.F(o)

    def __add__(self, o):
        o = self._lift(o)
        return Fp2Elem(self.F, (self.a + o.a) % self.F.p, (self.b + o.b) % self.F.p)

    __radd__ = __add__

    def __neg__(self):
        return Fp2Elem(self.F, -self.a % self.F.p, -self.b % self.F.p)

    def __sub__(self, o):
        o = self._lift(o)
        return Fp2Elem(self.F, (self.a - o.a) % self.F.p, (self.b - o.b) % self.F.p)

    def __rsub__(self, o):
        return self._lift(o) - self

    def __mul__(self, o):
        o = self._lift(o)
        p, n = self.F.p, self.F.n
        return Fp2Elem(self.F, (self.a * o.a + n * self.b * o.b) % p, (self.a * o.b + self.b * o.a) % p)

    __rmul__ = __mul__

    def conjugate(self):
        """Frobenius x -> x^p."""
        return Fp2Elem(self.F, self.a, -self.b % self.F.p)

    def norm(self) -> int:
        return (self.a * self.a - self.F.n * self.b * self.b) % self.F.p

    def inverse(self):
        nm = self.norm()
        if nm == 0:
            raise ZeroDivisionError("inverse of 0 in F_{p^2}")
        return self.conjugate() * pow(nm, -1, self.F.p)

    def __truediv__(self, o):
        return self * self._lift(o).inverse()

    def __rtruediv__(self, o):
        return self._lift(o) * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        out, base = self.F(1), self
        while e:
            if e & 1:
                out = out * base
            base, e = base * base, e >> 1
        return out

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def in_base_field(self) -> bool:
        return self.b == 0

    def __str__(self):
        return f"{self.a}+{self.b}s"


# ---------------------------------------------------------------- curves and points

INF = None  # point at infinity


@dataclass(frozen=True, eq=False)
class Curve:
    """y^2 = x^3 + A x + B over F_{p^2}."""

    F: Fp2
    A: Fp2Elem
    B: Fp2Elem
    tag: str = ""
    aut_unit: Fp2Elem | None = None  # u for E1728, z for E0

    def contains(self, P) -> bool:
        if P is INF:
            return True
        x, y = P
        return y * y == x * x * x + self.A * x + self.B

    def neg(self, P):
        return INF if P is INF else (P[0], -P[1])

    def add(self, P, Q):
        if P is INF:
            return Q
        if Q is INF:
            return P
        (x1, y1), (x2, y2) = P, Q
        if x1 == x2:
            if (y1 + y2).is_zero():
                return INF
            m = (3 * x1 * x1 + self.A) / (2 * y1)
        else:
            m = (y2 - y1) / (x2 - x1)
        x3 = m * m - x1 - x2
        return (x3, m * (x1 - x3) - y1)

    def sub(self, P, Q):
        return self.add(P, self.neg(Q))

    def mul(self, k: int, P):
        if k < 0:
            return self.mul(-k, self.neg(P))
        out = INF
        while k:
            if k & 1:
                out = self.add(out, P)
            P, k = self.add(P, P), k >> 1
        return out

    def j_invariant(self) -> Fp2Elem:
        a3 = 4 * self.A**3
        return 1728 * a3 / (a3 + 27 * self.B * self.B)

    def rhs(self, x):
        return x * x * x + self.A * x + self.B

    def random_point(self, rng: random.Random):
        while True:
            x = self.F.random(rng)
            y = self.F.sqrt(self.rhs(x))
            if y is not None:
                return (x, y if rng.random() < 0.5 else -y)

    def count_points(self) -> int:
        """#E(F_{p^2}) by running over every x."""
        p = self.F.p
        total = 1
        for x in self.F.elements():
            r = self.rhs(x)
            if r.is_zero():
                total += 1
            else:
                total += 2 if legendre_symbol(r.norm(), p) == 1 else 0
        return total

    # extra automorphism X (i or w)
    def aut(self, P):
        if P is INF:
            return INF
        x, y = P
        if self.tag == "E1728":
            return (-x, self.aut_unit * y)
        if self.tag == "E0":
            return (self.aut_unit * x, -y)
        raise ValueError("curve has no extra automorphism")

    def endo(self, e: ImQuadInt, P):
        """(a + b X)(P)."""
        return self.add(self.mul(e.a, P), self.mul(e.b, self.aut(P)))


def build_curve(tag: str, p: int) -> Curve:
    F = Fp2(p)
    if tag == "E1728":
        if p % 4 != 3:
            raise ValueError("E1728 is supersingular only for p = 3 mod 4")
        u = F.sqrt(F(-1))
        return Curve(F, F(1), F(0), tag, u)
    if tag == "E0":
        if p % 3 != 2:
            raise ValueError("E0 is supersingular only for p = 2 mod 3")
        r = F.sqrt(F(-3))
        z = (r - 1) / 2  # z^2 + z + 1 = 0
        return Curve(F, F(0), F(1), tag, z)
    raise ValueError(f"unknown curve {tag!r}")


# ---------------------------------------------------------------- Weil pairing


def _miller(E: Curve, n: int, P, X):
    """f_{n,P}(X) with div f = n(P) - (nP) - (n-1)(O)."""
    f = E.F(1)
    T = P
    for bit in bin(n)[3:]:
        f = f * f * _line(E, T, T, X)
        T = E.add(T, T)
        if bit == "1":
            f = f * _line(E, T, P, X)
            T = E.add(T, P)
    return f


def _line(E: Curve, T, R, X):
    """(line through T, R) / (vertical at T + R), evaluated at X."""
    if T is INF or R is INF:
        return E.F(1)
    xx, yx = X
    (x1, y1), (x2, y2) = T, R
    if x1 == x2 and (y1 + y2).is_zero():
        return xx - x1
    if T == R:
        m = (3 * x1 * x1 + E.A) / (2 * y1)
    else:
        m = (y2 - y1) / (x2 - x1)
    x3 = m * m - x1 - x2
    num = yx - y1 - m * (xx - x1)
    den = xx - x3
    if num.is_zero() or den.is_zero():
        raise ZeroDivisionError("evaluation point hits the divisor")
    return num / den


def is_torsion(E: Curve, P, n: int) -> bool:
    return E.mul(n, P) is INF


def weil_pairing(E: Curve, P, Q, n: int, rng: random.Random | None = None, *, aux=None, check: bool = True):
    """e_n(P, Q) by Miller's algorithm, shifting by an auxiliary point S.

    `aux` is tried first; random points are drawn if it hits a divisor.
    """
    if check and not (is_torsion(E, P, n) and is_torsion(E, Q, n)):
        raise ValueError("points must be n-torsion")
    one = E.F(1)
    if P is INF or Q is INF or P == Q:
        return one
    rng = rng or random.Random(SEED)
    for attempt in range(100):
        S = aux if (attempt == 0 and aux is not None) else E.random_point(rng)
        try:
            QS = E.add(Q, S)
            PS = E.sub(P, S)
            if QS is INF or PS is INF:
                continue
            num = _miller(E, n, P, QS) / _miller(E, n, P, S)
            den = _miller(E, n, Q, PS) / _miller(E, n, Q, E.neg(S))
            return num / den
        except ZeroDivisionError:
            continue
    raise RuntimeError("no usable auxiliary point")


# ---------------------------------------------------------------- torsion


def _check_ell(E: Curve, ell: int):
    if not isprime(ell) or (E.F.p + 1) % ell:
        raise ValueError(f"need a prime ell dividing p + 1 = {E.F.p + 1}")


def random_order_ell_point(E: Curve, ell: int, rng: random.Random):
    v = multiplicity(ell, E.F.p + 1)
    cof = (E.F.p + 1) // ell**v
    while True:
        R = E.mul(cof, E.random_point(rng))
        if R is INF:
            continue
        while (nxt := E.mul(ell, R)) is not INF:
            R = nxt
        return R


def torsion_basis(E: Curve, ell: int, seed: int = SEED):
    """(P, Q) generating E[ell], with e(P, Q) a primitive ell-th root of unity."""
    _check_ell(E, ell)
    rng = random.Random(seed)
    P = random_order_ell_point(E, ell, rng)
    while True:
        Q = random_order_ell_point(E, ell, rng)
        if weil_pairing(E, P, Q, ell, rng) != E.F(1):
            return P, Q


class TorsionFrame:
    """E[ell] with a basis and a discrete-log table."""

    def __init__(self, E: Curve, ell: int, basis):
        self.E, self.ell = E, ell
        self.P, self.Q = basis
        self.points = {}
        row = INF
        for i in range(ell):
            pt = row
            for j in range(ell):
                self.points[(i, j)] = pt
                pt = E.add(pt, self.Q)
            row = E.add(row, self.P)
        self.dlog = {pt: ij for ij, pt in self.points.items()}
        if len(self.dlog) != ell * ell:
            raise ValueError("basis is dependent")

    def point(self, v):
        return self.points[(int(v[0]) % self.ell, int(v[1]) % self.ell)]

    def coords(self, R) -> tuple[int, int]:
        return self.dlog[R]

    def matrix(self, f) -> np.ndarray:
        """Matrix of an endomorphism f on this basis (columns are images)."""
        cols = [self.coords(f(self.P)), self.coords(f(self.Q))]
        return np.array(cols, dtype=np.int64).T


@dataclass(frozen=True)
class EigenLines:
    t: int
    L1: tuple[int, int]
    L2: tuple[int, int]
    matrix: np.ndarray = field(repr=False)


def endo_eigenlines(E: Curve, ell: int, frame: TorsionFrame | None = None) -> EigenLines | None:
    """Eigenvalues and eigenlines of X on E[ell] in the frame's basis."""
    frame = frame or TorsionFrame(E, ell, torsion_basis(E, ell))
    m = frame.matrix(E.aut)
    tr, det = int(np.trace(m)), int(round(np.linalg.det(m)))
    roots = [t for t in range(ell) if (t * t - tr * t + det) % ell == 0]
    if not roots:
        return None
    t = min(roots)
    lines = _invariant_lines(m, ell)
    L1 = next(v for v in lines if not ((m @ np.array(v) - t * np.array(v)) % ell).any())
    L2 = next((v for v in lines if v != L1), L1)
    return EigenLines(t, L1, L2, m)


# ---------------------------------------------------------------- concrete census


@dataclass(frozen=True)
class ConcreteCensus:
    case: str
    p: int
    ell: int
    kernels: frozenset
    orbits: frozenset  # frozensets of kernel descriptors
    class_counts: dict
    loops: frozenset
    x_matrix: np.ndarray = field(repr=False)

    @property
    def n_kernels(self) -> int:
        return len(self.kernels)


def _ss_frame(E: Curve, ell: int) -> TorsionFrame:
    """Frame on (S, X S) with S off every eigenline of X."""
    P, Q = torsion_basis(E, ell)
    for S in (P, Q, E.add(P, Q)):
        try:
            return TorsionFrame(E, ell, (S, E.aut(S)))
        except ValueError:
            continue
    raise AssertionError("no S with (S, X S) a basis")


def _subspaces(ell: int):
    """Every 2-dimensional subspace of F_ell^4, as RREF generator pairs."""
    for p1 in range(4):
        for p2 in range(p1 + 1, 4):
            free1 = [c for c in range(p1 + 1, 4) if c != p2]
            free2 = list(range(p2 + 1, 4))
            for vals1 in np.ndindex(*([ell] * len(free1))):
                for vals2 in np.ndindex(*([ell] * len(free2))):
                    r1 = [0] * 4
                    r2 = [0] * 4
                    r1[p1], r2[p2] = 1, 1
                    for c, v in zip(free1, vals1):
                        r1[c] = v
                    for c, v in zip(free2, vals2):
                        r2[c] = v
                    yield r1, r2


def _apply_mat(E: Curve, g: RingMat, pair):
    R1, R2 = pair
    a, b, c, d = g.entries
    return (E.add(E.endo(a, R1), E.endo(b, R2)), E.add(E.endo(c, R1), E.endo(d, R2)))


def concrete_kernel_census(case: str, p: int, ell: int) -> ConcreteCensus:
    """Kernels, orbits, classes and loops of E x E computed from explicit points."""
    tag = {E1728_SQ: "E1728", E0_SQ: "E0"}.get(case)
    if tag is None:
        raise ValueError("concrete census supports E1728Sq and E0Sq")
    if p > CENSUS_P_LIMIT:
        raise ValueError(f"p must be at most {CENSUS_P_LIMIT}")
    E = build_curve(tag, p)
    _check_ell(E, ell)
    fr = _ss_frame(E, ell)
    rng = random.Random(SEED)
    aux = E.random_point(rng)
    pair_cache: dict = {}

    def e(u, v):
        # computed once per unordered pair; e(v, u) = 1 / e(u, v)
        cu, cv = fr.coords(u), fr.coords(v)
        key = (cu, cv) if cu <= cv else (cv, cu)
        if key not in pair_cache:
            a, b = (u, v) if cu <= cv else (v, u)
            pair_cache[key] = weil_pairing(E, a, b, ell, rng, aux=aux, check=False)
        val = pair_cache[key]
        return val if cu <= cv else val.inverse()

    def pt_pair(vec):
        return (fr.point(vec[:2]), fr.point(vec[2:]))

    def desc(pairs) -> KernelDesc:
        return canonical_kernel([list(fr.coords(a)) + list(fr.coords(b)) for a, b in pairs], ell)

    # maximal isotropic subgroups, tested with the product Weil pairing
    kernels = {}
    one = E.F(1)
    for r1, r2 in _subspaces(ell):
        g1, g2 = pt_pair(r1), pt_pair(r2)
        if e(g1[0], g2[0]) * e(g1[1], g2[1]) == one:
            kernels[desc([g1, g2])] = (g1, g2)

    group = ring_unit_group(case)
    orbit_of: dict = {}
    orbits = []
    stab = {}
    for k, gens in kernels.items():
        if k in orbit_of:
            continue
        images = [desc([_apply_mat(E, g, gens[0]), _apply_mat(E, g, gens[1])]) for g in group]
        orb = frozenset(images)
        orbits.append(orb)
        for x in orb:
            orbit_of[x] = orb
            stab[x] = len(group) // len(orb)

    xm = fr.matrix(E.aut)
    setup = _concrete_setup(case, ell, xm)
    counts: dict[str, int] = {}
    for k in kernels:
        lab = _diag_label(setup, k, xm) if isinstance(k, Diagonal) else _nondiag_label(setup, k, stab[k])
        counts[lab] = counts.get(lab, 0) + 1

    loops = set()
    for cls in solve_gram_ring(case, ell):
        m = cls[0]
        blk = np.zeros((4, 4), dtype=np.int64)
        for col, vec in enumerate(np.eye(4, dtype=np.int64)):
            img = _apply_mat(E, m, pt_pair(vec))
            blk[:, col] = list(fr.coords(img[0])) + list(fr.coords(img[1]))
        loops.add(canonical_kernel(nullspace(blk.tolist(), ell), ell))
    return ConcreteCensus(case, p, ell, frozenset(kernels), frozenset(orbits), counts, frozenset(loops), xm)


def _concrete_setup(case, ell, xm):
    """A symbolic setup whose X matrix and eigenlines come from the curve."""
    from dataclasses import replace

    sym = _eigen_setup(case, ell)
    lines = tuple(_invariant_lines(xm, ell))
    return replace(sym, x_matrix=xm, invariant_lines=lines)


def symbolic_census(case: str, ell: int) -> dict:
    """The same summary from the symbolic classifier."""
    from .kernels import analyze, find_loops

    an = analyze(case, ell)
    ks = an.kernels
    orbits: dict[int, set] = {}
    for i, k in enumerate(ks):
        orbits.setdefault(int(an.orbit_id[i]), set()).add(k)
    counts: dict[str, int] = {}
    for lab in an.labels:
        counts[lab] = counts.get(lab, 0) + 1
    return dict(kernels=frozenset(ks), orbits=frozenset(frozenset(o) for o in orbits.values()),
                class_counts=counts, loops=find_loops(an.setup), x_matrix=an.setup.x_matrix)


def census_agrees(c: ConcreteCensus) -> bool:
    s = symbolic_census(c.case, c.ell)
    return (c.kernels == s["kernels"] and c.orbits == s["orbits"] and c.class_counts == s["class_counts"]
            and c.loops == s["loops"] and bool((c.x_matrix % c.ell == s["x_matrix"] % c.ell).all()))


# ---------------------------------------------------------------- Velu


def velu_isogeny(E: Curve, K) -> Curve:
    """Codomain of the separable isogeny with kernel <K>."""
    if K is INF or not E.contains(K):
        raise ValueError("kernel generator must be a nonzero point of E(F_{p^2})")
    pts = []
    R = K
    while R is not INF:
        pts.append(R)
        R = E.add(R, K)
    if not isprime(len(pts) + 1):
        raise ValueError("kernel must have prime order")
    v = w = E.F(0)
    seen = set()
    for Q in pts:
        if Q in seen:
            continue
        seen.update({Q, E.neg(Q)})
        xq, yq = Q
        gx = 3 * xq * xq + E.A
        gy = -2 * yq
        vq = gx if yq.is_zero() else 2 * gx
        uq = gy * gy
        v = v + vq
        w = w + uq + xq * vq
    return Curve(E.F, E.A - 5 * v, E.B - 7 * w)


@dataclass(frozen=True)
class VeluNeighborhood:
    curve: str
    p: int
    ell: int
    neighbors: dict  # j-invariant -> number of kernel lines
    loops: int

    @property
    def vertices(self) -> int:
        return len(self.neighbors)


def velu_neighborhood(tag: str, p: int, ell: int) -> VeluNeighborhood:
    """Codomain j-invariants over all ell + 1 kernel lines of E[ell]."""
    E = build_curve(tag, p)
    _check_ell(E, ell)
    fr = TorsionFrame(E, ell, torsion_basis(E, ell))
    j0 = E.j_invariant()
    hits: dict = {}
    loops = 0
    for i in range(ell + 1):
        j = velu_isogeny(E, fr.point(index_line(i, ell))).j_invariant()
        if j == j0:
            loops += 1
        else:
            hits[(j.a, j.b)] = hits.get((j.a, j.b), 0) + 1
    return VeluNeighborhood(tag, p, ell, hits, loops)
