"""Maximal ell-isotropic subgroups of (E x E')[ell] and the action of Aut(E x E') on them.

Points of E[ell] are coordinate vectors on a basis (S, S*) with S* = X(S),
X = i (Z[i] case) or w (Z[w] case).  A point of (E x E')[ell] is a 4-vector
(P1, P2, Q1, Q2) and the pairing is det(P, P') + det(Q, Q').

A kernel is either Diagonal(K1, K2), a product of two lines, or
NonDiagonal(a, b, c, d): the graph {(P, A P)} of A = [[a, c], [b, d]],
spanned by (S, aS + bS*) and (S*, cS + dS*); isotropy is ad - bc = -1.

Internally every kernel has an index: diagonal kernels first, ordered by
their line indices, then non-diagonal ones in lexicographic order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache

import numpy as np
from sympy import isprime

from .cases import (
    E0_SQ,
    E1728_SQ,
    PAIR_DISTINCT,
    SQUARE_GENERIC,
    IsogenyDegreeD,
    IsogenyDegreeL,
    NoSquareComplementIsogeny,
    Scenario,
    check_case,
)
from .hermitian import CASE_RING, RingMat, ring_unit_group, solve_gram_ring
from .modlinalg import rank, rref
from .rings import EISEN, ImQuadInt, solve_norm_equation

# ---------------------------------------------------------------- descriptors


@dataclass(frozen=True, order=True)
class Diagonal:
    """K1 x K2 with K1, K2 normalized projective points (1, x) or (0, 1)."""

    line1: tuple[int, int]
    line2: tuple[int, int]

    def __str__(self):
        return f"D[{self.line1[0]}:{self.line1[1]}][{self.line2[0]}:{self.line2[1]}]"


@dataclass(frozen=True, order=True)
class NonDiagonal:
    """Graph of A = [[a, c], [b, d]]: generators (S, aS+bS*), (S*, cS+dS*)."""

    a: int
    b: int
    c: int
    d: int

    def __str__(self):
        return f"N({self.a},{self.b},{self.c},{self.d})"


KernelDesc = Diagonal | NonDiagonal


def normalize_line(v, ell: int) -> tuple[int, int]:
    x, y = int(v[0]) % ell, int(v[1]) % ell
    if x:
        return (1, y * pow(x, -1, ell) % ell)
    if y:
        return (0, 1)
    raise ValueError("zero vector is not a line")


def line_index(line, ell: int) -> int:
    return line[1] if line[0] == 1 else ell


def index_line(i: int, ell: int) -> tuple[int, int]:
    return (1, i) if i < ell else (0, 1)


def generators(k: KernelDesc) -> list[list[int]]:
    """Two spanning vectors (P1, P2, Q1, Q2)."""
    if isinstance(k, Diagonal):
        return [[k.line1[0], k.line1[1], 0, 0], [0, 0, k.line2[0], k.line2[1]]]
    return [[1, 0, k.a, k.b], [0, 1, k.c, k.d]]


def pairing(u, v, ell: int) -> int:
    return (u[0] * v[1] - u[1] * v[0] + u[2] * v[3] - u[3] * v[2]) % ell


@dataclass(frozen=True)
class IsotropyResult:
    isotropic: bool
    degenerate: bool = False

    def __bool__(self):
        return self.isotropic


def is_maximal_isotropic(u, v, ell: int) -> IsotropyResult:
    """True iff u, v span a plane on which the pairing vanishes."""
    if rank([list(u), list(v)], ell) < 2:
        return IsotropyResult(False, degenerate=True)
    return IsotropyResult(pairing(u, v, ell) == 0)


def canonical_kernel(vectors, ell: int) -> KernelDesc:
    """KernelDesc of the span of `vectors`, which must be a maximal isotropic plane."""
    red, piv = rref([list(v) for v in vectors], ell)
    if len(piv) != 2:
        raise ValueError(f"span has rank {len(piv)}, expected 2")
    if pairing(red[0], red[1], ell):
        raise ValueError("span is not isotropic")
    if piv == [0, 1]:
        return NonDiagonal(red[0][2], red[0][3], red[1][2], red[1][3])
    # the P-projection has rank <= 1, so the plane is a product of lines
    pvec = next(r[:2] for r in red if any(r[:2]))
    qvec = next(r[2:] for r in red if any(r[2:]))
    k = Diagonal(normalize_line(pvec, ell), normalize_line(qvec, ell))
    if rank(red + generators(k), ell) != 2:
        raise ValueError("isotropic plane with singular projection is not a product")
    return k


def enumerate_kernels(ell: int) -> list[KernelDesc]:
    """All (ell+1)^2 diagonal and ell^3 - ell non-diagonal kernels, in index order."""
    if not isprime(ell):
        raise ValueError(f"ell={ell} must be prime")
    return list(_space(ell).kernels)


# ---------------------------------------------------------------- kernel space


class KernelSpace:
    """Index bookkeeping and vectorized action for a fixed ell."""

    def __init__(self, ell: int):
        self.ell = ell
        n_lines = ell + 1
        self.n_diag = n_lines * n_lines
        diag = [Diagonal(index_line(i, ell), index_line(j, ell)) for i in range(n_lines) for j in range(n_lines)]
        r = np.arange(ell)
        a, b, c, d = np.meshgrid(r, r, r, r, indexing="ij")
        mask = (a * d - b * c + 1) % ell == 0
        quads = np.stack([a[mask], b[mask], c[mask], d[mask]], axis=1)
        nondiag = [NonDiagonal(*map(int, q)) for q in quads]
        self.kernels: tuple[KernelDesc, ...] = tuple(diag + nondiag)
        self.n = len(self.kernels)
        codes = ((quads[:, 0] * ell + quads[:, 1]) * ell + quads[:, 2]) * ell + quads[:, 3]
        self.quad_lookup = np.full(ell**4, -1, dtype=np.int64)
        self.quad_lookup[codes] = np.arange(self.n_diag, self.n)
        gens = np.zeros((self.n, 4, 2), dtype=np.int64)
        for i, k in enumerate(self.kernels):
            u, v = generators(k)
            gens[i, :, 0] = u
            gens[i, :, 1] = v
        self.gens = gens
        self.inv = np.array([0] + [pow(x, -1, ell) for x in range(1, ell)], dtype=np.int64)
        self.index = {k: i for i, k in enumerate(self.kernels)}

    def _line_idx(self, x0, x1):
        ell = self.ell
        return np.where(x0 != 0, x1 * self.inv[x0] % ell, ell)

    def images(self, mats: np.ndarray, subset=None) -> np.ndarray:
        """Index of g(K) for every g in `mats` (shape (m,4,4)) and K in `subset` (default all)."""
        ell = self.ell
        gens = self.gens if subset is None else self.gens[subset]
        img = np.matmul((mats % ell)[:, None], gens[None]) % ell
        B, C = img[..., :2, :], img[..., 2:, :]
        det = (B[..., 0, 0] * B[..., 1, 1] - B[..., 0, 1] * B[..., 1, 0]) % ell
        inv = self.inv[det]
        # A = C adj(B) / det
        a = (C[..., 0, 0] * B[..., 1, 1] - C[..., 0, 1] * B[..., 1, 0]) * inv % ell
        c = (-C[..., 0, 0] * B[..., 0, 1] + C[..., 0, 1] * B[..., 0, 0]) * inv % ell
        b = (C[..., 1, 0] * B[..., 1, 1] - C[..., 1, 1] * B[..., 1, 0]) * inv % ell
        d = (-C[..., 1, 0] * B[..., 0, 1] + C[..., 1, 1] * B[..., 0, 0]) * inv % ell
        nd_idx = self.quad_lookup[((a * ell + b) * ell + c) * ell + d]
        # singular B: the image is a product of lines
        use0 = (B[..., 0, 0] != 0) | (B[..., 1, 0] != 0)
        p0 = np.where(use0, B[..., 0, 0], B[..., 0, 1])
        p1 = np.where(use0, B[..., 1, 0], B[..., 1, 1])
        useq = (C[..., 0, 0] != 0) | (C[..., 1, 0] != 0)
        q0 = np.where(useq, C[..., 0, 0], C[..., 0, 1])
        q1 = np.where(useq, C[..., 1, 0], C[..., 1, 1])
        d_idx = self._line_idx(p0, p1) * (ell + 1) + self._line_idx(q0, q1)
        out = np.where(det != 0, nd_idx, d_idx)
        if (out < 0).any():
            raise AssertionError("action left the set of maximal isotropic subgroups")
        return out


@lru_cache(maxsize=None)
def _space(ell: int) -> KernelSpace:
    return KernelSpace(ell)


# ---------------------------------------------------------------- eigen setup


def _invariant_lines(x: np.ndarray, ell: int) -> list[tuple[int, int]]:
    out = []
    for i in range(ell + 1):
        v = index_line(i, ell)
        w = x @ np.array(v) % ell
        if (v[0] * w[1] - v[1] * w[0]) % ell == 0:
            out.append(v)
    return out


def _roots(poly, ell):
    return [t for t in range(ell) if sum(c * t**k for k, c in enumerate(poly)) % ell == 0]


@dataclass(frozen=True, eq=False)
class EigenSetup:
    case: str
    ell: int
    t: int | None
    lam: ImQuadInt | None
    x_matrix: np.ndarray | None = field(repr=False)
    invariant_lines: tuple[tuple[int, int], ...]
    L1: tuple[int, int] | None
    L2: tuple[int, int] | None
    ramified: bool
    group: tuple[RingMat, ...] = field(repr=False)

    @cached_property
    def operator_matrices(self) -> np.ndarray:
        """Shape (|G|, 4, 4): each unit acting on (E x E')[ell]."""
        return np.stack([g.block(self.ell) for g in self.group])

    @cached_property
    def x_bar(self) -> np.ndarray | None:
        """Matrix of the conjugate of X, tr(X) - X."""
        x = self.x_matrix
        return None if x is None else (np.trace(x) * np.eye(2, dtype=np.int64) - x) % self.ell

    @property
    def space(self) -> KernelSpace:
        return _space(self.ell)

    @property
    def has_eigen(self) -> bool:
        return self.L1 is not None


def eigen_setup(case: str, ell: int, p: int | None = None) -> EigenSetup:
    check_case(case)
    if not isprime(ell):
        raise ValueError(f"ell={ell} must be prime")
    if p is not None and p == ell:
        raise ValueError("ell must differ from the characteristic p")
    return _eigen_setup(case, ell)


@lru_cache(maxsize=None)
def _eigen_setup(case: str, ell: int) -> EigenSetup:
    group = ring_unit_group(case)
    ring = CASE_RING[case]
    xm = None
    lines: list = []
    if case in (E1728_SQ, E0_SQ):
        xm = ImQuadInt(ring, 0, 1).operator(ell)
        lines = _invariant_lines(xm, ell)
    poly = (1, -1, 1) if ring == EISEN else (1, 0, 1)
    roots = _roots(poly, ell)
    t = min(roots) if roots else None
    ramified = len(roots) == 1
    lam = L1 = L2 = None
    if t is not None and case in (E1728_SQ, E0_SQ):
        sols, canon = solve_norm_equation(ring, ell)
        cands = [canon, canon.conjugate()]
        lam = next(x for x in cands if (x.a + x.b * t) % ell == 0)
        # L1 = ker(lam) is the t-eigenline of X; L2 the other one
        L1 = next(v for v in lines if not ((xm @ np.array(v) - t * np.array(v)) % ell).any())
        L2 = next((v for v in lines if v != L1), L1)
    return EigenSetup(case, ell, t, lam, xm, tuple(lines), L1, L2, ramified, group)


# ---------------------------------------------------------------- action and orbits


def act(setup: EigenSetup, g, k: KernelDesc) -> KernelDesc:
    """g(K) for g a RingMat (or its 4x4 matrix) from the setup's group."""
    ell = setup.ell
    m = g.block(ell) if isinstance(g, RingMat) else np.asarray(g) % ell
    sp = setup.space
    return sp.kernels[int(sp.images(m[None], [sp.index[k]])[0, 0])]


@dataclass(frozen=True)
class OrbitInfo:
    representative: KernelDesc
    orbit: frozenset
    stabilizer_order: int
    class_label: str


@dataclass(frozen=True, eq=False)
class Analysis:
    """Everything derived from (case, ell): action table, orbits, labels."""

    setup: EigenSetup
    table: np.ndarray = field(repr=False)  # table[g, k] = index of g(K)
    orbit_id: np.ndarray = field(repr=False)  # smallest index in the orbit
    stabilizer: np.ndarray = field(repr=False)
    labels: tuple[str, ...]

    @property
    def kernels(self):
        return self.setup.space.kernels


def _diag_label(setup: EigenSetup, k: Diagonal, x: np.ndarray | None) -> str:
    ell = setup.ell
    if setup.case == PAIR_DISTINCT:
        return "DD"
    if setup.case == SQUARE_GENERIC:
        return "DD1" if k.line1 == k.line2 else "DD2"
    ls = setup.invariant_lines
    in1, in2 = k.line1 in ls, k.line2 in ls
    if in1 and in2:
        return "Da" if k.line1 == k.line2 else "Db"
    if in1 != in2:
        return "Dc"
    v = np.array(k.line1)
    near = {k.line1, normalize_line(x @ v % ell, ell), normalize_line(setup.x_bar @ v % ell, ell)}
    return "Dd" if k.line2 in near else "De"


def _nondiag_label(setup: EigenSetup, k: NonDiagonal, stab: int) -> str:
    ell = setup.ell
    A = np.array([[k.a, k.c], [k.b, k.d]], dtype=np.int64)
    if setup.case == PAIR_DISTINCT:
        return "NN"
    if setup.case == SQUARE_GENERIC:
        if k.b == 0 and k.c == 0 and k.a == k.d and (k.a * k.a + 1) % ell == 0:
            return "NN1"
        return "NN2" if (k.a + k.d) % ell == 0 else "NN3"
    x, xbar = setup.x_matrix, setup.x_bar
    if not ((A @ x - x @ A) % ell).any():
        return "Na"
    if not ((A @ x - xbar @ A) % ell).any():
        return "Nb"
    return "Nd" if stab == 2 else "Nc"


def analyze(case: str, ell: int) -> Analysis:
    check_case(case)
    return _analyze(case, ell)


@lru_cache(maxsize=None)
def _analyze(case: str, ell: int) -> Analysis:
    setup = _eigen_setup(case, ell)
    sp = setup.space
    table = sp.images(setup.operator_matrices)
    orbit_id = table.min(axis=0)
    stabilizer = (table == np.arange(sp.n)[None, :]).sum(axis=0)
    labels = []
    for i, k in enumerate(sp.kernels):
        if isinstance(k, Diagonal):
            labels.append(_diag_label(setup, k, setup.x_matrix))
        else:
            labels.append(_nondiag_label(setup, k, int(stabilizer[i])))
    return Analysis(setup, table, orbit_id, stabilizer, tuple(labels))


def orbit_decompose(setup: EigenSetup, kernels=None) -> list[OrbitInfo]:
    an = _analyze(setup.case, setup.ell)
    sp = setup.space
    idx = range(sp.n) if kernels is None else sorted({sp.index[k] for k in kernels})
    groups: dict[int, set] = {}
    for i in idx:
        groups.setdefault(int(an.orbit_id[i]), set()).add(i)
    out = []
    for rep, members in sorted(groups.items()):
        full = set(np.flatnonzero(an.orbit_id == rep).tolist())
        out.append(OrbitInfo(sp.kernels[rep], frozenset(sp.kernels[j] for j in full),
                             int(an.stabilizer[rep]), an.labels[rep]))
    return out


def classify(setup: EigenSetup, kernels=None) -> dict[KernelDesc, str]:
    an = _analyze(setup.case, setup.ell)
    ks = setup.space.kernels if kernels is None else kernels
    return {k: an.labels[setup.space.index[k]] for k in ks}


# ---------------------------------------------------------------- loops


def _require_scenario(setup: EigenSetup, scenario):
    if setup.case == PAIR_DISTINCT and scenario is None:
        raise ValueError("PairDistinct needs a scenario (none, ell, or d=<int>)")


def find_loops(setup: EigenSetup, scenario: Scenario | None = None) -> frozenset:
    """Kernels of loops, from the class labels (square cases) or the scenario (PairDistinct)."""
    _require_scenario(setup, scenario)
    ell = setup.ell
    an = _analyze(setup.case, ell)
    ks = setup.space.kernels
    if setup.case in (E1728_SQ, E0_SQ):
        return frozenset(k for k, lab in zip(ks, an.labels) if lab in ("Da", "Db", "Na"))
    if setup.case == SQUARE_GENERIC:
        return frozenset(k for k, lab in zip(ks, an.labels) if lab == "NN1")
    if isinstance(scenario, NoSquareComplementIsogeny):
        return frozenset()
    if isinstance(scenario, IsogenyDegreeL):
        # ker(phi) x ker(phi^); without a concrete phi both lines sit at [1:0]
        return frozenset({Diagonal((1, 0), (1, 0))})
    if isinstance(scenario, IsogenyDegreeD):
        a = scenario.root(ell)
        # E' basis (phi S, phi S*/d): phi acts as diag(1, d); kernels are graphs of -+phi/a
        ai = pow(a, -1, ell)
        d = scenario.d
        return frozenset(
            canonical_kernel([[1, 0, s * ai, 0], [0, 1, 0, s * d * ai]], ell) for s in (1, -1)
        )
    raise TypeError(f"unknown scenario {scenario!r}")


def gram_loop_kernels(case: str, ell: int) -> frozenset:
    """Kernels of the degree-ell Gram solutions over Z[i]/Z[w] (independent of the class labels)."""
    out = set()
    for cls in solve_gram_ring(case, ell):
        for m in cls:
            out.add(matrix_kernel(m, ell))
    return frozenset(out)


def matrix_kernel(m: RingMat, ell: int) -> KernelDesc:
    """ker M on (E x E')[ell] for a degree-ell loop M."""
    from .modlinalg import nullspace

    basis = nullspace(m.block(ell).tolist(), ell)
    return canonical_kernel(basis, ell)


# ---------------------------------------------------------------- eigenline intersections and vertices


def kerg_dim(setup: EigenSetup, k: KernelDesc, which: int) -> int:
    """dim K intersect (L_i x L_i)."""
    if not setup.has_eigen:
        raise ValueError("no eigenlines at this ell")
    line = setup.L1 if which == 1 else setup.L2
    w = [[line[0], line[1], 0, 0], [0, 0, line[0], line[1]]]
    return 4 - rank(generators(k) + w, setup.ell)


def merge_partner(m_block: np.ndarray, k: KernelDesc, ell: int) -> KernelDesc | None:
    """K' with (E x E')/K = (E x E')/K' through M = alpha^ beta, or None if M does not kill K."""
    gens = [np.array(v, dtype=object) for v in generators(k)]
    m = np.array(m_block, dtype=object)
    imgs = [m.dot(v) for v in gens]
    if any(x % ell for im in imgs for x in im):
        return None
    vecs = [[int(x // ell) % ell for x in im] for im in imgs]
    vecs += [[int(x) % ell for x in m[:, j]] for j in range(4)]
    return canonical_kernel(vecs, ell)


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        a, b = self.find(a), self.find(b)
        if a != b:
            self.parent[max(a, b)] = min(a, b)


@dataclass(frozen=True)
class VertexGroup:
    kernels: tuple[KernelDesc, ...]
    orbits: int
    label: str

    @property
    def multiplicity(self) -> int:
        return len(self.kernels)


def merge_matrices(case: str, ell: int, *, all_gram: bool = False) -> list[RingMat]:
    """lambda N and conj(lambda) N for degree-ell loops N, or every degree-ell^2 Gram class."""
    if case not in (E1728_SQ, E0_SQ):
        return []
    if all_gram:
        return [cls[0] for cls in solve_gram_ring(case, ell * ell)]
    sols = solve_norm_equation(CASE_RING[case], ell)[1]
    if sols is None:
        return []
    out = []
    for lam in {sols, sols.conjugate()}:
        for cls in solve_gram_ring(case, ell):
            out.append(cls[0] * lam)
    return out


def vertex_partition(setup: EigenSetup, scenario: Scenario | None = None, *, all_gram: bool = False) -> list[VertexGroup]:
    """Non-loop kernels grouped by target vertex.

    G-orbits always share a target.  For E1728Sq/E0Sq two orbits also share one
    when a degree-ell^4 loop lambda N (N a degree-ell loop) factors through both;
    `all_gram=True` uses every solution of M^+ M = ell^2 I instead (slower oracle).
    """
    _require_scenario(setup, scenario)
    ell = setup.ell
    an = _analyze(setup.case, ell)
    sp = setup.space
    loops = {sp.index[k] for k in find_loops(setup, scenario)}
    uf = _UnionFind(sp.n)
    for i in range(sp.n):
        uf.union(i, int(an.orbit_id[i]))
    for m in merge_matrices(setup.case, ell, all_gram=all_gram):
        blk = m.block()
        if not (blk % ell).any():
            continue  # M = ell g only relates K to g(K)
        killed = np.flatnonzero(~((np.matmul(blk % ell, sp.gens) % ell).any(axis=(1, 2))))
        for i in killed.tolist():
            j = sp.index[merge_partner(blk, sp.kernels[i], ell)]
            if (i in loops) != (j in loops):
                raise AssertionError(f"merge joins a loop with a non-loop: {sp.kernels[i]} ~ {sp.kernels[j]}")
            uf.union(i, j)
    groups: dict[int, list[int]] = {}
    for i in range(sp.n):
        if i not in loops:
            groups.setdefault(uf.find(i), []).append(i)
    out = []
    for _, members in sorted(groups.items()):
        labs = sorted({an.labels[i] for i in members})
        norb = len({int(an.orbit_id[i]) for i in members})
        out.append(VertexGroup(tuple(sp.kernels[i] for i in members), norb, "+".join(labs)))
    return out
