"""The two published Aut(E1728 x E1728) action tables, as expected values."""

from itertools import product

import numpy as np

from superspecial.cases import E1728_SQ
from superspecial.hermitian import RingMat
from superspecial.kernels import Diagonal, NonDiagonal, act, eigen_setup, enumerate_kernels, normalize_line
from superspecial.rings import GAUSS

I, MI = (0, 1), (0, -1)


def quad(a, b, c, d, ell):
    return NonDiagonal(a % ell, b % ell, c % ell, d % ell)


# g -> image quadruple of (a, b, c, d)
QUAD_TABLE = [
    ([[1, 0], [0, -1]], lambda a, b, c, d: (-a, -b, -c, -d)),
    ([[I, 0], [0, I]], lambda a, b, c, d: (d, -c, -b, a)),
    ([[I, 0], [0, MI]], lambda a, b, c, d: (-d, c, b, -a)),
    ([[0, 1], [-1, 0]], lambda a, b, c, d: (d, -b, -c, a)),
    ([[0, 1], [1, 0]], lambda a, b, c, d: (-d, b, c, -a)),
    ([[0, I], [I, 0]], lambda a, b, c, d: (-a, -c, -b, -d)),
    ([[0, I], [MI, 0]], lambda a, b, c, d: (a, c, b, d)),
    ([[1, 0], [0, I]], lambda a, b, c, d: (-b, a, -d, c)),
    ([[1, 0], [0, MI]], lambda a, b, c, d: (b, -a, d, -c)),
    ([[I, 0], [0, 1]], lambda a, b, c, d: (-c, -d, a, b)),
    ([[I, 0], [0, -1]], lambda a, b, c, d: (c, d, -a, -b)),
    ([[0, I], [1, 0]], lambda a, b, c, d: (-c, a, -d, b)),
    ([[0, I], [-1, 0]], lambda a, b, c, d: (c, -a, d, -b)),
    ([[0, 1], [I, 0]], lambda a, b, c, d: (-b, -d, a, c)),
    ([[0, 1], [MI, 0]], lambda a, b, c, d: (b, d, -a, -c)),
]


def quadruple_table_holds(ell: int) -> bool:
    s = eigen_setup(E1728_SQ, ell)
    eye = RingMat.of(GAUSS, [[1, 0], [0, 1]])
    for k in enumerate_kernels(ell):
        if isinstance(k, Diagonal):
            continue
        if act(s, eye, k) != k:
            return False
        for rows, f in QUAD_TABLE:
            if act(s, RingMat.of(GAUSS, rows), k) != quad(*f(k.a, k.b, k.c, k.d), ell):
                return False
    return True


def diagonal_table_holds(ell: int) -> bool:
    """diag(u1, u2) -> u1(K1) x u2(K2) and antidiag(u1, u2) -> u1(K2) x u2(K1), units +-1, +-i.

    The stated row for antidiag(+-i, +-i) reads i(K1) x i(K2); the swapped form is asserted.
    """
    s = eigen_setup(E1728_SQ, ell)

    def image(u, line):
        m = np.eye(2, dtype=np.int64) if u == 1 else s.x_matrix
        return normalize_line(m @ np.array(line) % ell, ell)

    for k in enumerate_kernels(ell):
        if not isinstance(k, Diagonal):
            continue
        for u1, u2, s1, s2 in product([1, I], [1, I], [1, -1], [1, -1]):
            e1 = s1 if u1 == 1 else (0, s1)
            e2 = s2 if u2 == 1 else (0, s2)
            if act(s, RingMat.of(GAUSS, [[e1, 0], [0, e2]]), k) != Diagonal(image(u1, k.line1), image(u2, k.line2)):
                return False
            if act(s, RingMat.of(GAUSS, [[0, e1], [e2, 0]]), k) != Diagonal(image(u1, k.line2), image(u2, k.line1)):
                return False
    return True
