"""Small dense linear algebra over F_p on Python ints."""

from __future__ import annotations


def rref(rows, p):
    """Reduced row echelon form of a list of rows mod p; returns (rows, pivot columns)."""
    m = [[x % p for x in r] for r in rows]
    pivots = []
    r = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = pow(m[r][c], -1, p)
        m[r] = [x * inv % p for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [(x - f * y) % p for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return [row for row in m[:r]], pivots


def rank(rows, p) -> int:
    return len(rref(rows, p)[1]) if rows else 0


def nullspace(matrix, p):
    """Basis (list of vectors) of {x : matrix x = 0} mod p."""
    ncols = len(matrix[0])
    red, pivots = rref(matrix, p)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for row, pc in zip(red, pivots):
            v[pc] = (-row[f]) % p
        basis.append(v)
    return basis


def mat_vec(m, v, mod=None):
    out = [sum(a * b for a, b in zip(row, v)) for row in m]
    return [x % mod for x in out] if mod else out
