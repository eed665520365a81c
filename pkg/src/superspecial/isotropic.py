"""Maximal isotropic subgroups of (Z/ell^n)^4 under the standard symplectic pairing."""

from __future__ import annotations

from fractions import Fraction
from itertools import product


ORACLE_LIMIT = 9


def isotropic_count(ell: int, n: int) -> int:
    """Closed-form count of maximal isotropic subgroups of (Z/ell^n)^4."""
    if n < 1:
        raise ValueError("n must be positive")
    val = Fraction(ell) ** (2 * n - 3) * (ell**2 + 1) * (ell + 1) * (ell**n + Fraction(ell ** (n - 1) - 1, ell - 1))
    assert val.denominator == 1
    return int(val)


def _form(u, v, mod):
    return (u[0] * v[2] - u[2] * v[0] + u[1] * v[3] - u[3] * v[1]) % mod


def _span(gens, mod):
    """All elements of the subgroup generated by `gens` in (Z/mod)^4."""
    seen = {(0, 0, 0, 0)}
    frontier = [(0, 0, 0, 0)]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = tuple((a + b) % mod for a, b in zip(x, g))
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(seen)


def subgroup_type(sub, mod) -> tuple[int, ...]:
    """Invariant factors (> 1) of a subgroup of (Z/ell^n)^4, largest first.

    The number of cyclic factors of order >= ell^k is log_ell |H[ell^k]| / |H[ell^(k-1)]|.
    """
    ell = next(d for d in range(2, mod + 1) if mod % d == 0)
    sizes = [1]
    e = ell
    while e <= mod:
        sizes.append(sum(1 for x in sub if not any((e * c) % mod for c in x)))
        e *= ell
    at_least = []
    for a, b in zip(sizes, sizes[1:]):
        r, q = 0, b // a
        while q > 1:
            q //= ell
            r += 1
        at_least.append(r)
    at_least.append(0)
    factors = []
    for k in range(len(at_least) - 1, 0, -1):
        factors += [ell**k] * (at_least[k - 1] - at_least[k])
    return tuple(factors)


def isotropic_enumerate_oracle(ell: int, n: int, *, all_shapes: bool = False) -> list[frozenset]:
    """Brute force: grow isotropic subgroups one generator at a time and keep those of order ell^(2n).

    Only the shapes of `allowed_types` are returned unless `all_shapes` is set;
    for n > 1 that drops E[ell]^2-like groups such as the ell-torsion (Z/ell)^4.
    """
    mod = ell**n
    if mod > ORACLE_LIMIT:
        raise ValueError(f"oracle limited to ell^n <= {ORACLE_LIMIT}, got {mod}")
    elems = [v for v in product(range(mod), repeat=4) if any(v)]
    target = mod * mod
    found = set()
    start = frozenset({(0, 0, 0, 0)})
    layer = {start: ()}
    while layer:
        nxt = {}
        for sub, gens in layer.items():
            for v in elems:
                if v in sub or any(_form(v, g, mod) for g in gens):
                    continue
                # v must pair trivially with the whole subgroup; generators suffice by bilinearity
                new = _span(list(gens) + [v], mod)
                if len(new) > target:
                    continue
                if new in found or new in nxt:
                    continue
                if len(new) == target:
                    found.add(new)
                else:
                    nxt[new] = tuple(gens) + (v,)
        layer = nxt
    if not all_shapes:
        ok = allowed_types(ell, n)
        found = {h for h in found if subgroup_type(h, mod) in ok}
    return sorted(found, key=lambda s: sorted(s))


def allowed_types(ell: int, n: int) -> set[tuple[int, ...]]:
    """(ell^n, ell^n) and (ell^n, ell^(n-k), ell^k) for 0 < k < n."""
    m = ell**n
    out = {(m, m)}
    for k in range(1, n):
        out.add(tuple(sorted((m, ell ** (n - k), ell**k), reverse=True)))
    return out
