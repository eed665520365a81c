from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from superspecial.rings import (
    EISEN,
    GAUSS,
    ImQuadInt,
    canonical_associate,
    count_double_hexagonal,
    count_four_squares,
    is_canonical_associate,
    ring_gcd,
    sigma_divisors,
    solve_norm_equation,
    units,
)


def brute_four_squares(limit):
    r = int(limit**0.5) + 1
    counts = [0] * (limit + 1)
    sq = [x * x for x in range(-r, r + 1)]
    for a, b in product(sq, repeat=2):
        if a + b > limit:
            continue
        for c, d in product(sq, repeat=2):
            s = a + b + c + d
            if s <= limit:
                counts[s] += 1
    return counts


def brute_double_hexagonal(limit):
    r = int((4 * limit / 3) ** 0.5) + 1
    hexa = [0] * (limit + 1)
    for x, y in product(range(-r, r + 1), repeat=2):
        v = x * x + x * y + y * y
        if v <= limit:
            hexa[v] += 1
    counts = [0] * (limit + 1)
    for u in range(limit + 1):
        for v in range(limit + 1 - u):
            counts[u + v] += hexa[u] * hexa[v]
    return counts


def test_sigma_examples():
    assert sigma_divisors(1) == 1
    assert sigma_divisors(6) == 12
    assert sigma_divisors(Fraction(1, 2)) == 0


def test_four_squares_examples():
    assert count_four_squares(2) == 24
    assert count_four_squares(1) == 8
    assert count_four_squares(12) == 96


def test_double_hexagonal_examples():
    assert count_double_hexagonal(1) == 12
    assert count_double_hexagonal(3) == 12
    assert count_double_hexagonal(2) == 36


def test_four_squares_matches_brute_force():
    bf = brute_four_squares(500)
    assert [count_four_squares(n) for n in range(1, 501)] == bf[1:]


def test_double_hexagonal_matches_brute_force():
    bf = brute_double_hexagonal(300)
    assert [count_double_hexagonal(n) for n in range(1, 301)] == bf[1:]


def test_norm_equation_examples():
    sols, lam = solve_norm_equation(GAUSS, 5)
    assert len(sols) == 8 and lam == ImQuadInt(GAUSS, 2, 1)
    assert solve_norm_equation(GAUSS, 3) == ([], None)
    sols, lam = solve_norm_equation(EISEN, 7)
    assert len(sols) == 12 and (lam.a, lam.b) == (3, -1)


@pytest.mark.parametrize("ring", [GAUSS, EISEN])
def test_norm_equation_matches_brute_force(ring):
    for n in range(1, 120):
        got = set(solve_norm_equation(ring, n)[0])
        want = {ImQuadInt(ring, a, b) for a, b in product(range(-12, 13), repeat=2) if ImQuadInt(ring, a, b).norm() == n}
        assert got == want, n


@pytest.mark.parametrize("ring", [GAUSS, EISEN])
def test_canonical_associate_unique(ring):
    for a, b in product(range(-8, 9), repeat=2):
        x = ImQuadInt(ring, a, b)
        if x.is_zero():
            continue
        canon = [u * x for u in units(ring) if is_canonical_associate(u * x)]
        assert len(canon) == 1
        assert canonical_associate(x) == canon[0]


def test_gcd_examples():
    g = ring_gcd(ImQuadInt(GAUSS, 2, 1), ImQuadInt(GAUSS, 5, 0))
    assert g == canonical_associate(ImQuadInt(GAUSS, 2, 1))
    assert ring_gcd(ImQuadInt(GAUSS, 7, 3), ImQuadInt(GAUSS, 1, 0)) == ImQuadInt(GAUSS, 1, 0)
    g = ring_gcd(ImQuadInt(GAUSS, 3, 1), ImQuadInt(GAUSS, 3, -1))
    assert g.norm() == 2
    with pytest.raises(ValueError):
        ring_gcd(ImQuadInt(GAUSS, 0, 0), ImQuadInt(GAUSS, 0, 0))


def test_str():
    assert str(ImQuadInt(GAUSS, 2, 1)) == "2+i"
    assert str(ImQuadInt(GAUSS, 0, -1)) == "-i"
    assert str(ImQuadInt(EISEN, 3, -1)) == "3-w"


small = st.integers(-50, 50)


@given(st.sampled_from([GAUSS, EISEN]), small, small, small, small)
def test_norm_multiplicative(ring, a, b, c, d):
    x, y = ImQuadInt(ring, a, b), ImQuadInt(ring, c, d)
    assert (x * y).norm() == x.norm() * y.norm()
    assert (x * x.conjugate()).b == 0


@given(st.sampled_from([GAUSS, EISEN]), small, small, small, small)
def test_gcd_divides_both(ring, a, b, c, d):
    x, y = ImQuadInt(ring, a, b), ImQuadInt(ring, c, d)
    if x.is_zero() and y.is_zero():
        return
    g = ring_gcd(x, y)
    assert g.divides(x) and g.divides(y)
    # any common divisor of small norm divides g
    for e, f in product(range(-3, 4), repeat=2):
        h = ImQuadInt(ring, e, f)
        if not h.is_zero() and h.divides(x) and h.divides(y):
            assert h.divides(g)


@given(st.sampled_from([GAUSS, EISEN]), small, small, small, small, st.integers(2, 40))
def test_operator_is_ring_homomorphism(ring, a, b, c, d, m):
    x, y = ImQuadInt(ring, a, b), ImQuadInt(ring, c, d)
    assert ((x.operator() @ y.operator() - (x * y).operator()) % m == 0).all()
