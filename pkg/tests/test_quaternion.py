from fractions import Fraction
from itertools import product

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from superspecial.quaternion import (
    O0,
    O1728,
    OPRIMEQ,
    OQ,
    OrderError,
    closed_form_norm,
    default_q,
    enumerate_by_norm,
    make_order,
)
from superspecial.rings import EISEN, GAUSS


def std_norm(order, x):
    """Nrd from standard coordinates: t^2 + a x^2 + b y^2 + a b z^2 with i^2=-a, j^2=-b."""
    t, u, v, w = order.element(x).standard()
    a, b = -order.i_square, -order.j_square
    return t * t + a * u * u + b * v * v + a * b * w * w


ORDERS = [
    (O1728, 23), (O1728, 103), (O0, 11), (O0, 101),
    (OQ, 13), (OQ, 103), (OPRIMEQ, 7), (OPRIMEQ, 103),
]


@pytest.fixture(scope="module", params=ORDERS, ids=lambda kp: f"{kp[0]}-{kp[1]}")
def order(request):
    return make_order(*request.param)


def test_basis_displays():
    o = make_order(O1728, 23)
    assert o.names == ("1", "i", "(1+j)/2", "(i+k)/2")
    assert make_order(O0, 11).names == ("1", "(1+i)/2", "(i+k)/3", "(j+k)/2")


@pytest.mark.parametrize("kind,p", [(O1728, 13), (O0, 13), (O1728, 2), (OPRIMEQ, 13)])
def test_congruence_rejected(kind, p):
    with pytest.raises(OrderError):
        make_order(kind, p)


def test_oq_rejects_q3():
    with pytest.raises(OrderError):
        make_order(OQ, 5, 3)
    assert default_q(5, OQ) != 3


def test_ij_is_k():
    o = make_order(O1728, 23)
    i = o.from_standard((0, 1, 0, 0))
    j = o.from_standard((0, 0, 1, 0))
    assert (i * j).standard() == (0, 0, 0, 1)
    assert (j * i).standard() == (0, 0, 0, -1)


def test_small_norms():
    o = make_order(O1728, 23)
    i = o.element(0, 1, 0, 0)
    assert i.reduced_norm() == 1 and i.reduced_trace() == 0
    h = o.element(0, 0, 1, 0)
    assert h.reduced_norm() == 6
    assert (h * h).reduced_norm() == 36
    assert make_order(O0, 11).element(0, 1, 0, 0).reduced_norm() == 1


@pytest.mark.parametrize("kind,p,count", [(O1728, 23, 4), (O0, 11, 6), (OQ, 103, 2), (OPRIMEQ, 103, 2)])
def test_unit_counts(kind, p, count):
    # the unit count is whatever the enumeration finds: +-1, +-i (O1728), the sixth roots (O0)
    assert len(enumerate_by_norm(make_order(kind, p), 1)) == count


def test_norm5_in_gaussian_ring():
    els = enumerate_by_norm(make_order(O1728, 103), 5)
    assert len(els) == 8
    assert all(e.to_quadratic() is not None and e.to_quadratic().ring == GAUSS for e in els)


def test_o0_units_in_eisenstein_ring():
    els = enumerate_by_norm(make_order(O0, 11), 1)
    assert all(e.to_quadratic().ring == EISEN for e in els)


def test_enumeration_matches_brute_force(order):
    found = {e.coords for e in enumerate_by_norm(order, 12, up_to=True)}
    grid = np.array(list(product(range(-9, 10), repeat=4)), dtype=np.int64)
    den = np.lcm.reduce([f.denominator for row in order.norm_form for f in row])
    q = np.array([[int(f * den) for f in row] for row in order.norm_form], dtype=np.int64)
    norms = np.einsum("ni,ij,nj->n", grid, q, grid)
    brute = {tuple(int(v) for v in x) for x, n in zip(grid, norms) if 0 < n <= 12 * den}
    assert found == brute


coords = st.tuples(*[st.integers(-20, 20)] * 4)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(ORDERS), coords, coords)
def test_norm_multiplicative_and_conjugation(kp, x, y):
    o = make_order(*kp)
    a, b = o.element(x), o.element(y)
    assert (a * b).reduced_norm() == a.reduced_norm() * b.reduced_norm()
    assert (a * b).conjugate() == b.conjugate() * a.conjugate()
    assert a.conjugate().conjugate() == a
    n = a * a.conjugate()
    assert n.standard() == (Fraction(a.reduced_norm()), 0, 0, 0)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(ORDERS), coords)
def test_closed_form_norm(kp, x):
    o = make_order(*kp)
    e = o.element(x)
    assert closed_form_norm(e) == e.reduced_norm() == std_norm(o, x)


def test_mixed_orders_rejected():
    a = make_order(O1728, 23).one()
    b = make_order(O1728, 103).one()
    with pytest.raises(ValueError):
        a * b
