import pytest

from superspecial.isotropic import (
    ORACLE_LIMIT,
    _form,
    allowed_types,
    isotropic_count,
    isotropic_enumerate_oracle,
    subgroup_type,
)
from superspecial.kernels import enumerate_kernels


@pytest.mark.parametrize("ell,n,count", [(2, 1, 15), (3, 1, 40), (2, 2, 150), (5, 1, 156)])
def test_count_examples(ell, n, count):
    assert isotropic_count(ell, n) == count


@pytest.mark.parametrize("ell", [2, 3, 5, 7, 11])
def test_count_matches_kernel_enumeration(ell):
    assert isotropic_count(ell, 1) == len(enumerate_kernels(ell))


@pytest.mark.parametrize("ell,n", [(2, 1), (3, 1), (2, 2)])
def test_oracle_matches_formula(ell, n):
    subs = isotropic_enumerate_oracle(ell, n)
    mod = ell**n
    assert len(subs) == isotropic_count(ell, n)
    for h in subs:
        assert len(h) == mod * mod
        assert subgroup_type(h, mod) in allowed_types(ell, n)
        assert all(_form(u, v, mod) == 0 for u in h for v in h)


def test_oracle_extra_shape_at_four():
    # the 2-torsion (Z/2)^4 is Lagrangian in (Z/4)^4 but has neither allowed shape
    extra = set(isotropic_enumerate_oracle(2, 2, all_shapes=True)) - set(isotropic_enumerate_oracle(2, 2))
    assert len(extra) == 1
    assert subgroup_type(next(iter(extra)), 4) == (2, 2, 2, 2)


def test_subgroup_type():
    assert subgroup_type(frozenset({(0, 0, 0, 0), (2, 0, 0, 0)}), 4) == (2,)
    assert subgroup_type(frozenset({(k, 0, 0, 0) for k in range(4)}), 4) == (4,)
    assert allowed_types(2, 2) == {(4, 4), (4, 2, 2)}


def test_errors():
    with pytest.raises(ValueError):
        isotropic_enumerate_oracle(5, 2)
    assert 5**2 > ORACLE_LIMIT
    with pytest.raises(ValueError):
        isotropic_count(3, 0)
