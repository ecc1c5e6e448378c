from math import comb

import pytest
from hypothesis import given

from conftest import weils
from gerbeforms.errors import ShapeError
from gerbeforms.weil import WeilElement


def gen(s, a, n=2, d=2):
    return WeilElement.generator(s, a, n, d)


def test_repeated_slot_vanishes():
    assert (gen(1, 1) * gen(1, 2)).is_zero()


def test_antisymmetry():
    assert gen(1, 2) * gen(2, 1) == -(gen(1, 1) * gen(2, 2))


def test_difference_vectors_are_first_order():
    assert ((gen(1, 1) - gen(2, 1)) * (gen(1, 2) - gen(2, 2))).is_zero()


def test_first_order_neighbours_all_slots():
    n, d = 3, 3
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i == j:
                continue
            v = [gen(i, a, n, d) - gen(j, a, n, d) for a in range(1, d + 1)]
            assert all((v[a] * v[b]).is_zero() for a in range(d) for b in range(d))


@pytest.mark.parametrize("n", range(1, 5))
@pytest.mark.parametrize("d", range(1, 5))
def test_basis_dimension(n, d):
    for k in range(0, 5):
        basis = WeilElement.basis(n, d, k)
        assert len(basis) == len(set(basis)) == comb(n, k) * comb(d, k)


def test_degenerate_examples():
    one = WeilElement.one(2, 2)
    assert (gen(1, 1) * gen(2, 2)).degenerate(1, 2).is_zero()
    assert gen(1, 1).degenerate(1, 0).is_zero()
    assert (one + gen(1, 1)).degenerate(1, 2) == one + gen(2, 1)


def test_degenerate_rejects_bad_slots():
    with pytest.raises(ShapeError):
        gen(1, 1).degenerate(1, 1)
    with pytest.raises(ShapeError):
        gen(1, 1).degenerate(3, 1)


def test_shape_mismatch():
    with pytest.raises(ShapeError):
        gen(1, 1) * gen(1, 1, 3, 2)


@given(weils(3, 2), weils(3, 2), weils(3, 2))
def test_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c


@given(weils(3, 3), weils(3, 3))
def test_degenerate_is_homomorphism(a, b):
    for i, j in [(1, 2), (2, 3), (3, 1), (1, 0), (2, 0)]:
        assert (a * b).degenerate(i, j) == a.degenerate(i, j) * b.degenerate(i, j)
        assert (a + b).degenerate(i, j) == a.degenerate(i, j) + b.degenerate(i, j)
