import numpy as np
import pytest

from siegeljacobi.intmat import (as_imat, complete_primitive, int_det,
                                 int_inv_unimodular, ieye)


def test_det_known_values():
    assert int_det(as_imat([[2, 1], [1, 1]])) == 1
    assert int_det(as_imat([[1, 2, 3], [4, 5, 6], [7, 8, 10]])) == -3
    assert int_det(ieye(4)) == 1
    assert int_det(as_imat([[0, 1], [1, 0]])) == -1


def test_det_exact_beyond_float(rng):
    big = 10 ** 12
    m = as_imat([[big, big - 1], [big + 1, big]])
    assert int_det(m) == big * big - (big - 1) * (big + 1)


def test_unimodular_inverse(rng):
    for _ in range(50):
        g = int(rng.integers(1, 5))
        u = np.eye(g, dtype=int)
        for _ in range(6):
            if g > 1:
                i, j = rng.choice(g, 2, replace=False)
                u[:, j] += int(rng.integers(-3, 4)) * u[:, i]
        ui = int_inv_unimodular(as_imat(u))
        assert np.array_equal(as_imat(u) @ ui, ieye(g))


def test_inverse_rejects_non_unimodular():
    with pytest.raises(ValueError):
        int_inv_unimodular(as_imat([[2, 0], [0, 1]]))


def test_complete_primitive(rng):
    for vec in ([3, 5], [2, 3, 7], [0, 0, 1], [1], [-1], [6, 10, 15], [-4, 9]):
        u = complete_primitive(vec)
        assert int_det(u) in (1, -1)
        assert [int(x) for x in u[:, 0]] == list(vec)
    for _ in range(100):
        m = int(rng.integers(1, 5))
        v = rng.integers(-9, 10, m)
        from math import gcd
        d = 0
        for x in v:
            d = gcd(d, int(x))
        if d != 1:
            continue
        u = complete_primitive(v)
        assert int_det(u) in (1, -1)
        assert [int(x) for x in u[:, 0]] == [int(x) for x in v]


def test_complete_primitive_rejects_imprimitive():
    with pytest.raises(ValueError):
        complete_primitive([2, 4])


def test_as_imat_rejects_fractions():
    with pytest.raises(ValueError):
        as_imat([[1.5, 0], [0, 1]])
