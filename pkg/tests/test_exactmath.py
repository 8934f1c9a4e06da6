from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from qplucker.exactmath import (
    I, J, K, Matrix, Quaternion, SingularMatrix, det, invert, kernel_basis, rank, rref, sparse_rref,
)

small = st.integers(-4, 4)
quats = st.builds(Quaternion, small, small, small, small)


def test_rref_identity_and_zero():
    m, r, piv = rref(Matrix.identity(2))
    assert m.is_identity() and r == 2 and piv == (0, 1)
    m, r, piv = rref(Matrix.zeros(3, 3))
    assert r == 0 and piv == ()


def test_rref_rank_one():
    m, r, piv = rref(Matrix.of([[1, 2], [2, 4]]))
    assert r == 1
    assert m.rows == ((1, 2), (0, 0))


def test_kernel_basis():
    assert kernel_basis(Matrix.identity(3)) == []
    assert len(kernel_basis(Matrix.zeros(2, 3))) == 3
    m = Matrix.of([[1, 1, 0]])
    ker = kernel_basis(m)
    assert len(ker) == 2
    for v in ker:
        assert all(x == 0 for x in m.apply(v))


def test_quaternion_units():
    assert I * J == K and J * I == -K
    assert I * I == Quaternion(-1)
    assert (I * J) * K == I * (J * K)


@given(quats, quats, quats)
def test_quaternion_associative(a, b, c):
    assert (a * b) * c == a * (b * c)


@given(quats)
def test_quaternion_inverse(a):
    if not a:
        with pytest.raises(ZeroDivisionError):
            a.inverse()
        return
    assert a * a.inverse() == Quaternion(1)
    assert a.inverse() * a == Quaternion(1)


def test_invert_quaternion_matrix():
    m = Matrix.of([[Quaternion(1, 1), J], [K, Quaternion(2, 0, 1)]])
    inv = invert(m)
    assert (m @ inv).is_identity()
    assert (inv @ m).is_identity()


def test_invert_singular():
    with pytest.raises(SingularMatrix):
        invert(Matrix.of([[1, 2], [2, 4]]))


@given(st.lists(st.lists(small, min_size=3, max_size=3), min_size=3, max_size=3))
def test_det_matches_invertibility(rows):
    m = Matrix.of(rows)
    if det(m) == 0:
        assert rank(m) < 3
    else:
        assert (m @ invert(m)).is_identity()


def test_sparse_rref_canonical():
    rows = [{"a": 1, "b": 1}, {"a": 2, "b": 3}, {"a": Fraction(3, 2), "b": 2}]
    out = sparse_rref(rows)
    assert out == sparse_rref(list(reversed(rows)))
    assert len(out) == 2
