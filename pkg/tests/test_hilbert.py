import pytest

from qplucker.groebner import NotConfluent, check_nonhomogeneous_consistency, complete, orient
from qplucker.hilbert import (
    NotQuadratic, OutOfRange, RationalForm, closed_form_B2_coefficient, closed_form_B2_dims, dims_by_enumeration,
    dims_by_transfer_matrix, koszul_identity, recursion_check, series_reciprocal, transfer_matrix,
)
from qplucker.presentations import build_B, build_C, build_R0


def completed(p, D=4):
    return complete(orient(p), D).rules


@pytest.mark.parametrize("dims,D,expected", [
    ((1, 3, 1), 5, (1, 3, 8, 21, 55, 144)),
    ((1, 12, 12, 5), 3, (1, 12, 132, 1445)),
    ((1, 30, 50, 45, 17), 4, (1, 30, 850, 24045, 680183)),
    ((1,), 3, (1, 0, 0, 0)),
    ((1, 1), 4, (1, 1, 1, 1, 1)),
])
def test_series_reciprocal(dims, D, expected):
    assert series_reciprocal(dims, D) == expected


def test_series_reciprocal_needs_unit():
    with pytest.raises(ValueError):
        series_reciprocal((2, 1), 3)


def test_rational_form_expand_and_text():
    f = RationalForm.koszul((1, 3, 1, 0))
    assert f.denominator == (1, -3, 1)
    assert f.expand(5) == series_reciprocal((1, 3, 1), 5)
    assert str(f) == "(1) / (1 - 3*t + t^2)"


@pytest.mark.parametrize("n", range(3, 8))
def test_closed_form_matches_enumeration(n):
    S = completed(build_B(n, 2), 3)
    assert dims_by_enumeration(S, n) == closed_form_B2_dims(n) + (0,)


@pytest.mark.parametrize("n", range(3, 9))
def test_closed_form_h1_and_top(n):
    assert closed_form_B2_coefficient(n, n - 1) == n * (n - 1) * (n - 2) // 2
    assert closed_form_B2_coefficient(n, 1) > 0
    assert len(closed_form_B2_dims(n)) == n


def test_closed_form_range():
    with pytest.raises(OutOfRange):
        closed_form_B2_coefficient(4, 4)
    with pytest.raises(OutOfRange):
        closed_form_B2_coefficient(2, 1)


@pytest.mark.parametrize("n,k", [(3, 2), (4, 2), (5, 2), (4, 3), (5, 4)])
def test_transfer_matrix_agrees_with_enumeration(n, k):
    S = completed(build_B(n, k))
    assert dims_by_transfer_matrix(S, 4) == dims_by_enumeration(S, 4)


def test_transfer_matrix_C():
    S = completed(build_C(4, 2))
    assert dims_by_transfer_matrix(S, 3) == dims_by_enumeration(S, 3)


def test_transfer_matrix_refuses_non_quadratic():
    S = complete(orient(build_B(5, 3)), 3).rules
    with pytest.raises(NotConfluent):
        dims_by_enumeration(S, 4)
    S = completed(build_B(3, 2))
    letters, T = transfer_matrix(S)
    assert len(letters) == 3 and sum(map(sum, T)) == 1


def test_recursion_three_term():
    dims = series_reciprocal((1, 3, 1), 8)
    rep = recursion_check(dims, RationalForm.koszul((1, 3, 1)))
    assert rep.ok and rep.coefficients == (3, -1)
    assert rep.text() == "a_m = 3*a_(m-1) - a_(m-2)"


def test_recursion_negative_control():
    dims = list(series_reciprocal((1, 3, 1), 6))
    dims[5] += 1
    rep = recursion_check(dims, RationalForm.koszul((1, 3, 1)))
    assert not rep.ok and rep.failures[0][0] == 5


@pytest.mark.parametrize("n,k", [(3, 2), (4, 2), (4, 3)])
def test_koszul_identity(n, k):
    dual = dims_by_enumeration(completed(build_B(n, k)), 4)
    a = count = check_nonhomogeneous_consistency(build_R0(n, k), max_degree=4).graded_counts
    assert koszul_identity(a, dual, 4) == (1, 0, 0, 0, 0)
    assert tuple(count) == series_reciprocal(dual, 4)
