from fractions import Fraction

import pytest

from qplucker.freealg import FreePoly, parse_word
from qplucker.groebner import complete, normal_words, orient
from qplucker.presentations import (
    Presentation, Relation, build_B, build_C, build_Q0, build_R, build_R0,
)
from qplucker.quaddual import GeneratorMismatch, quadratic_data, quadratic_dual, relation_space, verify_dual_matches


def degree2_dim(p):
    return len(normal_words(complete(orient(p), 3).rules, 2, check=False))


def test_dual_R32():
    d = quadratic_dual(build_R0(3, 2))
    assert degree2_dim(d) == 1


def test_dual_R43_has_two_quadratic_words():
    d = quadratic_dual(build_R0(4, 3))
    assert degree2_dim(d) == 2


@pytest.mark.parametrize("p", [build_R0(3, 2), build_R0(4, 2), build_R0(4, 3), build_Q0(3, 2)])
def test_dimension_complement(p):
    d = quadratic_dual(p)
    assert quadratic_data(p).dimension + quadratic_data(d).dimension == len(p.generators) ** 2


@pytest.mark.parametrize("p", [build_R0(3, 2), build_R0(4, 2)])
def test_double_dual(p):
    dd = quadratic_dual(quadratic_dual(p))
    assert relation_space(dd.polys, p.order) == relation_space(p.polys, p.order)


@pytest.mark.parametrize("n", [3, 4, 5])
def test_dual_equals_closed_form_B(n):
    assert verify_dual_matches(quadratic_dual(build_R0(n, 2)), build_B(n, 2)).equal


def test_C32_cross_check():
    assert verify_dual_matches(quadratic_dual(build_Q0(3, 2)), build_C(3, 2)).equal


def test_perturbed_relation_reports_witness():
    b = build_B(3, 2)
    bad = Presentation(b.name, b.n, b.k, b.generators, b.relations[1:], b.order)
    cmp = verify_dual_matches(quadratic_dual(build_R0(3, 2)), bad)
    assert not cmp.equal and cmp.witness is not None and cmp.witness_side == "computed"


def test_zero_relation_dual_kills_everything():
    p = build_R0(3, 2)
    free = Presentation("free", 3, 2, p.generators, [], p.order)
    d = quadratic_dual(free)
    assert len(d.relations) == 9 and all(len(r.poly) == 1 for r in d.relations)
    assert quadratic_dual(d).relations == []


def test_generator_mismatch():
    with pytest.raises(GeneratorMismatch):
        verify_dual_matches(quadratic_dual(build_R0(3, 2)), build_B(4, 2))


def test_dual_is_deterministic():
    assert quadratic_dual(build_R0(4, 2)).dumps() == quadratic_dual(build_R0(4, 2)).dumps()
