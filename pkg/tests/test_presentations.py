import pytest

from qplucker.freealg import FreePoly, parse_word
from qplucker.presentations import (
    InvalidParams, build_B, build_C, build_F, build_G, build_Q, build_R, build_R0, build_R_colimit,
    presentation_from_json, quadratic_part,
)
from qplucker.quaddual import relation_space


def test_R_generator_counts():
    assert [str(g) for g in build_R(3, 2).generators] == ["q[1,2|3]", "q[1,3|2]", "q[2,3|1]"]
    assert len(build_R(4, 2).generators) == 12
    assert len(build_R(5, 2).generators) == 30
    assert len(build_R(4, 3).generators) == 6


@pytest.mark.parametrize("n,k", [(3, 1), (3, 3), (2, 2)])
def test_R_invalid(n, k):
    with pytest.raises(InvalidParams):
        build_R(n, k)


def test_R_relations_are_quadratic_linear():
    for p in (build_R(4, 2), build_R(4, 3)):
        for r in p.relations:
            assert r.poly == r.degree2 + r.degree1 + r.degree0
            assert not r.degree0


def test_R0_is_componentwise_truncation():
    full, quad = build_R(4, 2), build_R0(4, 2)
    assert len(full.relations) == len(quad.relations)
    assert relation_space(full.polys, full.order) == relation_space(quad.polys, quad.order)


def test_k2_plucker_instance():
    # m = l case: q_ij^l q_jl^i + q_il^j = 0 has quadratic part q_ij^l q_jl^i
    w = parse_word("q[1,2|3]*q[2,3|1]")
    assert any(r.degree2 == FreePoly.word(w) and r.degree1 == FreePoly.word(parse_word("q[1,3|2]"))
               for r in build_R(3, 2).relations)


def test_R43_relations():
    quads = {str(r.degree2) for r in build_R(4, 3).relations}
    assert quads == {"q[1,2|3,4]*q[2,4|1,3]", "q[1,3|2,4]*q[3,4|1,2]"}


def test_B32_single_surviving_word():
    p = build_B(3, 2)
    monomials = [r for r in p.relations if len(r.poly) == 1]
    assert len(monomials) == 8 and len(p.relations) == 8


def test_B_zero_algebra():
    for n in (2, 3, 4):
        p = build_B(n, n)
        assert p.generators == [] and p.relations == []
    with pytest.raises(InvalidParams):
        build_B(4, 1)


def test_json_round_trip():
    for p in (build_R(4, 2), build_B(4, 3), build_F(3), build_R_colimit(4, 4)):
        q = presentation_from_json(p.to_json())
        assert q.dumps() == p.dumps()


def test_Q_contains_constant_term():
    assert any(r.degree0 for r in build_Q(3, 2).relations)
    assert quadratic_part(build_Q(3, 2)).is_quadratic


def test_C32_counts():
    p = build_C(3, 2)
    assert len(p.generators) == 6


def test_colimit_generators():
    p = build_R_colimit(4, 4)
    sizes = sorted(len(g.sup) for g in p.generators)
    assert sizes.count(1) == 12 and sizes.count(2) == 6
    assert str(p.generators[0]) == "q[1,2|3]" and str(p.generators[-1]) == "q[3,4|1,2]"


def test_flag_generators_and_inverses():
    p = build_F(3)
    assert len(p.generators) == 2 * (3 * 2 + 3 * 1)
    inv = [r for r in p.relations if r.source == "F:inverse"]
    assert len(inv) == len(p.generators)


def test_G_variants_differ():
    a, b = build_G(3, variant="relations"), build_G(3, variant="rule")
    assert a.generators == b.generators
    assert len(a.relations) != len(b.relations)
