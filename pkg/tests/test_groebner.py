import pytest

from qplucker.freealg import FreePoly, Gen, OrderSpec, parse_word, word_str
from qplucker.groebner import (
    InconsistentPresentation, NotConfluent, TieOnLeadingWord, check_nonhomogeneous_consistency, complete,
    count_normal_words, normal_form, normal_words, orient,
)
from qplucker.presentations import (
    Presentation, Relation, build_B, build_C, build_G, build_Q, build_R, build_R0, build_R_colimit,
)


def W(text):
    return FreePoly.word(parse_word(text))


def test_orient_B32_monomial():
    S = orient(build_B(3, 2))
    assert len(S.rules) == 8 and all(not rhs for rhs in S.rules.values())


def test_orient_R32_quadratic_leads():
    S = orient(build_R(3, 2))
    assert all(len(lead) == 2 for lead in S.rules)


def test_tie_detection():
    x = Gen("q", 1, 2, (3,))
    p = Presentation("tie", 3, 2, [x], [Relation(W("q[1,2|3]*q[1,2|3]") + W("q[1,2|3]*q[1,2|3]"))])
    orient(p)  # same word merges, no tie
    S = orient(p, OrderSpec("custom", "deglex", (x,)))
    assert len(S.rules) == 1


def test_G_rule_orientation():
    p = build_G(2, min_size=0, variant="rule")
    S = complete(orient(p), 3).rules
    assert normal_form(W("g[2|1]*g^-1[2|]"), S) == W("g[1|2]*g^-1[1|]")


def test_normal_form_monomial_B():
    S = complete(orient(build_B(4, 2)), 3).rules
    for text in ["r[1,2|3]*r[2,3|1]", "r[1,2|3]*r[1,2|3]", "r[1,3|2]*r[3,4|1]*r[1,2|4]"]:
        nf = normal_form(W(text), S)
        assert nf in (W(text), FreePoly())


def test_normal_form_exchange_B53():
    S = orient(build_B(5, 3))
    assert normal_form(W("r[1,3|4,5]*r[3,4|1,2]"), S) == W("r[1,2|4,5]*r[2,4|1,3]")


def test_negative_control_obstruction():
    x, y = Gen("q", 1, 2, (3,)), Gen("q", 1, 3, (2,))
    p = Presentation("toy", 3, 2, [x, y], [
        Relation(W("q[1,3|2]*q[1,2|3]") - W("q[1,2|3]*q[1,2|3]")),
        Relation(W("q[1,3|2]*q[1,3|2]")),
    ])
    rep = complete(orient(p), 4)
    assert rep.obstructions and rep.obstructions[0].degree == 3
    assert not rep.quadratic_gb


@pytest.mark.parametrize("n,k", [(3, 2), (4, 2), (5, 2), (4, 3), (5, 4)])
def test_B_quadratic_gb(n, k):
    rep = complete(orient(build_B(n, k)), 4)
    assert rep.quadratic_gb and rep.fully_confluent


def test_B53_has_cubic_obstruction():
    rep = complete(orient(build_B(5, 3)), 3)
    assert [o.degree for o in rep.obstructions] == [3, 3]
    assert word_str(rep.obstructions[0].word) == "r[1,3|4,5]*r[3,4|1,2]*r[4,5|2,3]"


@pytest.mark.parametrize("n,k", [(3, 2), (4, 2), (4, 3)])
def test_C_confluent_two_steps(n, k):
    rep = complete(orient(build_C(n, k)), 4, record_steps=True)
    assert rep.quadratic_gb
    assert rep.max_rewrite_steps <= 2


def test_normal_words():
    S = complete(orient(build_B(3, 2)), 3).rules
    assert [word_str(w) for w in normal_words(S, 2)] == ["r[1,2|3]*r[2,3|1]"]
    assert normal_words(S, 0) == [()]
    assert normal_words(S, 3) == []


def test_normal_words_needs_confluence():
    S = orient(build_B(5, 3))
    with pytest.raises(NotConfluent):
        normal_words(S, 3)


def test_complete_idempotent():
    rep = complete(orient(build_C(4, 2)), 4)
    again = complete(rep.rules, 4)
    assert again.rules.rules == rep.rules.rules and not again.obstructions


def test_normal_words_side_conditions():
    for n, k in [(4, 2), (5, 2), (4, 3), (5, 4)]:
        S = complete(orient(build_B(n, k)), 3).rules
        for d in (2, 3):
            for w in normal_words(S, d):
                for g, h in zip(w, w[1:]):
                    assert g.j == h.i
                    extra = set(h.sup) - set(g.sup) - {g.i}
                    assert g.sup == h.sup or (g.i in h.sup and all(g.j < x < h.j for x in extra))


def test_consistency_R32():
    rep = check_nonhomogeneous_consistency(build_R(3, 2), max_degree=4)
    assert rep.filtered_counts == [1, 3, 8, 21, 55]


def test_consistency_Q32_unit_survives():
    rep = check_nonhomogeneous_consistency(build_Q(3, 2), max_degree=3, raise_on_failure=False)
    assert rep.unit_survives


def test_consistency_R42_fails():
    with pytest.raises(InconsistentPresentation):
        check_nonhomogeneous_consistency(build_R(4, 2), max_degree=3)
    rep = check_nonhomogeneous_consistency(build_R(4, 2), max_degree=3, raise_on_failure=False)
    assert rep.filtered_counts == [1, 12, 131, 1421]
    assert rep.graded_counts == [1, 12, 132, 1445]


def test_colimit_low_degree_counts():
    rep = check_nonhomogeneous_consistency(build_R_colimit(4, 4), max_degree=2, raise_on_failure=False)
    assert rep.graded_counts == [1, 18, 306]


def test_inconsistent_detection():
    x = Gen("q", 1, 2, (3,))
    p = Presentation("bad", 3, 2, [x], [Relation(W("q[1,2|3]") - FreePoly.one()), Relation(W("q[1,2|3]"))])
    rep = check_nonhomogeneous_consistency(p, max_degree=3, raise_on_failure=False)
    assert not rep.unit_survives


def test_counts_match_enumeration():
    S = complete(orient(build_R0(4, 2)), 4).rules
    assert count_normal_words(S, 3) == [len(normal_words(S, d, check=False)) for d in range(4)]
