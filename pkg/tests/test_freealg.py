from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from qplucker.freealg import FreePoly, Gen, OrderSpec, compare_words, parse_gen, parse_word, word_str

GENS = [Gen("q", 1, 2, (3,)), Gen("q", 1, 3, (2,)), Gen("q", 2, 3, (1,)), Gen("q", 1, 2, (4,)), Gen("q", 3, 4, (1, 2))]
words = st.lists(st.sampled_from(GENS), max_size=4).map(tuple)
orders = st.sampled_from([OrderSpec(s, w) for s in ("B", "colimit", "colimit-desc") for w in ("deglex", "degrevlex")])


def test_render_and_parse_round_trip():
    for text in ["q[1,2|3,4]", "r[2,5|1]", "f[1|2,3]", "f^-1[3|1]", "g^-1[2|]"]:
        assert str(parse_gen(text)) == text
    w = parse_word("q[1,2|3]*q[2,3|1]")
    assert word_str(w) == "q[1,2|3]*q[2,3|1]"
    assert word_str(()) == "1"


def test_invalid_labels():
    with pytest.raises(ValueError):
        Gen("q", 1, 2, (1,))
    with pytest.raises(ValueError):
        Gen("q", 1, 2, (2,))
    with pytest.raises(ValueError):
        Gen("f", 1, 2, (3,))


def test_dual_label():
    g = parse_gen("q[1,2|3]")
    assert str(g.dual()) == "r[1,2|3]" and g.dual().dual() == g
    assert str(parse_gen("f[1|2]").inverse_label()) == "f^-1[1|2]"


def test_poly_arithmetic():
    x, y = (FreePoly.gen(g) for g in GENS[:2])
    p = (x + y) * (x - y)
    assert p.coefficient((GENS[0], GENS[1])) == -1
    assert p.coefficient((GENS[1], GENS[0])) == 1
    assert not (p - p)
    assert (2 * x + FreePoly.one(3)).homogeneous_part(0) == FreePoly.one(3)
    q = FreePoly.from_json(p.to_json())
    assert q == p


def test_json_is_ordered():
    x, y = (FreePoly.gen(g) for g in GENS[:2])
    p = y * x + Fraction(1, 2) * x * y
    assert p.to_json(OrderSpec()) == p.to_json(OrderSpec())


@given(words, words, words, words, orders)
def test_order_compatible_with_multiplication(u, v, a, b, spec):
    c = compare_words(u, v, spec)
    if c:
        assert compare_words(a + u + b, a + v + b, spec) == c


@given(words, words, words, orders)
def test_order_transitive(u, v, w, spec):
    if compare_words(u, v, spec) < 0 and compare_words(v, w, spec) < 0:
        assert compare_words(u, w, spec) < 0


def test_degrevlex_differs_from_deglex():
    a, b = GENS[0], GENS[1]
    u, v = (a, b), (b, b)
    assert compare_words(u, v, OrderSpec("B", "deglex")) == -1
    assert compare_words(u, v, OrderSpec("B", "degrevlex")) == 1
