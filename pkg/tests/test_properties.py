"""Property suites: order compatibility, subword criterion, normal-form
idempotence, row independence of quasi-Plücker values, inverse pairing."""

import random
from functools import lru_cache
from itertools import product

from hypothesis import given, settings, strategies as st

from qplucker.exactmath import is_zero
from qplucker.freealg import FreePoly, Gen, OrderSpec, compare_words
from qplucker.groebner import complete, normal_form, orient
from qplucker.oracle import quasi_plucker, random_generic_matrix
from qplucker.presentations import build_B, build_C, build_R

GENS = build_R(4, 2).generators
words = st.lists(st.sampled_from(GENS), max_size=3).map(tuple)
orders = st.sampled_from([OrderSpec(s, w) for s in ("B", "colimit", "colimit-desc") for w in ("deglex", "degrevlex")])


@lru_cache(maxsize=None)
def system(name: str):
    p = {"B42": lambda: build_B(4, 2), "C42": lambda: build_C(4, 2), "B43": lambda: build_B(4, 3),
         "R32": lambda: build_R(3, 2)}[name]()
    return complete(orient(p), 5).rules


@given(words, words, words, words, orders)
def test_order_compatibility(u, v, a, b, spec):
    c = compare_words(u, v, spec)
    assert c == -compare_words(v, u, spec)
    if c:
        assert compare_words(a + u + b, a + v + b, spec) == c


def test_subword_criterion():
    for name in ("B42", "C42", "B43"):
        S = system(name)
        assert S.is_quadratic
        n = len(S.gens)
        pairs_ok = {(x, y): (x, y) not in S.rules for x in range(n) for y in range(n)}
        for d in (3, 4):
            if d == 4 and n > 12:
                continue
            for w in product(range(n), repeat=d):
                local = all(pairs_ok[w[t], w[t + 1]] for t in range(d - 1))
                assert S.is_normal(w) == local


polys = st.lists(st.tuples(st.lists(st.integers(0, 2), min_size=1, max_size=4), st.integers(-3, 3)), max_size=4)


@settings(max_examples=60)
@given(polys, st.sampled_from(["B42", "C42", "R32"]))
def test_normal_form_idempotent(spec, name):
    S = system(name)
    gens = S.gens
    p = FreePoly()
    for idx, c in spec:
        p = p + FreePoly.word(tuple(gens[i % len(gens)] for i in idx), c)
    once = normal_form(p, S)
    assert normal_form(once, S) == once
    for w, _ in once:
        assert S.is_normal(tuple(S.rank[g] for g in w))


@settings(max_examples=25)
@given(st.integers(0, 10**6), st.sampled_from(["rational", "quaternion"]))
def test_row_independence(seed, ring):
    a = random_generic_matrix(2, 4, ring, random.Random(seed))
    for i, j, l in ((1, 2, 3), (3, 1, 4), (2, 4, 1)):
        vals = {quasi_plucker(a, i, j, (l,), s=s) for s in (1, 2)}
        assert len(vals) == 1


@settings(max_examples=25)
@given(st.integers(0, 10**6))
def test_inverse_pairing(seed):
    a = random_generic_matrix(3, 5, "quaternion", random.Random(seed))
    for i, j, I in ((1, 2, (3, 4)), (5, 1, (2, 3)), (4, 3, (1, 5))):
        prod = quasi_plucker(a, i, j, I) * quasi_plucker(a, j, i, I)
        assert is_zero(prod - 1)
