"""Generator sets and relation lists for the quasi-Plücker and flag algebras.

Every builder returns a :class:`Presentation`.  Index sets are stored
sorted, so independence of the superscript ordering is structural.  Labels
that vanish by convention (a second subscript inside the superscript) are
never materialised; a term containing one is dropped before the relation is
recorded.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable

from .freealg import FreePoly, Gen, OrderSpec, parse_gen

__all__ = [
    "InvalidParams",
    "Relation",
    "Presentation",
    "build_R",
    "build_R0",
    "build_B",
    "build_Q",
    "build_Q0",
    "build_C",
    "build_R_colimit",
    "build_Q_colimit",
    "build_F",
    "build_F0",
    "build_G",
    "quadratic_part",
    "presentation_from_json",
    "BUILDERS",
]

SCHEMA_VERSION = 1


class InvalidParams(ValueError):
    pass


@dataclass(frozen=True)
class Relation:
    poly: FreePoly
    source: str = ""

    @property
    def degree2(self) -> FreePoly:
        return self.poly.homogeneous_part(2)

    @property
    def degree1(self) -> FreePoly:
        return self.poly.homogeneous_part(1)

    @property
    def degree0(self) -> FreePoly:
        return self.poly.homogeneous_part(0)

    def to_json(self, spec: OrderSpec | None = None) -> dict:
        return {"source": self.source, "terms": self.poly.to_json(spec)}


@dataclass
class Presentation:
    name: str
    n: int
    k: int | None
    generators: list[Gen]
    relations: list[Relation]
    order: OrderSpec = field(default_factory=OrderSpec)

    def __post_init__(self):
        self.generators = sorted(self.generators, key=self.order.gen_key)
        gens = set(self.generators)
        if len(gens) != len(self.generators):
            raise ValueError(f"{self.name}: duplicate generators")
        for rel in self.relations:
            extra = rel.poly.generators() - gens
            if extra:
                raise ValueError(f"{self.name}: relation uses undeclared generators {sorted(map(str, extra))}")

    @property
    def is_quadratic(self) -> bool:
        return all(not r.degree1 and not r.degree0 for r in self.relations)

    @property
    def polys(self) -> list[FreePoly]:
        return [r.poly for r in self.relations]

    def to_json(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "name": self.name,
            "n": self.n,
            "k": self.k,
            "order": self.order.to_json(),
            "generators": [str(g) for g in self.generators],
            "relations": [r.to_json(self.order) for r in self.relations],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=1, sort_keys=True)


def presentation_from_json(data: dict) -> Presentation:
    order = OrderSpec.from_json(data["order"])
    return Presentation(
        name=data["name"],
        n=data["n"],
        k=data["k"],
        generators=[parse_gen(s) for s in data["generators"]],
        relations=[Relation(FreePoly.from_json(r["terms"]), r.get("source", "")) for r in data["relations"]],
        order=order,
    )


class _Collector:
    """Accumulates relations, dropping zeros and exact duplicates."""

    def __init__(self):
        self.relations: list[Relation] = []
        self._seen: set = set()

    def add(self, poly: FreePoly, source: str) -> None:
        if not poly:
            return
        # normalise the sign/scale so p and -p count as duplicates
        lead = max(poly.terms, key=lambda w: (len(w), str(w)))
        c = poly.terms[lead]
        key = frozenset((w, v / c) for w, v in poly.terms.items())
        if key in self._seen:
            return
        self._seen.add(key)
        self.relations.append(Relation(poly, source))


def _check(n: int, k: int) -> None:
    if k < 2 or k >= n:
        raise InvalidParams(f"need 2 <= k < n, got n={n}, k={k}")


def _subsets(pool: Iterable[int], size: int):
    return (frozenset(c) for c in combinations(sorted(pool), size))


def _label(family: str, i: int, j: int, sup) -> FreePoly:
    """Generator as a polynomial: 1 if i == j, 0 if j lies in the superscript."""
    sup = frozenset(sup)
    if i in sup:
        raise ValueError(f"{family}[{i},{j}|{sorted(sup)}] is undefined")
    if i == j:
        return FreePoly.one()
    if j in sup:
        return FreePoly()
    return FreePoly.gen(Gen(family, i, j, tuple(sup)))


def _pair_gens(family: str, n: int, k: int, ordered: bool) -> list[Gen]:
    out = []
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i == j or (not ordered and j < i):
                continue
            rest = [x for x in range(1, n + 1) if x not in (i, j)]
            for sup in combinations(rest, k - 1):
                out.append(Gen(family, i, j, sup))
    return out


# ---------------------------------------------------------------- R_n^(k)


def build_R(n: int, k: int) -> Presentation:
    """Quadratic-linear presentation of the algebra of ``q_ij^I`` with ``i < j``."""
    _check(n, k)
    q = lambda i, j, s: _label("q", i, j, s)  # noqa: E731
    col = _Collector()
    idx = range(1, n + 1)
    for i, j, l in combinations(idx, 3):
        for sup in _subsets(set(idx) - {i, j}, k - 1):
            col.add(q(i, j, sup) * q(j, l, sup) - q(i, l, sup), "R:transitivity")
    for L in combinations(idx, k + 1):
        l0, lk = L[0], L[-1]
        inner = L[1:-1]
        for M in _subsets(set(idx) - {l0}, k - 1):
            p = q(l0, lk, set(L) - {l0, lk}) - q(l0, lk, M)
            for lj in inner:
                p = p + q(l0, lj, M) * q(lj, lk, set(L) - {lj, lk})
            col.add(p, "R:plucker")
    return Presentation(f"R_{n}^({k})", n, k, _pair_gens("q", n, k, False), col.relations, OrderSpec("B", "deglex"))


def quadratic_part(p: Presentation, name: str | None = None) -> Presentation:
    """Associated quadratic presentation: degree-2 parts of all relations."""
    col = _Collector()
    for rel in p.relations:
        col.add(rel.degree2, rel.source)
    return Presentation(name or p.name + "^(0)", p.n, p.k, list(p.generators), col.relations, p.order)


def build_R0(n: int, k: int) -> Presentation:
    return quadratic_part(build_R(n, k), f"R0_{n}^({k})")


# ---------------------------------------------------------------- B_n^(k)


def build_B(n: int, k: int) -> Presentation:
    """Quadratic dual of ``R0_n^(k)`` written out from its explicit relations.

    Every degree-2 word not of the permitted shapes is set to zero; the
    permitted words ``r_ij^I r_jl^J`` with ``i`` in ``J`` are linked by the
    exchange relations that move the middle index through ``J``.
    For ``k >= n`` the algebra is zero and no generators exist.
    """
    if k < 2:
        raise InvalidParams(f"need k >= 2, got k={k}")
    order = OrderSpec("B", "deglex")
    if k >= n:
        return Presentation(f"B_{n}^({k})", n, k, [], [], order)
    gens = _pair_gens("r", n, k, False)
    col = _Collector()
    for g in gens:
        for h in gens:
            w = FreePoly.word((g, h))
            if not _b_permitted(g, h):
                col.add(w, "B:zero")
                continue
            i, j, I, l, J = g.i, g.j, set(g.sup), h.j, set(h.sup)
            if i in J:
                for jp in sorted(J - I - {i}):
                    other = Gen("r", i, jp, g.sup), Gen("r", jp, l, tuple((J - {jp}) | {j}))
                    col.add(w - FreePoly.word(other), "B:exchange")
    return Presentation(f"B_{n}^({k})", n, k, gens, col.relations, order)


def _b_permitted(g: Gen, h: Gen) -> bool:
    if g.j != h.i:
        return False
    if g.sup == h.sup:
        return True
    i, b = g.i, h.j
    rest = set(h.sup) - {i}
    return g.i in h.sup and all(i < x < b for x in rest)


# ---------------------------------------------------------------- Q_n^(k)


def build_Q(n: int, k: int, *, include_skew: bool = False, include_plucker: bool = True) -> Presentation:
    """Presentation of the algebra of all ``q_ij^I`` (both orders of ``i, j``).

    Relations: ``q_ij^I q_jl^I = q_il^I`` (with ``q_ii^I = 1``) and the
    three-term exchange relations valid for any pair ``i != l`` in ``L``.
    ``include_plucker`` adds the sums ``sum_j q_ij^M q_ji^(L-j) = 1``;
    ``include_skew`` adds non-commutative skew-symmetry.
    """
    _check(n, k)
    q = lambda i, j, s: _label("q", i, j, s)  # noqa: E731
    idx = set(range(1, n + 1))
    col = _Collector()
    for sup in _subsets(idx, k - 1):
        free = sorted(idx - sup)
        for i in free:
            for j in free:
                if j == i:
                    continue
                for l in free:
                    if l == j:
                        continue
                    col.add(q(i, j, sup) * q(j, l, sup) - q(i, l, sup), "Q:transitivity")
    for L in _subsets(idx, k + 1):
        for i in sorted(L):
            for l in sorted(L - {i}):
                for M in _subsets(idx - {i}, k - 1):
                    p = q(i, l, L - {i, l}) - q(i, l, M)
                    for j in sorted(L - {i, l}):
                        p = p + q(i, j, M) * q(j, l, L - {j, l})
                    col.add(p, "Q:exchange")
    if include_plucker:
        for i in sorted(idx):
            for M in _subsets(idx - {i}, k - 1):
                for L in _subsets(idx - {i}, k):
                    p = FreePoly.one(-1)
                    for j in sorted(L):
                        p = p + q(i, j, M) * q(j, i, L - {j})
                    col.add(p, "Q:plucker")
    if include_skew:
        for N in _subsets(idx, k + 1):
            for i, j, m in ((a, b, c) for a in N for b in N for c in N if len({a, b, c}) == 3):
                col.add(q(i, j, N - {i, j}) * q(j, m, N - {j, m}) + q(i, m, N - {i, m}), "Q:skew")
    return Presentation(f"Q_{n}^({k})", n, k, _pair_gens("q", n, k, True), col.relations, OrderSpec("B", "deglex"))


def build_Q0(n: int, k: int, **kw) -> Presentation:
    return quadratic_part(build_Q(n, k, **kw), f"Q0_{n}^({k})")


def build_C(n: int, k: int) -> Presentation:
    """Quadratic dual of ``Q0_n^(k)`` from its explicit description.

    ``r_ij^K r_ab^L`` vanishes unless ``j == a`` and either ``K == L`` or
    ``i`` lies in ``L``; in the latter case the middle index may be
    exchanged for any other admissible one.
    """
    _check(n, k)
    gens = _pair_gens("r", n, k, True)
    col = _Collector()
    for g in gens:
        for h in gens:
            w = FreePoly.word((g, h))
            if g.j != h.i or (g.sup != h.sup and g.i not in h.sup):
                col.add(w, "C:zero")
                continue
            if g.sup == h.sup:
                continue
            i, j, M, l = g.i, g.j, set(g.sup), h.j
            total = set(h.sup) | {j, l}
            for jp in sorted(total - M - {i, l, j}):
                other = Gen("r", i, jp, g.sup), Gen("r", jp, l, tuple(total - {jp, l}))
                col.add(w - FreePoly.word(other), "C:exchange")
    return Presentation(f"C_{n}^({k})", n, k, gens, col.relations, OrderSpec("B", "deglex"))


# ---------------------------------------------------------------- colimits


def _colimit(n: int, k_max: int, family: str) -> Presentation:
    if k_max < 2 or k_max > n:
        raise InvalidParams(f"need 2 <= k_max <= n, got n={n}, k_max={k_max}")
    top = min(k_max, n - 1)
    gens: list[Gen] = []
    col = _Collector()
    for kk in range(2, top + 1):
        part = build_R(n, kk) if family == "R" else build_Q(n, kk)
        gens.extend(part.generators)
        for rel in part.relations:
            col.add(rel.poly, rel.source)
    q = lambda i, j, s: _label("q", i, j, s)  # noqa: E731
    idx = set(range(1, n + 1))
    for kk in range(2, top):
        for J in _subsets(idx, kk - 1):
            for i in sorted(idx - J):
                for j in sorted(idx - J - {i}):
                    if family == "R" and j < i:
                        continue
                    for m in sorted(idx - J - {i, j}):
                        if family == "R" and not i < m < j:
                            continue
                        p = q(i, j, J) - q(i, j, J | {m}) - q(i, m, J) * q(m, j, J | {i})
                        col.add(p, f"{family}:link")
    name = f"{family}_{n}^(<={k_max})"
    return Presentation(name, n, k_max, gens, col.relations, OrderSpec("colimit", "deglex"))


def build_R_colimit(n: int, k_max: int) -> Presentation:
    """Coproduct of ``R_n^(k')`` for ``2 <= k' <= k_max`` with linking relations."""
    return _colimit(n, k_max, "R")


def build_Q_colimit(n: int, k_max: int) -> Presentation:
    return _colimit(n, k_max, "Q")


# ---------------------------------------------------------------- flags


def _flag_gens(family: str, n: int, min_size: int) -> list[Gen]:
    out = []
    for size in range(min_size, n):
        for i in range(1, n + 1):
            for sup in combinations([x for x in range(1, n + 1) if x != i], size):
                out.append(Gen(family, i, None, sup))
                out.append(Gen(family, i, None, sup, True))
    return out


def build_F(n: int, *, min_size: int = 1) -> Presentation:
    """Flag algebra with generators ``f_{i,I}`` and formal inverses.

    ``min_size`` is the smallest admitted ``|I|``; relations referring to
    smaller index sets are omitted.
    """
    if n < 2:
        raise InvalidParams(f"need n >= 2, got n={n}")
    if min_size not in (0, 1):
        raise InvalidParams("min_size must be 0 or 1")
    gens = _flag_gens("f", n, min_size)
    declared = set(gens)
    idx = set(range(1, n + 1))

    def f(i, sup, inv=False):
        g = Gen("f", i, None, tuple(sup), inv)
        return FreePoly.gen(g) if g in declared else None

    col = _Collector()
    for g in gens:
        if g.inv:
            continue
        gi = g.inverse_label()
        col.add(FreePoly.word((g, gi)) - 1, "F:inverse")
        col.add(FreePoly.word((gi, g)) - 1, "F:inverse")
    for size in range(1, n):
        for i in sorted(idx):
            for I in _subsets(idx - {i}, size):
                for kk in sorted(I):
                    terms = [f(i, I), f(i, I - {kk}, True), f(kk, (I - {kk}) | {i}), f(kk, I - {kk}, True)]
                    if None in terms:
                        continue
                    col.add(terms[0] * terms[1] + terms[2] * terms[3], "F:exchange")
    for size in range(2, n + 1):
        for J in combinations(sorted(idx), size):
            p = FreePoly()
            for t in range(size):
                j, prev = J[t], J[t - 1]
                a, b = f(j, set(J) - {j}), f(j, set(J) - {j, prev}, True)
                if a is None or b is None:
                    p = None
                    break
                p = p + a * b
            if p is not None:
                col.add(p, "F:cycle")
    return Presentation(f"F_{n}", n, None, gens, col.relations, OrderSpec("G", "deglex"))


def build_F0(n: int, **kw) -> Presentation:
    return quadratic_part(build_F(n, **kw), f"F0_{n}")


def build_G(n: int, *, min_size: int = 1, variant: str = "relations") -> Presentation:
    """Dual flag algebra ``G_n`` from its explicit description.

    Words ``g g^-1`` and ``g^-1 g`` of one label survive, as do the words
    ``W(a, b) = g_{a,J-a} g^-1_{a,J-{a,b}}``.  ``variant="relations"``
    imposes ``W(a,b) = W(b,a)`` and equality along the cyclic order of
    ``J``; ``variant="rule"`` imposes ``W(i,k) = W(min J, i)`` for
    ``i != min J``.  All other degree-2 words vanish.
    """
    if n < 2:
        raise InvalidParams(f"need n >= 2, got n={n}")
    if variant not in ("relations", "rule"):
        raise InvalidParams(f"unknown G variant {variant!r}")
    gens = _flag_gens("g", n, min_size)
    declared = set(gens)
    idx = set(range(1, n + 1))

    def W(J, a, b):
        g = Gen("g", a, None, tuple(set(J) - {a}))
        h = Gen("g", a, None, tuple(set(J) - {a, b}), True)
        return (g, h) if g in declared and h in declared else None

    surviving = set()
    col = _Collector()
    for g in gens:
        surviving.add((g, g.inverse_label()))
    for size in range(2, n + 1):
        for J in combinations(sorted(idx), size):
            words = {(a, b): W(J, a, b) for a in J for b in J if a != b}
            if any(w is None for w in words.values()):
                continue
            surviving.update(words.values())
            if variant == "relations":
                for (a, b), w in words.items():
                    if a < b:
                        col.add(FreePoly.word(w) - FreePoly.word(words[b, a]), "G:exchange")
                for t in range(size):
                    cur = words[J[t], J[t - 1]]
                    nxt = words[J[(t + 1) % size], J[t]]
                    col.add(FreePoly.word(cur) - FreePoly.word(nxt), "G:cycle")
            else:
                m = J[0]
                for (a, b), w in words.items():
                    if a != m:
                        col.add(FreePoly.word(w) - FreePoly.word(words[m, a]), "G:rule")
    for g in gens:
        for h in gens:
            if (g, h) not in surviving:
                col.add(FreePoly.word((g, h)), "G:zero")
    return Presentation(f"G_{n}", n, None, gens, col.relations, OrderSpec("G", "deglex"))


BUILDERS = {
    "R": lambda n, k: build_R(n, k),
    "R0": lambda n, k: build_R0(n, k),
    "B": lambda n, k: build_B(n, k),
    "Q": lambda n, k: build_Q(n, k),
    "Q0": lambda n, k: build_Q0(n, k),
    "C": lambda n, k: build_C(n, k),
    "Rcolim": lambda n, k: build_R_colimit(n, k if k is not None else n),
    "Qcolim": lambda n, k: build_Q_colimit(n, k if k is not None else n),
    "F": lambda n, k: build_F(n),
    "F0": lambda n, k: build_F0(n),
    "G": lambda n, k: build_G(n),
}
