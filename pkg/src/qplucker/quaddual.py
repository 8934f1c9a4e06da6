"""Quadratic duals by exact linear algebra on the degree-2 component.

The pairing is ``<x (x) y, xi (x) eta> = <x, xi><y, eta>`` with no sign, so
a word pairs to 1 with its dual word and to 0 with every other word.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exactmath import sparse_rref
from .freealg import FreePoly, Gen, OrderSpec
from .presentations import Presentation, Relation

__all__ = [
    "GeneratorMismatch",
    "QuadraticData",
    "quadratic_data",
    "relation_space",
    "quadratic_dual",
    "DualComparison",
    "verify_dual_matches",
]


class GeneratorMismatch(ValueError):
    pass


@dataclass
class QuadraticData:
    generators: list[Gen]
    rows: list[dict]  # canonical basis of the degree-2 relation space

    @property
    def dimension(self) -> int:
        return len(self.rows)

    @property
    def ambient(self) -> int:
        return len(self.generators) ** 2


def _word_key(order: OrderSpec):
    wk = order.word_key()

    class Desc:
        __slots__ = ("k",)

        def __init__(self, w):
            self.k = wk(w)

        def __lt__(self, other):
            return self.k > other.k

    return Desc


def relation_space(polys, order: OrderSpec) -> list[dict]:
    """Canonical (reduced echelon) basis of the span of degree-2 parts.

    Pivots are the largest words under ``order``.
    """
    rows = [dict(p.homogeneous_part(2).terms) for p in polys]
    return sparse_rref(rows, key=_word_key(order))


def quadratic_data(p: Presentation) -> QuadraticData:
    return QuadraticData(list(p.generators), relation_space(p.polys, p.order))


def quadratic_dual(p: Presentation, name: str | None = None) -> Presentation:
    """Presentation of ``A^!``: dual generators, relations spanning ``R^perp``.

    Words outside the support of ``R`` pair to zero with all of ``R`` and
    become monomial relations; on the support the annihilator is read off
    the reduced echelon form of ``R``.
    """
    data = quadratic_data(p)
    gens = p.generators
    support: set = set()
    for row in data.rows:
        support.update(row)
    perp: list[dict] = []
    for g in gens:
        for h in gens:
            if (g, h) not in support:
                perp.append({(g, h): Fraction(1)})
    pivots = {}
    key = _word_key(p.order)
    for row in data.rows:
        piv = min(row, key=key)
        pivots[piv] = row
    free_cols: dict = {}
    for piv, row in pivots.items():
        for w, c in row.items():
            if w != piv:
                free_cols.setdefault(w, []).append((piv, c))
    for w in support:
        if w in pivots:
            continue
        vec = {w: Fraction(1)}
        for piv, c in free_cols.get(w, ()):
            vec[piv] = -c
        perp.append(vec)
    dual = lambda w: tuple(g.dual() for g in w)  # noqa: E731
    perp = [{dual(w): c for w, c in v.items()} for v in perp]
    canon = sparse_rref(perp, key=key)
    relations = [Relation(FreePoly(row), "dual") for row in canon]
    return Presentation(name or f"({p.name})^!", p.n, p.k, [g.dual() for g in gens], relations, p.order)


@dataclass
class DualComparison:
    equal: bool
    rank_a: int
    rank_b: int
    rank_union: int
    witness: FreePoly | None = None
    witness_side: str = ""

    def to_json(self) -> dict:
        return {
            "equal": self.equal,
            "rank_a": self.rank_a,
            "rank_b": self.rank_b,
            "rank_union": self.rank_union,
            "witness": str(self.witness) if self.witness is not None else None,
            "witness_side": self.witness_side,
        }


def verify_dual_matches(computed: Presentation, expected: Presentation) -> DualComparison:
    """Exact comparison of the degree-2 relation spaces of two presentations."""
    if set(computed.generators) != set(expected.generators):
        raise GeneratorMismatch(f"{computed.name} and {expected.name} have different generators")
    order = computed.order
    a = relation_space(computed.polys, order)
    b = relation_space(expected.polys, order)
    union = sparse_rref(a + b, key=_word_key(order))
    cmp = DualComparison(a == b, len(a), len(b), len(union))
    if cmp.equal:
        return cmp
    key = _word_key(order)
    for side, rows, other in (("computed", a, b), ("expected", b, a)):
        for r in rows:
            if len(sparse_rref(other + [dict(r)], key=key)) > len(other):
                cmp.witness = FreePoly(r)
                cmp.witness_side = side
                return cmp
    return cmp
