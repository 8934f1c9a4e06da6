"""Free associative algebra over the rationals.

Generators are :class:`Gen` labels, words are tuples of labels and
polynomials are :class:`FreePoly` (a canonical word -> coefficient map).
Monomial orders are described by :class:`OrderSpec`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Mapping

__all__ = [
    "Gen",
    "Word",
    "FreePoly",
    "OrderSpec",
    "IncomparableFamilies",
    "compare_generators",
    "compare_words",
    "poly_mul",
    "parse_gen",
    "word_str",
    "parse_word",
]

FAMILIES = ("q", "r", "f", "g")


class IncomparableFamilies(ValueError):
    pass


@dataclass(frozen=True)
class Gen:
    """A generator label such as ``q_{ij}^I`` or ``f_{i,I}^{-1}``.

    ``j`` is ``None`` for the flag families ``f`` and ``g``; ``inv`` marks
    the formal inverse generators of those families.
    """

    family: str
    i: int
    j: int | None
    sup: tuple[int, ...]
    inv: bool = False

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        sup = tuple(sorted(self.sup))
        if len(set(sup)) != len(sup):
            raise ValueError(f"repeated index in superscript {self.sup}")
        object.__setattr__(self, "sup", sup)
        if self.i in sup:
            raise ValueError(f"first index {self.i} lies in superscript {sup}")
        if self.family in ("q", "r"):
            if self.j is None or self.inv:
                raise ValueError(f"{self.family}-generators need two subscripts and no inverse")
            if self.j == self.i or self.j in sup:
                raise ValueError(f"{self.family}[{self.i},{self.j}|{sup}] is not a generator")
        elif self.j is not None:
            raise ValueError(f"{self.family}-generators have a single subscript")

    @property
    def size(self) -> int:
        return len(self.sup)

    def __str__(self) -> str:
        sup = ",".join(map(str, self.sup))
        if self.j is None:
            head = self.family + ("^-1" if self.inv else "")
            return f"{head}[{self.i}|{sup}]"
        return f"{self.family}[{self.i},{self.j}|{sup}]"

    __repr__ = __str__

    def dual(self) -> "Gen":
        """The dual basis label (q <-> r, f <-> g)."""
        fam = {"q": "r", "r": "q", "f": "g", "g": "f"}[self.family]
        return Gen(fam, self.i, self.j, self.sup, self.inv)

    def inverse_label(self) -> "Gen":
        if self.j is not None:
            raise ValueError("only flag generators have formal inverses")
        return Gen(self.family, self.i, None, self.sup, not self.inv)


_GEN_RE = re.compile(r"^(q|r|f|g)(\^-1)?\[(\d+)(?:,(\d+))?\|([\d,]*)\]$")


def parse_gen(text: str) -> Gen:
    m = _GEN_RE.match(text.strip())
    if not m:
        raise ValueError(f"cannot parse generator {text!r}")
    fam, inv, i, j, sup = m.groups()
    sup_t = tuple(int(x) for x in sup.split(",")) if sup else ()
    return Gen(fam, int(i), int(j) if j is not None else None, sup_t, bool(inv))


Word = tuple  # tuple[Gen, ...]; the empty tuple is the unit


def word_str(w: Word) -> str:
    return "*".join(map(str, w)) if w else "1"


def parse_word(text: str) -> Word:
    text = text.strip()
    if text in ("", "1"):
        return ()
    return tuple(parse_gen(t) for t in text.split("*"))


class FreePoly:
    """Finite rational combination of words, kept without zero terms."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Word, object] | Iterable[tuple[Word, object]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Word, Fraction] = {}
        for w, c in items:
            c = Fraction(c)
            if not c:
                continue
            nv = acc.get(w, 0) + c
            if nv:
                acc[w] = nv
            else:
                acc.pop(w, None)
        self.terms = acc

    @classmethod
    def word(cls, w: Word, coef=1) -> "FreePoly":
        return cls({tuple(w): coef})

    @classmethod
    def gen(cls, g: Gen, coef=1) -> "FreePoly":
        return cls({(g,): coef})

    @classmethod
    def one(cls, coef=1) -> "FreePoly":
        return cls({(): coef})

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = FreePoly.one(other)
        if not isinstance(other, FreePoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __iter__(self) -> Iterator[tuple[Word, Fraction]]:
        return iter(self.terms.items())

    def __len__(self) -> int:
        return len(self.terms)

    def __add__(self, other: "FreePoly") -> "FreePoly":
        return FreePoly(list(self.terms.items()) + list(_as_poly(other).terms.items()))

    __radd__ = __add__

    def __neg__(self) -> "FreePoly":
        return FreePoly({w: -c for w, c in self.terms.items()})

    def __sub__(self, other: "FreePoly") -> "FreePoly":
        return self + (-_as_poly(other))

    def __rsub__(self, other) -> "FreePoly":
        return _as_poly(other) - self

    def __mul__(self, other) -> "FreePoly":
        if isinstance(other, (int, Fraction)):
            return FreePoly({w: c * other for w, c in self.terms.items()})
        return poly_mul(self, _as_poly(other))

    def __rmul__(self, other) -> "FreePoly":
        if isinstance(other, (int, Fraction)):
            return self * other
        return poly_mul(_as_poly(other), self)

    def degree(self) -> int:
        """Maximal word length; -1 for the zero polynomial."""
        return max((len(w) for w in self.terms), default=-1)

    def homogeneous_part(self, d: int) -> "FreePoly":
        return FreePoly({w: c for w, c in self.terms.items() if len(w) == d})

    def coefficient(self, w: Word) -> Fraction:
        return self.terms.get(tuple(w), Fraction(0))

    def generators(self) -> set[Gen]:
        return {g for w in self.terms for g in w}

    def map_generators(self, fn: Callable[[Gen], "FreePoly"]) -> "FreePoly":
        """Substitute every generator by a polynomial."""
        out = FreePoly()
        for w, c in self.terms.items():
            term = FreePoly.one(c)
            for g in w:
                term = term * fn(g)
                if not term:
                    break
            out = out + term
        return out

    def sorted_terms(self, spec: "OrderSpec | None" = None) -> list[tuple[Word, Fraction]]:
        """Terms from the largest word to the smallest."""
        if spec is None:
            return sorted(self.terms.items(), key=lambda t: (len(t[0]), [str(g) for g in t[0]]), reverse=True)
        key = spec.word_key()
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=True)

    def to_json(self, spec: "OrderSpec | None" = None) -> list[list[str]]:
        return [[str(c), word_str(w)] for w, c in self.sorted_terms(spec)]

    @classmethod
    def from_json(cls, data: Iterable[Iterable[str]]) -> "FreePoly":
        return cls((parse_word(w), Fraction(c)) for c, w in data)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for w, c in self.sorted_terms():
            parts.append(f"{c}*{word_str(w)}" if c != 1 else word_str(w))
        return " + ".join(parts)

    __repr__ = __str__


def _as_poly(x) -> FreePoly:
    if isinstance(x, FreePoly):
        return x
    if isinstance(x, Gen):
        return FreePoly.gen(x)
    return FreePoly.one(x)


def poly_mul(p: FreePoly, q: FreePoly) -> FreePoly:
    acc: dict[Word, Fraction] = {}
    for u, a in p.terms.items():
        for v, b in q.terms.items():
            w = u + v
            nv = acc.get(w, 0) + a * b
            if nv:
                acc[w] = nv
            else:
                acc.pop(w, None)
    out = FreePoly()
    out.terms = acc
    return out


# ---------------------------------------------------------------- orders

SCHEMES = ("B", "colimit", "colimit-desc", "G", "custom")
WORD_RULES = ("deglex", "degrevlex")


@dataclass(frozen=True)
class OrderSpec:
    """Generator order scheme plus a graded word rule.

    ``B``: lex on ``(i, j)``, then lex on the superscript.
    ``colimit``: smaller superscripts first, then ``B``.
    ``colimit-desc``: larger superscripts first, then ``B``.
    ``G``: lex on ``(|I|, i, I)`` with each generator before its inverse.
    ``custom``: position in ``permutation``.
    """

    scheme: str = "B"
    word_rule: str = "deglex"
    permutation: tuple = field(default=())

    def __post_init__(self):
        if self.scheme not in SCHEMES:
            raise ValueError(f"unknown order scheme {self.scheme!r}")
        if self.word_rule not in WORD_RULES:
            raise ValueError(f"unknown word rule {self.word_rule!r}")

    def gen_key(self, g: Gen):
        if self.scheme == "custom":
            return (self.permutation.index(g),)
        if self.scheme == "B":
            return (g.i, g.j if g.j is not None else -1, g.sup, g.inv)
        if self.scheme == "colimit":
            return (len(g.sup), g.i, g.j if g.j is not None else -1, g.sup, g.inv)
        if self.scheme == "colimit-desc":
            return (-len(g.sup), g.i, g.j if g.j is not None else -1, g.sup, g.inv)
        return (len(g.sup), g.i, g.sup, g.inv)

    def word_key(self, rank: Mapping[Gen, int] | None = None):
        """Key function on words; ``rank`` (generator -> int) speeds it up."""
        gk = rank.__getitem__ if rank is not None else self.gen_key
        if self.word_rule == "deglex":
            return lambda w: (len(w), tuple(gk(g) for g in w))
        return lambda w: (len(w), tuple(_Rev(gk(g)) for g in reversed(w)))

    def to_json(self) -> dict:
        d = {"scheme": self.scheme, "word_rule": self.word_rule}
        if self.scheme == "custom":
            d["permutation"] = [str(g) for g in self.permutation]
        return d

    @classmethod
    def from_json(cls, data: Mapping) -> "OrderSpec":
        perm = tuple(parse_gen(s) for s in data.get("permutation", ()))
        return cls(data["scheme"], data["word_rule"], perm)


class _Rev:
    """Wrapper reversing the comparison of its payload."""

    __slots__ = ("v",)

    def __init__(self, v):
        self.v = v

    def __lt__(self, other):
        return other.v < self.v

    def __eq__(self, other):
        return self.v == other.v

    def __gt__(self, other):
        return other.v > self.v


def _sign(a, b) -> int:
    return (a > b) - (a < b)


def compare_generators(a: Gen, b: Gen, spec: OrderSpec) -> int:
    """-1, 0 or 1 as ``a`` is smaller than, equal to or larger than ``b``."""
    if a.family != b.family:
        raise IncomparableFamilies(f"{a} and {b} belong to different families")
    return _sign(spec.gen_key(a), spec.gen_key(b))


def compare_words(u: Word, v: Word, spec: OrderSpec) -> int:
    """Graded comparison: degree first, then the word rule."""
    if len(u) != len(v):
        return _sign(len(u), len(v))
    if spec.word_rule == "deglex":
        pairs = zip(u, v)
        flip = 1
    else:
        pairs = zip(reversed(u), reversed(v))
        flip = -1
    for a, b in pairs:
        c = compare_generators(a, b, spec)
        if c:
            return flip * c
    return 0
