"""Hilbert series: normal-word counts, series inversion and closed forms.

Series are exact integer coefficient tuples ``(a_0, ..., a_D)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Sequence

from .groebner import NotConfluent, RewriteSystem, normal_words

__all__ = [
    "NotQuadratic",
    "OutOfRange",
    "dims_by_enumeration",
    "dims_by_transfer_matrix",
    "transfer_matrix",
    "series_reciprocal",
    "closed_form_B2_coefficient",
    "closed_form_B2_dims",
    "RationalForm",
    "RecursionReport",
    "recursion_check",
    "koszul_identity",
]


class NotQuadratic(ValueError):
    pass


class OutOfRange(ValueError):
    pass


def dims_by_enumeration(S: RewriteSystem, D: int) -> tuple[int, ...]:
    """``a_d`` = number of normal words of degree ``d`` (listed one by one)."""
    if S.confluent_up_to < D:
        raise NotConfluent(f"system certified only up to degree {S.confluent_up_to}")
    return tuple(len(normal_words(S, d, check=False)) for d in range(D + 1))


def transfer_matrix(S: RewriteSystem) -> tuple[list[int], list[list[int]]]:
    """Normal generators and the 0/1 matrix ``T[g][h] = 1`` iff ``gh`` is normal."""
    if not S.is_quadratic:
        raise NotQuadratic(f"leading words of length {S.max_lead_length}")
    letters = [x for x in range(len(S.gens)) if (x,) not in S.rules]
    T = [[0 if (g, h) in S.rules else 1 for h in letters] for g in letters]
    return letters, T


def dims_by_transfer_matrix(S: RewriteSystem, D: int) -> tuple[int, ...]:
    """``a_d = 1^T T^(d-1) 1`` for a quadratic Gröbner basis."""
    if S.confluent_up_to < D and not S.fully_confluent:
        raise NotConfluent(f"system certified only up to degree {S.confluent_up_to}")
    if () in S.rules:
        return (0,) * (D + 1)
    letters, T = transfer_matrix(S)
    out = [1]
    v = [1] * len(letters)
    for d in range(1, D + 1):
        if d > 1:
            v = [sum(v[g] * T[g][h] for g in range(len(v)) if v[g]) for h in range(len(v))]
        out.append(sum(v))
    return tuple(out)


def series_reciprocal(dims: Sequence[int], D: int) -> tuple[int, ...]:
    """Coefficients of ``1 / sum_d (-1)^d a_d t^d`` up to ``t^D``."""
    if not dims or dims[0] != 1:
        raise ValueError("series must start with 1")
    b = [1]
    for m in range(1, D + 1):
        b.append(sum((-1) ** (d + 1) * dims[d] * b[m - d] for d in range(1, min(m, len(dims) - 1) + 1)))
    return tuple(b)


def closed_form_B2_coefficient(n: int, l: int) -> int:
    """Closed-form count ``h_(n-l)`` of degree ``n-l`` normal words of the k=2 dual."""
    if n < 3 or not 1 <= l <= n - 1:
        raise OutOfRange(f"need n >= 3 and 1 <= l <= n-1, got n={n}, l={l}")
    return comb(n, l - 1) * (l - 1 + sum((i + l) * 2**i for i in range(n - l - 1)))


def closed_form_B2_dims(n: int) -> tuple[int, ...]:
    """``(1, h_1, ..., h_(n-1))``."""
    return (1,) + tuple(closed_form_B2_coefficient(n, n - m) for m in range(1, n))


@dataclass(frozen=True)
class RationalForm:
    """``numerator / denominator`` as integer coefficient tuples."""

    numerator: tuple[int, ...]
    denominator: tuple[int, ...]

    def __post_init__(self):
        if not self.denominator or self.denominator[0] != 1:
            raise ValueError("denominator must have constant term 1")

    @classmethod
    def koszul(cls, dual_dims: Sequence[int]) -> "RationalForm":
        """``1 / H_dual(-t)``."""
        den = [(-1) ** d * a for d, a in enumerate(dual_dims)]
        while len(den) > 1 and den[-1] == 0:
            den.pop()
        return cls((1,), tuple(den))

    def expand(self, D: int) -> tuple[int, ...]:
        b: list[int] = []
        for m in range(D + 1):
            num = self.numerator[m] if m < len(self.numerator) else 0
            b.append(num - sum(self.denominator[j] * b[m - j] for j in range(1, min(m, len(self.denominator) - 1) + 1)))
        return tuple(b)

    def to_json(self) -> dict:
        return {"numerator": list(self.numerator), "denominator": list(self.denominator)}

    def __str__(self) -> str:
        def poly(c):
            out = ""
            for d, a in enumerate(c):
                if not a:
                    continue
                mono = "" if d == 0 else ("t" if d == 1 else f"t^{d}")
                mag = str(abs(a)) if (abs(a) != 1 or d == 0) else ""
                term = f"{mag}*{mono}" if mag and mono else (mag or mono)
                out += (" - " if a < 0 else " + ") + term if out else ("-" if a < 0 else "") + term
            return out or "0"
        return f"({poly(self.numerator)}) / ({poly(self.denominator)})"


@dataclass
class RecursionReport:
    """Linear recursion read off a denominator, checked against a sequence."""

    coefficients: tuple[int, ...]  # a_m = sum_j c_j a_(m-j)
    start: int
    checked: list[int] = field(default_factory=list)
    failures: list[tuple[int, int, int]] = field(default_factory=list)  # (m, predicted, actual)

    @property
    def ok(self) -> bool:
        return not self.failures

    def text(self) -> str:
        terms = []
        for j, c in enumerate(self.coefficients, start=1):
            if c:
                mag = "" if abs(c) == 1 else f"{abs(c)}*"
                terms.append(("-" if c < 0 else "+") + f" {mag}a_(m-{j})")
        body = " ".join(terms).lstrip("+ ")
        return f"a_m = {body or '0'}"

    def to_json(self) -> dict:
        return {
            "recursion": self.text(),
            "coefficients": list(self.coefficients),
            "valid_from": self.start,
            "checked": self.checked,
            "failures": [{"m": m, "predicted": p, "actual": a} for m, p, a in self.failures],
            "ok": self.ok,
        }


def recursion_check(dims: Sequence[int], form: RationalForm) -> RecursionReport:
    """Check ``a_m = -sum_j den_j a_(m-j)`` for every ``m`` past the numerator degree."""
    coeffs = tuple(-c for c in form.denominator[1:])
    start = max(len(form.numerator), len(coeffs))
    rep = RecursionReport(coeffs, start)
    for m in range(start, len(dims)):
        pred = sum(c * dims[m - j] for j, c in enumerate(coeffs, start=1))
        rep.checked.append(m)
        if pred != dims[m]:
            rep.failures.append((m, pred, dims[m]))
    return rep


def koszul_identity(a_dims: Sequence[int], dual_dims: Sequence[int], M: int) -> tuple[int, ...]:
    """``sum_j (-1)^j b_j a_(m-j)`` for ``m = 0..M``; a Koszul pair gives ``(1, 0, ..., 0)``."""
    if len(a_dims) <= M:
        raise OutOfRange(f"need {M + 1} coefficients of the algebra, got {len(a_dims)}")
    b = lambda j: dual_dims[j] if j < len(dual_dims) else 0  # noqa: E731
    return tuple(sum((-1) ** j * b(j) * a_dims[m - j] for j in range(m + 1)) for m in range(M + 1))
