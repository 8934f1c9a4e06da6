"""Evaluate quasi-Plücker, flag and Plücker coordinates on concrete matrices.

Matrices live over the rationals or the rational quaternions.  Every
relation of a presentation can be substituted with these values; exact
arithmetic means a correct relation leaves a residual of exactly zero.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .exactmath import Matrix, Quaternion, SingularMatrix, det, inverse, invert, is_zero
from .freealg import FreePoly, Gen
from .presentations import Presentation

__all__ = [
    "Undefined",
    "ShapeMismatch",
    "quasideterminant",
    "quasi_minor",
    "quasi_plucker",
    "flag_coordinate",
    "classical_plucker",
    "verify_classical",
    "Evaluator",
    "RelationReport",
    "verify_presentation_numerically",
    "random_matrix",
    "random_generic_matrix",
]


class Undefined(ArithmeticError):
    """The requested coordinate does not exist for this matrix."""


class ShapeMismatch(ValueError):
    pass


def quasideterminant(m: Matrix, p: int, q: int):
    """The ``(p, q)`` quasideterminant ``((M^-1)_{qp})^-1`` (0-based indices)."""
    if m.nrows != m.ncols:
        raise ShapeMismatch("quasideterminants need a square matrix")
    try:
        inv = invert(m)
    except SingularMatrix as exc:
        raise Undefined(str(exc)) from exc
    entry = inv[q, p]
    if is_zero(entry):
        raise Undefined(f"inverse entry ({q},{p}) vanishes")
    return inverse(entry)


def quasi_minor(a: Matrix, s: int, first: int, rest: Sequence[int]):
    """``|A(first, rest)|_{s, first}``: columns ``first, *rest`` (1-based), row ``s`` (1-based)."""
    cols = [first - 1] + [c - 1 for c in rest]
    sub = a.submatrix(range(a.nrows), cols)
    return quasideterminant(sub, s - 1, 0)


def quasi_plucker(a: Matrix, i: int, j: int, I, s: int | None = None):
    """``q_ij^I(A)``; with ``s=None`` every row is tried and the defined values must agree."""
    I = tuple(sorted(I))
    k = a.nrows
    if len(I) != k - 1:
        raise ShapeMismatch(f"superscript {I} does not have size {k - 1}")
    if i in I:
        raise Undefined(f"q_{i}{j}^{I}: first index lies in the superscript")
    zero = a[0, 0] - a[0, 0]
    if j in I:
        return zero
    if i == j:
        return zero + 1
    rows = [s] if s is not None else range(1, k + 1)
    values = []
    for row in rows:
        try:
            left = quasi_minor(a, row, i, I)
            right = quasi_minor(a, row, j, I)
        except Undefined:
            continue
        values.append(inverse(left) * right)
    if not values:
        raise Undefined(f"q_{i}{j}^{I}: no row gives defined quasiminors")
    if any(v != values[0] for v in values[1:]):
        raise AssertionError(f"q_{i}{j}^{I} depends on the row choice: {values}")
    return values[0]


def flag_coordinate(a: Matrix, i: int, I):
    """``f_{i,I}(A)``: last-row quasideterminant on the first ``|I|+1`` rows."""
    I = tuple(sorted(I))
    if i in I:
        raise Undefined("flag coordinate index lies in its set")
    rows = len(I) + 1
    if rows > a.nrows:
        raise ShapeMismatch(f"f_{i},{I} needs {rows} rows")
    sub = a.submatrix(range(rows), [i - 1] + [c - 1 for c in I])
    return quasideterminant(sub, rows - 1, 0)


def classical_plucker(a: Matrix, I: Sequence[int]) -> Fraction:
    """Determinant of the columns ``I`` (in the given order, 1-based)."""
    if len(I) != a.nrows:
        raise ShapeMismatch(f"need {a.nrows} columns, got {len(I)}")
    return det(a.submatrix(range(a.nrows), [c - 1 for c in I]))


def verify_classical(a: Matrix, I: Sequence[int], J: Sequence[int]) -> Fraction:
    """Residual of ``sum_t (-1)^t p_{I|j_t} p_{J - j_t}`` (zero when the identity holds)."""
    k = a.nrows
    if len(I) != k - 1 or len(J) != k + 1:
        raise ShapeMismatch("need |I| = k-1 and |J| = k+1")
    total = Fraction(0)
    for t, jt in enumerate(J, start=1):
        cols_left = list(I) + [jt]
        cols_right = [x for x in J if x != jt]
        if len(set(cols_left)) < k:
            continue
        total += (-1) ** t * classical_plucker(a, cols_left) * classical_plucker(a, cols_right)
    return total


# ---------------------------------------------------------------- matrices


def random_matrix(rows: int, cols: int, ring: str, rng: random.Random, bound: int = 3) -> Matrix:
    """Entries ``a/b`` with ``|a| <= 3*bound``, ``1 <= b <= bound`` (rational) or integer quaternions."""

    def entry():
        if ring == "rational":
            return Fraction(rng.randint(-3 * bound, 3 * bound), rng.randint(1, bound))
        return Quaternion(*(rng.randint(-bound, bound) for _ in range(4)))

    return Matrix(tuple(tuple(entry() for _ in range(cols)) for _ in range(rows)))


def _is_generic(a: Matrix) -> bool:
    """Every leading-row square submatrix of every size is invertible."""
    for size in range(1, a.nrows + 1):
        for cols in combinations(range(a.ncols), size):
            try:
                invert(a.submatrix(range(size), cols))
            except SingularMatrix:
                return False
            # quasideterminants need every inverse entry nonzero
            inv = invert(a.submatrix(range(size), cols))
            if any(is_zero(x) for row in inv.rows for x in row):
                return False
    return True


def random_generic_matrix(rows: int, cols: int, ring: str, rng: random.Random, bound: int = 3, tries: int = 200) -> Matrix:
    """Seeded random matrix, redrawn until all coordinates are defined."""
    for _ in range(tries):
        a = random_matrix(rows, cols, ring, rng, bound)
        if _is_generic(a):
            return a
    raise Undefined(f"no generic {rows}x{cols} {ring} matrix after {tries} draws")


# ---------------------------------------------------------------- relations


class Evaluator:
    """Caches coordinate values of one matrix and substitutes them into words.

    For ``q`` labels the superscript size fixes how many rows are used: a
    label with ``|I| = k'-1`` is evaluated on the first ``k'`` rows.
    """

    def __init__(self, a: Matrix):
        self.a = a
        self._cache: dict[Gen, object] = {}
        sample = a[0, 0]
        self.one = Quaternion(1) if isinstance(sample, Quaternion) else Fraction(1)
        self.zero = self.one - self.one

    def rows(self, count: int) -> Matrix:
        if count > self.a.nrows:
            raise ShapeMismatch(f"need {count} rows, matrix has {self.a.nrows}")
        return self.a.submatrix(range(count), range(self.a.ncols))

    def value(self, g: Gen):
        if g in self._cache:
            return self._cache[g]
        if g.family in ("q", "r"):
            v = quasi_plucker(self.rows(len(g.sup) + 1), g.i, g.j, g.sup)
        else:
            v = flag_coordinate(self.a, g.i, g.sup)
            if g.inv:
                v = inverse(v)
        self._cache[g] = v
        return v

    def evaluate(self, p: FreePoly):
        total = self.zero
        for w, c in p:
            term = self.one * c
            for g in w:
                term = term * self.value(g)
            total = total + term
        return total


@dataclass
class RelationReport:
    presentation: str
    checked: int = 0
    skipped: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {
            "presentation": self.presentation,
            "checked": self.checked,
            "skipped": self.skipped,
            "failures": [{"relation": str(p), "residual": str(r)} for p, r in self.failures],
            "ok": self.ok,
        }


def verify_presentation_numerically(p: Presentation, a: Matrix, report: RelationReport | None = None) -> RelationReport:
    """Substitute the coordinates of ``a`` into every relation of ``p``.

    Relations whose evaluation hits an undefined coordinate are skipped
    and counted, not failed.
    """
    needed = _rows_needed(p)
    if needed > a.nrows or p.n > a.ncols:
        raise ShapeMismatch(f"{p.name} needs at least {needed}x{p.n}, matrix is {a.nrows}x{a.ncols}")
    report = report or RelationReport(p.name)
    ev = Evaluator(a)
    for rel in p.relations:
        try:
            res = ev.evaluate(rel.poly)
        except Undefined:
            report.skipped += 1
            continue
        report.checked += 1
        if not is_zero(res):
            report.failures.append((rel.poly, res))
    return report


def _rows_needed(p: Presentation) -> int:
    return max((len(g.sup) + 1 for g in p.generators), default=1)
