"""Exact arithmetic kernel.

Rationals come from :mod:`fractions`; this module adds rational quaternions
and dense exact linear algebra (row reduction, kernels, inverses) over any
division ring whose elements support ``+ - *`` and :func:`inverse`.

Row operations always act on the left, so over a non-commutative ring
``invert(M)`` returns the matrix ``X`` with ``X @ M == I`` (which, over a
division ring, is also a right inverse).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

__all__ = [
    "Fraction",
    "Quaternion",
    "Matrix",
    "SingularMatrix",
    "inverse",
    "is_zero",
    "rref",
    "rank",
    "kernel_basis",
    "invert",
    "det",
    "sparse_rref",
    "sparse_rank",
]


class SingularMatrix(ArithmeticError):
    """Raised when a matrix has no inverse."""


def _q(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


class Quaternion:
    """Quaternion ``a + b i + c j + d k`` with rational components."""

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a=0, b=0, c=0, d=0):
        self.a = _q(a)
        self.b = _q(b)
        self.c = _q(c)
        self.d = _q(d)

    @classmethod
    def coerce(cls, x) -> "Quaternion":
        if isinstance(x, Quaternion):
            return x
        return cls(x)

    @property
    def components(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return (self.a, self.b, self.c, self.d)

    def __repr__(self) -> str:
        return "Quaternion(%s, %s, %s, %s)" % tuple(str(c) for c in self.components)

    def __str__(self) -> str:
        parts = []
        for coef, unit in zip(self.components, ("", "i", "j", "k")):
            if coef:
                parts.append(f"{coef}{unit}")
        return " + ".join(parts) if parts else "0"

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Quaternion(other)
        if not isinstance(other, Quaternion):
            return NotImplemented
        return self.components == other.components

    def __hash__(self) -> int:
        if not (self.b or self.c or self.d):
            return hash(self.a)
        return hash(self.components)

    def __bool__(self) -> bool:
        return bool(self.a or self.b or self.c or self.d)

    def __neg__(self) -> "Quaternion":
        return Quaternion(-self.a, -self.b, -self.c, -self.d)

    def __add__(self, other) -> "Quaternion":
        o = Quaternion.coerce(other)
        return Quaternion(self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d)

    __radd__ = __add__

    def __sub__(self, other) -> "Quaternion":
        o = Quaternion.coerce(other)
        return Quaternion(self.a - o.a, self.b - o.b, self.c - o.c, self.d - o.d)

    def __rsub__(self, other) -> "Quaternion":
        return Quaternion.coerce(other) - self

    def __mul__(self, other) -> "Quaternion":
        if isinstance(other, (int, Fraction)):
            return Quaternion(self.a * other, self.b * other, self.c * other, self.d * other)
        o = Quaternion.coerce(other)
        a1, b1, c1, d1 = self.a, self.b, self.c, self.d
        a2, b2, c2, d2 = o.a, o.b, o.c, o.d
        return Quaternion(
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        )

    def __rmul__(self, other) -> "Quaternion":
        # scalars are central
        return Quaternion.coerce(other) * self

    def conj(self) -> "Quaternion":
        return Quaternion(self.a, -self.b, -self.c, -self.d)

    def norm(self) -> Fraction:
        """Reduced norm ``a^2 + b^2 + c^2 + d^2``."""
        return self.a * self.a + self.b * self.b + self.c * self.c + self.d * self.d

    def inverse(self) -> "Quaternion":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("quaternion 0 has no inverse")
        c = self.conj()
        return Quaternion(c.a / n, c.b / n, c.c / n, c.d / n)


I = Quaternion(0, 1, 0, 0)
J = Quaternion(0, 0, 1, 0)
K = Quaternion(0, 0, 0, 1)


def inverse(x):
    """Two-sided inverse of a nonzero field or quaternion element."""
    if isinstance(x, Quaternion):
        return x.inverse()
    if x == 0:
        raise ZeroDivisionError("0 has no inverse")
    return 1 / _q(x)


def is_zero(x) -> bool:
    return not x


@dataclass(frozen=True)
class Matrix:
    """Immutable dense matrix with exact entries (``Fraction`` or ``Quaternion``)."""

    rows: tuple[tuple, ...]

    @classmethod
    def of(cls, rows: Iterable[Iterable]) -> "Matrix":
        data = tuple(tuple(_coerce_entry(x) for x in row) for row in rows)
        if data and any(len(r) != len(data[0]) for r in data):
            raise ValueError("ragged matrix")
        return cls(data)

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "Matrix":
        return cls(tuple(tuple(Fraction(0) for _ in range(ncols)) for _ in range(nrows)))

    @classmethod
    def identity(cls, n: int, one=Fraction(1)) -> "Matrix":
        zero = one - one
        return cls(tuple(tuple(one if r == c else zero for c in range(n)) for r in range(n)))

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def __getitem__(self, idx):
        r, c = idx
        return self.rows[r][c]

    def column(self, c: int) -> tuple:
        return tuple(row[c] for row in self.rows)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "Matrix":
        return Matrix(tuple(tuple(self.rows[r][c] for c in cols) for r in rows))

    def transpose(self) -> "Matrix":
        return Matrix(tuple(zip(*self.rows))) if self.rows else self

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        cols = other.transpose().rows
        out = []
        for row in self.rows:
            out_row = []
            for col in cols:
                acc = row[0] * col[0] if row else Fraction(0)
                for x, y in zip(row[1:], col[1:]):
                    acc = acc + x * y
                out_row.append(acc)
            out.append(tuple(out_row))
        return Matrix(tuple(out))

    def apply(self, vec: Sequence) -> tuple:
        return tuple(sum((x * v for x, v in zip(row, vec)), Fraction(0)) for row in self.rows)

    def is_identity(self) -> bool:
        return all(
            (x == 1) if r == c else is_zero(x)
            for r, row in enumerate(self.rows)
            for c, x in enumerate(row)
        )


def _coerce_entry(x):
    if isinstance(x, (Fraction, Quaternion)):
        return x
    return Fraction(x)


def rref(m: Matrix) -> tuple[Matrix, int, tuple[int, ...]]:
    """Reduced row echelon form over the entries' division ring.

    Returns ``(reduced, rank, pivot_columns)``.
    """
    rows = [list(r) for r in m.rows]
    nrows, ncols = m.shape
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if not is_zero(rows[i][c])), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = inverse(rows[r][c])
        rows[r] = [inv * x for x in rows[r]]
        for i in range(nrows):
            if i != r and not is_zero(rows[i][c]):
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return Matrix(tuple(tuple(row) for row in rows)), r, tuple(pivots)


def rank(m: Matrix) -> int:
    return rref(m)[1]


def kernel_basis(m: Matrix) -> list[tuple]:
    """Basis of ``{v : M v = 0}`` for a rational matrix ``M``."""
    reduced, rk, pivots = rref(m)
    ncols = m.ncols
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row_idx, pc in enumerate(pivots):
            v[pc] = -reduced.rows[row_idx][f]
        basis.append(tuple(v))
    return basis


def invert(m: Matrix) -> Matrix:
    """Inverse by Gauss-Jordan elimination with row operations on the left."""
    n = m.nrows
    if n != m.ncols:
        raise ValueError("only square matrices can be inverted")
    if n == 0:
        return m
    sample = m.rows[0][0]
    one = Quaternion(1) if isinstance(sample, Quaternion) else Fraction(1)
    zero = one - one
    aug = [list(row) + [one if r == c else zero for c in range(n)] for r, row in enumerate(m.rows)]
    for c in range(n):
        p = next((i for i in range(c, n) if not is_zero(aug[i][c])), None)
        if p is None:
            raise SingularMatrix(f"no pivot in column {c}")
        aug[c], aug[p] = aug[p], aug[c]
        inv = inverse(aug[c][c])
        aug[c] = [inv * x for x in aug[c]]
        for i in range(n):
            if i != c and not is_zero(aug[i][c]):
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[c])]
    return Matrix(tuple(tuple(row[n:]) for row in aug))


def det(m: Matrix) -> Fraction:
    """Determinant of a square matrix over a commutative field."""
    n = m.nrows
    if n != m.ncols:
        raise ValueError("determinant of a non-square matrix")
    rows = [list(r) for r in m.rows]
    result = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if rows[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            rows[c], rows[p] = rows[p], rows[c]
            result = -result
        piv = rows[c][c]
        result *= piv
        for i in range(c + 1, n):
            if rows[i][c] != 0:
                f = rows[i][c] / piv
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[c])]
    return result


# Sparse rows: dict column_key -> Fraction.  Column keys are ordered by
# ``key`` (smaller key = further left); pivots are the leftmost entries.


def sparse_rref(rows: Iterable[dict], key=None) -> list[dict]:
    """Reduced row echelon form of sparse rational rows.

    The pivot of a row is its entry with the smallest ``key``; each returned
    row has pivot coefficient 1 and no other row has a nonzero entry in its
    pivot column.  The result is sorted by pivot and is a canonical form of
    the row space.
    """
    if key is None:
        key = lambda c: c  # noqa: E731
    basis: dict = {}  # pivot column -> row
    users: dict = {}  # column -> pivots of basis rows with an entry there
    for row in rows:
        vec = {c: Fraction(v) for c, v in row.items() if v}
        for piv in [c for c in vec if c in basis]:
            f = vec.get(piv)
            if f:
                _axpy(vec, -f, basis[piv])
        if not vec:
            continue
        piv = min(vec, key=key)
        inv = 1 / vec[piv]
        vec = {c: v * inv for c, v in vec.items()}
        for other_piv in list(users.get(piv, ())):
            other = basis[other_piv]
            f = other.get(piv)
            if not f:
                continue
            before = set(other)
            _axpy(other, -f, vec)
            after = set(other)
            for c in before - after:
                users[c].discard(other_piv)
            for c in after - before:
                users.setdefault(c, set()).add(other_piv)
        basis[piv] = vec
        for c in vec:
            users.setdefault(c, set()).add(piv)
    return [basis[p] for p in sorted(basis, key=key)]


def _axpy(target: dict, f, src: dict) -> None:
    for c, v in src.items():
        nv = target.get(c, 0) + f * v
        if nv:
            target[c] = nv
        else:
            target.pop(c, None)


def sparse_rank(rows: Iterable[dict]) -> int:
    return len(sparse_rref(rows))
