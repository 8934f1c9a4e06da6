"""The differential on the k=2 dual algebra and its homology.

On generators

    d(r_ij^k) = -sum_{i<l<j} (r_il^k r_lj^k + r_il^k r_lj^i) + [i<k<j] sum_{l != i,k} r_ik^l r_kj^i

with every term containing an invalid label (superscript meeting the
subscripts) dropped.  ``d`` is extended by the graded Leibniz rule and
images are reduced in the monomial algebra.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .exactmath import sparse_rank
from .freealg import FreePoly, Gen, word_str
from .groebner import RewriteSystem, complete, normal_form, normal_words, orient
from .presentations import InvalidParams, build_B

__all__ = [
    "Differential",
    "build_differential",
    "DifferentialReport",
    "check_differential",
    "ChainComplexDims",
    "homology_dims",
]


def _r(i: int, j: int, k: int) -> Gen | None:
    if i == j or k in (i, j):
        return None
    return Gen("r", i, j, (k,))


def _term(*labels) -> FreePoly:
    if any(g is None for g in labels):
        return FreePoly()
    return FreePoly.word(tuple(labels))


def _raw_image(n: int, g: Gen) -> FreePoly:
    i, j, (k,) = g.i, g.j, g.sup
    out = FreePoly()
    for l in range(i + 1, j):
        out = out - _term(_r(i, l, k), _r(l, j, k)) - _term(_r(i, l, k), _r(l, j, i))
    if i < k < j:
        for l in range(1, n + 1):
            if l not in (i, k):
                out = out + _term(_r(i, k, l), _r(k, j, i))
    return out


@dataclass
class Differential:
    n: int
    images: dict[Gen, FreePoly]
    system: RewriteSystem

    def reduce(self, p: FreePoly) -> FreePoly:
        return normal_form(p, self.system)

    def of_word(self, w: tuple) -> FreePoly:
        """Leibniz: ``d(g_1...g_m) = sum_t (-1)^(t-1) g_1..g_(t-1) d(g_t) g_(t+1)..g_m``."""
        out = FreePoly()
        for t, g in enumerate(w):
            img = self.images[g]
            if not img:
                continue
            piece = FreePoly.word(w[:t]) * img * FreePoly.word(w[t + 1:])
            out = out + (piece if t % 2 == 0 else -piece)
        return self.reduce(out)

    def __call__(self, p: FreePoly) -> FreePoly:
        out = FreePoly()
        for w, c in p:
            out = out + c * self.of_word(w)
        return self.reduce(out)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "images": {str(g): self.images[g].to_json() for g in self.system.gens},
        }


def build_differential(n: int) -> Differential:
    if n < 3:
        raise InvalidParams(f"the differential needs n >= 3, got {n}")
    p = build_B(n, 2)
    S = complete(orient(p), 3).rules
    images = {g: normal_form(_raw_image(n, g), S) for g in p.generators}
    return Differential(n, images, S)


@dataclass
class DifferentialReport:
    n: int
    checked: int = 0
    failures: list = field(default_factory=list)  # (check, word, residual)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "checked": self.checked,
            "ok": self.ok,
            "failures": [{"check": c, "word": word_str(w), "residual": str(r)} for c, w, r in self.failures],
        }


def check_differential(D: Differential) -> DifferentialReport:
    """Well-definedness on zero words, ``d^2 = 0`` on generators and on all normal words."""
    rep = DifferentialReport(D.n)
    gens = D.system.gens
    for g in gens:
        for h in gens:
            w = (g, h)
            if normal_form(FreePoly.word(w), D.system) == FreePoly.word(w):
                continue
            res = D.reduce(D.images[g] * FreePoly.gen(h) - FreePoly.gen(g) * D.images[h])
            rep.checked += 1
            if res:
                rep.failures.append(("well-defined", w, res))
    for d in range(1, D.n):
        for w in normal_words(D.system, d, check=False):
            rep.checked += 1
            res = D(D.of_word(w))
            if res:
                rep.failures.append(("d^2", w, res))
    return rep


@dataclass
class ChainComplexDims:
    n: int
    dims: list[int]
    ranks: list[int]  # rank of d: B_d -> B_(d+1)
    homology: list[int]
    matrices: list | None = None

    @property
    def euler_algebra(self) -> int:
        return sum((-1) ** d * a for d, a in enumerate(self.dims))

    @property
    def euler_homology(self) -> int:
        return sum((-1) ** d * a for d, a in enumerate(self.homology))

    def to_json(self) -> dict:
        out = {
            "n": self.n,
            "dims": self.dims,
            "ranks": self.ranks,
            "homology": self.homology,
            "euler_algebra": self.euler_algebra,
            "euler_homology": self.euler_homology,
        }
        if self.matrices is not None:
            out["matrices"] = self.matrices
        return out


def homology_dims(n: int, *, with_matrices: bool = False, differential: Differential | None = None) -> ChainComplexDims:
    D = differential or build_differential(n)
    bases = [normal_words(D.system, d, check=False) for d in range(n + 1)]
    while bases and not bases[-1]:
        bases.pop()
    enc = lambda w: tuple(D.system.rank[g] for g in w)  # noqa: E731
    ranks, mats = [], []
    for d, basis in enumerate(bases):
        rows = []
        for w in basis:
            img = D.of_word(w) if d else FreePoly()
            rows.append({enc(u): c for u, c in img})
        ranks.append(sparse_rank(rows))
        if with_matrices and d + 1 < len(bases):
            target = [enc(u) for u in bases[d + 1]]
            mats.append([[str(row.get(u, 0)) for u in target] for row in rows])
    dims = [len(b) for b in bases]
    homology = [dims[d] - ranks[d] - (ranks[d - 1] if d else 0) for d in range(len(dims))]
    while len(homology) > 1 and homology[-1] == 0:
        homology.pop()
    return ChainComplexDims(n, dims, ranks, homology, mats if with_matrices else None)
