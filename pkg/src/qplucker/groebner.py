"""Degree-bounded non-commutative Gröbner bases (Bergman/Buchberger style).

Words are interned as tuples of generator ranks so that comparisons are
plain tuple comparisons.  Reduction is leftmost-innermost: the leftmost
occurrence of a leading word is rewritten first, the shortest one if
several start at the same position.
"""

from __future__ import annotations

import heapq
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .freealg import FreePoly, Gen, OrderSpec, word_str
from .presentations import Presentation, quadratic_part

__all__ = [
    "TieOnLeadingWord",
    "NotConfluent",
    "InconsistentPresentation",
    "RewriteSystem",
    "Obstruction",
    "GroebnerReport",
    "orient",
    "normal_form",
    "complete",
    "normal_words",
    "count_normal_words",
    "ConsistencyReport",
    "check_nonhomogeneous_consistency",
]

sys.setrecursionlimit(max(sys.getrecursionlimit(), 10000))


class TieOnLeadingWord(ValueError):
    pass


class NotConfluent(RuntimeError):
    pass


class InconsistentPresentation(RuntimeError):
    pass


class RewriteSystem:
    """Rules ``leading word -> combination of strictly smaller words``."""

    def __init__(self, generators: Iterable[Gen], order: OrderSpec):
        self.order = order
        self.gens: list[Gen] = sorted(generators, key=order.gen_key)
        self.rank: dict[Gen, int] = {g: r for r, g in enumerate(self.gens)}
        if order.word_rule == "deglex":
            self.key = lambda w: (len(w), w)
        else:
            self.key = lambda w: (len(w), tuple(-x for x in reversed(w)))
        self.rules: dict[tuple, dict[tuple, Fraction]] = {}
        self._by_len: dict[int, set] = {}
        self._rhs_index: dict[tuple, set] = {}
        self._cache: dict[tuple, dict] = {}
        self.confluent_up_to: int = 0
        self.fully_confluent = False

    # -- conversion ---------------------------------------------------------

    def encode(self, p: FreePoly) -> dict[tuple, Fraction]:
        return {tuple(self.rank[g] for g in w): c for w, c in p}

    def decode(self, d: dict) -> FreePoly:
        out = FreePoly()
        out.terms = {tuple(self.gens[x] for x in w): c for w, c in d.items()}
        return out

    def decode_word(self, w: tuple) -> tuple:
        return tuple(self.gens[x] for x in w)

    def copy(self) -> "RewriteSystem":
        other = RewriteSystem(self.gens, self.order)
        for lead, rhs in self.rules.items():
            other._install(lead, dict(rhs))
        other.confluent_up_to = self.confluent_up_to
        other.fully_confluent = self.fully_confluent
        return other

    # -- rule bookkeeping ---------------------------------------------------

    @property
    def max_lead_length(self) -> int:
        return max(self._by_len, default=0)

    @property
    def is_quadratic(self) -> bool:
        return self.max_lead_length <= 2

    @property
    def inconsistent(self) -> bool:
        """True when ``1`` lies in the ideal."""
        return () in self.rules

    def _install(self, lead: tuple, rhs: dict) -> None:
        self.rules[lead] = rhs
        self._by_len.setdefault(len(lead), set()).add(lead)
        for w in rhs:
            for sub in _subwords(w):
                self._rhs_index.setdefault(sub, set()).add(lead)
        self._cache.clear()

    def _uninstall(self, lead: tuple) -> dict:
        rhs = self.rules.pop(lead)
        bucket = self._by_len[len(lead)]
        bucket.discard(lead)
        if not bucket:
            del self._by_len[len(lead)]
        for w in rhs:
            for sub in _subwords(w):
                s = self._rhs_index.get(sub)
                if s is not None:
                    s.discard(lead)
        self._cache.clear()
        return rhs

    def find(self, w: tuple):
        """Leftmost-innermost occurrence ``(start, length)`` of a leading word, or None."""
        lengths = sorted(self._by_len)
        rules = self.rules
        for start in range(len(w) + 1):
            for ln in lengths:
                if start + ln > len(w):
                    break
                if w[start:start + ln] in rules:
                    return start, ln
        return None

    def is_normal(self, w: tuple) -> bool:
        return self.find(w) is None

    def reduce_word(self, w: tuple) -> dict:
        hit = self._cache.get(w)
        if hit is not None:
            return hit
        pos = self.find(w)
        if pos is None:
            res = {w: Fraction(1)}
        else:
            s, ln = pos
            head, tail = w[:s], w[s + ln:]
            res: dict = {}
            for t, c in self.rules[w[s:s + ln]].items():
                for u, d in self.reduce_word(head + t + tail).items():
                    nv = res.get(u, 0) + c * d
                    if nv:
                        res[u] = nv
                    else:
                        res.pop(u, None)
        self._cache[w] = res
        return res

    def reduce(self, p: dict) -> dict:
        res: dict = {}
        for w, c in p.items():
            for u, d in self.reduce_word(w).items():
                nv = res.get(u, 0) + c * d
                if nv:
                    res[u] = nv
                else:
                    res.pop(u, None)
        return res

    def steps(self, w: tuple) -> int:
        """Length of the longest rewriting chain from ``w`` to its normal form."""
        pos = self.find(w)
        if pos is None:
            return 0
        s, ln = pos
        rhs = self.rules[w[s:s + ln]]
        return 1 + max((self.steps(w[:s] + t + w[s + ln:]) for t in rhs), default=0)

    def add(self, p: dict) -> tuple | None:
        """Reduce ``p``, install it as a rule and interreduce.  Returns the new lead."""
        queue = [p]
        first_lead = None
        while queue:
            poly = self.reduce(queue.pop())
            if not poly:
                continue
            lead = max(poly, key=self.key)
            c = poly[lead]
            rhs = {w: -v / c for w, v in poly.items() if w != lead}
            if first_lead is None:
                first_lead = lead
            # rules whose leading word contains the new one must be redone;
            # ``poly`` is reduced, so only strictly longer leads can
            longer = [o for ln, b in self._by_len.items() if ln > len(lead) for o in b]
            for other in [o for o in longer if _contains(o, lead)]:
                orhs = self._uninstall(other)
                back = dict(orhs)
                back = {w: -v for w, v in back.items()}
                back[other] = Fraction(1)
                queue.append(back)
            self._install(lead, rhs)
            # right-hand sides mentioning the new leading word
            for other in list(self._rhs_index.get(lead, ())):
                if other not in self.rules or other == lead:
                    continue
                orhs = self._uninstall(other)
                self._install(other, self.reduce(orhs))
        return first_lead

    def rules_json(self) -> list[dict]:
        out = []
        for lead in sorted(self.rules, key=self.key):
            rhs = self.rules[lead]
            out.append({
                "lead": word_str(self.decode_word(lead)),
                "rhs": [[str(c), word_str(self.decode_word(w))] for w, c in sorted(rhs.items(), key=lambda t: self.key(t[0]), reverse=True)],
            })
        return out


def _subwords(w: tuple):
    n = len(w)
    for a in range(n):
        for b in range(a + 1, n + 1):
            yield w[a:b]


def _contains(big: tuple, small: tuple) -> bool:
    n = len(small)
    return any(big[s:s + n] == small for s in range(len(big) - n + 1))


def orient(p: Presentation, order: OrderSpec | None = None) -> RewriteSystem:
    """Turn relations into interreduced rewrite rules under ``order``."""
    order = order or p.order
    S = RewriteSystem(p.generators, order)
    keys = [S.encode(r.poly) for r in p.relations]
    for poly in keys:
        ks = [S.key(w) for w in poly]
        if len(set(ks)) != len(ks):
            raise TieOnLeadingWord(f"two words of one relation compare equal under {order}")
    from .exactmath import sparse_rref

    # linear interreduction first: largest word = pivot
    neg = lambda w: _Desc(S.key(w))  # noqa: E731
    for row in sparse_rref(keys, key=neg):
        S.add(row)
    return S


class _Desc:
    __slots__ = ("k",)

    def __init__(self, k):
        self.k = k

    def __lt__(self, other):
        return self.k > other.k

    def __eq__(self, other):
        return self.k == other.k

    def __hash__(self):
        return hash(self.k)


def normal_form(p: FreePoly, S: RewriteSystem) -> FreePoly:
    return S.decode(S.reduce(S.encode(p)))


@dataclass
class Obstruction:
    degree: int
    word: tuple
    remainder: FreePoly

    def to_json(self) -> dict:
        return {"degree": self.degree, "word": word_str(self.word), "remainder": self.remainder.to_json()}


@dataclass
class GroebnerReport:
    rules: RewriteSystem
    max_degree: int
    obstructions: list[Obstruction] = field(default_factory=list)
    confluent_up_to: int = 0
    fully_confluent: bool = False
    pairs_checked: int = 0
    max_rewrite_steps: int = 0
    truncated: bool = False

    @property
    def quadratic_gb(self) -> bool:
        return not self.obstructions and self.rules.is_quadratic and not self.truncated

    def to_json(self) -> dict:
        return {
            "rules": self.rules.rules_json(),
            "rule_count": len(self.rules.rules),
            "max_degree": self.max_degree,
            "obstructions": [o.to_json() for o in self.obstructions],
            "confluent_up_to": self.confluent_up_to,
            "fully_confluent": self.fully_confluent,
            "quadratic_gb": self.quadratic_gb,
            "pairs_checked": self.pairs_checked,
            "max_rewrite_steps": self.max_rewrite_steps,
            "truncated": self.truncated,
        }


def _ambiguities(S: RewriteSystem, a: tuple, leads_by_first: dict, max_degree: int):
    """Overlaps of ``a`` with every rule (both sides) and inclusions."""
    out = []
    for ov in range(1, len(a)):
        suffix = a[len(a) - ov:]
        for b in leads_by_first.get(suffix[0], ()):
            if len(b) > ov and b[:ov] == suffix and len(a) + len(b) - ov <= max_degree:
                out.append((len(a) + len(b) - ov, a, b, ov))
    for b_first, group in leads_by_first.items():
        for b in group:
            if b == a:
                continue
            for ov in range(1, len(b)):
                if len(a) > ov and b[len(b) - ov:] == a[:ov] and len(a) + len(b) - ov <= max_degree:
                    out.append((len(a) + len(b) - ov, b, a, ov))
    return out


def complete(S: RewriteSystem, max_degree: int = 6, *, record_steps: bool = False) -> GroebnerReport:
    """Resolve every overlap ambiguity whose word has degree ``<= max_degree``.

    Nonzero remainders become new rules and are logged as obstructions.
    The input system is not modified.
    """
    if max_degree < 3:
        raise ValueError("max_degree must be at least 3")
    S = S.copy()
    report = GroebnerReport(S, max_degree)
    heap: list = []
    counter = 0

    def by_first():
        idx: dict = {}
        for lead in S.rules:
            if lead:
                idx.setdefault(lead[0], []).append(lead)
        return idx

    idx = by_first()
    seen = set()
    # two monomial rules always resolve; an empty right side stays empty
    for a in list(S.rules):
        if not a:
            continue
        mono_a = not S.rules[a]
        for ov in range(1, len(a)):
            suffix = a[len(a) - ov:]
            for b in idx.get(suffix[0], ()):
                if mono_a and not S.rules[b]:
                    continue
                if len(b) > ov and b[:ov] == suffix and len(a) + len(b) - ov <= max_degree:
                    counter += 1
                    heapq.heappush(heap, (len(a) + len(b) - ov, counter, a, b, ov))
    while heap:
        deg, _, a, b, ov = heapq.heappop(heap)
        if a not in S.rules or b not in S.rules:
            continue
        if (a, b, ov) in seen:
            continue
        seen.add((a, b, ov))
        report.pairs_checked += 1
        ra, rb = S.rules[a], S.rules[b]
        if not ra and not rb:
            continue
        head, tail = a[:len(a) - ov], b[ov:]
        left = {w + tail: c for w, c in ra.items()}
        right = {head + w: c for w, c in rb.items()}
        if record_steps:
            sa = 1 + max((S.steps(w) for w in left), default=0)
            sb = 1 + max((S.steps(w) for w in right), default=0)
            report.max_rewrite_steps = max(report.max_rewrite_steps, sa, sb)
        diff = S.reduce(left)
        for w, v in S.reduce(right).items():
            nv = diff.get(w, 0) - v
            if nv:
                diff[w] = nv
            else:
                diff.pop(w, None)
        if not diff:
            continue
        report.obstructions.append(Obstruction(deg, S.decode_word(head + b), S.decode(diff)))
        before = set(S.rules)
        S.add(diff)
        idx = by_first()
        for new in set(S.rules) - before:
            if not new:
                continue
            for amb in _ambiguities(S, new, idx, max_degree):
                if not S.rules[amb[1]] and not S.rules[amb[2]]:
                    continue
                counter += 1
                heapq.heappush(heap, (amb[0], counter) + amb[1:])
        if S.inconsistent:
            break
    # every ambiguity has degree <= 2L - 1 for leading words of length <= L
    longest = S.max_lead_length
    report.fully_confluent = 2 * longest - 1 <= max_degree
    report.truncated = not report.fully_confluent and bool(report.obstructions)
    report.confluent_up_to = max_degree
    S.confluent_up_to = 10**9 if report.fully_confluent else max_degree
    S.fully_confluent = report.fully_confluent
    return report


def normal_words(S: RewriteSystem, d: int, *, check: bool = True) -> list[tuple]:
    """All degree-``d`` words containing no leading word (as label tuples)."""
    if check and S.confluent_up_to < d:
        raise NotConfluent(f"system certified only up to degree {S.confluent_up_to}")
    out = []
    for w in _walk(S, d):
        out.append(S.decode_word(w))
    return out


def _walk(S: RewriteSystem, d: int):
    n = len(S.gens)
    maxlen = S.max_lead_length
    if () in S.rules:
        return
    stack = [()]
    while stack:
        w = stack.pop()
        if len(w) == d:
            yield w
            continue
        for x in range(n - 1, -1, -1):
            nw = w + (x,)
            if _suffix_ok(S, nw, maxlen):
                stack.append(nw)


def _suffix_ok(S: RewriteSystem, w: tuple, maxlen: int) -> bool:
    rules = S.rules
    for ln in range(1, min(maxlen, len(w)) + 1):
        if w[len(w) - ln:] in rules:
            return False
    return True


def count_normal_words(S: RewriteSystem, D: int) -> list[int]:
    """Number of normal words in each degree ``0..D``.

    Dynamic programming over the last ``L-1`` letters, ``L`` the longest
    leading word, so nothing is enumerated explicitly.
    """
    if () in S.rules:
        return [0] * (D + 1)
    maxlen = max(S.max_lead_length, 1)
    n = len(S.gens)
    counts = [1]
    states: dict[tuple, int] = {(): 1}
    for d in range(1, D + 1):
        nxt: dict[tuple, int] = {}
        for suffix, c in states.items():
            for x in range(n):
                w = suffix + (x,)
                if not _suffix_ok(S, w, maxlen):
                    continue
                key = w[max(0, len(w) - (maxlen - 1)):] if maxlen > 1 else ()
                nxt[key] = nxt.get(key, 0) + c
        states = nxt
        counts.append(sum(states.values()))
    return counts


# ---------------------------------------------------------------- filtered


@dataclass
class ConsistencyReport:
    presentation: str
    max_degree: int
    unit_survives: bool
    filtered_counts: list[int]
    graded_counts: list[int]
    filtered_report: GroebnerReport
    graded_report: GroebnerReport

    @property
    def ok(self) -> bool:
        return self.unit_survives and self.filtered_counts == self.graded_counts

    def to_json(self) -> dict:
        return {
            "presentation": self.presentation,
            "max_degree": self.max_degree,
            "unit_survives": self.unit_survives,
            "filtered_counts": self.filtered_counts,
            "graded_counts": self.graded_counts,
            "filtered_obstructions": len(self.filtered_report.obstructions),
            "graded_obstructions": len(self.graded_report.obstructions),
            "ok": self.ok,
        }


def check_nonhomogeneous_consistency(p: Presentation, order: OrderSpec | None = None, max_degree: int = 4,
                                     *, raise_on_failure: bool = True) -> ConsistencyReport:
    """Compare normal-word counts of ``p`` with those of its quadratic part.

    Equality up to ``max_degree`` together with ``1`` surviving certifies
    that the associated graded algebra agrees with the quadratic algebra
    in those degrees.
    """
    order = order or p.order
    bound = max(max_degree, 3)
    filtered = complete(orient(p, order), bound)
    graded = complete(orient(quadratic_part(p), order), bound)
    unit = not filtered.rules.inconsistent
    report = ConsistencyReport(
        p.name, max_degree, unit,
        count_normal_words(filtered.rules, max_degree),
        count_normal_words(graded.rules, max_degree),
        filtered, graded,
    )
    if raise_on_failure and not report.ok:
        raise InconsistentPresentation(
            f"{p.name}: unit survives={unit}, counts {report.filtered_counts} vs {report.graded_counts}")
    return report
