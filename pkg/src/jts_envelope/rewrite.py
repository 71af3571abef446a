"""Two-sided ideal rewriting in the free algebra.

A :class:`RewriteSystem` is a finite set of monic rules ``lead -> tail`` with
every tail word deglex-smaller than its lead. Rewriting a word replaces one
occurrence of a lead by the tail. When all overlap ambiguities resolve
(Groebner-Shirshov basis), normal forms are unique and the irreducible words
form a linear basis of the quotient algebra.

Reduction strategy: the deglex-greatest reducible word of a polynomial is
rewritten at the leftmost position where a lead occurs, using the greatest
lead starting there. Since the step chosen for a word depends only on the
word, this is the linear extension of a memoised per-word normal form, which
is how it is computed.
"""

from __future__ import annotations

import heapq
import logging
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .freealg import NcPoly, Word, format_poly, format_word, parse_poly, parse_word, word_key

__all__ = [
    "Rule",
    "RewriteSystem",
    "NormalWordBasis",
    "CompletionStats",
    "IncompleteSystemError",
    "DimensionCapExceeded",
    "normal_form",
    "overlaps",
    "complete",
    "normal_words",
    "unresolved_overlaps",
    "format_system",
    "parse_system",
]

log = logging.getLogger(__name__)

Terms = Dict[Word, Fraction]

COMPLETE = "complete"
INCOMPLETE = "incomplete"


class IncompleteSystemError(ValueError):
    """Raised when an operation needs a confluent (complete) system."""


class DimensionCapExceeded(RuntimeError):
    """Normal-word enumeration did not close below the cap."""


@dataclass(frozen=True)
class Rule:
    lead: Word
    tail: NcPoly

    def __post_init__(self):
        k = word_key(self.lead)
        for w in self.tail.words():
            if word_key(w) >= k:
                raise ValueError(
                    f"tail word {format_word(w)} is not below lead {format_word(self.lead)}"
                )

    def as_poly(self) -> NcPoly:
        """``lead - tail``, the ideal element the rule represents."""
        return NcPoly.from_word(self.lead) - self.tail

    def __str__(self):
        return f"{format_word(self.lead)} => {format_poly(self.tail)}"


def _contains(w: Word, sub: Word) -> bool:
    n, m = len(w), len(sub)
    return any(w[i:i + m] == sub for i in range(n - m + 1))


def _axpy(acc: Terms, c: Fraction, terms: Terms) -> None:
    for w, d in terms.items():
        v = acc.get(w, 0) + c * d
        if v:
            acc[w] = v
        else:
            acc.pop(w, None)


class _Reducer:
    """Lead lookup plus memoised word normal forms for a mutable rule set."""

    def __init__(self):
        self.tails: Dict[Word, Terms] = {}
        self._len_count: Dict[int, int] = {}
        self._lengths: Tuple[int, ...] = ()
        self.memo: Dict[Word, Terms] = {}

    def add(self, lead: Word, tail: Terms) -> None:
        self.tails[lead] = tail
        n = len(lead)
        self._len_count[n] = self._len_count.get(n, 0) + 1
        self._lengths = tuple(sorted(self._len_count, reverse=True))
        self.memo.clear()

    def remove(self, lead: Word) -> None:
        del self.tails[lead]
        n = len(lead)
        self._len_count[n] -= 1
        if not self._len_count[n]:
            del self._len_count[n]
        self._lengths = tuple(sorted(self._len_count, reverse=True))
        self.memo.clear()

    def set_tail(self, lead: Word, tail: Terms) -> None:
        self.tails[lead] = tail
        self.memo.clear()

    def find(self, w: Word) -> Optional[Tuple[int, Word]]:
        """Leftmost occurrence of a lead in ``w``; longest lead wins at a position."""
        tails = self.tails
        n = len(w)
        for start in range(n):
            for m in self._lengths:
                if start + m <= n:
                    sub = w[start:start + m]
                    if sub in tails:
                        return start, sub
        return None

    def word_nf(self, w: Word) -> Terms:
        memo = self.memo
        hit = memo.get(w)
        if hit is not None:
            return hit
        stack = [w]
        while stack:
            u = stack[-1]
            if u in memo:
                stack.pop()
                continue
            occ = self.find(u)
            if occ is None:
                memo[u] = {u: Fraction(1)}
                stack.pop()
                continue
            pos, lead = occ
            pre, suf = u[:pos], u[pos + len(lead):]
            tail = self.tails[lead]
            children = [(pre + t + suf, c) for t, c in tail.items()]
            missing = [v for v, _ in children if v not in memo]
            if missing:
                stack.extend(missing)
                continue
            acc: Terms = {}
            for v, c in children:
                _axpy(acc, c, memo[v])
            memo[u] = acc
            stack.pop()
        return memo[w]

    def nf(self, terms: Terms) -> Terms:
        acc: Terms = {}
        for w, c in terms.items():
            _axpy(acc, c, self.word_nf(w))
        return acc


def _overlap_words(a: Word, b: Word) -> List[int]:
    """Lengths ``k`` with suffix of ``a`` equal to prefix of ``b`` (proper overlaps)."""
    top = min(len(a), len(b))
    return [k for k in range(1, top) if a[-k:] == b[:k]]


def _mul_word(terms: Terms, left: Word, right: Word) -> Terms:
    return {left + w + right: c for w, c in terms.items()}


def _composition(lead_a: Word, tail_a: Terms, lead_b: Word, tail_b: Terms, k: int) -> Terms:
    # (a - ta) * b[k:] - a[:-k] * (b - tb); the overlap word cancels
    acc = {w: -c for w, c in _mul_word(tail_a, (), lead_b[k:]).items()}
    _axpy(acc, Fraction(1), _mul_word(tail_b, lead_a[:-k], ()))
    return acc


def _terms_of(x: NcPoly) -> Terms:
    return x._terms


def overlaps(r1: Rule, r2: Rule) -> List[NcPoly]:
    """Compositions (S-polynomials) of two rules.

    One composition per proper overlap (a suffix of one lead equal to a
    prefix of the other, in both orders), plus one per occurrence of one lead
    inside the other. A rule paired with itself yields its self-overlaps once.
    """
    a, ta = r1.lead, _terms_of(r1.tail)
    b, tb = r2.lead, _terms_of(r2.tail)
    same = r1 == r2
    out = [NcPoly(_composition(a, ta, b, tb, k)) for k in _overlap_words(a, b)]
    if not same:
        out += [NcPoly(_composition(b, tb, a, ta, k)) for k in _overlap_words(b, a)]
        for big, tbig, small, tsmall in ((a, ta, b, tb), (b, tb, a, ta)):
            m = len(small)
            for i in range(len(big) - m + 1):
                if big[i:i + m] == small and (big, i) != (small, 0):
                    acc = {w: -c for w, c in tbig.items()}
                    _axpy(acc, Fraction(1), _mul_word(tsmall, big[:i], big[i + m:]))
                    out.append(NcPoly(acc))
    return out


@dataclass
class CompletionStats:
    rules_added: int = 0
    rules_removed: int = 0
    compositions_processed: int = 0
    compositions_nonzero: int = 0
    max_degree_processed: int = 0
    elapsed_s: float = 0.0


class RewriteSystem:
    """A finite, interreduced rewrite system presenting ``F<alphabet> / I``.

    ``status`` is ``"complete"`` when every composition of every rule pair
    reduces to zero; otherwise ``"incomplete"`` and ``offending_degree`` holds
    the degree of the first unprocessed composition.
    """

    def __init__(
        self,
        rules: Iterable[Rule],
        alphabet: Sequence[Tuple[int, int]],
        status: str = INCOMPLETE,
        max_degree: Optional[int] = None,
        offending_degree: Optional[int] = None,
        stats: Optional[CompletionStats] = None,
    ):
        self.alphabet: Tuple[Tuple[int, int], ...] = tuple(sorted(tuple(g) for g in alphabet))
        self._red = _Reducer()
        for r in sorted(rules, key=lambda r: word_key(r.lead)):
            if r.lead in self._red.tails:
                raise ValueError(f"duplicate lead {format_word(r.lead)}")
            self._red.add(r.lead, dict(_terms_of(r.tail)))
        if status not in (COMPLETE, INCOMPLETE):
            raise ValueError(f"bad status {status!r}")
        self.status = status
        self.max_degree = max_degree
        self.offending_degree = offending_degree
        self.stats = stats or CompletionStats()

    @classmethod
    def from_rules(cls, rules: Iterable[Rule], alphabet: Sequence[Tuple[int, int]]) -> "RewriteSystem":
        """Wrap hand-written rules; status is decided by an overlap check."""
        S = cls(rules, alphabet)
        S.status = COMPLETE if not unresolved_overlaps(S) else INCOMPLETE
        return S

    @property
    def rules(self) -> List[Rule]:
        return [
            Rule(lead, NcPoly._raw(dict(tail)))
            for lead, tail in sorted(self._red.tails.items(), key=lambda kv: word_key(kv[0]))
        ]

    @property
    def leads(self) -> List[Word]:
        return sorted(self._red.tails, key=word_key)

    @property
    def is_complete(self) -> bool:
        return self.status == COMPLETE

    def __len__(self):
        return len(self._red.tails)

    def is_reducible(self, w: Word) -> bool:
        return self._red.find(tuple(w)) is not None

    def normal_form(self, x: NcPoly) -> NcPoly:
        return NcPoly._raw(self._red.nf(_terms_of(x)))

    def reduces_to_zero(self, x: NcPoly) -> bool:
        return not self._red.nf(_terms_of(x))

    def __repr__(self):
        return f"<RewriteSystem rules={len(self)} status={self.status}>"


def normal_form(x: NcPoly, S: RewriteSystem) -> NcPoly:
    return S.normal_form(x)


def unresolved_overlaps(S: RewriteSystem) -> List[Tuple[Word, Word, NcPoly]]:
    """Recheck every composition of every rule pair; return the nonzero ones.

    Independent of how ``S`` was produced: an empty result certifies local
    confluence, hence (by the diamond lemma) unique normal forms.
    """
    rules = S.rules
    bad = []
    for i, r1 in enumerate(rules):
        for r2 in rules[i:]:
            for comp in overlaps(r1, r2):
                nf = S.normal_form(comp)
                if nf:
                    bad.append((r1.lead, r2.lead, nf))
    return bad


class _Completion:
    def __init__(self, max_degree: int):
        self.max_degree = max_degree
        self.red = _Reducer()
        self.lead_of: Dict[int, Word] = {}
        self.id_of: Dict[Word, int] = {}
        self.prefix: Dict[Word, set] = {}
        self.suffix: Dict[Word, set] = {}
        self.heap: List[Tuple[int, int, int, int, int]] = []
        self._next_id = 0
        self._counter = 0
        self.stats = CompletionStats()

    # -- rule bookkeeping --
    def _index(self, rid: int, lead: Word, add: bool) -> None:
        for k in range(1, len(lead)):
            for table, key in ((self.prefix, lead[:k]), (self.suffix, lead[-k:])):
                if add:
                    table.setdefault(key, set()).add(rid)
                else:
                    ids = table[key]
                    ids.discard(rid)
                    if not ids:
                        del table[key]

    def _remove(self, rid: int) -> Terms:
        lead = self.lead_of.pop(rid)
        del self.id_of[lead]
        tail = self.red.tails[lead]
        self.red.remove(lead)
        self._index(rid, lead, add=False)
        self.stats.rules_removed += 1
        out = {w: -c for w, c in tail.items()}
        out[lead] = Fraction(1)
        return out

    def _push_pairs(self, rid: int) -> None:
        a = self.lead_of[rid]
        found = []
        for k in range(1, len(a)):
            for other in self.prefix.get(a[-k:], ()):
                if len(self.lead_of[other]) > k:
                    found.append((len(a) + len(self.lead_of[other]) - k, rid, other, k))
            for other in self.suffix.get(a[:k], ()):
                if other != rid and len(self.lead_of[other]) > k:
                    found.append((len(a) + len(self.lead_of[other]) - k, other, rid, k))
        found.sort()
        for deg, r1, r2, k in found:
            heapq.heappush(self.heap, (deg, self._counter, r1, r2, k))
            self._counter += 1

    def insert(self, terms: Terms) -> None:
        work = [terms]
        while work:
            t = self.red.nf(work.pop())
            if not t:
                continue
            lead = max(t, key=word_key)
            c = t[lead]
            tail = {w: -v / c for w, v in t.items() if w != lead}
            for rid, other in list(self.lead_of.items()):
                if len(other) >= len(lead) and _contains(other, lead):
                    work.append(self._remove(rid))
            rid = self._next_id
            self._next_id += 1
            self.lead_of[rid] = lead
            self.id_of[lead] = rid
            self.red.add(lead, tail)
            self._index(rid, lead, add=True)
            self.stats.rules_added += 1
            # keep tails irreducible
            for other, otail in list(self.red.tails.items()):
                if other != lead and any(_contains(w, lead) for w in otail):
                    self.red.set_tail(other, self.red.nf(otail))
            self._push_pairs(rid)

    def run(self) -> Optional[int]:
        """Process compositions; return the offending degree if the bound stops us."""
        while True:
            while self.heap:
                deg, _, r1, r2, k = self.heap[0]
                if deg > self.max_degree:
                    if r1 in self.lead_of and r2 in self.lead_of:
                        return deg
                    heapq.heappop(self.heap)
                    continue
                heapq.heappop(self.heap)
                if r1 not in self.lead_of or r2 not in self.lead_of:
                    continue
                a, b = self.lead_of[r1], self.lead_of[r2]
                comp = _composition(a, self.red.tails[a], b, self.red.tails[b], k)
                self.stats.compositions_processed += 1
                self.stats.max_degree_processed = max(self.stats.max_degree_processed, deg)
                nf = self.red.nf(comp)
                if nf:
                    self.stats.compositions_nonzero += 1
                    self.insert(nf)
            # tails were rewritten along the way: recheck everything before claiming success
            pending = self._recheck()
            if not pending:
                return None
            for comp in pending:
                self.insert(comp)

    def _recheck(self) -> List[Terms]:
        out = []
        for rid, a in list(self.lead_of.items()):
            for k in range(1, len(a)):
                for other in self.prefix.get(a[-k:], ()):
                    b = self.lead_of[other]
                    if len(b) > k:
                        nf = self.red.nf(_composition(a, self.red.tails[a], b, self.red.tails[b], k))
                        if nf:
                            out.append(nf)
        return out


def complete(
    gens: Sequence[NcPoly],
    max_degree: int = 8,
    alphabet: Optional[Sequence[Tuple[int, int]]] = None,
) -> RewriteSystem:
    """Complete ``gens`` to an interreduced Groebner-Shirshov basis.

    Compositions are processed in (degree, insertion order). Compositions
    whose overlap word exceeds ``max_degree`` are not processed; if any remain
    the result has status ``"incomplete"``. ``alphabet`` defaults to the
    letters occurring in ``gens``.
    """
    gens = list(gens)
    if not gens:
        raise ValueError("empty generator list: nothing to present")
    if any(g.is_zero() for g in gens):
        raise ValueError("generators must be nonzero")
    top = max(g.degree() for g in gens)
    if max_degree < top:
        raise ValueError(f"max_degree={max_degree} below generator degree {top}")
    if alphabet is None:
        alphabet = sorted({a for g in gens for w in g.words() for a in w})

    t0 = time.perf_counter()
    run = _Completion(max_degree)
    for g in sorted(gens, key=lambda g: word_key(g.lead())):
        run.insert(dict(_terms_of(g)))
    offending = run.run()
    run.stats.elapsed_s = time.perf_counter() - t0

    rules = [Rule(lead, NcPoly._raw(tail)) for lead, tail in run.red.tails.items()]
    status = COMPLETE if offending is None else INCOMPLETE
    log.info(
        "completion %s: %d rules, %d compositions (%d nonzero) in %.2fs",
        status, len(rules), run.stats.compositions_processed,
        run.stats.compositions_nonzero, run.stats.elapsed_s,
    )
    return RewriteSystem(
        rules, alphabet, status=status, max_degree=max_degree,
        offending_degree=offending, stats=run.stats,
    )


@dataclass
class NormalWordBasis:
    words: List[Word] = field(default_factory=list)

    @property
    def dimension(self) -> int:
        return len(self.words)

    def index(self) -> Dict[Word, int]:
        return {w: i for i, w in enumerate(self.words)}


def normal_words(S: RewriteSystem, cap: int = 10_000, include_unit: bool = True) -> NormalWordBasis:
    """Irreducible words of a complete system, breadth-first by degree.

    With ``include_unit=False`` the empty word is left out, giving a basis of
    the non-unital quotient (the span of nonempty words modulo the ideal).
    Raises :class:`DimensionCapExceeded` when more than ``cap`` words are
    found before a degree level comes up empty.
    """
    if not S.is_complete:
        raise IncompleteSystemError("basis not certified finite: system is incomplete")
    out: List[Word] = []
    level: List[Word] = [()]
    while level:
        out.extend(level)
        if len(out) > cap:
            raise DimensionCapExceeded(f"dimension not certified <= {cap}")
        nxt = []
        for w in level:
            for a in S.alphabet:
                v = w + (a,)
                # prefixes of v are irreducible already; only suffixes can hold a lead
                if not any(v[i:] in S._red.tails for i in range(len(v))):
                    nxt.append(v)
        level = sorted(nxt, key=word_key)
    if not include_unit:
        out = out[1:]
    return NormalWordBasis(out)


def format_system(S: RewriteSystem) -> str:
    """One ``LEAD => TAIL`` line per rule, ordered by lead."""
    return "\n".join(str(r) for r in S.rules) + ("\n" if len(S) else "")


def parse_system(text: str, alphabet: Sequence[Tuple[int, int]]) -> RewriteSystem:
    rules = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        lead, _, tail = line.partition("=>")
        if not _:
            raise ValueError(f"malformed rule line: {line!r}")
        rules.append(Rule(parse_word(lead), parse_poly(tail)))
    return RewriteSystem.from_rules(rules, alphabet)
