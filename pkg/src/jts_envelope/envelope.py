"""The universal associative envelope of the rectangular-matrix triple system.

``U = F / I`` where ``F`` is the free algebra on ``G[i,j]`` and ``I`` is
generated by ``G_a G_b G_c + G_c G_b G_a - phi({E_a, E_b, E_c})``. The
envelope is non-unital: it is spanned by the nonempty words, and its own
identity is the central idempotent ``e``, not the empty word.

Everything here is checked by normal-form reduction against the completed
rewrite system. A :class:`Certificate` passes when every instance of the
stated identity reduces to zero.
"""

from __future__ import annotations

import logging
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Callable, Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from .freealg import NcPoly, Word, format_poly, gen, word_key
from .jts import basis_indices, phi, random_matrix, structure_constants, triple_product
from .rewrite import DimensionCapExceeded, NormalWordBasis, RewriteSystem, complete, normal_words

__all__ = [
    "BuildError",
    "Certificate",
    "EnvelopeContext",
    "MatrixUnitTable",
    "delta",
    "delta_hat",
    "member",
    "ideal_generators",
    "present",
    "build",
    "lemma_families",
    "corollary_families",
    "certify_quotient_consistency",
    "certify_universality",
    "certify_lemma_identities",
    "certify_corollary_identities",
    "unit_expressions",
    "matrix_units",
    "certify_unit_table",
    "certify_choice_independence",
    "center_element",
    "certify_center",
    "rank_over_q",
    "nullspace_over_q",
]

log = logging.getLogger(__name__)

Pair = Tuple[int, int]


class BuildError(RuntimeError):
    pass


def delta(a, b) -> int:
    return 1 if a == b else 0


def delta_hat(a, b) -> int:
    return 1 - delta(a, b)


def member(i, L) -> int:
    return 1 if i in L else 0


def G(i: int, j: int) -> NcPoly:
    return gen(i, j)


# ---------- certificates ----------

@dataclass
class Certificate:
    """Outcome of checking one universally quantified identity (or claim)."""

    id: str
    quantifier_ranges: Dict[str, object]
    instances_checked: int = 0
    failures: List[dict] = field(default_factory=list)
    elapsed_ms: float = 0.0
    details: Dict[str, object] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self, timings: bool = True) -> dict:
        out = {
            "id": self.id,
            "quantifier_ranges": self.quantifier_ranges,
            "instances_checked": self.instances_checked,
            "failures": self.failures,
            "elapsed_ms": round(self.elapsed_ms, 3) if timings else None,
            "passed": self.passed,
        }
        if self.details:
            out["details"] = self.details
        return out


IdentityCertificate = Certificate


def _check(
    cert_id: str,
    ranges: Dict[str, object],
    instances: Iterable[Tuple[dict, NcPoly]],
    S: RewriteSystem,
) -> Certificate:
    cert = Certificate(cert_id, ranges)
    t0 = time.perf_counter()
    for idx, poly in instances:
        cert.instances_checked += 1
        nf = S.normal_form(poly)
        if nf:
            cert.failures.append({"instance": idx, "normal_form": format_poly(nf)})
    cert.elapsed_ms = (time.perf_counter() - t0) * 1e3
    return cert


# ---------- context ----------

@dataclass
class EnvelopeContext:
    p: int
    q: int
    system: RewriteSystem
    basis: Optional[NormalWordBasis]
    generators: List[NcPoly]
    pruned: int = 0
    allow_unproven: bool = False
    bounds_tried: List[int] = field(default_factory=list)

    @property
    def omega1(self) -> range:
        return range(1, self.p + 1)

    @property
    def omega2(self) -> range:
        return range(1, self.q + 1)

    @property
    def omega3(self) -> range:
        return range(self.p + 1, self.p + self.q + 1)

    @property
    def indices(self) -> List[int]:
        """``Omega1 u Omega3 = {1, ..., p+q}``."""
        return list(range(1, self.p + self.q + 1))

    @property
    def alphabet(self) -> List[Pair]:
        return basis_indices(self.p, self.q)

    @property
    def dimension(self) -> Optional[int]:
        return None if self.basis is None else self.basis.dimension

    @property
    def complete(self) -> bool:
        return self.system.is_complete

    def nf(self, x: NcPoly) -> NcPoly:
        return self.system.normal_form(x)

    def require_complete(self) -> None:
        if not self.complete:
            raise BuildError(
                f"rewrite system for ({self.p},{self.q}) is incomplete "
                f"(stopped at composition degree {self.system.offending_degree})"
            )
        if self.basis is None:
            raise BuildError(f"normal-word basis for ({self.p},{self.q}) did not close")

    def summary(self) -> dict:
        return {
            "p": self.p,
            "q": self.q,
            "dimension": self.dimension,
            "expected_dimension": (self.p + self.q) ** 2,
            "status": self.system.status,
            "rules": len(self.system),
            "generators": len(self.generators),
            "generators_pruned": self.pruned,
            "max_degree": self.system.max_degree,
            "bounds_tried": list(self.bounds_tried),
            "theorem_assertions": not self.allow_unproven,
        }


def ideal_generators(p: int, q: int, prune: bool = False) -> List[NcPoly]:
    """``G_a G_b G_c + G_c G_b G_a - phi({E_a, E_b, E_c})`` over all basis triples.

    Without pruning there are ``(pq)^3`` of them, in ``product`` order. The
    triples ``(a, b, c)`` and ``(c, b, a)`` give the same polynomial; with
    ``prune=True`` only the first of each such pair is kept.
    """
    if p < 1 or q < 1:
        raise ValueError("p, q must be positive")
    sc = structure_constants(p, q)
    out = []
    seen = set()
    for a, b, c in product(basis_indices(p, q), repeat=3):
        if prune:
            key = (min(a, c), b, max(a, c))
            if key in seen:
                continue
            seen.add(key)
        terms: Dict[Word, Fraction] = {}
        for w in ((a, b, c), (c, b, a)):
            terms[w] = terms.get(w, 0) + 1
        for d, v in sc[a, b, c]:
            terms[(d,)] = terms.get((d,), 0) - v
        out.append(NcPoly(terms))
    return out


def _check_dims(p: int, q: int, allow_unproven: bool) -> None:
    if p < 1 or q < 1:
        raise ValueError("p, q must be positive")
    if not allow_unproven and (p == q or p < 2 or q < 2):
        raise ValueError(
            f"(p,q)=({p},{q}): the envelope theorem needs p != q and p, q > 1 "
            "(pass allow_unproven to explore anyway)"
        )


def present(
    p: int,
    q: int,
    generators: Sequence[NcPoly],
    max_degree: int = 8,
    allow_unproven: bool = False,
    pruned: int = 0,
    basis_cap: int = 10_000,
) -> EnvelopeContext:
    """Complete arbitrary generators over the ``G[i,j]`` alphabet, never raising on incompleteness.

    The basis is enumerated only when completion succeeded and the quotient
    has at most ``basis_cap`` normal words; otherwise ``ctx.basis`` is ``None``. Used directly by negative-control runs.
    """
    S = complete(list(generators), max_degree, alphabet=basis_indices(p, q))
    basis = None
    if S.is_complete:
        try:
            basis = normal_words(S, cap=basis_cap, include_unit=False)
        except DimensionCapExceeded:
            log.warning("(%d,%d): quotient has more than %d normal words", p, q, basis_cap)
    return EnvelopeContext(
        p, q, S, basis, list(generators), pruned=pruned,
        allow_unproven=allow_unproven, bounds_tried=[max_degree],
    )


def build(
    p: int,
    q: int,
    max_degree: int = 8,
    allow_unproven: bool = False,
    max_bound: Optional[int] = None,
) -> EnvelopeContext:
    """Complete the defining ideal and enumerate the normal-word basis.

    If completion stops at ``max_degree`` the bound is raised by 2 up to
    ``max_bound`` (default ``max_degree + 4``); the bounds tried are kept
    in ``ctx.bounds_tried``. Still incomplete raises :class:`BuildError`.
    """
    _check_dims(p, q, allow_unproven)
    if max_degree < 3:
        raise ValueError("max_degree must be at least 3")
    full = (p * q) ** 3
    gens = ideal_generators(p, q, prune=True)
    pruned = full - len(gens)
    log.info("(%d,%d): %d ideal generators, %d pruned as duplicates", p, q, len(gens), pruned)
    limit = max_degree + 4 if max_bound is None else max_bound
    tried = []
    bound = max_degree
    while True:
        tried.append(bound)
        ctx = present(p, q, gens, bound, allow_unproven, pruned)
        if ctx.complete or bound + 2 > limit:
            break
        log.warning("(%d,%d) incomplete at degree bound %d; raising", p, q, bound)
        bound += 2
    ctx.bounds_tried = tried
    ctx.require_complete()
    return ctx


def certify_quotient_consistency(ctx: EnvelopeContext) -> Certificate:
    """Every ideal generator reduces to zero."""
    ctx.require_complete()
    return _check(
        "quotient.generators",
        {"a,b,c": "basis triples (duplicates pruned)"},
        (({"generator": n}, g) for n, g in enumerate(ctx.generators)),
        ctx.system,
    )


def certify_universality(ctx: EnvelopeContext, samples: int = 20, seed: int = 0) -> Certificate:
    """``phi(x) phi(y) phi(z) + phi(z) phi(y) phi(x) = phi({x,y,z})`` modulo I on random rational x, y, z."""
    ctx.require_complete()
    rng = random.Random(seed)
    instances = []
    for n in range(samples):
        x, y, z = (random_matrix(ctx.p, ctx.q, rng) for _ in range(3))
        lhs = phi(x) * phi(y) * phi(z) + phi(z) * phi(y) * phi(x)
        instances.append(({"sample": n, "seed": seed}, lhs - phi(triple_product(x, y, z))))
    return _check("quotient.universality", {"x,y,z": f"{samples} random rational p x q matrices"}, instances, ctx.system)


# ---------- identity families ----------

Family = Tuple[str, Dict[str, str], Callable[[EnvelopeContext], Iterator[Tuple[dict, NcPoly]]]]


def _lemma_I(ctx):
    for i, j in product(ctx.omega1, ctx.omega2):
        yield {"i": i, "j": j}, G(i, j) ** 3 - G(i, j)


def _lemma_II(ctx):
    for i, k, j, l in product(ctx.omega1, ctx.omega1, ctx.omega2, ctx.omega2):
        if i != k and j != l:
            yield {"i": i, "j": j, "k": k, "l": l}, G(i, j) * G(k, l)


def _lemma_III(ctx):
    for i, j, l in product(ctx.omega1[1:], ctx.omega2, ctx.omega2):
        if j != l:
            yield {"i": i, "j": j, "l": l}, G(i, j) * G(i, l) - G(1, j) * G(1, l)


def _lemma_IV(ctx):
    for i, k, j in product(ctx.omega1, ctx.omega1, ctx.omega2[1:]):
        if i != k:
            yield {"i": i, "k": k, "j": j}, G(i, j) * G(k, j) - G(i, 1) * G(k, 1)


def _lemma_V(ctx):
    for j, l, s in product(ctx.omega2, repeat=3):
        if j != l and l != s:
            yield {"j": j, "l": l, "s": s}, G(1, j) * G(1, l) * G(1, s)


def _lemma_VI(ctx):
    for i, k, t in product(ctx.omega1, repeat=3):
        if i != k and k != t:
            yield {"i": i, "k": k, "t": t}, G(i, 1) * G(k, 1) * G(t, 1)


def _lemma_VII(ctx):
    for i, j in product(ctx.omega1[1:], ctx.omega2[1:]):
        yield {"i": i, "j": j}, G(1, 1) * G(i, 1) * G(i, 1) - G(1, j) * G(1, j) * G(1, 1)


def _lemma_VIII(ctx):
    for i, j in product(ctx.omega1[1:], ctx.omega2[1:]):
        yield {"i": i, "j": j}, G(i, 1) * G(i, 1) * G(1, 1) - G(1, 1) * G(1, j) * G(1, j)


def _remark_independence(ctx):
    rows, cols = ctx.omega1[1:], ctx.omega2[1:]
    for i, k in product(rows, rows):
        if i != k:
            yield {"i": i, "k": k, "side": "left"}, G(1, 1) * G(i, 1) ** 2 - G(1, 1) * G(k, 1) ** 2
            yield {"i": i, "k": k, "side": "right"}, G(i, 1) ** 2 * G(1, 1) - G(k, 1) ** 2 * G(1, 1)
    for j, l in product(cols, cols):
        if j != l:
            yield {"j": j, "l": l, "side": "right"}, G(1, j) ** 2 * G(1, 1) - G(1, l) ** 2 * G(1, 1)
            yield {"j": j, "l": l, "side": "left"}, G(1, 1) * G(1, j) ** 2 - G(1, 1) * G(1, l) ** 2


def _cor_I(ctx):
    for l, j in product(ctx.omega2[1:], ctx.omega2[1:]):
        lhs = G(1, l) * G(1, 1) * G(1, 1) * G(1, j)
        rhs = -delta(l, j) * (G(1, 1) * G(1, 1) * G(1, j) * G(1, j)) + G(1, l) * G(1, j)
        yield {"l": l, "j": j}, lhs - rhs


def _cor_II(ctx):
    for i, k in product(ctx.omega1[1:], ctx.omega1[1:]):
        lhs = G(i, 1) * G(1, 1) * G(1, 1) * G(k, 1)
        rhs = -delta(i, k) * (G(1, 1) * G(1, 1) * G(i, 1) * G(i, 1)) + G(i, 1) * G(k, 1)
        yield {"i": i, "k": k}, lhs - rhs


def _cor_III(ctx):
    # j = 1 included: the delta(j,1) term is live there
    for j, l in product(ctx.omega2, ctx.omega2[1:]):
        lhs = G(1, j) * G(1, l) * G(1, l) * G(1, 1)
        rhs = -delta(j, 1) * (G(1, 1) * G(1, 1) * G(1, l) * G(1, l)) + G(1, j) * G(1, 1)
        yield {"j": j, "l": l}, lhs - rhs


def _cor_IV(ctx):
    for j in ctx.omega2[1:]:
        yield {"j": j}, G(1, 1) ** 2 * G(1, j) ** 2 * G(1, 1) - G(1, j) ** 2 * G(1, 1)


def _cor_V(ctx):
    for j, l in product(ctx.omega2[1:], ctx.omega2[1:]):
        yield {"j": j, "l": l}, G(1, j) ** 2 * G(1, 1) ** 2 * G(1, l) - G(1, 1) ** 2 * G(1, l)


def _cor_VI(ctx):
    for i, j in product(ctx.omega1[1:], ctx.omega2[1:]):
        lhs = G(1, 1) ** 2 * G(1, j) ** 2 * G(1, 1) * G(i, 1)
        yield {"i": i, "j": j}, lhs - G(1, 1) * G(i, 1)


def _cor_VII(ctx):
    for j, l in product(ctx.omega2[1:], ctx.omega2[1:]):
        yield {"j": j, "l": l}, G(1, 1) * G(1, j) ** 2 * G(1, l) - G(1, 1) * G(1, l)


def _cor_VIII(ctx):
    for i, j in product(ctx.omega1[1:], ctx.omega2[1:]):
        yield {"i": i, "j": j}, G(i, 1) * G(1, 1) * G(1, j) ** 2 - G(i, 1) * G(1, 1)


_O1, _O2 = "Omega1={1..p}", "Omega2={1..q}"
_O1x, _O2x = "Omega1\\{1}", "Omega2\\{1}"


def lemma_families() -> List[Family]:
    return [
        ("lemma.I", {"i": _O1, "j": _O2}, _lemma_I),
        ("lemma.II", {"i,k": _O1, "j,l": _O2, "where": "i!=k, j!=l"}, _lemma_II),
        ("lemma.III", {"i": _O1x, "j,l": _O2, "where": "j!=l"}, _lemma_III),
        ("lemma.IV", {"i,k": _O1, "j": _O2x, "where": "i!=k"}, _lemma_IV),
        ("lemma.V", {"j,l,s": _O2, "where": "j!=l, l!=s"}, _lemma_V),
        ("lemma.VI", {"i,k,t": _O1, "where": "i!=k, k!=t"}, _lemma_VI),
        ("lemma.VII", {"i": _O1x, "j": _O2x}, _lemma_VII),
        ("lemma.VIII", {"i": _O1x, "j": _O2x}, _lemma_VIII),
        ("lemma.choice", {"i,k": _O1x, "j,l": _O2x, "where": "i!=k, j!=l"}, _remark_independence),
    ]


def corollary_families() -> List[Family]:
    return [
        ("corollary.I", {"l,j": _O2x}, _cor_I),
        ("corollary.II", {"i,k": _O1x}, _cor_II),
        ("corollary.III", {"j": _O2, "l": _O2x}, _cor_III),
        ("corollary.IV", {"j": _O2x}, _cor_IV),
        ("corollary.V", {"j,l": _O2x}, _cor_V),
        ("corollary.VI", {"i": _O1x, "j": _O2x}, _cor_VI),
        ("corollary.VII", {"j,l": _O2x}, _cor_VII),
        ("corollary.VIII", {"i": _O1x, "j": _O2x}, _cor_VIII),
    ]


def certify_lemma_identities(ctx: EnvelopeContext) -> List[Certificate]:
    ctx.require_complete()
    return [_check(cid, ranges, fam(ctx), ctx.system) for cid, ranges, fam in lemma_families()]


def certify_corollary_identities(ctx: EnvelopeContext) -> List[Certificate]:
    ctx.require_complete()
    return [_check(cid, ranges, fam(ctx), ctx.system) for cid, ranges, fam in corollary_families()]


# ---------- matrix units ----------

@dataclass
class MatrixUnitTable:
    """``A[i,k]`` for ``i, k`` in ``1..p+q``, raw and in normal form."""

    p: int
    q: int
    j: int
    t: Optional[int]
    raw: Dict[Pair, NcPoly]
    nf: Dict[Pair, NcPoly]

    @property
    def n(self) -> int:
        return self.p + self.q

    def __getitem__(self, ik: Pair) -> NcPoly:
        return self.raw[ik]


def unit_expressions(p: int, q: int, j: int = 2, t: Optional[int] = 2) -> Dict[Pair, NcPoly]:
    """The ``(p+q)^2`` expressions ``A[i,k]`` in the generators, for fixed choices ``j``, ``t``."""
    o1 = range(1, p + 1)
    o3 = range(p + 1, p + q + 1)
    A: Dict[Pair, NcPoly] = {}
    for i, k in product(o1, o1):
        if i != k:
            A[i, k] = G(i, 1) * G(k, 1)
    A[1, p + 1] = G(1, j) * G(1, j) * G(1, 1)
    for i, k in product(o1, o3):
        if (i, k) != (1, p + 1):
            A[i, k] = G(i, 1) * G(1, 1) * G(1, k - p)
    for i, k in product(o3, o1):
        A[i, k] = -A[k, i] + G(k, i - p)
    for i, k in product(o3, o3):
        if i != k:
            A[i, k] = G(1, i - p) * G(1, k - p)
    A[1, 1] = G(1, 1) * G(1, 1) * G(1, j) * G(1, j)
    for i in o1[1:]:
        A[i, i] = -(G(1, 1) * G(1, 1) * G(t, 1) * G(t, 1)) + G(i, 1) * G(i, 1)
    for i in o3:
        A[i, i] = -(G(1, 1) * G(1, 1) * G(1, j) * G(1, j)) + G(1, i - p) * G(1, i - p)
    return dict(sorted(A.items()))


def _choices(ctx: EnvelopeContext, j: Optional[int], t: Optional[int]) -> Tuple[int, Optional[int]]:
    if ctx.q < 2:
        raise ValueError("matrix units need q >= 2 (a column index j != 1)")
    j = 2 if j is None else j
    if j not in ctx.omega2[1:]:
        raise ValueError(f"j={j} not in Omega2\\{{1}}")
    if ctx.p >= 2:
        t = 2 if t is None else t
        if t not in ctx.omega1[1:]:
            raise ValueError(f"t={t} not in Omega1\\{{1}}")
    else:
        t = None
    return j, t


def matrix_units(ctx: EnvelopeContext, j: Optional[int] = None, t: Optional[int] = None) -> MatrixUnitTable:
    """Transcribe the matrix-unit expressions; the free choices default to 2."""
    ctx.require_complete()
    j, t = _choices(ctx, j, t)
    raw = unit_expressions(ctx.p, ctx.q, j, t)
    return MatrixUnitTable(ctx.p, ctx.q, j, t, raw, {ik: ctx.nf(a) for ik, a in raw.items()})


def _coords(polys: Sequence[NcPoly]) -> Tuple[List[Word], List[List[Fraction]]]:
    words = sorted({w for x in polys for w in x.words()}, key=word_key)
    col = {w: c for c, w in enumerate(words)}
    rows = []
    for x in polys:
        row = [Fraction(0)] * len(words)
        for w, c in x.items():
            row[col[w]] = c
        rows.append(row)
    return words, rows


def _domain_matrix(rows: List[List[Fraction]], ncols: int) -> DomainMatrix:
    data = [[QQ(int(v.numerator), int(v.denominator)) for v in row] for row in rows]
    return DomainMatrix(data, (len(rows), ncols), QQ)


def rank_over_q(polys: Sequence[NcPoly]) -> int:
    """Exact rank of the coefficient vectors of ``polys``."""
    polys = [x for x in polys]
    if not polys:
        return 0
    words, rows = _coords(polys)
    if not words:
        return 0
    return _domain_matrix(rows, len(words)).rank()


def nullspace_over_q(rows: List[List[Fraction]], ncols: int) -> List[List[Fraction]]:
    """Basis of ``{x : M x = 0}`` for the exact matrix ``M`` given by rows."""
    if not rows:
        return [[Fraction(int(r == c)) for c in range(ncols)] for r in range(ncols)]
    ns = _domain_matrix(rows, ncols).nullspace().to_Matrix()
    return [[Fraction(int(v.p), int(v.q)) for v in ns.row(r)] for r in range(ns.rows)]


def certify_unit_table(ctx: EnvelopeContext, units: MatrixUnitTable) -> List[Certificate]:
    """Product table, independence (rank) and spanning of the generators."""
    ctx.require_complete()
    idx = ctx.indices
    nf = units.nf

    table = Certificate(
        "units.table",
        {"i,k,l,t": "Omega1 u Omega3 = {1..p+q}", "claim": "A[i,k] A[l,t] = delta(k,l) A[i,t]"},
    )
    t0 = time.perf_counter()
    for i, k, l, t in product(idx, repeat=4):
        table.instances_checked += 1
        lhs = ctx.nf(nf[i, k] * nf[l, t])
        rhs = nf[i, t] if k == l else NcPoly.zero()
        if lhs != rhs:
            table.failures.append(
                {"instance": {"i": i, "k": k, "l": l, "t": t},
                 "normal_form": format_poly(ctx.nf(lhs - rhs))}
            )
    table.elapsed_ms = (time.perf_counter() - t0) * 1e3

    rank = Certificate("units.rank", {"units": "all (i,k)", "claim": "rank = (p+q)^2"})
    t0 = time.perf_counter()
    r = rank_over_q([nf[ik] for ik in sorted(nf)])
    rank.instances_checked = 1
    rank.details = {"rank": r, "expected": len(idx) ** 2, "dimension": ctx.dimension}
    if r != len(idx) ** 2 or r != ctx.dimension:
        rank.failures.append({"rank": r, "expected": len(idx) ** 2, "dimension": ctx.dimension})
    rank.elapsed_ms = (time.perf_counter() - t0) * 1e3

    span = _check(
        "units.span",
        {"i": _O1, "j": _O2, "claim": "G[i,j] = A[i,j+p] + A[j+p,i]"},
        (
            ({"i": i, "j": j}, G(i, j) - units.raw[i, j + ctx.p] - units.raw[j + ctx.p, i])
            for i, j in product(ctx.omega1, ctx.omega2)
        ),
        ctx.system,
    )
    return [table, rank, span]


def center_element(ctx: EnvelopeContext, j: Optional[int] = None, t: Optional[int] = None) -> NcPoly:
    """``e = (1-q) G11 G11 G1j G1j + (1-p) G11 G11 Gt1 Gt1 + sum_i Gi1 Gi1 + sum_s G1s G1s``.

    The first word has degree four, matching ``sum_i A[i,i]``.
    """
    j, t = _choices(ctx, j, t)
    p, q = ctx.p, ctx.q
    e = (1 - q) * (G(1, 1) * G(1, 1) * G(1, j) * G(1, j))
    if t is not None:
        e = e + (1 - p) * (G(1, 1) * G(1, 1) * G(t, 1) * G(t, 1))
    for i in range(2, p + 1):
        e = e + G(i, 1) * G(i, 1)
    for s in range(1, q + 1):
        e = e + G(1, s) * G(1, s)
    return e


def centralizer(ctx: EnvelopeContext) -> List[NcPoly]:
    """Exact basis of ``{x in U : [x, G] = 0 for every generator G}``."""
    ctx.require_complete()
    words = ctx.basis.words
    # one column per basis word, one row per (generator, word in the commutator support)
    cols: List[Dict[Tuple[Pair, Word], Fraction]] = []
    for w in words:
        x = NcPoly.from_word(w)
        col = {}
        for g in ctx.alphabet:
            c = ctx.nf(x * G(*g) - G(*g) * x)
            for u, v in c.items():
                col[g, u] = v
        cols.append(col)
    keys = sorted({k for col in cols for k in col}, key=lambda k: (k[0], word_key(k[1])))
    rows = [[col.get(k, Fraction(0)) for col in cols] for k in keys]
    vecs = nullspace_over_q(rows, len(words))
    return [NcPoly({w: v for w, v in zip(words, vec)}) for vec in vecs]


def certify_center(ctx: EnvelopeContext, units: MatrixUnitTable, e: Optional[NcPoly] = None) -> List[Certificate]:
    """Idempotence, centrality, ``e = sum A[i,i]``, and a one-dimensional centralizer."""
    ctx.require_complete()
    if e is None:
        e = center_element(ctx, units.j, units.t)
    out = [
        _check("center.idempotent", {"claim": "e e = e"}, [({}, e * e - e)], ctx.system),
        _check(
            "center.central",
            {"i": _O1, "j": _O2, "claim": "e G[i,j] = G[i,j] e"},
            (({"i": a, "j": b}, e * G(a, b) - G(a, b) * e) for a, b in ctx.alphabet),
            ctx.system,
        ),
        _check(
            "center.sum_of_units",
            {"claim": "e = sum_i A[i,i]"},
            [({}, e - sum((units.raw[i, i] for i in ctx.indices), NcPoly.zero()))],
            ctx.system,
        ),
    ]
    cert = Certificate("center.centralizer", {"claim": "dim Z(U) = 1, spanned by e"})
    t0 = time.perf_counter()
    basis = centralizer(ctx)
    cert.instances_checked = 1
    cert.details = {"dimension": len(basis)}
    if len(basis) != 1:
        cert.failures.append({"centralizer_dimension": len(basis)})
    elif rank_over_q([basis[0], ctx.nf(e)]) != 1:
        cert.failures.append({"reason": "centralizer not spanned by e", "spanner": format_poly(basis[0])})
    cert.elapsed_ms = (time.perf_counter() - t0) * 1e3
    out.append(cert)
    return out


def certify_choice_independence(ctx: EnvelopeContext) -> List[Certificate]:
    """Rebuild units and ``e`` for every admissible ``(j, t)``; normal forms must agree."""
    ctx.require_complete()
    base = matrix_units(ctx)
    e0 = ctx.nf(center_element(ctx, base.j, base.t))
    ts = list(ctx.omega1[1:]) or [None]
    units_cert = Certificate("choice.units", {"j": _O2x, "t": _O1x, "claim": "NF(A[i,k]) independent of j, t"})
    center_cert = Certificate("choice.center", {"j": _O2x, "t": _O1x, "claim": "NF(e) independent of j, t"})
    t0 = time.perf_counter()
    for j, t in product(ctx.omega2[1:], ts):
        units = matrix_units(ctx, j, t)
        for ik in base.nf:
            units_cert.instances_checked += 1
            if units.nf[ik] != base.nf[ik]:
                units_cert.failures.append(
                    {"instance": {"j": j, "t": t, "i": ik[0], "k": ik[1]},
                     "normal_form": format_poly(ctx.nf(units.nf[ik] - base.nf[ik]))}
                )
        center_cert.instances_checked += 1
        diff = ctx.nf(center_element(ctx, j, t)) - e0
        if diff:
            center_cert.failures.append({"instance": {"j": j, "t": t}, "normal_form": format_poly(diff)})
    units_cert.elapsed_ms = center_cert.elapsed_ms = (time.perf_counter() - t0) * 1e3
    return [units_cert, center_cert]
