"""The block representation ``E[i,j] -> [[0, E_ij], [E_ji, 0]]`` and the isomorphism check.

``theta`` sends the basis of the triple system into ``(p+q) x (p+q)`` matrices;
``evaluate`` is the induced algebra map on free-algebra polynomials (the empty
word goes to the identity matrix).
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Dict, List, Optional, Tuple

import numpy as np

from .envelope import Certificate, EnvelopeContext, MatrixUnitTable, unit_expressions
from .freealg import NcPoly, Word, format_poly
from .jts import basis_indices, basis_matrix, delta_formula, triple_product

__all__ = [
    "BlockMatrix",
    "IsoCertificate",
    "unit_matrix",
    "theta",
    "theta_matrix",
    "certify_theta_homomorphism",
    "evaluate",
    "isomorphism_certificate",
    "center_image",
]


class BlockMatrix:
    """Exact ``n x n`` matrix, ``n = p + q``."""

    __slots__ = ("p", "q", "entries")

    def __init__(self, p: int, q: int, entries: Optional[np.ndarray] = None):
        self.p, self.q = p, q
        n = p + q
        if entries is None:
            entries = np.full((n, n), Fraction(0), dtype=object)
        if entries.shape != (n, n):
            raise ValueError(f"expected {n}x{n}, got {entries.shape}")
        self.entries = entries

    @classmethod
    def identity(cls, p: int, q: int) -> "BlockMatrix":
        m = cls(p, q)
        for i in range(p + q):
            m.entries[i, i] = Fraction(1)
        return m

    @property
    def n(self) -> int:
        return self.p + self.q

    def __getitem__(self, ik: Tuple[int, int]) -> Fraction:
        i, k = ik
        return self.entries[i - 1, k - 1]

    def __matmul__(self, other: "BlockMatrix") -> "BlockMatrix":
        return BlockMatrix(self.p, self.q, self.entries.dot(other.entries))

    def __add__(self, other: "BlockMatrix") -> "BlockMatrix":
        return BlockMatrix(self.p, self.q, self.entries + other.entries)

    def __sub__(self, other: "BlockMatrix") -> "BlockMatrix":
        return BlockMatrix(self.p, self.q, self.entries - other.entries)

    def __rmul__(self, c) -> "BlockMatrix":
        return BlockMatrix(self.p, self.q, Fraction(c) * self.entries)

    @property
    def T(self) -> "BlockMatrix":
        return BlockMatrix(self.p, self.q, self.entries.T.copy())

    def __eq__(self, other):
        if not isinstance(other, BlockMatrix):
            return NotImplemented
        return self.entries.shape == other.entries.shape and bool(np.all(self.entries == other.entries))

    __hash__ = None

    def is_zero(self) -> bool:
        return not any(v != 0 for v in self.entries.ravel())

    def support(self) -> List[Tuple[int, int]]:
        """1-based positions of nonzero entries."""
        return [(i + 1, k + 1) for (i, k), v in np.ndenumerate(self.entries) if v != 0]

    def to_list(self) -> List[List[str]]:
        return [[str(v) for v in row] for row in self.entries]

    def __repr__(self):
        return f"BlockMatrix({self.to_list()})"


def unit_matrix(i: int, k: int, p: int, q: int) -> BlockMatrix:
    """The matrix unit with a single 1 at ``(i, k)``, 1-based."""
    m = BlockMatrix(p, q)
    m.entries[i - 1, k - 1] = Fraction(1)
    return m


def theta(i: int, j: int, p: int, q: int) -> BlockMatrix:
    """Image of ``E[i,j]``: units at ``(i, p+j)`` and ``(p+j, i)``."""
    if not (1 <= i <= p and 1 <= j <= q):
        raise ValueError(f"index ({i},{j}) outside {p}x{q}")
    return unit_matrix(i, p + j, p, q) + unit_matrix(p + j, i, p, q)


def theta_matrix(x) -> BlockMatrix:
    """Linear extension of ``theta`` to a :class:`~jts_envelope.jts.RectMatrix`."""
    p, q = x.shape
    out = np.full((p + q, p + q), Fraction(0), dtype=object)
    out[:p, p:] = x.entries
    out[p:, :p] = x.entries.T
    return BlockMatrix(p, q, out)


def certify_theta_homomorphism(p: int, q: int) -> Certificate:
    """``theta({a,b,c}) = theta(a) theta(b)^T theta(c) + theta(c) theta(b)^T theta(a)`` on basis triples.

    The left side is computed twice, from the closed delta formula and from
    the dense triple product; the right side by dense matrix products.
    """
    cert = Certificate(
        "representation.homomorphism",
        {"a,b,c": "basis E[i,j] of p x q matrices", "count": (p * q) ** 3},
    )
    t0 = time.perf_counter()
    idx = basis_indices(p, q)
    th = {a: theta(*a, p, q) for a in idx}
    E = {a: basis_matrix(*a, p, q) for a in idx}
    for a, b, c in product(idx, repeat=3):
        cert.instances_checked += 1
        via_delta = BlockMatrix(p, q)
        for d, coeff in delta_formula(a, b, c).items():
            via_delta = via_delta + coeff * th[d]
        via_dense = theta_matrix(triple_product(E[a], E[b], E[c]))
        rhs = th[a] @ th[b].T @ th[c] + th[c] @ th[b].T @ th[a]
        if not (via_delta == via_dense == rhs):
            cert.failures.append({"instance": {"a": a, "b": b, "c": c}})
    cert.elapsed_ms = (time.perf_counter() - t0) * 1e3
    return cert


_WORD_IMAGES: Dict[Tuple[int, int], Dict[Word, np.ndarray]] = {}


def _word_image(w: Word, p: int, q: int) -> np.ndarray:
    cache = _WORD_IMAGES.setdefault((p, q), {})
    hit = cache.get(w)
    if hit is not None:
        return hit
    # extend the longest cached prefix one letter at a time
    k = len(w)
    while k and w[:k] not in cache:
        k -= 1
    m = cache[w[:k]] if k else BlockMatrix.identity(p, q).entries
    for n in range(k, len(w)):
        m = m.dot(theta(*w[n], p, q).entries)
        cache[w[:n + 1]] = m
    return m


def evaluate(poly: NcPoly, p: int, q: int) -> BlockMatrix:
    """Substitute ``G[i,j] -> theta(i, j)`` and multiply out exactly."""
    out = np.full((p + q, p + q), Fraction(0), dtype=object)
    for w, c in poly.items():
        out = out + c * _word_image(w, p, q)
    return BlockMatrix(p, q, out)


@dataclass
class IsoCertificate:
    well_defined: bool
    surjective: bool
    dim_match: bool
    dimension: Optional[int]
    expected_dimension: int
    well_defined_witnesses: List[dict] = field(default_factory=list)
    surjective_witnesses: List[dict] = field(default_factory=list)
    elapsed_ms: float = 0.0

    @property
    def overall(self) -> bool:
        return self.well_defined and self.surjective and self.dim_match

    @property
    def passed(self) -> bool:
        return self.overall

    def to_json(self, timings: bool = True) -> dict:
        failures = []
        if not self.well_defined:
            failures.append({"component": "well_defined", "witnesses": self.well_defined_witnesses})
        if not self.surjective:
            failures.append({"component": "surjective", "witnesses": self.surjective_witnesses})
        if not self.dim_match:
            failures.append(
                {"component": "dim_match", "dimension": self.dimension, "expected": self.expected_dimension}
            )
        return {
            "id": "isomorphism",
            "quantifier_ranges": {"claim": "U is isomorphic to the full (p+q)x(p+q) matrix algebra"},
            "instances_checked": 3,
            "failures": failures,
            "elapsed_ms": round(self.elapsed_ms, 3) if timings else None,
            "passed": self.overall,
            "details": {
                "well_defined": self.well_defined,
                "surjective": self.surjective,
                "dim_match": self.dim_match,
                "dimension": self.dimension,
                "expected_dimension": self.expected_dimension,
            },
        }


def isomorphism_certificate(ctx: EnvelopeContext, units: Optional[MatrixUnitTable] = None) -> IsoCertificate:
    """Well-definedness, surjectivity onto all matrix units, and a dimension match.

    Works on incomplete contexts too (negative controls): the dimension is
    then uncertified and ``dim_match`` fails.
    """
    t0 = time.perf_counter()
    p, q = ctx.p, ctx.q
    bad_gens = []
    for n, g in enumerate(ctx.generators):
        if not evaluate(g, p, q).is_zero():
            bad_gens.append({"generator": n, "poly": format_poly(g)})

    raw = units.raw if units is not None else unit_expressions(p, q, 2, 2 if p >= 2 else None)
    bad_units = []
    for (i, k), a in raw.items():
        if evaluate(a, p, q) != unit_matrix(i, k, p, q):
            bad_units.append({"i": i, "k": k})
    surjective = not bad_units and len(raw) == (p + q) ** 2

    expected = (p + q) ** 2
    cert = IsoCertificate(
        well_defined=not bad_gens,
        surjective=surjective,
        dim_match=ctx.dimension == expected,
        dimension=ctx.dimension,
        expected_dimension=expected,
        well_defined_witnesses=bad_gens,
        surjective_witnesses=bad_units,
    )
    cert.elapsed_ms = (time.perf_counter() - t0) * 1e3
    return cert


def center_image(ctx: EnvelopeContext, e: NcPoly) -> Tuple[BlockMatrix, Certificate]:
    """``evaluate(e)`` and a check that it is the identity matrix."""
    cert = Certificate("center.image", {"claim": "theta(e) = identity"})
    t0 = time.perf_counter()
    img = evaluate(e, ctx.p, ctx.q)
    cert.instances_checked = 1
    if img != BlockMatrix.identity(ctx.p, ctx.q):
        cert.failures.append({"image": img.to_list()})
    cert.elapsed_ms = (time.perf_counter() - t0) * 1e3
    return img, cert
