"""The Jordan triple system of p x q rational matrices.

The triple product is ``{x, y, z} = x y^T z + z y^T x``. Matrices are numpy
object arrays of :class:`fractions.Fraction`, so all arithmetic is exact.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from typing import Dict, List, Sequence, Tuple

import numpy as np

from .freealg import NcPoly

__all__ = [
    "RectMatrix",
    "basis_matrix",
    "basis_indices",
    "triple_product",
    "check_jts_axioms",
    "structure_constants",
    "delta_formula",
    "phi",
    "random_matrix",
]

Index = Tuple[int, int]
StructureConstants = Dict[Tuple[Index, Index, Index], List[Tuple[Index, Fraction]]]


def _exact(entries) -> np.ndarray:
    a = np.array(entries, dtype=object)
    if a.ndim != 2:
        raise ValueError("expected a 2-d array of entries")
    out = np.empty(a.shape, dtype=object)
    for idx, v in np.ndenumerate(a):
        out[idx] = Fraction(v)
    return out


class RectMatrix:
    """An exact p x q matrix. Immutable by convention."""

    __slots__ = ("entries",)

    def __init__(self, entries):
        self.entries = entries if _is_exact(entries) else _exact(entries)

    @classmethod
    def zeros(cls, p: int, q: int) -> "RectMatrix":
        return cls(np.full((p, q), Fraction(0), dtype=object))

    @property
    def p(self) -> int:
        return self.entries.shape[0]

    @property
    def q(self) -> int:
        return self.entries.shape[1]

    @property
    def shape(self) -> Tuple[int, int]:
        return self.entries.shape

    def __getitem__(self, ij: Index) -> Fraction:
        """Entry at 1-based ``(i, j)``."""
        i, j = ij
        return self.entries[i - 1, j - 1]

    def __add__(self, other: "RectMatrix") -> "RectMatrix":
        _same_shape(self, other)
        return RectMatrix(self.entries + other.entries)

    def __sub__(self, other: "RectMatrix") -> "RectMatrix":
        _same_shape(self, other)
        return RectMatrix(self.entries - other.entries)

    def __neg__(self):
        return RectMatrix(-self.entries)

    def __rmul__(self, c) -> "RectMatrix":
        return RectMatrix(Fraction(c) * self.entries)

    def __eq__(self, other):
        if not isinstance(other, RectMatrix):
            return NotImplemented
        return self.shape == other.shape and bool(np.all(self.entries == other.entries))

    def __hash__(self):
        return hash((self.shape, tuple(self.entries.ravel())))

    def is_zero(self) -> bool:
        return not any(v != 0 for v in self.entries.ravel())

    def to_list(self) -> List[List[str]]:
        """Row-major rational strings, as written into reports."""
        return [[str(v) for v in row] for row in self.entries]

    def __repr__(self):
        return f"RectMatrix({self.to_list()})"


def _is_exact(a) -> bool:
    return (
        isinstance(a, np.ndarray)
        and a.dtype == object
        and a.ndim == 2
        and all(isinstance(v, Fraction) for v in a.ravel())
    )


def _same_shape(*ms: RectMatrix) -> None:
    shapes = {m.shape for m in ms}
    if len(shapes) != 1:
        raise ValueError(f"dimension mismatch: {sorted(shapes)}")


def basis_indices(p: int, q: int) -> List[Index]:
    return [(i, j) for i in range(1, p + 1) for j in range(1, q + 1)]


def basis_matrix(i: int, j: int, p: int, q: int) -> RectMatrix:
    """``E[i,j]``: a single 1 at row i, column j (1-based)."""
    if not (1 <= i <= p and 1 <= j <= q):
        raise ValueError(f"index ({i},{j}) outside {p}x{q}")
    m = np.full((p, q), Fraction(0), dtype=object)
    m[i - 1, j - 1] = Fraction(1)
    return RectMatrix(m)


def triple_product(x: RectMatrix, y: RectMatrix, z: RectMatrix) -> RectMatrix:
    """``x y^T z + z y^T x``."""
    _same_shape(x, y, z)
    yt = y.entries.T
    return RectMatrix(x.entries.dot(yt).dot(z.entries) + z.entries.dot(yt).dot(x.entries))


def check_jts_axioms(u, v, x, y, z) -> bool:
    """Outer symmetry and the five-variable Jordan triple identity, exactly."""
    _same_shape(u, v, x, y, z)
    T = triple_product
    if T(x, y, z) != T(z, y, x):
        return False
    lhs = T(u, v, T(x, y, z))
    rhs = T(T(u, v, x), y, z) - T(x, T(v, u, y), z) + T(x, y, T(u, v, z))
    return lhs == rhs


def structure_constants(p: int, q: int) -> StructureConstants:
    """Expansion of ``{E_a, E_b, E_c}`` in the matrix-unit basis, by dense arithmetic."""
    if p < 1 or q < 1:
        raise ValueError("p, q must be positive")
    idx = basis_indices(p, q)
    E = {a: basis_matrix(*a, p, q) for a in idx}
    out: StructureConstants = {}
    for a, b, c in product(idx, repeat=3):
        m = triple_product(E[a], E[b], E[c])
        out[a, b, c] = [(d, m[d]) for d in idx if m[d] != 0]
    return out


def delta_formula(a: Index, b: Index, c: Index) -> Dict[Index, int]:
    """Closed form ``d(j,l) d(k,s) E[i,t] + d(t,l) d(k,i) E[s,j]`` of ``{E_ij, E_kl, E_st}``."""
    (i, j), (k, l), (s, t) = a, b, c
    out: Dict[Index, int] = {}
    if j == l and k == s:
        out[i, t] = out.get((i, t), 0) + 1
    if t == l and k == i:
        out[s, j] = out.get((s, j), 0) + 1
    return out


def random_matrix(p: int, q: int, rng, height: int = 5) -> RectMatrix:
    """Random rational p x q matrix with numerators and denominators up to ``height``."""
    return RectMatrix([
        [Fraction(rng.randint(-height, height), rng.randint(1, height)) for _ in range(q)]
        for _ in range(p)
    ])


def phi(x: RectMatrix) -> NcPoly:
    """Linear map ``E[i,j] -> G[i,j]`` into the free algebra."""
    return NcPoly({((i, j),): x[i, j] for i, j in basis_indices(x.p, x.q)})
