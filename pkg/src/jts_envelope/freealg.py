"""Free associative algebra over the rationals on symbols ``G[i,j]``.

A word is a tuple of ``(row, col)`` pairs; the empty tuple is the unit.
Words are ordered degree-first, then lexicographically with letters compared
as ``(row, col)`` pairs (deglex). This order is admissible: it is a well-order
compatible with left and right multiplication.

Polynomials are immutable maps ``word -> Fraction`` without zero entries.
Their text form lists terms deglex-descending::

    2 * G[1,1] G[1,1] G[1,1] - 2 * G[1,1]
    -1/2 * G[2,1] G[1,1] + 3 * 1
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Dict, Iterable, Iterator, Mapping, NamedTuple, Tuple, Union

__all__ = [
    "GenId",
    "Word",
    "NcPoly",
    "word_key",
    "word_cmp",
    "poly_add",
    "poly_scale",
    "poly_mul",
    "gen",
    "word",
    "format_word",
    "parse_word",
    "format_poly",
    "parse_poly",
]


class GenId(NamedTuple):
    row: int
    col: int


Word = Tuple[Tuple[int, int], ...]
Scalar = Union[int, Fraction]


def word_key(w: Word):
    """Sort key realising deglex."""
    return (len(w), w)


def word_cmp(a: Word, b: Word) -> int:
    """Return -1, 0 or 1 as ``a`` is deglex-less, equal or greater than ``b``."""
    ka, kb = word_key(a), word_key(b)
    return (ka > kb) - (ka < kb)


def _clean(terms: Mapping[Word, Scalar]) -> Dict[Word, Fraction]:
    return {tuple(map(tuple, w)): Fraction(c) for w, c in terms.items() if c != 0}


class NcPoly:
    """Element of the free algebra: a finite rational combination of words."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Word, Scalar] | None = None):
        self._terms = _clean(terms) if terms else {}
        self._hash = None

    @classmethod
    def _raw(cls, terms: Dict[Word, Fraction]) -> "NcPoly":
        # caller guarantees: keys are Word tuples, values are nonzero Fractions
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def zero(cls) -> "NcPoly":
        return cls._raw({})

    @classmethod
    def one(cls) -> "NcPoly":
        return cls._raw({(): Fraction(1)})

    @classmethod
    def from_word(cls, w: Iterable[Tuple[int, int]], coeff: Scalar = 1) -> "NcPoly":
        w = tuple(tuple(g) for g in w)
        return cls._raw({w: Fraction(coeff)}) if coeff != 0 else cls.zero()

    @property
    def terms(self) -> Dict[Word, Fraction]:
        """A copy of the underlying ``word -> coefficient`` map."""
        return dict(self._terms)

    def items(self) -> Iterator[Tuple[Word, Fraction]]:
        """Terms in deglex-descending order."""
        for w in sorted(self._terms, key=word_key, reverse=True):
            yield w, self._terms[w]

    def words(self) -> list:
        return sorted(self._terms, key=word_key, reverse=True)

    def coeff(self, w: Word) -> Fraction:
        return self._terms.get(tuple(w), Fraction(0))

    def lead(self) -> Word:
        if not self._terms:
            raise ValueError("zero polynomial has no leading word")
        return max(self._terms, key=word_key)

    def degree(self) -> int:
        return max((len(w) for w in self._terms), default=-1)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = NcPoly({(): other})
        if not isinstance(other, NcPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return poly_add(self, other)

    __radd__ = __add__

    def __neg__(self):
        return NcPoly._raw({w: -c for w, c in self._terms.items()})

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return poly_add(self, -other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return poly_add(other, -self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return poly_scale(other, self)
        if not isinstance(other, NcPoly):
            return NotImplemented
        return poly_mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return poly_scale(other, self)
        return NotImplemented

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        out = NcPoly.one()
        for _ in range(n):
            out = out * self
        return out

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"NcPoly({format_poly(self)!r})"


def _coerce(x):
    if isinstance(x, NcPoly):
        return x
    if isinstance(x, (int, Fraction)):
        return NcPoly({(): x})
    return NotImplemented


def poly_add(a: NcPoly, b: NcPoly) -> NcPoly:
    out = dict(a._terms)
    for w, c in b._terms.items():
        v = out.get(w, 0) + c
        if v:
            out[w] = v
        else:
            out.pop(w, None)
    return NcPoly._raw(out)


def poly_scale(c: Scalar, a: NcPoly) -> NcPoly:
    c = Fraction(c)
    if not c:
        return NcPoly.zero()
    return NcPoly._raw({w: c * v for w, v in a._terms.items()})


def poly_mul(a: NcPoly, b: NcPoly) -> NcPoly:
    out: Dict[Word, Fraction] = {}
    for u, c in a._terms.items():
        for v, d in b._terms.items():
            w = u + v
            x = out.get(w, 0) + c * d
            if x:
                out[w] = x
            else:
                out.pop(w, None)
    return NcPoly._raw(out)


def gen(i: int, j: int) -> NcPoly:
    """The generator ``G[i,j]`` as a polynomial."""
    return NcPoly._raw({((i, j),): Fraction(1)})


def word(*letters: Tuple[int, int]) -> NcPoly:
    """Monomial from letters, e.g. ``word((1, 1), (1, 2))``."""
    return NcPoly.from_word(letters)


# ---------- text format ----------

def _fmt_scalar(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_word(w: Word) -> str:
    if not w:
        return "1"
    return " ".join(f"G[{i},{j}]" for i, j in w)


def format_poly(x: NcPoly) -> str:
    """Canonical text: ``c * WORD`` terms, deglex-descending, joined by `` + ``/`` - ``."""
    parts = []
    for w, c in x.items():
        if not parts:
            parts.append(f"{_fmt_scalar(c)} * {format_word(w)}")
        elif c < 0:
            parts.append(f"- {_fmt_scalar(-c)} * {format_word(w)}")
        else:
            parts.append(f"+ {_fmt_scalar(c)} * {format_word(w)}")
    return " ".join(parts) if parts else "0"


_LETTER = re.compile(r"G\[\s*(\d+)\s*,\s*(\d+)\s*\]")
_TERM = re.compile(r"([+-])?\s*(-?\d+(?:/\d+)?)\s*\*\s*(1|(?:G\[\s*\d+\s*,\s*\d+\s*\]\s*)+)")


def parse_word(text: str) -> Word:
    text = text.strip()
    if text == "1":
        return ()
    letters = tuple((int(i), int(j)) for i, j in _LETTER.findall(text))
    if _LETTER.sub("", text).strip():
        raise ValueError(f"malformed word: {text!r}")
    return letters


def parse_poly(text: str) -> NcPoly:
    """Inverse of :func:`format_poly`."""
    text = text.strip()
    if text == "0":
        return NcPoly.zero()
    out: Dict[Word, Fraction] = {}
    pos = 0
    for m in _TERM.finditer(text):
        if text[pos:m.start()].strip():
            raise ValueError(f"malformed polynomial near {text[pos:m.start()]!r}")
        pos = m.end()
        sign, coeff, w = m.groups()
        c = Fraction(coeff)
        if sign == "-":
            c = -c
        key = parse_word(w)
        out[key] = out.get(key, 0) + c
    if pos == 0 or text[pos:].strip():
        raise ValueError(f"malformed polynomial: {text!r}")
    return NcPoly(out)
