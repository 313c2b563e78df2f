"""Exact 2x2 rational matrices, positive words over {A, B}, and text formats.

Entries are :class:`fractions.Fraction`, which is already kept in lowest
terms with a positive denominator, so every value produced here is canonical.
Words are plain strings over ``"AB"``; the leftmost letter is the leftmost
factor of the product.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Iterable, Tuple

from .errors import ParseError

LETTERS = "AB"


def _q(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floats are not accepted as exact entries; pass Fraction or str")
    return Fraction(x)


@dataclass(frozen=True)
class Mat2:
    """Immutable 2x2 matrix ``[[a, b], [c, d]]`` over the rationals."""

    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction

    def __post_init__(self):
        for name in "abcd":
            object.__setattr__(self, name, _q(getattr(self, name)))

    @classmethod
    def of(cls, a, b, c, d) -> "Mat2":
        return cls(a, b, c, d)

    @classmethod
    def rows(cls, rows) -> "Mat2":
        (a, b), (c, d) = rows
        return cls(a, b, c, d)

    @classmethod
    def identity(cls) -> "Mat2":
        return IDENTITY

    def entries(self) -> Tuple[Fraction, Fraction, Fraction, Fraction]:
        return (self.a, self.b, self.c, self.d)

    def tolist(self):
        return [[self.a, self.b], [self.c, self.d]]

    def to_float(self):
        import numpy as np

        return np.array([float(e) for e in self.entries()], dtype=np.float64)

    @property
    def trace(self) -> Fraction:
        return self.a + self.d

    @property
    def det(self) -> Fraction:
        return self.a * self.d - self.b * self.c

    def is_integral(self) -> bool:
        return all(e.denominator == 1 for e in self.entries())

    def is_nonnegative(self) -> bool:
        return all(e >= 0 for e in self.entries())

    def __matmul__(self, other: "Mat2") -> "Mat2":
        return mat_mul(self, other)

    def __add__(self, other: "Mat2") -> "Mat2":
        return Mat2(self.a + other.a, self.b + other.b, self.c + other.c, self.d + other.d)

    def scale(self, k) -> "Mat2":
        k = _q(k)
        return Mat2(k * self.a, k * self.b, k * self.c, k * self.d)

    def __pow__(self, n: int) -> "Mat2":
        return mat_pow(self, n)

    def __str__(self):
        return render_matrix(self)


IDENTITY = Mat2(1, 0, 0, 1)


def mat_mul(lhs: Mat2, rhs: Mat2) -> Mat2:
    return Mat2(
        lhs.a * rhs.a + lhs.b * rhs.c,
        lhs.a * rhs.b + lhs.b * rhs.d,
        lhs.c * rhs.a + lhs.d * rhs.c,
        lhs.c * rhs.b + lhs.d * rhs.d,
    )


def mat_pow(M: Mat2, n: int) -> Mat2:
    """``M**n`` for ``n >= 0`` by repeated squaring."""
    if n < 0:
        raise ValueError("negative powers are not supported")
    result, base = IDENTITY, M
    while n:
        if n & 1:
            result = result @ base
        n >>= 1
        if n:
            base = base @ base
    return result


def upper_shear(k) -> Mat2:
    """``A(k) = [[1, k], [0, 1]]``."""
    return Mat2(1, k, 0, 1)


def lower_shear(m) -> Mat2:
    """``B(m) = [[1, 0], [m, 1]]``."""
    return Mat2(1, 0, m, 1)


def eval_word(w: str, A: Mat2, B: Mat2) -> Mat2:
    """Left-to-right product of the letters of ``w``; the empty word gives I."""
    table = {"A": A, "B": B}
    try:
        return reduce(mat_mul, (table[ch] for ch in w), IDENTITY)
    except KeyError as exc:
        raise ParseError(f"invalid letter {exc.args[0]!r}", w, w.index(exc.args[0])) from None


def max_abs_entry(M: Mat2) -> Fraction:
    return max(abs(e) for e in M.entries())


def l1_norm(M: Mat2) -> Fraction:
    return sum((abs(e) for e in M.entries()), Fraction(0))


def spectral_radius(M: Mat2) -> float:
    # discriminant taken exactly, so its sign is never wrong
    t, det = M.trace, M.det
    disc = t * t - 4 * det
    if disc >= 0:
        return (abs(float(t)) + math.sqrt(disc)) / 2.0
    return math.sqrt(det)


def mean_matrix(A: Mat2, B: Mat2) -> Mat2:
    return (A + B).scale(Fraction(1, 2))


def integer_form(mats: Iterable[Mat2]):
    """Scale matrices by their common denominator.

    Returns ``(int_entries, denom)`` where ``int_entries`` is a list of 4-tuples
    of Python ints with ``M == int_entries[i] / denom``.
    """
    mats = list(mats)
    denom = 1
    for M in mats:
        for e in M.entries():
            denom = denom * e.denominator // math.gcd(denom, e.denominator)
    ints = [tuple(int(e * denom) for e in M.entries()) for M in mats]
    return ints, denom


# ---------------------------------------------------------------- text formats

_ENTRY_RE = re.compile(r"\s*([+-]?\d+)(?:\s*/\s*([+-]?\d+))?\s*")


def _parse_entry(text: str, start: int, end: int) -> Fraction:
    chunk = text[start:end]
    m = _ENTRY_RE.fullmatch(chunk)
    if not m:
        stripped = len(chunk) - len(chunk.lstrip())
        raise ParseError(f"bad matrix entry {chunk.strip()!r}", text, start + stripped)
    num, den = m.group(1), m.group(2)
    if den is not None and int(den) == 0:
        raise ParseError("zero denominator", text, start + m.start(2))
    return Fraction(int(num), int(den) if den is not None else 1)


def parse_matrix_spec(text: str) -> Mat2:
    """Parse ``"a,b;c,d"`` where entries are integers or ``p/q`` fractions."""
    rows = text.split(";")
    if len(rows) != 2:
        raise ParseError(f"expected 2 rows separated by ';', got {len(rows)}", text, len(text))
    entries = []
    offset = 0
    for row in rows:
        cells = row.split(",")
        if len(cells) != 2:
            raise ParseError(
                f"expected 2 entries per row, got {len(cells)}", text, offset + len(row)
            )
        pos = offset
        for cell in cells:
            entries.append(_parse_entry(text, pos, pos + len(cell)))
            pos += len(cell) + 1
        offset += len(row) + 1
    return Mat2(*entries)


def render_matrix(M: Mat2) -> str:
    e = [str(x) for x in M.entries()]
    return f"{e[0]},{e[1]};{e[2]},{e[3]}"


_WORD_TOKEN = re.compile(r"([AB])(?:\^(-?\d+))?")


def parse_word(text: str) -> str:
    """Expand exponent shorthand, e.g. ``"A^3B"`` -> ``"AAAB"``. Spaces are ignored."""
    out = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _WORD_TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", text, pos)
        letter, exp = m.group(1), m.group(2)
        k = 1
        if exp is not None:
            k = int(exp)
            if k < 1:
                raise ParseError(f"exponent must be >= 1, got {k}", text, m.start(2))
        out.append(letter * k)
        pos = m.end()
    return "".join(out)


def render_word(w: str, compress: bool = True) -> str:
    """Inverse of :func:`parse_word`; runs are written as ``X^k`` when compressing."""
    if not compress:
        return w
    parts = []
    i = 0
    while i < len(w):
        j = i
        while j < len(w) and w[j] == w[i]:
            j += 1
        run = j - i
        parts.append(w[i] if run == 1 else f"{w[i]}^{run}")
        i = j
    return "".join(parts)


def word_from_index(index: int, length: int) -> str:
    """Word number ``index`` among words of ``length`` in lexicographic order (A < B)."""
    if length == 0:
        return ""
    return format(index, f"0{length}b").translate(str.maketrans("01", "AB"))


def word_index(w: str) -> int:
    return int(w.translate(str.maketrans("AB", "01")), 2) if w else 0


def _rational_sqrt(q: Fraction):
    if q < 0:
        return None
    rn, rd = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if rn * rn == q.numerator and rd * rd == q.denominator:
        return Fraction(rn, rd)
    return None


def exact_spectral_radius(M: Mat2):
    """Spectral radius as a Fraction when it is rational, else None."""
    t, det = M.trace, M.det
    disc = t * t - 4 * det
    if disc >= 0:
        root = _rational_sqrt(disc)
        return None if root is None else (abs(t) + root) / 2
    return _rational_sqrt(det)
