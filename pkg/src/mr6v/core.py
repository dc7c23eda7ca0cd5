"""Exact scalars and dense linear algebra over the rationals.

Scalars are :class:`fractions.Fraction`; it already keeps numerator and
denominator in lowest terms with a positive denominator.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import comb, lcm
from typing import Iterable, Sequence

from .errors import NonSquare, ParseError, Singular

Scalar = Fraction

_RATIONAL_RE = re.compile(r"^(-?)(\d+)(?:/(\d+))?$")


def parse_rational(text: str) -> Fraction:
    """Parse ``-7/3``, ``5`` and friends; no decimal points, no spaces."""
    m = _RATIONAL_RE.match(text.strip())
    if m is None:
        raise ParseError(f"not a rational literal: {text!r}")
    sign, num, den = m.groups()
    den_val = int(den) if den is not None else 1
    if den_val == 0:
        raise ParseError(f"zero denominator: {text!r}")
    value = Fraction(int(num), den_val)
    return -value if sign else value


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def as_scalar(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, str):
        return parse_rational(value)
    if isinstance(value, float):
        raise TypeError("floats are not exact; pass a Fraction, int or string")
    return Fraction(value)


def binomial(a: int, b: int) -> int:
    """C(a, b) with C(a, b) = 0 whenever b < 0 or b > a."""
    if b < 0 or a < 0 or b > a:
        return 0
    return comb(a, b)


def product(values: Iterable) -> Fraction:
    out = Fraction(1)
    for v in values:
        out *= v
    return out


class Matrix:
    """Immutable dense matrix of Fractions, stored row-major."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Sequence):
        if len(entries) != rows * cols:
            raise ValueError(f"expected {rows * cols} entries, got {len(entries)}")
        self.rows = rows
        self.cols = cols
        self.entries = tuple(as_scalar(e) for e in entries)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "Matrix":
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), ncols, [e for r in rows for e in r])

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(n, n, [int(i == j) for i in range(n) for j in range(n)])

    @classmethod
    def build(cls, rows: int, cols: int, fn) -> "Matrix":
        """Fill entry (i, j), zero-based, with ``fn(i, j)``."""
        return cls(rows, cols, [fn(i, j) for i in range(rows) for j in range(cols)])

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> list[Fraction]:
        return list(self.entries[i * self.cols:(i + 1) * self.cols])

    def tolist(self) -> list[list[Fraction]]:
        return [self.row(i) for i in range(self.rows)]

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def transpose(self) -> "Matrix":
        return Matrix.build(self.cols, self.rows, lambda i, j: self[j, i])

    def delete(self, i: int, j: int) -> "Matrix":
        """Drop row i and column j (zero-based)."""
        keep_r = [r for r in range(self.rows) if r != i]
        keep_c = [c for c in range(self.cols) if c != j]
        return Matrix(len(keep_r), len(keep_c), [self[r, c] for r in keep_r for c in keep_c])

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        a = self.tolist()
        bt = other.transpose().tolist()
        return Matrix(self.rows, other.cols,
                      [sum((x * y for x, y in zip(ra, cb)), Fraction(0)) for ra in a for cb in bt])

    def __eq__(self, other) -> bool:
        return (isinstance(other, Matrix) and self.rows == other.rows
                and self.cols == other.cols and self.entries == other.entries)

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self) -> str:
        body = "; ".join(" ".join(format_rational(x) for x in self.row(i)) for i in range(self.rows))
        return f"Matrix({self.rows}x{self.cols}: [{body}])"


def det(m: Matrix) -> Fraction:
    """Exact determinant by fraction-free (Bareiss) elimination.

    Each row is first scaled to integers by the lcm of its denominators, so the
    elimination itself runs with exact integer division.
    """
    if not m.is_square:
        raise NonSquare(f"{m.rows}x{m.cols}")
    n = m.rows
    if n == 0:
        return Fraction(1)
    scale = Fraction(1)
    a: list[list[int]] = []
    for i in range(n):
        row = m.row(i)
        den = lcm(*(x.denominator for x in row))
        scale *= den
        a.append([int(x * den) for x in row])

    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            pivot = next((r for r in range(k + 1, n) if a[r][k] != 0), None)
            if pivot is None:
                return Fraction(0)
            a[k], a[pivot] = a[pivot], a[k]
            sign = -sign
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
            row_i[k] = 0
        prev = akk
    return Fraction(sign * a[n - 1][n - 1]) / scale


def inverse(m: Matrix) -> Matrix:
    """Exact inverse by Gauss-Jordan elimination with nonzero pivoting."""
    if not m.is_square:
        raise NonSquare(f"{m.rows}x{m.cols}")
    n = m.rows
    a = m.tolist()
    inv = Matrix.identity(n).tolist()
    for k in range(n):
        pivot = next((r for r in range(k, n) if a[r][k] != 0), None)
        if pivot is None:
            raise Singular("determinant is zero")
        if pivot != k:
            a[k], a[pivot] = a[pivot], a[k]
            inv[k], inv[pivot] = inv[pivot], inv[k]
        p = a[k][k]
        a[k] = [x / p for x in a[k]]
        inv[k] = [x / p for x in inv[k]]
        for i in range(n):
            if i == k or a[i][k] == 0:
                continue
            f = a[i][k]
            a[i] = [x - f * y for x, y in zip(a[i], a[k])]
            inv[i] = [x - f * y for x, y in zip(inv[i], inv[k])]
    return Matrix.from_rows(inv)


def interpolate(xs: Sequence, ys: Sequence) -> list[Fraction]:
    """Monomial coefficients (lowest degree first) of the interpolating polynomial.

    Newton divided differences; nodes must be pairwise distinct.
    """
    xs = [as_scalar(x) for x in xs]
    coef = [as_scalar(y) for y in ys]
    n = len(xs)
    for level in range(1, n):
        for i in range(n - 1, level - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - level])
    # expand Newton form into monomials, Horner style
    poly = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        # poly = poly * (z - xs[i]) + coef[i]
        shifted = [Fraction(0)] + poly[:-1]
        poly = [s - xs[i] * p for s, p in zip(shifted, poly)]
        poly[0] += coef[i]
    return poly


def poly_eval(coeffs: Sequence[Fraction], z) -> Fraction:
    out = Fraction(0)
    for a in reversed(coeffs):
        out = out * z + a
    return out
