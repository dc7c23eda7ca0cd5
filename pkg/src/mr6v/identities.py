"""Auxiliary identities: partial Cauchy matrices, binomial minors, symmetric functions."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Sequence

from .core import Matrix, as_scalar, binomial, det, product
from .errors import DegreeViolation, DistinctnessViolation
from .formulas import WeightFns


# --- symmetric functions -------------------------------------------------------

def elementary_symmetric(r: int, xs: Sequence) -> Fraction:
    """e_r: coefficient of t**r in prod (1 + x t)."""
    if r < 0:
        return Fraction(0)
    coeffs = [Fraction(1)]
    for x in xs:
        x = as_scalar(x)
        coeffs = [a + x * b for a, b in zip(coeffs + [Fraction(0)], [Fraction(0)] + coeffs)]
    return coeffs[r] if r < len(coeffs) else Fraction(0)


def complete_symmetric(r: int, xs: Sequence) -> Fraction:
    """h_r: coefficient of t**r in prod 1/(1 - x t)."""
    if r < 0:
        return Fraction(0)
    coeffs = [Fraction(1)] + [Fraction(0)] * r
    for x in xs:
        x = as_scalar(x)
        # multiply by 1/(1 - x t): running prefix recurrence
        for k in range(1, r + 1):
            coeffs[k] += x * coeffs[k - 1]
    return coeffs[r]


def check_eh_identity(n: int, xs: Sequence) -> bool:
    if n < 1:
        raise ValueError("n >= 1")
    total = sum(((-1) ** r * elementary_symmetric(r, xs) * complete_symmetric(n - r, xs)
                 for r in range(n + 1)), Fraction(0))
    return total == 0


def vandermonde_matrix(xs: Sequence) -> Matrix:
    xs = [as_scalar(x) for x in xs]
    return Matrix.build(len(xs), len(xs), lambda i, j: xs[i] ** j)


def vandermonde_inverse(xs: Sequence) -> Matrix:
    """Inverse of (x_i**(j-1)) from elementary symmetric functions of the other nodes."""
    xs = [as_scalar(x) for x in xs]
    n = len(xs)
    if len(set(xs)) != n:
        raise DistinctnessViolation("Vandermonde nodes must be distinct")

    def entry(i, j):
        rest = xs[:j] + xs[j + 1:]
        den = product(xs[j] - x for x in rest)
        r = n - (i + 1)
        return (-1) ** r * elementary_symmetric(r, rest) / den

    return Matrix.build(n, n, entry)


# --- residues ------------------------------------------------------------------

def residue_sum(poles: Sequence, numerator_roots: Sequence, leading=1) -> Fraction:
    """Sum of residues of leading * prod(z - b) / prod(z - a) at its simple poles."""
    poles = [as_scalar(a) for a in poles]
    roots = [as_scalar(b) for b in numerator_roots]
    leading = as_scalar(leading)
    if len(set(poles)) != len(poles):
        raise DistinctnessViolation("poles must be simple")
    if len(poles) <= len(roots) + 1:
        raise DegreeViolation("need deg Q > deg P + 1")
    total = Fraction(0)
    for k, a in enumerate(poles):
        num = leading * product(a - b for b in roots)
        den = product(a - x for j, x in enumerate(poles) if j != k)
        total += num / den
    return total


# --- partial Cauchy matrices ---------------------------------------------------

class Orientation(enum.Enum):
    ROWS_ARE_U = "rows"   # n <= m: Cauchy rows on top, monomial rows in v below
    COLS_ARE_V = "cols"   # n >= m: Cauchy columns left, monomial columns in u right


@dataclass(frozen=True)
class PartialCauchy:
    u: tuple
    v: tuple
    c: Fraction
    shifted: bool = False

    def __post_init__(self):
        object.__setattr__(self, "u", tuple(as_scalar(x) for x in self.u))
        object.__setattr__(self, "v", tuple(as_scalar(x) for x in self.v))
        object.__setattr__(self, "c", as_scalar(self.c))
        if (len(set(self.u)) != len(self.u) or len(set(self.v)) != len(self.v)
                or set(self.effective_u) & set(self.effective_v)):
            raise DistinctnessViolation("partial Cauchy parameters must be distinct")

    @property
    def n(self) -> int:
        return len(self.u)

    @property
    def m(self) -> int:
        return len(self.v)

    @property
    def size(self) -> int:
        return max(self.n, self.m)

    @property
    def orientation(self) -> Orientation:
        return Orientation.ROWS_ARE_U if self.n <= self.m else Orientation.COLS_ARE_V

    # the h-kernel variant is the plain one with u moved by +c (rows) or v by -c (cols)
    @property
    def effective_u(self) -> tuple:
        if self.shifted and self.n <= self.m:
            return tuple(x + self.c for x in self.u)
        return self.u

    @property
    def effective_v(self) -> tuple:
        if self.shifted and self.n > self.m:
            return tuple(y - self.c for y in self.v)
        return self.v

    def plain(self) -> "PartialCauchy":
        return PartialCauchy(self.effective_u, self.effective_v, self.c)

    def matrix(self) -> Matrix:
        w = WeightFns(self.c)
        n, m = self.n, self.m
        u, v = self.u, self.v
        kernel = w.inv_h if self.shifted else w.g
        if self.orientation is Orientation.ROWS_ARE_U:
            return Matrix.build(m, m, lambda i, j: kernel(u[i], v[j]) if i < n
                                else w.psi(m - (i + 1), -v[j]))
        return Matrix.build(n, n, lambda i, j: kernel(u[i], v[j]) if j < m
                            else w.psi(n - (j + 1), u[i]))


def partial_cauchy_det(pc: PartialCauchy) -> Fraction:
    w = WeightFns(pc.c)
    dd = w.vandermonde(pc.u) * w.vandermonde_rev(pc.v)
    if pc.shifted:
        return dd / w.h_prod(pc.u, pc.v)
    return w.g_prod(pc.u, pc.v) * dd


def f_p(p: int, xs: Sequence, ys: Sequence, c) -> Fraction:
    """c**-p sum_l h_{p-l}(xs) e_l(ys)."""
    c = as_scalar(c)
    return sum((complete_symmetric(p - l, xs) * elementary_symmetric(l, ys)
                for l in range(p + 1)), Fraction(0)) / c ** p


def partial_cauchy_inverse(pc: PartialCauchy) -> Matrix:
    """Closed-form inverse; the shifted variant reuses the plain one at translated arguments."""
    if pc.shifted:
        return partial_cauchy_inverse(pc.plain())
    w = WeightFns(pc.c)
    c = pc.c
    u, v = list(pc.u), list(pc.v)
    n, m = pc.n, pc.m

    def cauchy_block(i, j):
        uj, vi = u[j], v[i]
        return (w.g(uj, vi) * w.g_prod(u[:j] + u[j + 1:], [uj]) * w.g_prod([vi], v[:i] + v[i + 1:])
                / (w.g_prod([uj], v) * w.g_prod(u, [vi])))

    if pc.orientation is Orientation.ROWS_ARE_U:
        def entry(i, j):
            if j < n:
                return cauchy_block(i, j)
            vi = v[i]
            pre = w.g_prod([vi], v[:i] + v[i + 1:]) / w.g_prod([vi], u)
            return pre * f_p(j - n, u, [-y for y in v[:i] + v[i + 1:]], c)
        return Matrix.build(m, m, entry)

    def entry(i, j):
        if i < m:
            return cauchy_block(i, j)
        uj = u[j]
        pre = w.g_prod(u[:j] + u[j + 1:], [uj]) / w.g_prod(v, [uj])
        return pre * f_p(i - m, [-y for y in v], u[:j] + u[j + 1:], c)
    return Matrix.build(n, n, entry)


# --- binomial matrices ---------------------------------------------------------

def binomial_matrix(n: int, d: int) -> Matrix:
    """M_n(d) with (i, j) entry C(d + i - 1 + j - 1, i - 1), 1-based."""
    return Matrix.build(n, n, lambda i, j: binomial(d + i + j, i))


def binomial_minor_by_deletion(n: int, d: int, k: int, l: int) -> Fraction:
    """(k, l) minor of M_n(d) by deleting a row and column; zero outside [1, n]."""
    if not (1 <= k <= n and 1 <= l <= n):
        return Fraction(0)
    return det(binomial_matrix(n, d).delete(k - 1, l - 1))


def binomial_minor(n: int, d: int, k: int, l: int) -> Fraction:
    """Closed form of the (k, l) minor of M_n(d); zero when k or l falls outside [1, n]."""
    if n < 1 or d < 0:
        raise ValueError("need n >= 1 and d >= 0")
    if not (1 <= k <= n and 1 <= l <= n):
        return Fraction(0)
    pref = product(d + q for q in range(k, n + 1)) / factorial(n - k)
    s = sum((Fraction(binomial(k - 1, p - l) * binomial(n - k, p - k), d + p)
             for p in range(max(l, k), min(k + l - 1, n) + 1)), Fraction(0))
    return pref * s


def check_minor_recurrence(n: int, d: int, k: int, l: int) -> bool:
    """D^{(k,l)} at size n-1 equals the sum of the (k-1, l-1) and (k-1, l) minors at d+1."""
    if n < 2 or k < 2:
        raise ValueError("recurrence stated for n > 1, k > 1")
    lhs = binomial_minor(n, d, k, l)
    rhs = binomial_minor(n - 1, d + 1, k - 1, l - 1) + binomial_minor(n - 1, d + 1, k - 1, l)
    return lhs == rhs


def check_minor_expansion(n: int, d: int, k: int, l: int) -> bool:
    """Expand a row-k minor through first-row minors of the shifted, smaller matrix."""
    if not 1 <= k <= n:
        raise ValueError("k must lie in [1, n]")
    lhs = binomial_minor(n, d, k, l)
    rhs = sum((binomial(k - 1, p) * binomial_minor(n - k + 1, d + k - 1, 1, l - p)
               for p in range(k)), Fraction(0))
    return lhs == rhs


def check_comatrix(n: int, d: int) -> bool:
    """Signed minors times the binomial matrix give the identity."""
    for k in range(1, n + 1):
        for j in range(1, n + 1):
            s = sum(((-1) ** (k + l) * binomial_minor(n, d, k, l) * binomial(d + l - 1 + j - 1, j - 1)
                     for l in range(1, n + 1)), Fraction(0))
            if s != (k == j):
                return False
    return True
