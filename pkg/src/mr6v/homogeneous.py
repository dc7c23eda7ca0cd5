"""Homogeneous lattice: every vertex carries the same x = u - v."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .core import Matrix, as_scalar, binomial, det, product
from .errors import BetaOne, NonPositiveTrace, PoleHit, ZeroCrossing
from .oracle import Boundary


@dataclass(frozen=True)
class HomogParams:
    x: Fraction
    c: Fraction
    n: int
    m: int

    def __post_init__(self):
        object.__setattr__(self, "x", as_scalar(self.x))
        object.__setattr__(self, "c", as_scalar(self.c))
        if self.c == 0:
            raise ZeroCrossing("c = 0")
        if self.n < 1 or self.m < 1:
            raise ValueError("lattice sides must be positive")

    @property
    def d(self) -> int:
        return abs(self.n - self.m)

    @property
    def size(self) -> int:
        return min(self.n, self.m)


def phi_derivative(k: int, x, beta, c) -> Fraction:
    """k-th derivative of phi_beta(x) = c/x - beta c/(x + c)."""
    x, beta, c = as_scalar(x), as_scalar(beta), as_scalar(c)
    if x == 0 or x == -c:
        raise PoleHit(f"phi^({k}) at x={x}")
    return (-1) ** k * factorial(k) * (c / x ** (k + 1) - beta * c / (x + c) ** (k + 1))


def phi_derivative_product_form(k: int, x, beta, c) -> Fraction:
    """Same derivative written through phi_1(x)**(k+1)."""
    x, beta, c = as_scalar(x), as_scalar(beta), as_scalar(c)
    if x == 0 or x == -c:
        raise PoleHit(f"phi^({k}) at x={x}")
    phi1 = c / x - c / (x + c)
    t = x / c
    return (-1) ** k * factorial(k) * phi1 ** (k + 1) / c ** k * ((1 + t) ** (k + 1) - beta * t ** (k + 1))


def _checked_beta(b: Boundary) -> Fraction:
    beta = b.beta  # TraceZero on tr(BC) = 0
    if beta == 1:
        raise BetaOne(f"beta = 1 (tr(B)={b.tr_b}, tr(C)={b.tr_c})")
    return beta


def z0(n: int, m: int, b: Boundary) -> Fraction:
    """Fully homogeneous value (x = 0), computed both ways and cross-checked."""
    beta = _checked_beta(b)
    trace_form = b.tr_b ** n * b.tr_c ** m / (1 - beta) ** min(n, m)
    d = abs(n - m)
    side = b.tr_c if n <= m else b.tr_b
    bc_form = b.tr_bc ** min(n, m) * side ** d
    assert trace_form == bc_form, "Z0 forms disagree"
    return trace_form


def binomial_determinant(size: int, d: int, beta, t) -> Fraction:
    """det C(d+i+j-2, i-1) ((1+t)^(d+i+j-1) - beta t^(d+i+j-1)), with t = x/c."""
    beta, t = as_scalar(beta), as_scalar(t)

    def entry(i, j):
        e = d + i + j + 1  # zero-based i, j
        return binomial(d + i + j, i) * ((1 + t) ** e - beta * t ** e)

    return det(Matrix.build(size, size, entry))


def partition_homogeneous(h: HomogParams, b: Boundary) -> Fraction:
    beta = _checked_beta(b)
    if h.x == -h.c:
        raise PoleHit("x = -c")
    pre = b.tr_b ** h.n * b.tr_c ** h.m / (1 - beta) ** h.size
    return pre * binomial_determinant(h.size, h.d, beta, h.x / h.c)


def partition_homogeneous_derivative_form(h: HomogParams, b: Boundary) -> Fraction:
    """Hankel determinant of phi_beta derivatives; only valid away from x in {0, -c}."""
    beta = _checked_beta(b)
    x, c, n, m = h.x, h.c, h.n, h.m
    s, d = h.size, h.d
    big = max(n, m)
    phi1 = c / x - c / (x + c) if x not in (0, -c) else None
    if phi1 is None:
        raise PoleHit("derivative form needs x not in {0, -c}")
    hankel = Matrix.build(s, s, lambda i, j: phi_derivative(d + i + j, x, beta, c))
    sign = (-1) ** (d * (big + 1))
    norm = product(factorial(k - 1) * factorial(d + k - 1) for k in range(1, s + 1))
    pre = b.tr_b ** n * b.tr_c ** m / (1 - beta) ** s
    return pre * sign / phi1 ** (n * m) * c ** (s * (big - 1)) / norm * det(hankel)


@dataclass(frozen=True)
class FiniteThermo:
    F_tot: float
    E_avg: float
    E_fluct: float
    C_V: float
    S: float


def _boundary_log(n: int, m: int, b: Boundary) -> float:
    args = [b.tr_bc]
    if n != m:
        args.append(b.tr_c if n < m else b.tr_b)
    for a in args:
        if a <= 0:
            raise NonPositiveTrace(f"log of non-positive trace {a}")
    d = abs(n - m)
    side = b.tr_c if n <= m else b.tr_b
    return min(n, m) * math.log(b.tr_bc) + (d * math.log(side) if d else 0.0)


def finite_thermodynamics(n: int, m: int, b: Boundary, eps: float, kT: float) -> FiniteThermo:
    """Free energy and derived quantities of the fully homogeneous lattice, k_B = 1.

    The heat capacity is taken as -T dF/dT, which makes it T times the entropy.
    """
    blog = _boundary_log(n, m, b)
    return FiniteThermo(
        F_tot=n * m * eps - kT * blog,
        E_avg=n * m * eps,
        E_fluct=0.0,
        C_V=kT * blog,
        S=blog,
    )


def finite_thermodynamics_from_weight(n: int, m: int, b: Boundary, c: float, kT: float) -> FiniteThermo:
    """Physical-weights variant: the vertex energy comes from c = exp(-eps/kT)."""
    if c <= 0:
        raise ValueError("Boltzmann weight c must be positive")
    return finite_thermodynamics(n, m, b, -kT * math.log(c) + 0.0, kT)
