"""Thermodynamic limits: Hankel tau-functions, Toda identity and bulk free energy.

Exact identities run over Fractions.  Curve quantities involve sinh, sin and
log, so they are evaluated with mpmath at 50 significant digits.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from itertools import product as iproduct
from math import factorial
from typing import Iterable, Optional, Sequence

import mpmath

from .core import Matrix, as_scalar, binomial, det, interpolate
from .errors import BetaOne, DomainViolation
from .homogeneous import binomial_determinant, phi_derivative, z0
from .oracle import Boundary

WORK_DPS = 50
EMIT_DIGITS = 17


# --- Hankel tau-functions -------------------------------------------------------

def _hankel(size: int, d: int, x, beta, c, shifts: Sequence[int] = ()) -> Matrix:
    shifts = list(shifts) or [0] * size
    return Matrix.build(size, size, lambda i, j: phi_derivative(d + i + j + shifts[j], x, beta, c))


def tau(size: int, d: int, x, beta, c) -> Fraction:
    """det of phi_beta^(d+i+j-2)(x) over 1 <= i, j <= size; size 0 gives 1."""
    if size == 0:
        return Fraction(1)
    return det(_hankel(size, d, x, beta, c))


def tau_derivative(order: int, size: int, d: int, x, beta, c) -> Fraction:
    """Exact x-derivative of tau by distributing derivatives over columns.

    Differentiating column j k times just raises its derivative orders by k,
    so no numerical differencing is involved.
    """
    if size == 0:
        return Fraction(0) if order else Fraction(1)
    total = Fraction(0)
    for shifts in iproduct(range(order + 1), repeat=size):
        if sum(shifts) != order:
            continue
        weight = factorial(order)
        for k in shifts:
            weight //= factorial(k)
        total += weight * det(_hankel(size, d, x, beta, c, shifts))
    return total


def tau_derivatives(size: int, d: int, x, beta, c) -> tuple[Fraction, Fraction, Fraction]:
    return tuple(tau_derivative(k, size, d, x, beta, c) for k in range(3))


def check_toda(size: int, d: int, x, beta, c) -> bool:
    """tau_{s+1} tau_{s-1} == tau_s tau_s'' - (tau_s')**2 at fixed offset d."""
    if size < 1:
        raise ValueError("size >= 1")
    t0, t1, t2 = tau_derivatives(size, d, x, beta, c)
    return tau(size + 1, d, x, beta, c) * tau(size - 1, d, x, beta, c) == t0 * t2 - t1 * t1


# --- derivatives of Z at x = 0 -----------------------------------------------------

def z_ratio_polynomial(n: int, m: int, beta) -> list[Fraction]:
    """Coefficients in t = x/c of Z(x)/Z0, a polynomial of degree n*m."""
    s, d = min(n, m), abs(n - m)
    nodes = list(range(n * m + 1))
    values = [binomial_determinant(s, d, beta, t) for t in nodes]
    return interpolate(nodes, values)


def z_derivatives_at_zero(n: int, m: int, b: Boundary, c) -> tuple[Fraction, Fraction]:
    """(Z'(0)/Z0, Z''(0)/Z0) from the exact polynomial in x."""
    c = as_scalar(c)
    beta = b.beta
    if beta == 1:
        raise BetaOne("beta = 1")
    coeffs = z_ratio_polynomial(n, m, beta) + [Fraction(0)] * 2
    return coeffs[1] / c, 2 * coeffs[2] / c ** 2


def expected_z_derivatives(n: int, m: int, beta, c) -> dict[str, Fraction]:
    """Closed forms of the x = 0 derivatives for the three d-classes."""
    beta, c = as_scalar(beta), as_scalar(c)
    d, nm = abs(n - m), n * m
    if d > 1:
        return {"first": Fraction(nm) / c, "second": Fraction(nm * (nm - 1)) / c ** 2,
                "variance": Fraction(-nm) / c ** 2}
    if d == 1:
        return {"first": Fraction(nm) / c, "variance": -nm * (1 + beta) / c ** 2}
    return {"first": (n * n - beta * n) / c,
            "second": (n * n * (n * n - 1) - 2 * beta * n * n * (n - 1)) / c ** 2}


def check_z_derivatives(n: int, m: int, b: Boundary, c=1) -> bool:
    first, second = z_derivatives_at_zero(n, m, b, c)
    got = {"first": first, "second": second, "variance": second - first * first}
    want = expected_z_derivatives(n, m, b.beta, c)
    return all(got[k] == v for k, v in want.items())


# --- bulk free energy --------------------------------------------------------------

def alpha_squared(d: int, beta) -> Fraction:
    """beta-tilde = alpha**2 c**2, selected by the offset d = |n - m|."""
    if d < 0:
        raise ValueError("d >= 0")
    beta = as_scalar(beta)
    if d > 1:
        return Fraction(0)
    if d == 1:
        return 3 * beta
    return 3 * beta * (beta - 2)


class Regime(enum.Enum):
    POSITIVE = "positive"
    ZERO = "zero"
    NEGATIVE = "negative"


@dataclass(frozen=True)
class FreeEnergySpec:
    beta_tilde: Fraction

    @classmethod
    def for_lattice(cls, d: int, beta) -> "FreeEnergySpec":
        return cls(alpha_squared(d, beta))

    @property
    def regime(self) -> Regime:
        if self.beta_tilde > 0:
            return Regime.POSITIVE
        if self.beta_tilde < 0:
            return Regime.NEGATIVE
        return Regime.ZERO


def _precision():
    """At least 50 digits; callers asking for more (derivative oracles) keep theirs."""
    return mpmath.workdps(max(WORK_DPS, mpmath.mp.dps))


def to_mpf(value) -> mpmath.mpf:
    if isinstance(value, Fraction):
        return mpmath.mpf(value.numerator) / value.denominator
    if isinstance(value, int):
        return mpmath.mpf(value)
    return mpmath.mpf(value)


def _scalar_or_mpf(value):
    """Keep rationals exact for the regime test; everything else goes to mpf."""
    if isinstance(value, (Fraction, int)):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return as_scalar(value)
        except ValueError:
            return mpmath.mpf(value)
    return mpmath.mpf(value)


def _check_domain(xt: mpmath.mpf, bt) -> mpmath.mpf:
    """Return sqrt(|beta-tilde|) after rejecting x in the excluded set."""
    if xt <= 0:
        raise DomainViolation("x-tilde must be positive")
    a = mpmath.sqrt(abs(to_mpf(bt)))
    if bt < 0:
        y = a * xt / mpmath.pi
        k = mpmath.floor(y)
        tol = mpmath.mpf(10) ** (-(mpmath.mp.dps - 10))
        if abs(y - mpmath.nint(y)) < tol or int(k) % 2 == 1:
            raise DomainViolation(f"x-tilde={mpmath.nstr(xt, 10)} outside the allowed intervals")
    return a


def free_energy_tilde(x_tilde, beta_tilde) -> mpmath.mpf:
    """F(c x)/kT as a function of x-tilde = x/c."""
    bt = _scalar_or_mpf(beta_tilde)
    with _precision():
        xt = to_mpf(x_tilde)
        a = _check_domain(xt, bt)
        base = -mpmath.log1p(xt)
        if bt > 0:
            return mpmath.log(mpmath.sinh(a * xt) / (a * xt)) + base
        if bt < 0:
            return mpmath.log(mpmath.sin(a * xt) / (a * xt)) + base
        return +base


def free_energy_derivatives(x_tilde, beta_tilde) -> tuple[mpmath.mpf, mpmath.mpf]:
    """Analytic first and second x-tilde derivatives of the free energy."""
    bt = _scalar_or_mpf(beta_tilde)
    with _precision():
        xt = to_mpf(x_tilde)
        a = _check_domain(xt, bt)
        d1 = -1 / (1 + xt)
        d2 = 1 / (1 + xt) ** 2
        if bt > 0:
            d1 += a * mpmath.coth(a * xt) - 1 / xt
            d2 += -a ** 2 / mpmath.sinh(a * xt) ** 2 + 1 / xt ** 2
        elif bt < 0:
            d1 += a * mpmath.cot(a * xt) - 1 / xt
            d2 += -a ** 2 / mpmath.sin(a * xt) ** 2 + 1 / xt ** 2
        return +d1, +d2


@dataclass(frozen=True)
class InfiniteCharacteristics:
    E_avg: mpmath.mpf
    E_fluct_sq: mpmath.mpf
    S: mpmath.mpf


def infinite_characteristics(x_tilde, beta_tilde, kT=1) -> InfiniteCharacteristics:
    """Average energy, energy fluctuation and entropy per vertex, with k_B = 1."""
    with _precision():
        xt = to_mpf(x_tilde)
        kt = to_mpf(kT)
        f = free_energy_tilde(xt, beta_tilde)
        d1, d2 = free_energy_derivatives(xt, beta_tilde)
        lx = mpmath.log(xt)
        return InfiniteCharacteristics(
            E_avg=kt * xt * lx * d1,
            E_fluct_sq=kt ** 2 * xt * lx * ((2 - lx) * d1 - xt * lx * d2),
            S=-f + xt * lx * d1,
        )


def beta_zero_characteristics(x_tilde) -> InfiniteCharacteristics:
    """Closed forms for beta-tilde = 0, kT = 1."""
    with _precision():
        xt = to_mpf(x_tilde)
        lx = mpmath.log(xt)
        return InfiniteCharacteristics(
            E_avg=-xt * lx / (1 + xt),
            E_fluct_sq=-xt * lx / (1 + xt) ** 2 * (2 + 2 * xt - lx),
            S=-xt * lx / (1 + xt) + mpmath.log1p(xt),
        )


@dataclass(frozen=True)
class ThermoCurvePoint:
    x_tilde: mpmath.mpf
    F_tilde: Optional[mpmath.mpf]
    E_avg: Optional[mpmath.mpf]
    E_fluct_sq: Optional[mpmath.mpf]
    S: Optional[mpmath.mpf]

    @property
    def in_domain(self) -> bool:
        return self.F_tilde is not None

    def csv_fields(self) -> list[str]:
        def fmt(v):
            return "" if v is None else mpmath.nstr(v, EMIT_DIGITS, strip_zeros=False)
        with _precision():
            return [fmt(self.x_tilde), fmt(self.F_tilde), fmt(self.E_avg), fmt(self.E_fluct_sq), fmt(self.S)]


def grid(start, stop, steps: int) -> list[mpmath.mpf]:
    """``steps`` evenly spaced points, both ends included."""
    if steps < 2:
        raise ValueError("grid needs at least 2 steps")
    with _precision():
        a, b = to_mpf(start), to_mpf(stop)
        return [a + (b - a) * k / (steps - 1) for k in range(steps)]


def curve_point(x_tilde, beta_tilde, kT=1) -> ThermoCurvePoint:
    with _precision():
        xt = to_mpf(x_tilde)
        try:
            f = free_energy_tilde(xt, beta_tilde)
            ch = infinite_characteristics(xt, beta_tilde, kT)
        except DomainViolation:
            return ThermoCurvePoint(xt, None, None, None, None)
        return ThermoCurvePoint(xt, f, ch.E_avg, ch.E_fluct_sq, ch.S)


def thermo_curve(beta_tilde, points: Iterable, kT=1) -> list[ThermoCurvePoint]:
    return [curve_point(x, beta_tilde, kT) for x in points]


# --- semi-infinite and bulk checks ------------------------------------------------

def semi_infinite_ratio(n: int, m: int, x, c, b: Boundary) -> Fraction:
    """Z(x) / (Z0 (1 + x/c)**(nm)): the factorized binomial determinant."""
    x, c = as_scalar(x), as_scalar(c)
    z0(n, m, b)  # enforces the trace and beta preconditions
    beta = b.beta
    q = x / (x + c)
    s, d = min(n, m), abs(n - m)

    def entry(i, j):
        e = d + i + j + 1
        return binomial(d + i + j, i) * (1 - beta * q ** e)

    return det(Matrix.build(s, s, entry))


def successive_gap_ratios(n: int, ms: Sequence[int], x, c, b: Boundary) -> list[Fraction]:
    """|r(m_{k+1}) - 1| / |r(m_k) - 1| along the given widths."""
    gaps = [abs(semi_infinite_ratio(n, m, x, c, b) - 1) for m in ms]
    return [gaps[k + 1] / gaps[k] for k in range(len(gaps) - 1)]


def _log_fraction(q: Fraction) -> mpmath.mpf:
    return mpmath.log(q.numerator) - mpmath.log(q.denominator)


def bulk_free_energy_gaps(beta, x, c, sizes: Sequence[int]) -> list[mpmath.mpf]:
    """Distance between ln(Z/Z0)/n**2 on the n x n lattice and the bulk prediction.

    The prediction is -F(x)/kT with alpha**2 = 3 beta (beta - 2)/c**2.  The
    subleading corrections are uncharacterized, so callers should only look at
    the trend in n.
    """
    beta, x, c = as_scalar(beta), as_scalar(x), as_scalar(c)
    if x <= 0 or c <= 0:
        raise DomainViolation("bulk comparison needs x, c > 0")
    t = x / c
    target = -free_energy_tilde(t, alpha_squared(0, beta))
    gaps = []
    with _precision():
        for n in sizes:
            r = binomial_determinant(n, 0, beta, t)
            if r <= 0:
                raise DomainViolation(f"Z/Z0 not positive at n={n}")
            gaps.append(abs(_log_fraction(r) / (n * n) - target))
    return gaps
