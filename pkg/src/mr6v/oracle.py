"""Ground truth: contract the lattice of R-matrices directly.

The plane with general boundaries is

    Z = <W| <N| prod_i prod_j R_{a_i b_j}(u_i - v_j) |E> |S>

where each boundary is a uniform product of a single two-component vector.
R-matrices sharing no space commute, so the product regroups into column
transfer operators T_j = R_{a_1 b_j} ... R_{a_n b_j}, and after projecting
column j onto <n| . |s> only a 2**n state over the row spaces is ever held.
Practical up to n of about 14 (the CLI caps it via MR6V_MAX_N).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .core import Matrix, as_scalar
from .errors import TraceZero, ZeroCrossing

Pair = tuple[Fraction, Fraction]


def _pair(v) -> Pair:
    a, b = v
    return (as_scalar(a), as_scalar(b))


def _dot(x: Pair, y: Pair) -> Fraction:
    return x[0] * y[0] + x[1] * y[1]


@dataclass(frozen=True)
class Boundary:
    """Boundary vectors; component 0 is the up spin |1>, component 1 the down spin |2>."""

    north: Pair
    south: Pair
    east: Pair
    west: Pair

    def __post_init__(self):
        for name in ("north", "south", "east", "west"):
            object.__setattr__(self, name, _pair(getattr(self, name)))

    @property
    def tr_b(self) -> Fraction:
        return _dot(self.west, self.east)

    @property
    def tr_c(self) -> Fraction:
        return _dot(self.north, self.south)

    @property
    def tr_bc(self) -> Fraction:
        return _dot(self.north, self.east) * _dot(self.west, self.south)

    @property
    def beta(self) -> Fraction:
        tr_bc = self.tr_bc
        if tr_bc == 0:
            raise TraceZero("tr(BC) = 0, beta undefined")
        return 1 - self.tr_b * self.tr_c / tr_bc

    def scaled(self, **factors) -> "Boundary":
        kw = {name: getattr(self, name) for name in ("north", "south", "east", "west")}
        for name, lam in factors.items():
            lam = as_scalar(lam)
            kw[name] = (kw[name][0] * lam, kw[name][1] * lam)
        return Boundary(**kw)


@dataclass(frozen=True)
class InhomParams:
    u: tuple[Fraction, ...]
    v: tuple[Fraction, ...]
    c: Fraction

    def __post_init__(self):
        object.__setattr__(self, "u", tuple(as_scalar(x) for x in self.u))
        object.__setattr__(self, "v", tuple(as_scalar(x) for x in self.v))
        object.__setattr__(self, "c", as_scalar(self.c))
        if self.c == 0:
            raise ZeroCrossing("c = 0")

    @property
    def n(self) -> int:
        return len(self.u)

    @property
    def m(self) -> int:
        return len(self.v)

    @property
    def distinct(self) -> bool:
        """All u pairwise distinct, all v pairwise distinct and no u equal to a v."""
        return (len(set(self.u)) == self.n and len(set(self.v)) == self.m
                and not set(self.u) & set(self.v))


def r_matrix(u, v, c) -> Matrix:
    """4x4 R(u - v) = (u - v)/c * I + P in the basis |11>, |12>, |21>, |22>."""
    c = as_scalar(c)
    if c == 0:
        raise ZeroCrossing("c = 0")
    b = (as_scalar(u) - as_scalar(v)) / c
    h = b + 1
    return Matrix.from_rows([
        [h, 0, 0, 0],
        [0, b, 1, 0],
        [0, 1, b, 0],
        [0, 0, 0, h],
    ])


def _embed(r: Matrix, first: int, second: int, nspaces: int) -> Matrix:
    """Lift a two-space operator to act on spaces ``first`` and ``second`` of a product."""
    dim = 2 ** nspaces

    def bit(state: int, k: int) -> int:
        return (state >> (nspaces - 1 - k)) & 1

    def entry(out: int, inp: int) -> Fraction:
        for k in range(nspaces):
            if k not in (first, second) and bit(out, k) != bit(inp, k):
                return Fraction(0)
        return r[2 * bit(out, first) + bit(out, second), 2 * bit(inp, first) + bit(inp, second)]

    return Matrix.build(dim, dim, entry)


def check_yang_baxter(u, v, w, c) -> bool:
    """R_ab(u,v) R_ac(u,w) R_bc(v,w) == R_bc(v,w) R_ac(u,w) R_ab(u,v) on C^2 x C^2 x C^2."""
    r_ab = _embed(r_matrix(u, v, c), 0, 1, 3)
    r_ac = _embed(r_matrix(u, w, c), 0, 2, 3)
    r_bc = _embed(r_matrix(v, w, c), 1, 2, 3)
    return r_ab @ r_ac @ r_bc == r_bc @ r_ac @ r_ab


def _apply_vertex(state: list, bit: int, b: Fraction) -> list:
    """Apply R between row-space bit ``bit`` and the column spin (lowest bit).

    Diagonal pairs (same spins) get weight b + 1; opposite pairs mix with
    weight b on the diagonal and 1 off it.
    """
    h = b + 1
    mask = 1 << bit
    out = list(state)
    for idx in range(len(state)):
        a_spin = (idx >> bit) & 1
        col_spin = idx & 1
        if a_spin == col_spin:
            out[idx] = h * state[idx]
        else:
            partner = idx ^ mask ^ 1
            out[idx] = b * state[idx] + state[partner]
    return out


def partition_sites(u: Sequence, v: Sequence, c, north: Sequence, south: Sequence,
                    east: Sequence, west: Sequence) -> Fraction:
    """Contract with site-dependent boundary vectors.

    ``north``/``south`` hold one pair per column, ``east``/``west`` one pair
    per row.  :func:`partition_bruteforce` is the uniform special case.
    """
    c = as_scalar(c)
    if c == 0:
        raise ZeroCrossing("c = 0")
    u = [as_scalar(x) for x in u]
    v = [as_scalar(x) for x in v]
    n, m = len(u), len(v)
    east = [_pair(e) for e in east]
    west = [_pair(w) for w in west]
    north = [_pair(x) for x in north]
    south = [_pair(x) for x in south]
    if len(east) != n or len(west) != n or len(north) != m or len(south) != m:
        raise ValueError("boundary list lengths must match the lattice")

    # row a_i lives on bit (n - i) of the state index once the column spin is appended
    def row_bit(i: int) -> int:
        return n - i

    state = [Fraction(1)]
    for i in range(n):
        state = [s * comp for s in state for comp in east[i]]

    for j in range(m - 1, -1, -1):
        s_vec, n_vec = south[j], north[j]
        ext = [x * comp for x in state for comp in s_vec]
        for i in range(n - 1, -1, -1):
            ext = _apply_vertex(ext, row_bit(i), (u[i] - v[j]) / c)
        state = [ext[2 * k] * n_vec[0] + ext[2 * k + 1] * n_vec[1] for k in range(len(state))]

    total = Fraction(0)
    for idx, amp in enumerate(state):
        if amp == 0:
            continue
        weight = Fraction(1)
        for i in range(n):
            weight *= west[i][(idx >> (n - 1 - i)) & 1]
        total += weight * amp
    return total


def partition_bruteforce(p: InhomParams, b: Boundary) -> Fraction:
    return partition_sites(p.u, p.v, p.c, [b.north] * p.m, [b.south] * p.m,
                           [b.east] * p.n, [b.west] * p.n)


def check_rectangle_limit(p_rect: InhomParams, b: Boundary, magnitudes: Sequence) -> list[Fraction]:
    """Differences between the padded-square estimate and the rectangle value.

    For n < m the row set is padded with M, M**2, ... (the last-added row is
    the largest, so it is the first to be sent away), the square value is
    rescaled by tr(B)**-(m-n) prod (c/u_extra)**m, and the rectangle oracle value
    subtracted.  n > m pads the columns symmetrically with factors (c/(-v))**n.
    """
    n, m, c = p_rect.n, p_rect.m, p_rect.c
    z_rect = partition_bruteforce(p_rect, b)
    if n == m:
        return [Fraction(0) for _ in magnitudes]
    diffs = []
    for mag in magnitudes:
        mag = as_scalar(mag)
        if n < m:
            if b.tr_b == 0:
                raise TraceZero("tr(B) = 0")
            extra = [mag ** (k + 1) for k in range(m - n)]
            square = InhomParams(p_rect.u + tuple(extra), p_rect.v, c)
            factor = Fraction(1) / b.tr_b ** (m - n)
            for x in extra:
                factor *= (c / x) ** m
        else:
            if b.tr_c == 0:
                raise TraceZero("tr(C) = 0")
            extra = [mag ** (k + 1) for k in range(n - m)]
            square = InhomParams(p_rect.u, p_rect.v + tuple(extra), c)
            factor = Fraction(1) / b.tr_c ** (n - m)
            for x in extra:
                factor *= (c / -x) ** n
        diffs.append(factor * partition_bruteforce(square, b) - z_rect)
    return diffs
