import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import nonzero_rationals, rationals, seeded_rngs
from mr6v.core import Matrix, interpolate, poly_eval
from mr6v.errors import TraceZero, ZeroCrossing
from mr6v.formulas import partition_block
from mr6v.oracle import (Boundary, InhomParams, check_rectangle_limit, check_yang_baxter,
                         partition_bruteforce, r_matrix)
from mr6v.verify import rand_boundary, rand_params

WORKED = Boundary(north=(1, 2), south=(1, 1), east=(1, 0), west=(1, 1))


def boundaries():
    pair = st.tuples(rationals(5, 3), rationals(5, 3))
    return st.builds(Boundary, pair, pair, pair, pair)


def test_r_matrix_examples():
    p = Matrix.from_rows([[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]])
    assert r_matrix(4, 4, 7) == p
    assert r_matrix(1, 0, 1) == Matrix.from_rows([[2, 0, 0, 0], [0, 1, 1, 0], [0, 1, 1, 0], [0, 0, 0, 2]])
    r = r_matrix(3, 1, 2)
    assert [r[i, i] for i in range(4)] == [2, 1, 1, 2]
    assert r[1, 2] == r[2, 1] == 1
    with pytest.raises(ZeroCrossing):
        r_matrix(1, 0, 0)


def test_yang_baxter_examples():
    assert check_yang_baxter(2, 2, 2, 1)
    assert check_yang_baxter(1, 2, 5, 3)


@given(rationals(), rationals(), rationals(), nonzero_rationals())
def test_yang_baxter_random(u, v, w, c):
    assert check_yang_baxter(u, v, w, c)


def test_traces_and_beta():
    assert (WORKED.tr_b, WORKED.tr_c, WORKED.tr_bc) == (1, 3, 2)
    assert WORKED.beta == Fraction(-1, 2)
    with pytest.raises(TraceZero):
        Boundary((1, 0), (1, 0), (0, 1), (1, 0)).beta


@given(st.integers(-5, 5))
def test_beta_parameterization(w2):
    # n2 = s2 = 0 with e = (1, 1), w = (1, w2) leaves beta = -w2
    b = Boundary(north=(3, 0), south=(2, 0), east=(1, 1), west=(1, w2))
    assert b.beta == -w2


def test_bruteforce_examples():
    assert partition_bruteforce(InhomParams((1,), (0,), 1), WORKED) == 5
    allup = Boundary((1, 0), (1, 0), (1, 0), (1, 0))
    assert partition_bruteforce(InhomParams((Fraction(7, 3),), (Fraction(1, 2),), 2), allup) == \
        (Fraction(7, 3) - Fraction(1, 2) + 2) / 2
    dead = Boundary((1, 2), (3, 1), (0, 0), (1, 1))
    assert partition_bruteforce(InhomParams((1, 2), (0, 5, 7), 1), dead) == 0


@given(rationals(), rationals(), nonzero_rationals(), boundaries())
def test_single_vertex_by_hand(u, v, c, b):
    # <w| <n| R(u - v) |e> |s> written out with weights a = h, b and c = 1
    bb, hh = (u - v) / c, (u - v) / c + 1
    n, s, e, w = b.north, b.south, b.east, b.west
    hand = (hh * (w[0] * n[0] * e[0] * s[0] + w[1] * n[1] * e[1] * s[1])
            + bb * (w[0] * n[1] * e[0] * s[1] + w[1] * n[0] * e[1] * s[0])
            + (w[0] * n[1] * e[1] * s[0] + w[1] * n[0] * e[0] * s[1]))
    assert partition_bruteforce(InhomParams((u,), (v,), c), b) == hand


@given(seeded_rngs(), st.integers(1, 3), st.integers(1, 3))
def test_symmetric_in_spectral_parameters(rnd, n, m):
    p, b = rand_params(rnd, n, m), rand_boundary(rnd)
    u, v = list(p.u), list(p.v)
    rnd.shuffle(u)
    rnd.shuffle(v)
    assert partition_bruteforce(InhomParams(tuple(u), tuple(v), p.c), b) == partition_bruteforce(p, b)


@given(seeded_rngs(), st.integers(1, 3), st.integers(1, 3), nonzero_rationals())
def test_multilinear_in_east(rnd, n, m, lam):
    p, b = rand_params(rnd, n, m), rand_boundary(rnd)
    scaled = b.scaled(east=lam)
    assert partition_bruteforce(p, scaled) == lam ** n * partition_bruteforce(p, b)


@given(seeded_rngs(), st.integers(1, 3), st.integers(1, 3))
def test_polynomial_in_each_u(rnd, n, m):
    p, b = rand_params(rnd, n, m), rand_boundary(rnd)
    i = rnd.randrange(n)

    def z_at(x):
        u = list(p.u)
        u[i] = Fraction(x)
        return partition_bruteforce(InhomParams(tuple(u), p.v, p.c), b)

    coeffs = interpolate(list(range(m + 1)), [z_at(x) for x in range(m + 1)])
    probe = Fraction(-17, 3)
    assert poly_eval(coeffs, probe) == z_at(probe)


def test_rectangle_limit_shrinks():
    rng = random.Random(3)
    mags = [Fraction(10) ** 2, Fraction(10) ** 4, Fraction(10) ** 6]
    p, b = rand_params(rng, 1, 2), rand_boundary(rng)
    diffs = [abs(x) for x in check_rectangle_limit(p, b, mags)]
    assert diffs[0] > diffs[1] > diffs[2]
    # the block formula gives the same reference value
    z = partition_block(p, b).value
    assert z == partition_bruteforce(p, b)
    assert diffs[2] / abs(z) < Fraction(1, 10 ** 3)


def test_rectangle_limit_square_is_exact():
    rng = random.Random(4)
    p, b = rand_params(rng, 2, 2), rand_boundary(rng)
    assert check_rectangle_limit(p, b, [10, 100]) == [0, 0]


def test_rectangle_limit_needs_trace():
    p = InhomParams((1,), (2, 3), 1)
    with pytest.raises(TraceZero):
        check_rectangle_limit(p, Boundary((1, 1), (1, 1), (1, 0), (0, 1)), [10])
