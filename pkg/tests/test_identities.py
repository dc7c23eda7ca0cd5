from fractions import Fraction
from itertools import combinations, combinations_with_replacement

import pytest
from hypothesis import given, strategies as st

from conftest import distinct_rationals, nonzero_rationals, rationals, seeded_rngs
from mr6v.core import Matrix, det, inverse, product
from mr6v.errors import DegreeViolation, DistinctnessViolation, MR6VError
from mr6v.formulas import WeightFns
from mr6v.identities import (PartialCauchy, binomial_matrix, binomial_minor, binomial_minor_by_deletion,
                             check_comatrix, check_eh_identity, check_minor_expansion, check_minor_recurrence,
                             complete_symmetric, elementary_symmetric, partial_cauchy_det,
                             partial_cauchy_inverse, residue_sum, vandermonde_inverse, vandermonde_matrix)
from mr6v.verify import rand_params


def cauchy_instance(rng, n, m, shifted=False):
    while True:
        p = rand_params(rng, n, m)
        try:
            pc = PartialCauchy(p.u, p.v, p.c, shifted)
            pc.matrix()
            return pc
        except MR6VError:
            continue


# --- symmetric functions ---------------------------------------------------------

def test_symmetric_examples():
    assert elementary_symmetric(2, [1, 2, 3]) == 11
    assert complete_symmetric(2, [1, 2]) == 7
    assert elementary_symmetric(0, [4, 5]) == complete_symmetric(0, [4, 5]) == 1
    assert elementary_symmetric(4, [1, 2, 3]) == 0


@given(st.lists(rationals(), max_size=6), st.integers(0, 7))
def test_symmetric_against_enumeration(xs, r):
    assert elementary_symmetric(r, xs) == sum((product(t) for t in combinations(xs, r)), Fraction(0))
    assert complete_symmetric(r, xs) == sum((product(t) for t in combinations_with_replacement(xs, r)),
                                            Fraction(0))


def test_eh_identity_examples():
    assert check_eh_identity(1, [Fraction(3, 7), 2])
    assert check_eh_identity(5, [Fraction(1, 2), 3, -2])


@given(st.lists(rationals(), max_size=6), st.integers(1, 8))
def test_eh_identity_random(xs, n):
    assert check_eh_identity(n, xs)


# --- Vandermonde -------------------------------------------------------------------

def test_vandermonde_examples():
    assert vandermonde_inverse([0, 1]) == Matrix.from_rows([[1, 0], [-1, 1]])
    assert vandermonde_inverse([Fraction(5, 2)]) == Matrix.from_rows([[1]])
    with pytest.raises(DistinctnessViolation):
        vandermonde_inverse([1, 1])


@given(st.integers(1, 6).flatmap(distinct_rationals))
def test_vandermonde_inverse_random(xs):
    v = vandermonde_matrix(xs)
    vi = vandermonde_inverse(xs)
    assert v @ vi == Matrix.identity(len(xs))
    assert vi == inverse(v)


# --- residues ------------------------------------------------------------------------

def test_residue_examples():
    assert residue_sum([1, 2], []) == 0
    assert residue_sum([1, 2, 3], []) == 0
    with pytest.raises(DegreeViolation):
        residue_sum([1, 2], [5])
    with pytest.raises(DistinctnessViolation):
        residue_sum([1, 1, 2], [])


@given(st.integers(2, 7).flatmap(lambda q: st.tuples(distinct_rationals(q), st.lists(rationals(), max_size=q - 2))),
       nonzero_rationals())
def test_residue_sum_random(data, lead):
    poles, roots = data
    assert residue_sum(poles, roots, lead) == 0


# --- partial Cauchy ------------------------------------------------------------------

def test_cauchy_one_by_one():
    pc = PartialCauchy((3,), (1,), 2)
    assert partial_cauchy_det(pc) == det(pc.matrix()) == WeightFns(pc.c).g(3, 1)
    assert partial_cauchy_inverse(pc) == Matrix.from_rows([[1 / WeightFns(pc.c).g(3, 1)]])


def test_cauchy_small_example():
    pc = PartialCauchy((5,), (1, 2), 1)
    assert partial_cauchy_det(pc) == det(pc.matrix())


@given(seeded_rngs(), st.integers(1, 5), st.integers(1, 5), st.booleans())
def test_cauchy_det_and_inverse(rng, n, m, shifted):
    pc = cauchy_instance(rng, n, m, shifted)
    mat = pc.matrix()
    assert det(mat) == partial_cauchy_det(pc)
    inv = partial_cauchy_inverse(pc)
    assert inv @ mat == Matrix.identity(pc.size)
    assert inv == inverse(mat)


def test_cauchy_distinctness():
    with pytest.raises(DistinctnessViolation):
        PartialCauchy((1, 2), (2, 3, 4), 1)


# --- binomial matrices ---------------------------------------------------------------

def test_binomial_matrix_entries():
    assert binomial_matrix(3, 0) == Matrix.from_rows([[1, 1, 1], [1, 2, 3], [1, 3, 6]])


@pytest.mark.parametrize("n", range(1, 9))
def test_binomial_determinant_is_one(n):
    for d in range(6):
        assert det(binomial_matrix(n, d)) == 1


@pytest.mark.parametrize("n", range(1, 7))
def test_minor_closed_form_matches_deletion(n):
    for d in range(5):
        for k in range(1, n + 1):
            for l in range(1, n + 1):
                assert binomial_minor(n, d, k, l) == binomial_minor_by_deletion(n, d, k, l)


@pytest.mark.parametrize("n", range(1, 10))
def test_minor_special_values(n):
    assert binomial_minor(n, 0, 1, 1) == n
    assert binomial_minor(n, 0, 2, 1) == Fraction(n * (n - 1), 2)
    assert binomial_minor(n, 1, 1, 1) == Fraction(n * (n + 1), 2)


def test_minor_out_of_range_is_zero():
    assert binomial_minor(4, 1, 2, 0) == 0
    assert binomial_minor(4, 1, 2, 5) == 0
    assert binomial_minor(4, 1, 5, 2) == 0


def test_minor_recurrence_cases():
    for d in range(5):
        assert check_minor_recurrence(2, d, 2, 1) and check_minor_recurrence(2, d, 2, 2)
    assert all(check_minor_recurrence(5, 2, k, l) for k in range(2, 6) for l in range(1, 6))
    assert check_minor_recurrence(5, 2, 3, 0) and check_minor_recurrence(5, 2, 3, 6)


@given(st.integers(2, 6), st.integers(0, 4), st.data())
def test_minor_recurrence_random(n, d, data):
    k = data.draw(st.integers(2, n))
    l = data.draw(st.integers(0, n + 1))
    assert check_minor_recurrence(n, d, k, l)


@given(st.integers(1, 6), st.integers(0, 4), st.data())
def test_minor_expansion_random(n, d, data):
    k = data.draw(st.integers(1, n))
    l = data.draw(st.integers(0, n + 1))
    assert check_minor_expansion(n, d, k, l)


@pytest.mark.parametrize("n", range(1, 7))
def test_comatrix(n):
    for d in range(5):
        assert check_comatrix(n, d)


def test_minor_preconditions():
    with pytest.raises(ValueError):
        check_minor_recurrence(1, 0, 1, 1)
    with pytest.raises(ValueError):
        binomial_minor(0, 0, 1, 1)
