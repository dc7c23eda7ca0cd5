import random
from fractions import Fraction

from hypothesis import settings, strategies as st

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")


def rationals(span=12, den=6):
    return st.builds(Fraction, st.integers(-span, span), st.integers(1, den))


def nonzero_rationals(span=6, den=4):
    return rationals(span, den).filter(lambda q: q != 0)


def distinct_rationals(count, span=20, den=6):
    return st.lists(rationals(span, den), min_size=count, max_size=count, unique=True)


def seeded_rngs():
    """Random generators seeded by Hypothesis, so failures shrink to a seed."""
    return st.integers(0, 2 ** 32 - 1).map(random.Random)
