import random

import pytest

from ffunits import GF, Poly, RatFunc
from ffunits.exprio import parse_element


@pytest.fixture(scope="session")
def F2():
    return GF(2)


@pytest.fixture(scope="session")
def F3():
    return GF(3)


@pytest.fixture(scope="session")
def F5():
    return GF(5)


def el(field, text):
    """Parse a field element from canonical text (test convenience)."""
    return parse_element(text, field)


def pl(field, text):
    """Parse a polynomial from text."""
    value = parse_element(text, field)
    assert value.den.is_one
    return value.num


def rand_poly(rng: random.Random, field: GF, max_deg: int, nonzero: bool = False) -> Poly:
    while True:
        p = Poly.from_coeffs(field, [rng.randrange(field.q) for _ in range(rng.randrange(max_deg + 1) + 1)])
        if not nonzero or not p.is_zero:
            return p


def rand_ratfunc(rng: random.Random, field: GF, max_deg: int, nonzero: bool = False) -> RatFunc:
    while True:
        x = RatFunc.make(rand_poly(rng, field, max_deg), rand_poly(rng, field, max_deg, nonzero=True))
        if not nonzero or not x.is_zero:
            return x
