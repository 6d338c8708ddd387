import random
from fractions import Fraction

import pytest

from toruscycles import BivariatePolynomial
from toruscycles.inputs import cubic_six_candidates

#: The six diagonal closing solutions of the shipped cubic fixture, as
#: published (rounded to three decimals).
CUBIC_SIX_PAIRS = [
    (0.25, 0.516),
    (0.33, 0.490),
    (0.41, 0.494),
    (0.49, 0.507),
    (0.57, 0.511),
    (0.65, 0.485),
]


def quadratic(a, b, c) -> BivariatePolynomial:
    return BivariatePolynomial({(2, 0): a, (2, 1): b, (2, 2): c})


def random_rational_triple(rng: random.Random, span: int = 2000, den: int = 500):
    while True:
        t = tuple(Fraction(rng.randint(-span, span), den) for _ in range(3))
        if t != (0, 0, 0):
            return t


@pytest.fixture(scope="session")
def cubic_fixture() -> BivariatePolynomial:
    return cubic_six_candidates()
