import random
from fractions import Fraction

import pytest

from coalg.linalg import zeros


def make_rational_matrix(rng: random.Random, rows: int, cols: int,
                         num: int = 3, den: int = 3):
    m = zeros((rows, cols))
    for i in range(rows):
        for j in range(cols):
            m[i, j] = Fraction(rng.randint(-num, num), rng.randint(1, den))
    return m


@pytest.fixture
def rational_matrix():
    return make_rational_matrix


@pytest.fixture
def rng():
    return random.Random(20260809)
