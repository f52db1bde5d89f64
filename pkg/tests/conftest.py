import random
import sys
from fractions import Fraction
from pathlib import Path

import pytest

# Mesma convenção do main.py: a raiz do repositório no path
sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from src.sylvester.context import make_context


@pytest.fixture
def ctx1():
    return make_context(1)


@pytest.fixture
def ctx2():
    return make_context(2)


@pytest.fixture
def ctx3():
    return make_context(3)


@pytest.fixture
def rng():
    return random.Random(20240917)


def random_rational(rng: random.Random) -> Fraction:
    """Racional não nulo pequeno"""
    numerator = rng.choice([v for v in range(-9, 10) if v != 0])
    return Fraction(numerator, rng.randint(1, 6))


@pytest.fixture
def rational(rng):
    return lambda: random_rational(rng)
