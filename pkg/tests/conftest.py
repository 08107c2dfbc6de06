import random

import pytest

from weylhh.weyl import SymplecticData


@pytest.fixture
def sym1():
    return SymplecticData.canonical(1)


@pytest.fixture
def sym2():
    return SymplecticData.canonical(2)


@pytest.fixture
def rng():
    return random.Random(20240817)
