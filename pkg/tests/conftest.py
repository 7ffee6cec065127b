import numpy as np
import pytest

from hilbert_tikhonov.model import make_paper_problem


@pytest.fixture(scope="session")
def benchmark():
    return make_paper_problem(6000)


@pytest.fixture(scope="session")
def paper_problem(benchmark):
    return benchmark[0]


@pytest.fixture(scope="session")
def paper_source(benchmark):
    return benchmark[1]


@pytest.fixture(scope="session")
def small_problem():
    return make_paper_problem(8)[0]


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
