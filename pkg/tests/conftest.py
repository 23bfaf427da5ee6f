import numpy as np
import pytest

from sineq.integrate import Engine


@pytest.fixture
def fast_mc() -> Engine:
    """Small but statistically usable Monte Carlo engine for unit tests."""
    return Engine(method="mc", samples=150_000, seed=1234)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(7)
