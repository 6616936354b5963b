import numpy as np
import pytest

from planarfield.extfield import ExtFieldCtx


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture(scope="session")
def f27():
    return ExtFieldCtx(3, 3)


@pytest.fixture(scope="session")
def f9():
    return ExtFieldCtx(3, 2)

