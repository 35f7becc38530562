import numpy as np
import pytest

from octolct import signals, transform as tr
from octolct.grid import Grid


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture(scope="session")
def grid16():
    return Grid.centered((16, 16, 16), 6.0)


@pytest.fixture(scope="session")
def grid32():
    return Grid.centered((32, 32, 32), 8.0)


@pytest.fixture(scope="session")
def generic_params():
    """All |b_k| = 1, nonzero offsets."""
    return tr.OLCTParamsTriple.build((1, 1, 0, 1, 0.5, -0.3), (0, -1, 1, 0.5, 0.2, 0.1),
                                     (2, 1, 1, 1, -0.4, 0.3))


@pytest.fixture(scope="session")
def skew_params():
    """|b_k| != 1 and a negative b."""
    return tr.OLCTParamsTriple.build((1, 1, 1, 2, 0.5, -0.3), (0.5, -2, 0.5, 0, 0.1, -0.2),
                                     (1, 0.5, -2, 0, -0.3, 0.4))


def random_field(grid, seed):
    return signals.random_smooth(grid, seed=seed)
