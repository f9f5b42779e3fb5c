import os
import sys

import pytest

# Add the project directory to the system path
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from wreath.groups import bfs_ball, f2_spec, grid_spec, lamplighter_spec  # noqa: E402
from wreath.presentations import z2_presentation, z_presentation  # noqa: E402
from wreath.rep_z import gz_spec  # noqa: E402


@pytest.fixture(scope="session")
def ll():
    return lamplighter_spec()


@pytest.fixture(scope="session")
def ll_ball(ll):
    return bfs_ball(ll, 5)


@pytest.fixture(scope="session")
def z2_pres():
    return z2_presentation()


@pytest.fixture(scope="session")
def z_pres():
    return z_presentation()


@pytest.fixture(scope="session")
def zz_ball(z_pres):
    return bfs_ball(gz_spec(z_pres), 3)


@pytest.fixture(scope="session")
def f2():
    return f2_spec()


@pytest.fixture(scope="session")
def f2_ball(f2):
    return bfs_ball(f2, 3)


@pytest.fixture(scope="session")
def grid():
    return grid_spec()


@pytest.fixture(scope="session")
def grid_ball(grid):
    return bfs_ball(grid, 3)
