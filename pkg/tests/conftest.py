import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from amlab import matrix_algebra


@pytest.fixture(scope="session")
def m2():
    return matrix_algebra(2)


@pytest.fixture(scope="session")
def m3():
    return matrix_algebra(3)
