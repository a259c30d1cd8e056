import pathlib
import random
import sys

import pytest

sys.path.insert(0, str(pathlib.Path(__file__).parent))

from oracles import EXAMPLE1_ROWS  # noqa: E402
from strongsep.matrix import BinaryMatrix  # noqa: E402

DATA = pathlib.Path(__file__).parent / "data"


@pytest.fixture
def example1():
    return BinaryMatrix.from_rows(EXAMPLE1_ROWS)


@pytest.fixture
def example1_path():
    return DATA / "example1.mat"


@pytest.fixture
def triangle():
    """Columns (1,1,0), (0,1,1), (1,0,1): every pair ORs to all-ones."""
    return BinaryMatrix.from_columns([(1, 1, 0), (0, 1, 1), (1, 0, 1)])


def random_matrix(rng: random.Random, t: int, n: int, density: float | None = None) -> BinaryMatrix:
    p = rng.random() if density is None else density
    return BinaryMatrix.from_rows([[int(rng.random() < p) for _ in range(n)] for _ in range(t)])


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
