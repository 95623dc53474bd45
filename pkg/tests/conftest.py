from __future__ import annotations

import numpy as np
import pytest

from qcadditive.codes import BinaryCode
from qcadditive.distance import codewords_of_weight, min_distance, sampled_upper_bound, weight_distribution


@pytest.fixture(scope="session", autouse=True)
def numba_warmup():
    """Compile the enumeration kernels once so timed checks measure the work, not the JIT."""
    c = BinaryCode(8, np.array([[1, 0, 1, 0, 0, 1, 1, 0], [0, 1, 1, 1, 0, 0, 1, 1]], dtype=np.uint8), True)
    min_distance(c, "symplectic")
    min_distance(c, "symplectic", workers=2)
    min_distance(c, "symplectic", lower_bound=1)
    weight_distribution(c, "symplectic")
    codewords_of_weight(c, "symplectic", 2)
    sampled_upper_bound(c, "symplectic", trials=8)
    yield


@pytest.fixture
def rng():
    return np.random.default_rng(20240607)


ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def acceptance_log() -> list[str]:
    return ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.write_sep("=", "acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
