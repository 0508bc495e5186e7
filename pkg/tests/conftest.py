import numpy as np
import pytest

from hypercode import local_codes as lc

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def hamming7():
    return lc.make_named_code("hamming_7")


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
