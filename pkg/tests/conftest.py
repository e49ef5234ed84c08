import numpy as np
import pytest

from kcenter.core import Scenario


@pytest.fixture
def square():
    """Corners of a 10 x 10 square, in the order used throughout the tests."""
    return Scenario(np.array([(0, 0), (10, 0), (0, 10), (10, 10)], dtype=float), "square")


@pytest.fixture
def line():
    """Eleven collinear vertices (0,0) .. (10,0)."""
    return Scenario(np.array([(i, 0) for i in range(11)], dtype=float), "line")


def random_scenario(seed, n, side=100.0):
    rng = np.random.default_rng(seed)
    return Scenario(rng.uniform(0, side, size=(n, 2)), f"rand-{seed}-{n}")


_VERDICTS = pytest.StashKey[dict]()


@pytest.fixture(scope="session")
def verdict(request):
    """Record one acceptance line: ``verdict(number, ok, detail)``."""
    lines = request.config.stash.setdefault(_VERDICTS, {})

    def record(number, ok, detail):
        line = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}"
        lines[number] = line
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(_VERDICTS, {})
    if lines:
        terminalreporter.section("acceptance criteria")
        for number in sorted(lines):
            terminalreporter.write_line(lines[number])
