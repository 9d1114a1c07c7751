import numpy as np
import pytest

from matchgeo import statevector


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture(params=statevector.available_backends())
def backend(request):
    previous = statevector.backend_name()
    statevector.set_backend(request.param)
    yield request.param
    statevector.set_backend(previous)


ACCEPTANCE = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[ACCEPTANCE] = []


@pytest.fixture
def criterion(request):
    """``criterion(n, passed, detail)`` records one acceptance line and returns ``passed``."""
    lines = request.config.stash[ACCEPTANCE]

    def record(n: int, passed: bool, detail: str) -> bool:
        line = f"CRITERION {n}: {'PASS' if passed else 'FAIL'} {detail}"
        lines.append((n, line))
        print(line)
        return passed

    return record


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(ACCEPTANCE, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(lines):
            terminalreporter.write_line(line)
