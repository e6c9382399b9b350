import random

import pytest
from hypothesis import settings

from segskel.scenes import near_point_square, stacked_triple

settings.register_profile("default", deadline=None, max_examples=100)
settings.load_profile("default")


@pytest.fixture
def stacked():
    return stacked_triple()


@pytest.fixture
def square():
    return near_point_square()


@pytest.fixture
def rng():
    return random.Random(20240611)


_REPORT = pytest.StashKey[list]()


@pytest.fixture
def acceptance_report(request):
    """Collects one (criterion, ok, detail) row per acceptance check."""
    return request.config.stash.setdefault(_REPORT, [])


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    rows = config.stash.get(_REPORT, [])
    if not rows:
        return
    terminalreporter.section("acceptance criteria")
    for number, ok, detail in sorted(rows):
        terminalreporter.write_line(f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
