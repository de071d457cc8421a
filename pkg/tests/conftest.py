import math

import pytest

from mirrordecay.wavepacket import Grid


@pytest.fixture
def grid():
    return Grid(2048, 40.0)


@pytest.fixture
def half():
    """Amplitude of a 50/50 mirror."""
    return 1.0 / math.sqrt(2.0)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(RESULTS):
        terminalreporter.write_line(f"{name:<36} {RESULTS[name]}")
