import math

import pytest

import tunable_coupler as tc

GHZ = 2 * math.pi * 1e9


@pytest.fixture(scope="session")
def dev():
    return tc.make_device()


@pytest.fixture(scope="session")
def bc_for(dev):
    def make(f3_ghz):
        return tc.flux_for_omega3(dev, f3_ghz * GHZ)

    return make


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
