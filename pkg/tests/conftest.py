import pytest

from dynascore.harness import SweepConfig, run_sweep

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def default_sweep():
    """The n=150, 10x10 grid sweep with default settings, computed once."""
    return run_sweep(SweepConfig(), workers=4)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
