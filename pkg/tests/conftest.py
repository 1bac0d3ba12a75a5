import pytest

from zsf.cli import gen

ACCEPTANCE_LINES: list[str] = []


def rand_family(q, n, m, seed):
    return gen(seed, q, n, m)


@pytest.fixture
def family():
    return rand_family


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
