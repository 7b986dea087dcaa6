from pathlib import Path

import pytest
from hypothesis import settings

from wsnrecover.scenario import load_topology

settings.register_profile("default", max_examples=100, deadline=None)
settings.load_profile("default")

DATA = Path(__file__).parent / "data"

_ACCEPTANCE_LINES = []


@pytest.fixture
def table1_nodes():
    return load_topology((DATA / "table1.csv").read_text())


@pytest.fixture(scope="session")
def acceptance_report():
    def report(criterion, ok, detail=""):
        _ACCEPTANCE_LINES.append(f"[{'PASS' if ok else 'FAIL'}] {criterion}: {detail}")
    return report


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
