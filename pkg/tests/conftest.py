import pytest

from bpdpc.base_solver import get_table

_acceptance_lines: list[str] = []


@pytest.fixture(scope="session")
def table():
    """The cached BP_3 table (built on first use if missing)."""
    return get_table()


@pytest.fixture(scope="session")
def report():
    """Collects one PASS/FAIL line per acceptance check; printed at the end of the run."""
    def add(ok: bool, text: str) -> None:
        line = f"{'PASS' if ok else 'FAIL'} {text}"
        _acceptance_lines.append(line)
        print(line)
    return add


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance")
        for line in _acceptance_lines:
            terminalreporter.write_line(line)
