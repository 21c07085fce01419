import pytest

_LINES: list[str] = []


@pytest.fixture
def report():
    """Record a one-line verdict; all lines are echoed in the terminal summary."""
    def record(criterion: int, ok: bool, detail: str):
        _LINES.append(f"criterion {criterion:>2}: {'PASS' if ok else 'FAIL'}  {detail}")
        return ok
    return record


def pytest_terminal_summary(terminalreporter):
    if _LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
