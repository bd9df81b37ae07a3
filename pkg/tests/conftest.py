import pytest

_LINES = {}


@pytest.fixture
def criterion(request):
    """Record the pass/fail line for one acceptance criterion.

    Call with ``(number, title, passed, detail)``; the line is printed at once
    and again in the terminal summary.
    """

    def record(number, title, passed, detail):
        line = f"[{'PASS' if passed else 'FAIL'}] criterion {number}: {title} ({detail})"
        _LINES[number] = line
        print(line)
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if _LINES:
        terminalreporter.section("acceptance criteria")
        for number in sorted(_LINES):
            terminalreporter.write_line(_LINES[number])
