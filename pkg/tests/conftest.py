import pytest

# acceptance verdicts, echoed in the terminal summary so they survive output capture
ACCEPTANCE_LINES = []


@pytest.fixture
def report():
    def _report(criterion, passed, detail=""):
        line = f"{'PASS' if passed else 'FAIL'}  criterion {criterion}: {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)
        return passed
    return _report


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
