import pytest

ACCEPTANCE = {}


@pytest.fixture
def record_criterion():
    """Record one acceptance line: record_criterion(label, passed, detail)."""

    def record(label, passed, detail=""):
        ACCEPTANCE[label] = (passed, detail)

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for label in sorted(ACCEPTANCE):
        passed, detail = ACCEPTANCE[label]
        line = f"{'PASS' if passed else 'FAIL'}  {label}"
        if detail:
            line += f"  ({detail})"
        terminalreporter.write_line(line)
