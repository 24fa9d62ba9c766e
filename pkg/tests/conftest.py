import pytest

_CRITERIA = {}


@pytest.fixture
def criterion_line():
    """Record one pass/fail line for the acceptance summary section."""

    def record(number, label, passed, elapsed, detail=""):
        _CRITERIA[number] = (label, bool(passed), float(elapsed), detail)

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        label, passed, elapsed, detail = _CRITERIA[number]
        status = "PASS" if passed else "FAIL"
        line = f"criterion {number}: {status}  {elapsed:7.2f}s  {label}"
        if detail and not passed:
            line += f"  [{detail}]"
        terminalreporter.write_line(line)
