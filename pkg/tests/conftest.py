"""Shared fixtures and the acceptance-summary hook."""
import pytest

ACCEPTANCE_RESULTS: list[tuple[str, str, bool]] = []


@pytest.fixture
def acceptance_log():
    def record(criterion: str, description: str, passed: bool):
        ACCEPTANCE_RESULTS.append((criterion, description, passed))
    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for criterion, description, passed in ACCEPTANCE_RESULTS:
        status = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"[{status}] {criterion}: {description}")
