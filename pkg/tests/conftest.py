"""Shared test plumbing: the acceptance reporter.

Acceptance tests register one summary line each; the terminal hook prints
them after the run so the pass/fail ledger is visible even though pytest
captures stdout of passing tests.
"""

import pytest

_ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def acceptance():
    def record(label: str, ok: bool, detail: str = ""):
        line = "acceptance %s: %s%s" % (
            label, "PASS" if ok else "FAIL",
            (" (%s)" % detail) if detail else "")
        _ACCEPTANCE_LINES.append(line)
    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in _ACCEPTANCE_LINES:
        terminalreporter.write_line(line)
