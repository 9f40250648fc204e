"""Shared pytest plumbing: acceptance-criterion result lines.

The acceptance tests record one PASS/FAIL line per criterion; a terminal
summary section prints them all at the end of the run so the outcome of
every criterion is visible even with output capture on.
"""

_criterion_lines = []


def record_criterion(ok: bool, text: str) -> None:
    _criterion_lines.append(("PASS " if ok else "FAIL ") + text)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if _criterion_lines:
        terminalreporter.section("acceptance criteria")
        for line in _criterion_lines:
            terminalreporter.write_line(line)
