"""Shared test config: acceptance-summary reporting.

Acceptance tests register one line per criterion; the terminal summary (and
hence any teed log) ends with a block listing each criterion's verdict.
"""

ACCEPTANCE_LINES: list[str] = []


def record_acceptance(line: str) -> None:
    ACCEPTANCE_LINES.append(line)
    # also echo immediately so a crashed run still shows partial verdicts
    print(line)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(line)
