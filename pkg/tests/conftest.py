"""Shared pytest wiring: collects acceptance verdict lines and prints them
as a dedicated block at the end of the terminal summary, where they survive
output capture regardless of which tests pass or fail."""
from __future__ import annotations

VERDICT_LINES: list[str] = []


def record_verdict(line: str) -> None:
    VERDICT_LINES.append(line)


def pytest_terminal_summary(terminalreporter, exitstatus, config) -> None:
    if VERDICT_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(VERDICT_LINES):
            terminalreporter.write_line(line)
