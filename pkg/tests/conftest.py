"""Replays the acceptance gate's criterion verdicts after the run.

The acceptance tests print one ``criterion N: PASS/FAIL`` line each;
pytest captures those by default, so this hook writes the collected
lines into the terminal summary where they are always visible.
"""

import sys


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "GATE_LINES", None) if mod is not None else None
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
