import os
import sys

sys.path.insert(0, os.path.dirname(__file__))

# (criterion id, description, passed, detail) rows filled by test_acceptance
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for cid, desc, ok, detail in ACCEPTANCE_LINES:
        status = "PASS" if ok else "FAIL"
        terminalreporter.write_line(f"[{status}] {cid}: {desc} -- {detail}")
