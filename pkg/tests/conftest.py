import os
import sys

sys.path.insert(0, os.path.dirname(__file__))

CRITERIA = {}


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(CRITERIA, key=lambda k: (int(k.rstrip("abcdefgh")), k)):
        ok, title, detail = CRITERIA[key]
        line = f"criterion {key:<3} {'PASS' if ok else 'FAIL'}  {title}"
        if detail:
            line += f"  [{detail}]"
        terminalreporter.write_line(line)
