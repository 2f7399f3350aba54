from __future__ import annotations

# criterion number -> (title, "PASS" | "FAIL", detail), filled in by test_acceptance
ACCEPTANCE: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        title, verdict, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k} [{verdict}] {title}: {detail}")
