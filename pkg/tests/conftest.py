"""Shared pytest hooks: show the acceptance checklist after every run."""


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number, name, status in sorted(RESULTS):
        terminalreporter.write_line(f"CRITERION {number} ({name}): {status}")
