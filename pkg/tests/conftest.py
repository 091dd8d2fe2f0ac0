import sys


def pytest_terminal_summary(terminalreporter):
    # acceptance lines are printed under capture; repeat them where they are always visible
    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
