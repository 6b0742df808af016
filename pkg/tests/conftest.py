import sys


def pytest_terminal_summary(terminalreporter):
    """Echo acceptance verdict lines after the run, outside output capture."""
    for name in ("test_acceptance", "tests.test_acceptance"):
        module = sys.modules.get(name)
        if module is None:
            continue
        lines = getattr(module, "CRITERION_LINES", [])
        if lines:
            terminalreporter.section("acceptance criteria")
            for line in lines:
                terminalreporter.write_line(line)
        return
