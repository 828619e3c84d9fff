import sys


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance: release criteria at full size (slow)")


def pytest_terminal_summary(terminalreporter):
    lines = []
    for mod in list(sys.modules.values()):
        if (getattr(mod, "__file__", None) or "").endswith("test_acceptance.py"):
            lines = getattr(mod, "RESULTS", [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda l: int(l.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
