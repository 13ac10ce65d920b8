import _gate


def pytest_terminal_summary(terminalreporter):
    if _gate.lines:
        terminalreporter.write_sep("=", "acceptance gate")
        for line in _gate.lines:
            terminalreporter.write_line(line)
