def pytest_terminal_summary(terminalreporter):
    acceptance = __import__("sys").modules.get("test_acceptance")
    if acceptance is None or not acceptance.LINES:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(acceptance.LINES):
        terminalreporter.write_line(acceptance.LINES[n])
