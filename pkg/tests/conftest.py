def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(RESULTS):
        status, description, seconds = RESULTS[number]
        terminalreporter.write_line(f"criterion {number:2d}: {status}  ({seconds:6.1f} s)  {description}")
