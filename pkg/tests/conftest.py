import re

_ACCEPTANCE = {}
_PATTERN = re.compile(r"test_criterion_(\d+)")


def pytest_runtest_logreport(report):
    match = _PATTERN.search(report.nodeid)
    if not match:
        return
    num = int(match.group(1))
    if report.when == "call":
        _ACCEPTANCE[num] = report.outcome
    elif report.when == "setup" and report.outcome != "passed":
        # a broken fixture counts against the criterion, not as a skip
        _ACCEPTANCE[num] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_ACCEPTANCE):
        word = "PASS" if _ACCEPTANCE[num] == "passed" else "FAIL"
        terminalreporter.write_line(f"criterion {num}: {word}")
