"""Prints a one-line verdict per acceptance criterion after the run."""

import re

_CRITERION = re.compile(r"test_acceptance\.py::test_criterion_(\d+)_(\w+)")
_results = {}


def pytest_runtest_logreport(report):
    m = _CRITERION.search(report.nodeid)
    if m is None:
        return
    key = (int(m.group(1)), m.group(2))
    if report.failed:
        _results[key] = "FAIL"
    elif report.when == "call":
        _results.setdefault(key, "pass" if report.passed else report.outcome)
    elif report.when == "setup" and report.skipped:
        _results.setdefault(key, "skipped")


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for num, name in sorted(_results):
        terminalreporter.write_line(f"criterion {num} ({name}): {_results[(num, name)]}")
