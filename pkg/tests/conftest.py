from collections import defaultdict

import pytest

_RESULTS = defaultdict(list)
_TITLES = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion a test belongs to")


def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("criterion")
        if mark:
            _TITLES[mark.args[0]] = mark.args[1]


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark and (report.when == "call" or report.failed):
        _RESULTS[mark.args[0]].append(report.passed)


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_TITLES):
        runs = _RESULTS.get(number, [])
        status = "PASS" if runs and all(runs) else "FAIL"
        terminalreporter.write_line(f"[{status}] criterion {number:>2}: {_TITLES[number]}")
