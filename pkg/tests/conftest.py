import pytest

_VERDICTS = {}


@pytest.fixture
def verdict():
    """Record one acceptance line: verdict(number, ok, detail)."""

    def record(number, ok, detail=""):
        prev = _VERDICTS.get(number, (True, ""))
        _VERDICTS[number] = (prev[0] and bool(ok), detail or prev[1])
        return ok

    return record


def pytest_runtest_logreport(report):
    # a criterion whose test errors or fails after recording must not read as PASS
    number = getattr(report, "criterion", None)
    if number is not None and report.failed:
        _VERDICTS[number] = (False, _VERDICTS.get(number, (False, "error"))[1])


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    marker = item.get_closest_marker("criterion")
    if marker is not None:
        outcome.get_result().criterion = marker.args[0]


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


def pytest_terminal_summary(terminalreporter):
    if not _VERDICTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_VERDICTS):
        ok, detail = _VERDICTS[number]
        terminalreporter.write_line(f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {detail}")
