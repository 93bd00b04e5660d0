import pytest

_criteria = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or rep.when != "call" and not (rep.when == "setup" and rep.failed):
        return
    n = mark.args[0]
    if hasattr(rep, "wasxfail"):
        status = "FAIL (expected: " + rep.wasxfail + ")" if rep.skipped else "PASS (unexpectedly)"
    else:
        status = "PASS" if rep.passed else "FAIL"
    prev = _criteria.get(n)
    # a criterion split over several tests passes only if all of them do
    if prev is None or prev == "PASS":
        _criteria[n] = status


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_criteria):
        terminalreporter.write_line(f"criterion {n}: {_criteria[n]}")
