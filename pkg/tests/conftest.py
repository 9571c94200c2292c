import pytest

from weakcode.chain import validate_chain

_acceptance: dict[int, list] = {}


@pytest.fixture
def ex_chain():
    """n=8, counts (4, 2, 2, 0): the no-11 chain used in the worked examples."""
    return validate_chain(8, 4, 2, 2, 0)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    number, title = marker.args
    entry = _acceptance.setdefault(number, [title, True, False])
    if report.when == "call":
        entry[2] = True
    if report.failed or (report.when == "call" and report.skipped):
        entry[1] = False


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_acceptance):
        title, ok, ran = _acceptance[number]
        status = "PASS" if ok and ran else "FAIL"
        terminalreporter.write_line(f"AC{number} {status}  {title}")
