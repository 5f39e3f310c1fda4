from pathlib import Path

import pytest

from ctclen import matrixio

DATA = Path(__file__).parent / "data"
COUNTER = DATA / "counterexample.ctcm"

# token ids in the counter fixture
I, AM, A, BLANK = 0, 1, 2, 3


@pytest.fixture
def counter():
    return matrixio.read(COUNTER)


@pytest.fixture(params=["python", "cython"])
def backend(request):
    from ctclen import _backend

    if request.param not in _backend.BACKENDS:
        pytest.skip("compiled kernels not built")
    return request.param


ACCEPTANCE = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or report.when != "call" and not (report.when == "setup" and report.failed):
        return
    ACCEPTANCE[mark.args[0]] = (mark.args[1], report.outcome)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        title, outcome = ACCEPTANCE[n]
        verdict = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"[{verdict}] criterion {n:>2}: {title}")
