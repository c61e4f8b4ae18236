import pytest

from grasscalc import cache


@pytest.fixture(autouse=True)
def isolated_cache(monkeypatch):
    """Each test starts without a disk cache unless it sets one up itself."""
    monkeypatch.delenv(cache.ENV_VAR, raising=False)
    cache.reset()
    cache.set_enabled(True)
    yield
    cache.reset()
    cache.set_enabled(True)


_acceptance: dict[str, str] = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py::test_criterion" not in report.nodeid:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _acceptance[report.nodeid] = "PASS" if report.outcome == "passed" else "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    from test_acceptance import CRITERIA

    terminalreporter.section("acceptance criteria")
    for number, title, _ in CRITERIA:
        key = next((k for k in _acceptance if k.endswith(f"[criterion_{number:02d}]")), None)
        status = _acceptance.get(key, "NOT RUN")
        terminalreporter.write_line(f"criterion {number:2d}: {status:<7} {title}")
