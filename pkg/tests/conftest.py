import time

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default",
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

_CRITERIA: dict[int, dict] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title, limit): acceptance criterion with time limit in seconds")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_call(item):
    start = time.perf_counter()
    outcome = yield
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    number, title, limit = marker.args
    elapsed = time.perf_counter() - start
    rec = _CRITERIA.setdefault(number, {"title": title, "limit": limit, "ok": True, "elapsed": 0.0, "notes": []})
    rec["elapsed"] += elapsed
    if outcome.excinfo is not None:
        rec["ok"] = False
        rec["notes"].append(f"{item.name}: {outcome.excinfo[1]!s}".splitlines()[0][:160])


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        rec = _CRITERIA[number]
        status = "PASS" if rec["ok"] else "FAIL"
        line = f"{status} criterion {number:>2}: {rec['title']} ({rec['elapsed']:.2f}s / {rec['limit']}s)"
        terminalreporter.write_line(line)
        for note in rec["notes"]:
            terminalreporter.write_line(f"      {note}")
