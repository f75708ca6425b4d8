import os
import sys

import pytest
from hypothesis import settings

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

_criteria: dict[str, list] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(label): acceptance criterion reported in the summary")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    label = getattr(report, "criterion", None)
    if label:
        _criteria.setdefault(label, []).append(report)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker:
        rep.criterion = marker.args[0]
        rep.duration_s = call.duration


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for label in sorted(_criteria):
        reps = _criteria[label]
        ok = all(r.passed for r in reps)
        secs = sum(getattr(r, "duration_s", 0.0) for r in reps)
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {label}  ({secs:.1f}s)")
