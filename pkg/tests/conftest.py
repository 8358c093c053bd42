"""Shared test plumbing.

Acceptance tests carry a ``criterion(number, label)`` marker; after the run
a summary section prints one PASS/FAIL line per criterion. A criterion with
several tests passes only if all of them pass; an expected failure counts
as FAIL, because the line reports whether the stated check holds, not
whether pytest tolerated it.
"""

from __future__ import annotations

import pytest

_outcomes: dict[int, list] = {}


def pytest_configure(config):
    config.addinivalue_line(
        "markers", "criterion(number, label): map a test to a numbered acceptance criterion"
    )


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    if report.when != "call":
        return
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    number, label = marker.args
    ok = report.passed and not hasattr(report, "wasxfail")
    entry = _outcomes.setdefault(number, [True, label])
    entry[0] = entry[0] and ok


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_outcomes):
        ok, label = _outcomes[number]
        status = "PASS" if ok else "FAIL"
        terminalreporter.write_line(f"[acceptance] criterion {number:02d}: {status} — {label}")
