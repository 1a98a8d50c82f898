"""Acceptance-criterion bookkeeping.

Tests marked ``@pytest.mark.criterion(n, "description")`` are grouped by
``n``; at the end of the run one PASS/FAIL line is printed per criterion.
A criterion passes only if every test carrying its number passed.
"""

import pytest

_criteria: dict[int, dict] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, description): acceptance criterion this test checks")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    n, desc = marker.args
    entry = _criteria.setdefault(n, {"desc": desc, "passed": 0, "failed": [], "seconds": 0.0})
    if report.when == "call":
        entry["seconds"] += report.duration
        if report.passed:
            entry["passed"] += 1
        else:
            entry["failed"].append(item.name)
    elif report.failed:
        entry["failed"].append(item.name)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for n in sorted(_criteria):
        e = _criteria[n]
        status = "FAIL" if e["failed"] else "PASS"
        total = e["passed"] + len(e["failed"])
        line = f"criterion {n}: {status}  {e['desc']}  ({e['passed']}/{total} checks, {e['seconds']:.1f}s)"
        if e["failed"]:
            line += "  failing: " + ", ".join(e["failed"])
        tr.write_line(line, red=bool(e["failed"]), green=not e["failed"])
