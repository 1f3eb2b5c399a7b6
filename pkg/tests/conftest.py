"""Collects one pass/fail line per acceptance criterion for the terminal summary."""

from __future__ import annotations

import pytest

_results: dict[int, dict] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(n, title): numbered acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None or (rep.when != "call" and not rep.failed):
        return
    n, title = marker.args
    entry = _results.setdefault(n, {"title": title, "ok": True, "elapsed": 0.0, "notes": []})
    entry["ok"] = entry["ok"] and rep.passed
    for key, val in rep.user_properties:
        if key == "elapsed":
            entry["elapsed"] += val
        elif key == "note":
            entry["notes"].append(val)


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_results):
        r = _results[n]
        status = "PASS" if r["ok"] else "FAIL"
        line = f"criterion {n:>2}: {status}  {r['title']} ({r['elapsed']:.2f} s)"
        if r["notes"]:
            line += "  " + "; ".join(r["notes"])
        terminalreporter.write_line(line)
