import os
import sys
from functools import lru_cache

import pytest
from hypothesis import settings

sys.path.insert(0, os.path.dirname(__file__))

from skewbrace.enumeration import enumerate_all  # noqa: E402

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

LONG = os.environ.get("SKEWBRACE_LONG") == "1"


@lru_cache(maxsize=None)
def braces_of_order(n):
    return tuple(enumerate_all(n))


@lru_cache(maxsize=None)
def braces_up_to(n):
    return tuple(x for k in range(1, n + 1) for x in braces_of_order(k))


def pytest_collection_modifyitems(config, items):
    if LONG:
        return
    skip = pytest.mark.skip(reason="order-16 run; set SKEWBRACE_LONG=1")
    for item in items:
        if "long" in item.keywords:
            item.add_marker(skip)


_criteria: dict[int, dict] = {}


def pytest_runtest_logreport(report):
    info = _criteria.get(report.nodeid)
    if info is None:
        return
    if report.skipped:
        info["outcomes"].append("skipped")
    elif report.when == "call" or report.failed:
        info["outcomes"].append("passed" if report.passed else "failed")


def pytest_collection_finish(session):
    for item in session.items:
        m = item.get_closest_marker("criterion")
        if m is not None:
            _criteria[item.nodeid] = {"k": m.args[0], "title": m.args[1], "outcomes": []}


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    merged: dict[int, tuple[str, list[str]]] = {}
    for info in _criteria.values():
        title, outs = merged.setdefault(info["k"], (info["title"], []))
        outs.extend(info["outcomes"] or ["not run"])
    terminalreporter.section("acceptance criteria")
    for k in sorted(merged):
        title, outs = merged[k]
        if "failed" in outs:
            status = "FAIL"
        elif all(o == "passed" for o in outs):
            status = "PASS"
        elif "passed" in outs:
            status = "PASS (order-16 part skipped, set SKEWBRACE_LONG=1)"
        else:
            status = "SKIP (set SKEWBRACE_LONG=1)"
        terminalreporter.write_line(f"criterion {k:2d}: {status}  {title}")
