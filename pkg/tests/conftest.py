from __future__ import annotations

from collections import defaultdict
from pathlib import Path

import pytest

from edgering.graph import load_graph

DATA = Path(__file__).resolve().parent.parent / "data"

_criteria: dict = defaultdict(list)


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number n")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        _criteria[mark.args[0]].append((item.name, rep.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_criteria):
        results = _criteria[n]
        failed = [name for name, out in results if out != "passed"]
        verdict = "PASS" if not failed else "FAIL"
        extra = f" (failing: {', '.join(failed)})" if failed else ""
        terminalreporter.write_line(f"criterion {n:2d}: {verdict} [{len(results)} tests]{extra}")


@pytest.fixture(scope="session")
def figure_graphs():
    return {k: load_graph(DATA / f"figure{k}.json") for k in (1, 2, 3)}
