"""Shared fixtures and the per-criterion acceptance summary."""

from __future__ import annotations

from collections import OrderedDict
from importlib import resources
from pathlib import Path

import pytest

_criteria: "OrderedDict[str, list[tuple[str, str]]]" = OrderedDict()


@pytest.fixture(scope="session")
def data_dir() -> Path:
    return Path(str(resources.files("ces_transition") / "data"))


def pytest_runtest_makereport(item, call):
    marker = item.get_closest_marker("criterion")
    if marker is None or call.when != "call" and not (call.when == "setup" and call.excinfo):
        return
    outcome = "passed" if call.excinfo is None else "failed"
    _criteria.setdefault(marker.args[0], []).append((item.name, outcome))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for cid in sorted(_criteria, key=lambda c: int(c[1:])):
        results = _criteria[cid]
        failed = [name for name, outcome in results if outcome != "passed"]
        status = "FAIL" if failed else "PASS"
        detail = f"{len(results) - len(failed)}/{len(results)} checks"
        if failed:
            shown = ", ".join(failed[:3])
            detail += f"; failing: {shown}" + (f" and {len(failed) - 3} more" if len(failed) > 3 else "")
        terminalreporter.write_line(f"{cid} {status} ({detail})")
