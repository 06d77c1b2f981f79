from __future__ import annotations

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("default", max_examples=200, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

ACCEPTANCE = pytest.StashKey[dict]()
ORDER = ("A1", "A2", "A3", "A4", "A5", "A6", "A7", "ARCH")


def pytest_configure(config):
    config.stash[ACCEPTANCE] = {}


@pytest.fixture
def acceptance(request):
    """record(tag, ok, detail): one pass/fail line per acceptance criterion."""
    lines = request.config.stash[ACCEPTANCE]

    def record(tag: str, ok: bool, detail: str) -> None:
        line = f"{tag:<5} {'PASS' if ok else 'FAIL'}  {detail}"
        lines[tag] = line
        print(line)

    return record


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(ACCEPTANCE, {})
    if lines:
        terminalreporter.section("acceptance criteria")
        for tag in sorted(lines, key=lambda t: ORDER.index(t) if t in ORDER else len(ORDER)):
            terminalreporter.write_line(lines[tag])
