"""Shared fixtures: a memoized oracle and the acceptance summary."""
from __future__ import annotations

from functools import lru_cache

import pytest

from cograph_smd import oracle
from cograph_smd.graph import Graph

ACCEPTANCE_LINES: list[str] = []


@lru_cache(maxsize=None)
def oracle_smd(g: Graph) -> tuple[int, tuple[str, ...]]:
    """Memoized ``oracle.smd_exact``; graphs hash by labels and arcs."""
    return oracle.smd_exact(g)


@pytest.fixture
def report():
    """Record one acceptance line; echoed now and again in the summary."""

    def _report(line: str) -> None:
        ACCEPTANCE_LINES.append(line)
        print(line)

    return _report


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
