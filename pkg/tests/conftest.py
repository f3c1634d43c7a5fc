from __future__ import annotations

import pathlib

import pytest

from heavypath.generators import k6

DATA = pathlib.Path(__file__).parent / "data"

ACCEPTANCE: list[tuple[str, bool, str]] = []


@pytest.fixture
def g6():
    return k6()


@pytest.fixture
def k6_file() -> str:
    return str(DATA / "k6.txt")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in ACCEPTANCE:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")
