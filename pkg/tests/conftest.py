from __future__ import annotations

import pytest

from finstoch import core

# criterion number -> (passed, detail); filled by test_acceptance
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}")


@pytest.fixture
def running():
    """p = (1/2, 1/2) on {x0, x1}; x0 -> y0, x1 -> uniform on {y0, y1}."""
    p = core.make_space(("x0", "x1"), ("1/2", "1/2"))
    f = core.map_from_columns(p.labels, ("y0", "y1"), [(1, 0), ("1/2", "1/2")])
    return core.morphism(f, p)
