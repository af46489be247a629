from __future__ import annotations

import pytest

from adiabatic_df import make_surface_ring

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def acceptance_log():
    def record(number, description, ok, detail=""):
        status = "PASS" if ok else "FAIL"
        line = f"[{status}] criterion {number}: {description}"
        if detail:
            line += f" ({detail})"
        ACCEPTANCE_LINES.append(line)
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def blowup():
    """Bl_p P^2 with H^2 = 1, D^2 = -1, H.D = 0."""
    return make_surface_ring(["H", "D"], [[1, 0], [0, -1]])


@pytest.fixture
def p2():
    return make_surface_ring(["H"], [[1]])
