import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from modsolve.ideals import Ideal  # noqa: E402
from modsolve.parser import parse_system  # noqa: E402

EXAMPLE_TEXT = "vars x1 x2;\nx2^10\nx1*x2^3+x2^5\nx1^11\n"


def system(text: str) -> Ideal:
    ring, gens = parse_system(text)
    return Ideal(gens, ring)


@pytest.fixture
def example_ideal() -> Ideal:
    return system(EXAMPLE_TEXT)


# acceptance verdicts, printed as one line per criterion at the end of the run
ACCEPTANCE_RESULTS: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_RESULTS):
        ok, detail = ACCEPTANCE_RESULTS[key]
        terminalreporter.write_line(f"criterion {key}: {'PASS' if ok else 'FAIL'}  {detail}")
