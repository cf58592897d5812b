import sys
from fractions import Fraction
from pathlib import Path

import pytest

from seqeffect.models import HorizontalSum, Interval

CORPUS = Path(__file__).resolve().parent.parent / "corpus"
F = Fraction


@pytest.fixture(scope="session")
def H():
    return HorizontalSum([Interval(), Interval()])


def corpus_files(sub: str) -> list[Path]:
    return sorted((CORPUS / sub).glob("*.json"))


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "LINES", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
