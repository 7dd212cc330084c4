import functools
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from morava.abelian import model_for  # noqa: E402
from morava.checks import groebner_basis  # noqa: E402

GOLDEN = Path(__file__).parent / "golden"


@functools.lru_cache(maxsize=None)
def cached_gb(group, s=2, order=None, reading="induced"):
    if order is None:
        return groebner_basis(group, s, reading=reading)
    return groebner_basis(group, s, order, reading=reading)


@functools.lru_cache(maxsize=None)
def cached_model(group, s=2, chern="sum"):
    return model_for(group, s, chern=chern)


@pytest.fixture
def golden():
    return lambda name: (GOLDEN / name).read_text().strip()


ACCEPTANCE_LINES = []


def record_criterion(label: str, ok: bool, detail: str = "") -> None:
    line = f"{'PASS' if ok else 'FAIL'}  criterion {label}" + (f"  ({detail})" if detail else "")
    ACCEPTANCE_LINES.append(line)
    print(line)


def record_note(text: str) -> None:
    line = f"NOTE  {text}"
    ACCEPTANCE_LINES.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
