from __future__ import annotations

import random

import pytest
from hypothesis import HealthCheck, settings

from dynes.corpus import load_example

settings.register_profile(
    "dynes",
    max_examples=60,
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("dynes")

# Lines reported by the acceptance suite, printed once at the end of the run.
ACCEPTANCE_LINES: dict[str, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for key in sorted(ACCEPTANCE_LINES, key=lambda k: (len(k), k)):
            terminalreporter.write_line(ACCEPTANCE_LINES[key])


@pytest.fixture
def rng():
    return random.Random(1234)


@pytest.fixture
def example():
    return lambda name: load_example(name).structure
