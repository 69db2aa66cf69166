import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from hgc.category import Arrow
from hgc.examples import build_named

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def s3():
    """S3 acting on the three cosets of <(12)>; points '(12)', '(123)', '(132)'."""
    return build_named("s3-dcoset")


@pytest.fixture
def s3_orbits(s3):
    """(O_e, O_a): the diagonal orbit and the off-diagonal orbit."""
    return ("(12)", "(12)"), ("(12)", "(123)")


@pytest.fixture
def s3_deltas(s3, s3_orbits):
    alpha = s3.space
    return tuple(Arrow.delta(alpha, alpha, o) for o in s3_orbits)


@pytest.fixture
def rng():
    return random.Random(20240611)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
