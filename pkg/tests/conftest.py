import random

import pytest
from hypothesis import strategies as st

from coxlat.coxeter_rep import ReducedWord


def words(N: int, max_length: int = 10):
    """Hypothesis strategy for reduced words of UC(N)."""
    return st.lists(st.integers(1, N), max_size=max_length).map(lambda xs: ReducedWord(N, xs))


def int_vectors(N: int, lo: int = -20, hi: int = 20):
    return st.lists(st.integers(lo, hi), min_size=N, max_size=N).map(tuple)


@pytest.fixture
def rng():
    return random.Random(20240611)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[number])
