import hypothesis
import numpy as np
import pytest
from hypothesis import strategies as st

from popmatch.instance import PreferenceProfile

np.seterr(all="warn")

hypothesis.settings.register_profile("default", max_examples=200, deadline=None)
hypothesis.settings.register_profile("fast", max_examples=20, deadline=None)
hypothesis.settings.load_profile("default")

ACCEPTANCE_LINES: list[str] = []


@st.composite
def small_profiles(draw, max_n=4, max_m=5, max_len=3):
    """Strict profiles of mixed list lengths small enough for brute force."""
    n = draw(st.integers(1, max_n))
    m = draw(st.integers(n, max_m))
    lists = []
    for _ in range(n):
        length = draw(st.integers(1, min(max_len, m)))
        lists.append(draw(st.permutations(range(m)))[:length])
    return PreferenceProfile.from_lists(m, lists)


@pytest.fixture
def acceptance():
    def record(number, title, ok, detail=""):
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title}"
        if detail:
            line += f" -- {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
