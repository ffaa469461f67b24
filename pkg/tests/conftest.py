import os

import numpy as np
import pytest
from hypothesis import HealthCheck, settings, strategies as st

import wlattice as wl

FIXTURES = os.path.join(os.path.dirname(__file__), "fixtures")

settings.register_profile(
    "default", max_examples=100, deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

NINF, INF = -np.inf, np.inf

# acceptance lines collected during the run, printed in the terminal summary
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def fixture_path():
    return lambda name: os.path.join(FIXTURES, name)


# --------------------------------------------------------------- strategies

# finite values on a coarse grid keep float noise out of exact comparisons
_fin = st.integers(-20, 20).map(lambda k: k / 4)
_unit = st.integers(0, 20).map(lambda k: k / 20)


def scalars(name, sentinels=True):
    """Scalars of the named clodum, including its bounds when asked."""
    if name == "max-plus":
        base = _fin
        extra = [NINF, INF]
    elif name == "max-times":
        base = st.integers(1, 40).map(lambda k: k / 8)
        extra = [0.0, INF]
    else:
        base = _unit
        extra = [0.0, 1.0]
    return st.one_of(base, st.sampled_from(extra)) if sentinels else base


def arrays(name, shape, sentinels=True):
    size = int(np.prod(shape))
    return st.lists(scalars(name, sentinels), min_size=size, max_size=size).map(
        lambda v: np.array(v, dtype=float).reshape(shape))


CLODA = list(wl.CLODUM_NAMES)
