import numpy as np
import pytest
from hypothesis import HealthCheck, settings, strategies as st

from hamvc.core import HammingParams, PointSet

settings.register_profile("default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

SMALL = [HammingParams(2, 3, 1), HammingParams(2, 4, 1), HammingParams(2, 3, 2), HammingParams(3, 3, 1)]


@st.composite
def point_sets(draw, params=None, min_size=0, max_size=None):
    p = params if params is not None else draw(st.sampled_from(SMALL))
    n = p.n_vertices
    idx = draw(st.sets(st.integers(0, n - 1), min_size=min_size, max_size=n if max_size is None else max_size))
    return PointSet.from_indices(p, idx)


def random_point_sets(params, count, seed):
    """Seeded random subsets: uniform size, then a uniform subset of that size."""
    rng = np.random.default_rng(seed)
    for _ in range(count):
        m = int(rng.integers(0, params.n_vertices + 1))
        yield PointSet.from_indices(params, (int(v) for v in rng.choice(params.n_vertices, m, replace=False)))


@pytest.fixture
def h231():
    return HammingParams(2, 3, 1)


@pytest.fixture
def h241():
    return HammingParams(2, 4, 1)


# one line per acceptance criterion, echoed in the terminal summary
ACCEPTANCE: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE:
            terminalreporter.write_line(line)
