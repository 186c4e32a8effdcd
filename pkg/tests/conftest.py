import numpy as np
import pytest
from hypothesis import strategies as st

from linsan import example1, from_joint

ALPHA_GRID = [0.05, 0.1, 0.25, 0.5, 0.75, 0.9, 1.0]

# one line per acceptance criterion, echoed in the terminal summary
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)


@pytest.fixture
def ex1():
    return example1()


def random_joint(rng, max_s=6, max_x=6, min_size=1):
    """Dirichlet joint; a third of the time some cells are forced to zero."""
    n_s = int(rng.integers(min_size, max_s + 1))
    n_x = int(rng.integers(min_size, max_x + 1))
    while True:
        p = rng.dirichlet(np.ones(n_s * n_x)).reshape(n_s, n_x)
        if rng.random() < 1 / 3:
            p[rng.random(p.shape) < 0.25] = 0.0
        if p.sum(axis=1).min() > 0 and p.sum(axis=0).min() > 0:
            return from_joint([f"s{i}" for i in range(n_s)], [f"x{i}" for i in range(n_x)], p / p.sum())


def random_suite(n, seed, **kw):
    rng = np.random.default_rng(seed)
    return [random_joint(rng, **kw) for _ in range(n)]


@st.composite
def joints(draw, max_s=5, max_x=5):
    """Joints from small integer counts, so ties with the marginal happen."""
    n_s = draw(st.integers(1, max_s))
    n_x = draw(st.integers(1, max_x))
    counts = np.array(
        draw(st.lists(st.integers(0, 6), min_size=n_s * n_x, max_size=n_s * n_x)), dtype=float
    ).reshape(n_s, n_x)
    counts[:, 0] += 1
    counts[0, :] += 1
    return from_joint([f"s{i}" for i in range(n_s)], [f"x{i}" for i in range(n_x)], counts / counts.sum())


alphas = st.floats(min_value=1e-3, max_value=1.0)
