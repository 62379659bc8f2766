import numpy as np
import pytest

from lspline.Logging import init as init_logging

SEED = 20200507


@pytest.fixture(scope="session", autouse=True)
def quiet_logging():
    init_logging("lspline", level="WARNING")


@pytest.fixture
def rng():
    """A freshly seeded generator, so every test sees the same draws."""
    return np.random.default_rng(SEED)


def random_knots(rng, n, start=0.0, stop=1.0):
    """n strictly increasing knots from start to stop with bounded spacing ratio."""
    steps = rng.uniform(0.2, 1.0, n - 1)
    offsets = np.concatenate([[0.0], np.cumsum(steps)]) / steps.sum()
    return start + (stop - start) * offsets


@pytest.fixture
def demo_grid():
    return np.array([0.0, 0.1667, 0.3333, 0.5, 0.6667, 0.8333, 1.0])


def write_lines(path, *lines):
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path
