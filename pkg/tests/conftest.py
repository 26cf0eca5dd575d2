from pathlib import Path

import numpy as np
import pytest
from hypothesis import strategies as st

from squareperc.graph import Graph, from_pair_mask, new_graph, num_pairs

GOLDEN = Path(__file__).parent / "golden"


def cycle(n: int) -> Graph:
    return new_graph(n, [(i, (i + 1) % n) for i in range(n)])


@st.composite
def graphs(draw, min_n: int = 0, max_n: int = 20) -> Graph:
    n = draw(st.integers(min_n, max_n))
    p = draw(st.sampled_from([0.1, 0.3, 0.5, 0.7, 0.9]))
    seed = draw(st.integers(0, 2**32 - 1))
    mask = np.random.default_rng(seed).random(num_pairs(n)) < p
    return from_pair_mask(mask, n)


@pytest.fixture
def c4() -> Graph:
    return cycle(4)


@pytest.fixture
def c5() -> Graph:
    return cycle(5)


@pytest.fixture
def two_c4() -> Graph:
    return new_graph(8, [(0, 1), (1, 2), (2, 3), (0, 3), (4, 5), (5, 6), (6, 7), (4, 7)])


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(results):
        terminalreporter.write_line(results[num])
