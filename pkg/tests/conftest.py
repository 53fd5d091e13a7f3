import random

import pytest

from controlmode.graph import DirectedGraph


def make(n, edges):
    return DirectedGraph(n, edges)


def random_digraph(rng: random.Random, n_min=2, n_max=8, p=0.3) -> DirectedGraph:
    """Erdos-Renyi style digraph; every ordered pair, self-loops included, kept with probability p."""
    n = rng.randint(n_min, n_max)
    edges = [(u, v) for u in range(n) for v in range(n) if rng.random() < p]
    return DirectedGraph(n, edges)


def random_corpus(count=1000, seed=20240601, **kw) -> list[DirectedGraph]:
    rng = random.Random(seed)
    return [random_digraph(rng, **kw) for _ in range(count)]


# graphs used as worked examples throughout the test-suite
EXAMPLES = {
    "chain": (3, [(0, 1), (1, 2)]),
    "fork": (3, [(0, 1), (0, 2)]),
    "two_cycle": (2, [(0, 1), (1, 0)]),
    "join": (3, [(0, 2), (1, 2)]),
    "fork_fed": (4, [(0, 1), (0, 2), (3, 0)]),
    "self_loop_driver": (2, [(1, 0), (1, 1)]),
    "mixed_block": (5, [(0, 1), (0, 2), (0, 3), (4, 3)]),
}


def example_graphs():
    return {name: make(n, e) for name, (n, e) in EXAMPLES.items()}


@pytest.fixture(scope="session")
def corpus():
    return random_corpus()


@pytest.fixture
def fork():
    return make(3, [(0, 1), (0, 2)])


@pytest.fixture
def chain():
    return make(3, [(0, 1), (1, 2)])


# one line per acceptance criterion, echoed at the end of the run
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
