import itertools

import numpy as np
import pytest

from gumbel_communities import Graph, TrainConfig, builtin_karate, train


def set_partitions(n):
    """Every set partition of range(n) as a restricted-growth label list."""
    def grow(prefix, top):
        if len(prefix) == n:
            yield list(prefix)
            return
        for lab in range(top + 2):
            yield from grow(prefix + [lab], max(top, lab))

    if n == 0:
        yield []
        return
    yield from grow([0], 0)


def all_graphs(n):
    """Every labelled simple graph on n nodes (2 ** C(n, 2) of them)."""
    pairs = list(itertools.combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        yield Graph.from_edges(n, [p for i, p in enumerate(pairs) if mask >> i & 1])


def random_graph(rng, n, p=0.5, min_edges=1):
    while True:
        edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
        if len(edges) >= min_edges:
            return Graph.from_edges(n, edges)


@pytest.fixture(scope="session")
def karate():
    return builtin_karate()


@pytest.fixture(scope="session")
def karate_k4(karate):
    g, _ = karate
    return train(g, TrainConfig(k=4))


@pytest.fixture(scope="session")
def karate_k2(karate):
    g, _ = karate
    return train(g, TrainConfig(k=2))


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for number in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[number])
