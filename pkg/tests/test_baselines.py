import networkx as nx
import numpy as np
import pytest

from gumbel_communities import (
    BaselineConfig,
    Graph,
    GraphError,
    greedy_modularity,
    label_propagation,
    louvain,
    modularity,
)

from conftest import all_graphs, random_graph, set_partitions

TRIANGLES = Graph.from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
K5 = Graph.from_edges(5, [(i, j) for i in range(5) for j in range(i + 1, 5)])
P3 = Graph.from_edges(3, [(0, 1), (1, 2)])
TWO_EDGES = Graph.from_edges(4, [(0, 1), (2, 3)])

_PARTITIONS = {n: np.array(list(set_partitions(n))) for n in range(1, 8)}


def exhaustive_max(g):
    """Best modularity over every set partition, vectorized over partitions."""
    a = g.adjacency
    k = a.sum(axis=1)
    two_m = a.sum()
    b = a - np.outer(k, k) / two_m
    labels = _PARTITIONS[g.n]
    same = labels[:, :, None] == labels[:, None, :]
    return float((same * b).sum(axis=(1, 2)).max() / two_m)


def graph_atlas(max_nodes=7):
    """One representative per isomorphism class of graphs up to ``max_nodes``."""
    for h in nx.graph_atlas_g():
        if 0 < h.number_of_nodes() <= max_nodes and h.number_of_edges() > 0:
            yield Graph.from_edges(h.number_of_nodes(), h.edges())


def test_exhaustive_helper_matches_scalar_loop():
    rng = np.random.default_rng(4)
    for _ in range(10):
        g = random_graph(rng, int(rng.integers(2, 7)))
        slow = max(modularity(g, lab) for lab in set_partitions(g.n))
        assert exhaustive_max(g) == pytest.approx(slow, abs=1e-12)


def test_atlas_size():
    # number of graphs on up to 7 nodes with at least one edge
    assert sum(1 for _ in graph_atlas()) == 1252 - 7


@pytest.mark.parametrize("seed", range(10))
def test_label_propagation_triangles(seed):
    p = label_propagation(TRIANGLES, BaselineConfig(seed=seed))
    assert p.labels.tolist() == [0, 0, 0, 1, 1, 1]


@pytest.mark.parametrize("seed", range(10))
def test_label_propagation_complete_graph(seed):
    assert set(label_propagation(K5, BaselineConfig(seed=seed)).labels.tolist()) == {0}


@pytest.mark.parametrize("seed", range(10))
def test_louvain_triangles(seed):
    assert louvain(TRIANGLES, BaselineConfig(seed=seed)).labels.tolist() == [0, 0, 0, 1, 1, 1]


def test_greedy_small_examples():
    p = greedy_modularity(TWO_EDGES)
    assert p.labels.tolist() == [0, 0, 1, 1]
    assert modularity(TWO_EDGES, p) == pytest.approx(0.5)
    assert modularity(P3, greedy_modularity(P3)) == pytest.approx(exhaustive_max(P3), abs=1e-12)
    assert greedy_modularity(TRIANGLES).labels.tolist() == [0, 0, 0, 1, 1, 1]


def test_greedy_never_beats_exhaustive():
    for g in graph_atlas(7):
        q = modularity(g, greedy_modularity(g))
        assert q <= exhaustive_max(g) + 1e-12


def test_louvain_never_beats_exhaustive():
    for g in graph_atlas(6):
        assert modularity(g, louvain(g)) <= exhaustive_max(g) + 1e-12


def test_greedy_matches_networkx_on_karate(karate):
    g, _ = karate
    ref = nx.community.greedy_modularity_communities(nx.karate_club_graph())
    ours = modularity(g, greedy_modularity(g))
    assert ours == pytest.approx(nx.community.modularity(nx.karate_club_graph(), ref, weight=None), abs=1e-9)


@pytest.mark.parametrize("algo", [label_propagation, louvain, greedy_modularity])
def test_communities_stay_inside_components(algo):
    rng = np.random.default_rng(12)
    for _ in range(20):
        g = random_graph(rng, int(rng.integers(3, 15)), p=0.2)
        p = algo(g) if algo is greedy_modularity else algo(g, BaselineConfig(seed=int(rng.integers(1000))))
        comp = g.components()
        for members in p.clusters():
            assert len(set(comp[members].tolist())) == 1


@pytest.mark.parametrize("algo", [label_propagation, louvain])
def test_seeded_determinism(algo, karate):
    g, _ = karate
    assert algo(g, BaselineConfig(seed=3)) == algo(g, BaselineConfig(seed=3))


@pytest.mark.parametrize("algo", [label_propagation, louvain])
def test_partitions_are_compact(algo, karate):
    g, _ = karate
    labels = algo(g, BaselineConfig(seed=1)).labels
    assert sorted(set(labels.tolist())) == list(range(labels.max() + 1))


@pytest.mark.parametrize("algo", [label_propagation, louvain, greedy_modularity])
def test_edgeless_graph_rejected(algo):
    with pytest.raises(GraphError):
        algo(Graph.from_edges(3, []))


def test_baseline_config_validation():
    with pytest.raises(ValueError):
        BaselineConfig(max_sweeps=0)
