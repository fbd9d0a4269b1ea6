"""Classical community detection baselines.

* :func:`label_propagation` -- asynchronous label propagation
  (Raghavan, Albert and Kumara, 2007).
* :func:`greedy_modularity` -- agglomerative modularity maximization
  (Newman 2004; Clauset, Newman and Moore 2004).
* :func:`louvain` -- multi-level local moves plus aggregation
  (Blondel et al. 2008).

All three return compacted partitions (labels ``0..c-1``).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import Graph, GraphError, Partition, compact_labels


@dataclass(frozen=True)
class BaselineConfig:
    seed: int = 0
    max_sweeps: int = 100

    def __post_init__(self):
        if self.max_sweeps < 1:
            raise ValueError("max_sweeps must be positive")


def _require_edges(g: Graph):
    if g.m < 1:
        raise GraphError("community detection needs at least one edge")


def _most_frequent(labels, nbrs):
    counts: dict[int, int] = {}
    for w in nbrs:
        lab = labels[w]
        counts[lab] = counts.get(lab, 0) + 1
    top = max(counts.values())
    return sorted(lab for lab, c in counts.items() if c == top)


def label_propagation(g: Graph, cfg: BaselineConfig = BaselineConfig()) -> Partition:
    """Asynchronous label propagation with seeded order and tie-breaking.

    Every node starts with its own label. Each sweep visits the nodes in a
    fresh random order and sets each node's label to the most frequent label
    among its neighbours, drawing uniformly among tied labels. Propagation
    stops once every node holds one of its neighbourhood's most frequent
    labels, or after ``cfg.max_sweeps`` sweeps.
    """
    _require_edges(g)
    rng = np.random.default_rng(cfg.seed)
    nbrs = g.neighbors()
    labels = list(range(g.n))
    for _ in range(cfg.max_sweeps):
        for u in rng.permutation(g.n):
            if not nbrs[u]:
                continue
            best = _most_frequent(labels, nbrs[u])
            labels[u] = best[0] if len(best) == 1 else best[rng.integers(len(best))]
        if all(not nbrs[u] or labels[u] in _most_frequent(labels, nbrs[u]) for u in range(g.n)):
            break
    return Partition.from_labels(compact_labels(labels))


def greedy_modularity(g: Graph) -> Partition:
    """Merge communities pairwise by largest modularity gain.

    Starts from singletons. Gains are kept as exact integers
    ``2m * L_ij - d_i * d_j`` (proportional to the modularity change), so
    ties are detected exactly and resolved toward the lexicographically
    smallest community pair. A merged community keeps the smaller id. Stops
    when no merge has a positive gain, which is also the modularity peak
    along the merge path.
    """
    _require_edges(g)
    two_m = 2 * g.m
    between: dict[int, dict[int, int]] = {i: {} for i in range(g.n)}
    for u, v in g.edges:
        between[u][v] = between[u].get(v, 0) + 1
        between[v][u] = between[v].get(u, 0) + 1
    deg = {i: int(d) for i, d in enumerate(g.degrees())}
    members = {i: [i] for i in range(g.n)}

    while True:
        best = None
        for i in sorted(between):
            for j in sorted(between[i]):
                if j <= i:
                    continue
                gain = two_m * between[i][j] - deg[i] * deg[j]
                if gain > 0 and (best is None or gain > best[0]):
                    best = (gain, i, j)
        if best is None:
            break
        _, i, j = best
        for c, w in between.pop(j).items():
            if c == i:
                continue
            between[c].pop(j)
            between[i][c] = between[i].get(c, 0) + w
            between[c][i] = between[c].get(i, 0) + w
        between[i].pop(j, None)
        deg[i] += deg.pop(j)
        members[i].extend(members.pop(j))

    labels = np.empty(g.n, dtype=int)
    for c, nodes in members.items():
        labels[nodes] = c
    return Partition.from_labels(compact_labels(labels))


def _louvain_level(weights, strength, two_m, rng):
    """Local-move phase on a weighted graph; returns community per node."""
    n = len(weights)
    comm = list(range(n))
    tot = list(strength)
    improved = False
    moved = True
    while moved:
        moved = False
        for u in rng.permutation(n):
            cu = comm[u]
            links: dict[int, float] = {}
            for v, w in weights[u].items():
                links[comm[v]] = links.get(comm[v], 0.0) + w
            tot[cu] -= strength[u]
            # gain of joining c, up to a positive factor: k_u,c - tot_c * k_u / 2m
            best_c = cu
            best_gain = links.get(cu, 0.0) - tot[cu] * strength[u] / two_m
            for c in sorted(links):
                gain = links[c] - tot[c] * strength[u] / two_m
                if gain > best_gain + 1e-12:
                    best_c, best_gain = c, gain
            tot[best_c] += strength[u]
            if best_c != cu:
                comm[u] = best_c
                moved = True
                improved = True
    return compact_labels(comm), improved


def louvain(g: Graph, cfg: BaselineConfig = BaselineConfig()) -> Partition:
    """Multi-level modularity optimization.

    Alternates local moves (each node, in a seeded random order, joins the
    neighbouring community with the largest modularity gain) with
    aggregation of communities into weighted super-nodes, until a level
    produces no move.
    """
    _require_edges(g)
    rng = np.random.default_rng(cfg.seed)
    two_m = 2.0 * g.m
    weights: list[dict[int, float]] = [dict() for _ in range(g.n)]
    for u, v in g.edges:
        weights[u][v] = weights[u].get(v, 0.0) + 1.0
        weights[v][u] = weights[v].get(u, 0.0) + 1.0
    strength = [float(d) for d in g.degrees()]
    node_comm = np.arange(g.n)

    while True:
        level, improved = _louvain_level(weights, strength, two_m, rng)
        if not improved:
            break
        node_comm = level[node_comm]
        c = int(level.max()) + 1
        agg: list[dict[int, float]] = [dict() for _ in range(c)]
        agg_strength = [0.0] * c
        for u, nbrs in enumerate(weights):
            cu = level[u]
            agg_strength[cu] += strength[u]
            for v, w in nbrs.items():
                cv = level[v]
                if cu != cv:
                    agg[cu][cv] = agg[cu].get(cv, 0.0) + w
        weights, strength = agg, agg_strength
        if c == 1:
            break
    return Partition.from_labels(compact_labels(node_comm))
