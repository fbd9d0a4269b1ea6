"""Undirected simple graphs and hard partitions of their node sets."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np


class GraphError(ValueError):
    """Raised when a graph or partition violates its structural contract."""


@dataclass(frozen=True)
class Graph:
    """Immutable undirected simple graph on nodes ``0..n-1``.

    ``edges`` holds each edge once as ``(u, v)`` with ``u < v``, sorted
    lexicographically. Use :meth:`from_edges` to build one from arbitrary
    pairs; it normalizes orientation and rejects loops and duplicates.
    """

    n: int
    edges: tuple[tuple[int, int], ...]
    names: Optional[tuple[str, ...]] = None
    _adj: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.n < 1:
            raise GraphError(f"graph needs at least one node, got n={self.n}")
        seen = set()
        for u, v in self.edges:
            if u == v:
                raise GraphError(f"self-loop at node {u}")
            if not (0 <= u < v < self.n):
                raise GraphError(f"edge ({u}, {v}) is not normalized or out of range for n={self.n}")
            if (u, v) in seen:
                raise GraphError(f"duplicate edge ({u}, {v})")
            seen.add((u, v))
        if list(self.edges) != sorted(self.edges):
            raise GraphError("edges must be sorted")
        if self.names is not None and len(self.names) != self.n:
            raise GraphError(f"expected {self.n} node names, got {len(self.names)}")

        adj = np.zeros((self.n, self.n), dtype=float)
        if self.edges:
            idx = np.asarray(self.edges, dtype=int)
            adj[idx[:, 0], idx[:, 1]] = 1.0
            adj[idx[:, 1], idx[:, 0]] = 1.0
        adj.setflags(write=False)
        object.__setattr__(self, "_adj", adj)

    @classmethod
    def from_edges(cls, n: int, pairs: Iterable[tuple[int, int]], names=None) -> "Graph":
        norm = {(min(u, v), max(u, v)) for u, v in pairs}
        return cls(n=n, edges=tuple(sorted(norm)), names=None if names is None else tuple(names))

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def adjacency(self) -> np.ndarray:
        """Read-only dense 0/1 adjacency matrix."""
        return self._adj

    def degrees(self) -> np.ndarray:
        return self._adj.sum(axis=1)

    def neighbors(self) -> list[list[int]]:
        nbrs: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            nbrs[u].append(v)
            nbrs[v].append(u)
        return nbrs

    def components(self) -> np.ndarray:
        """Connected-component id per node, numbered by smallest member."""
        comp = np.full(self.n, -1, dtype=int)
        nbrs = self.neighbors()
        c = 0
        for s in range(self.n):
            if comp[s] >= 0:
                continue
            stack = [s]
            comp[s] = c
            while stack:
                u = stack.pop()
                for w in nbrs[u]:
                    if comp[w] < 0:
                        comp[w] = c
                        stack.append(w)
            c += 1
        return comp


def adjacency_matrix(g: Graph) -> np.ndarray:
    """Return a writable copy of the symmetric 0/1 adjacency matrix of ``g``."""
    return np.array(g.adjacency, copy=True)


@dataclass(frozen=True)
class Partition:
    """Hard cluster labels in ``[0, k)``; clusters may be empty."""

    labels: np.ndarray
    k: int

    def __post_init__(self):
        labels = np.asarray(self.labels, dtype=int).copy()
        if labels.ndim != 1:
            raise GraphError("labels must be one-dimensional")
        if self.k < 1:
            raise GraphError(f"k must be positive, got {self.k}")
        if labels.size and (labels.min() < 0 or labels.max() >= self.k):
            raise GraphError(f"labels must lie in [0, {self.k})")
        labels.setflags(write=False)
        object.__setattr__(self, "labels", labels)

    @classmethod
    def from_labels(cls, labels: Sequence[int], k: Optional[int] = None) -> "Partition":
        labels = np.asarray(labels, dtype=int)
        if k is None:
            k = int(labels.max()) + 1 if labels.size else 1
        return cls(labels=labels, k=k)

    @property
    def n(self) -> int:
        return int(self.labels.size)

    def __len__(self):
        return self.n

    def __eq__(self, other):
        if not isinstance(other, Partition):
            return NotImplemented
        return self.k == other.k and np.array_equal(self.labels, other.labels)

    def __hash__(self):
        return hash((self.k, self.labels.tobytes()))

    def compact(self) -> "Partition":
        """Relabel non-empty clusters to ``0..c-1`` in order of first appearance."""
        return Partition.from_labels(compact_labels(self.labels))

    def clusters(self) -> list[list[int]]:
        return [np.flatnonzero(self.labels == c).tolist() for c in range(self.k)]


def compact_labels(labels) -> np.ndarray:
    mapping: dict[int, int] = {}
    out = np.empty(len(labels), dtype=int)
    for i, lab in enumerate(labels):
        out[i] = mapping.setdefault(int(lab), len(mapping))
    return out


def check_partition(g: Graph, p: Partition) -> None:
    if p.n != g.n:
        raise GraphError(f"partition has {p.n} labels but graph has {g.n} nodes")
