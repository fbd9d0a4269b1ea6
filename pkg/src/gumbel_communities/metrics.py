"""Partition quality: modularity and supervised comparison scores.

Entropies use the natural logarithm. Degenerate cases (a partition with a
single non-empty cluster) follow the conventions documented per function.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass
from typing import Optional

import numpy as np

from .graph import Graph, GraphError, Partition


def _labels(p) -> np.ndarray:
    if isinstance(p, Partition):
        return p.labels
    return np.asarray(p, dtype=int)


def modularity(g: Graph, p) -> float:
    """Newman-Girvan modularity of a hard partition of an unweighted graph.

    Computed per community as ``e_c - a_c**2`` where ``e_c`` is the fraction
    of edges inside community ``c`` and ``a_c`` the fraction of edge ends
    attached to it.
    """
    labels = _labels(p)
    if len(labels) != g.n:
        raise GraphError(f"partition has {len(labels)} labels but graph has {g.n} nodes")
    if g.m == 0:
        raise GraphError("modularity is undefined for a graph without edges")
    _, comm = np.unique(labels, return_inverse=True)
    c = int(comm.max()) + 1
    two_m = 2.0 * g.m
    edges = np.asarray(g.edges, dtype=int)
    same = comm[edges[:, 0]] == comm[edges[:, 1]]
    inside = np.bincount(comm[edges[same, 0]], minlength=c)
    deg_sum = np.bincount(comm, weights=g.degrees(), minlength=c)
    return float(np.sum(inside / g.m - (deg_sum / two_m) ** 2))


@dataclass(frozen=True)
class ContingencyTable:
    counts: np.ndarray
    n: int


def contingency(a, b) -> ContingencyTable:
    """Co-occurrence counts between the (compacted) clusters of ``a`` and ``b``."""
    a, b = _labels(a), _labels(b)
    if len(a) != len(b):
        raise ValueError(f"partitions differ in length: {len(a)} vs {len(b)}")
    ua, ia = np.unique(a, return_inverse=True)
    ub, ib = np.unique(b, return_inverse=True)
    counts = np.zeros((len(ua), len(ub)), dtype=np.int64)
    np.add.at(counts, (ia, ib), 1)
    return ContingencyTable(counts=counts, n=len(a))


def _comb2(x):
    x = np.asarray(x, dtype=float)
    return x * (x - 1) / 2.0


def _same(a, b) -> bool:
    """True when ``a`` and ``b`` are equal up to relabeling."""
    t = contingency(a, b).counts
    return t.shape[0] == t.shape[1] and np.count_nonzero(t) == t.shape[0]


def ari(a, b) -> float:
    """Hubert-Arabie adjusted Rand index.

    When the chance-corrected denominator vanishes (both partitions are a
    single cluster, or both are all singletons) the result is 1.0 if the
    partitions agree up to relabeling and 0.0 otherwise.
    """
    t = contingency(a, b)
    if t.n < 2:
        raise ValueError("ARI needs at least two items")
    sum_ij = _comb2(t.counts).sum()
    sum_a = _comb2(t.counts.sum(axis=1)).sum()
    sum_b = _comb2(t.counts.sum(axis=0)).sum()
    expected = sum_a * sum_b / _comb2(t.n)
    denom = 0.5 * (sum_a + sum_b) - expected
    if denom == 0:
        return 1.0 if _same(a, b) else 0.0
    return float((sum_ij - expected) / denom)


def _entropy(counts) -> float:
    counts = np.asarray(counts, dtype=float)
    counts = counts[counts > 0]
    pr = counts / counts.sum()
    return float(-np.sum(pr * np.log(pr)))


def mutual_info(t: ContingencyTable) -> float:
    nz = t.counts > 0
    pij = t.counts / t.n
    pi = pij.sum(axis=1, keepdims=True)
    pj = pij.sum(axis=0, keepdims=True)
    outer = pi @ pj
    return float(np.sum(pij[nz] * np.log(pij[nz] / outer[nz])))


NMI_AVERAGES = ("arithmetic", "geometric")


def nmi(a, b, average: str = "arithmetic") -> float:
    """Mutual information normalized by the mean of the two entropies.

    ``average="arithmetic"`` divides by ``(H(a) + H(b)) / 2`` (this equals the
    V-measure); ``"geometric"`` divides by ``sqrt(H(a) H(b))``. If either
    entropy is zero the result is 1.0 for identical partitions (up to
    relabeling) and 0.0 otherwise.
    """
    if average not in NMI_AVERAGES:
        raise ValueError(f"average must be one of {NMI_AVERAGES}")
    t = contingency(a, b)
    ha = _entropy(t.counts.sum(axis=1))
    hb = _entropy(t.counts.sum(axis=0))
    if ha == 0 or hb == 0:
        return 1.0 if _same(a, b) else 0.0
    norm = 0.5 * (ha + hb) if average == "arithmetic" else np.sqrt(ha * hb)
    value = mutual_info(t) / norm
    return float(min(max(value, 0.0), 1.0))


def homogeneity_completeness_vmeasure(truth, pred) -> tuple[float, float, float]:
    """Conditional-entropy scores of ``pred`` against ``truth``.

    Homogeneity is 1.0 when ``H(truth) = 0``; completeness is 1.0 when
    ``H(pred) = 0``. The V-measure is the harmonic mean of the two and 0.0
    when both are zero.
    """
    t = contingency(truth, pred)
    h_c = _entropy(t.counts.sum(axis=1))
    h_k = _entropy(t.counts.sum(axis=0))
    mi = mutual_info(t)
    # H(C|K) = H(C) - I(C;K)
    homo = 1.0 if h_c == 0 else 1.0 - (h_c - mi) / h_c
    comp = 1.0 if h_k == 0 else 1.0 - (h_k - mi) / h_k
    homo = float(min(max(homo, 0.0), 1.0))
    comp = float(min(max(comp, 0.0), 1.0))
    v = 0.0 if homo + comp == 0 else 2.0 * homo * comp / (homo + comp)
    return homo, comp, float(v)


@dataclass
class MetricReport:
    modularity: float
    ari: Optional[float] = None
    nmi: Optional[float] = None
    homogeneity: Optional[float] = None
    completeness: Optional[float] = None
    v_measure: Optional[float] = None

    FIELDS = ("modularity", "ari", "nmi", "homogeneity", "completeness", "v_measure")

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=False)

    def csv_header(self) -> str:
        return ",".join(self.FIELDS)

    def csv_row(self) -> str:
        vals = [getattr(self, f) for f in self.FIELDS]
        return ",".join("" if v is None else repr(float(v)) for v in vals)

    @classmethod
    def from_dict(cls, d: dict) -> "MetricReport":
        return cls(**{f: d.get(f) for f in cls.FIELDS})


def evaluate(g: Graph, pred, truth=None) -> MetricReport:
    pred_labels = _labels(pred)
    report = MetricReport(modularity=modularity(g, pred_labels))
    if truth is not None:
        truth_labels = _labels(truth)
        if len(truth_labels) != len(pred_labels):
            raise ValueError(
                f"truth has {len(truth_labels)} labels but prediction has {len(pred_labels)}"
            )
        report.ari = ari(truth_labels, pred_labels)
        report.nmi = nmi(truth_labels, pred_labels)
        h, c, v = homogeneity_completeness_vmeasure(truth_labels, pred_labels)
        report.homogeneity, report.completeness, report.v_measure = h, c, v
    return report
