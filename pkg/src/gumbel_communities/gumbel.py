"""Gumbel-softmax relaxation of node-to-cluster assignments.

The trainable object is an ``n x k`` logit matrix. Each row is relaxed into
a probability vector over clusters with Gumbel noise and a temperature; the
relaxed assignment ``S`` turns the adjacency matrix into a ``k x k``
cluster-strength matrix ``S.T @ A @ S`` whose row-softmax is pushed toward
the identity.
"""

from __future__ import annotations

import numpy as np

from .graph import Partition

UNIFORM_CLAMP = 1e-12
LOSSES = ("cross-entropy", "mse")


def sample_gumbel(n: int, k: int, rng: np.random.Generator) -> np.ndarray:
    """Draw an ``n x k`` matrix of i.i.d. standard Gumbel variates."""
    u = rng.random((n, k))
    return gumbel_from_uniform(u)


def gumbel_from_uniform(u) -> np.ndarray:
    u = np.clip(np.asarray(u, dtype=float), UNIFORM_CLAMP, 1.0 - UNIFORM_CLAMP)
    return -np.log(-np.log(u))


def row_softmax(m, scale: float = 1.0) -> np.ndarray:
    """Softmax of ``m / scale`` along each row, with max subtraction."""
    if scale <= 0:
        raise ValueError(f"scale must be positive, got {scale}")
    z = np.asarray(m, dtype=float) / scale
    z = z - z.max(axis=1, keepdims=True)
    e = np.exp(z)
    return e / e.sum(axis=1, keepdims=True)


def gumbel_softmax_rows(logits, noise, tau: float) -> np.ndarray:
    """Relaxed one-hot rows ``softmax((logits + noise) / tau)``."""
    if tau <= 0:
        raise ValueError(f"temperature must be positive, got {tau}")
    logits = np.asarray(logits, dtype=float)
    noise = np.asarray(noise, dtype=float)
    if logits.shape != noise.shape:
        raise ValueError(f"logits {logits.shape} and noise {noise.shape} differ in shape")
    return row_softmax(logits + noise, tau)


def cluster_strength(adj, s) -> np.ndarray:
    """Cluster-strength matrix ``S.T @ A @ S`` (within on the diagonal)."""
    adj = np.asarray(adj, dtype=float)
    s = np.asarray(s, dtype=float)
    if adj.ndim != 2 or adj.shape[0] != adj.shape[1]:
        raise ValueError(f"adjacency must be square, got {adj.shape}")
    if s.ndim != 2 or s.shape[0] != adj.shape[0]:
        raise ValueError(f"assignment {s.shape} does not match adjacency {adj.shape}")
    return s.T @ adj @ s


def _edge_mass(adj) -> float:
    total = float(np.sum(adj))
    if total <= 0:
        raise ValueError("loss is undefined for a graph without edges")
    return total


def _forward(adj, logits, noise, tau, scale):
    s = gumbel_softmax_rows(logits, noise, tau)
    two_m = _edge_mass(adj)
    if scale is None:
        scale = two_m
    r = cluster_strength(adj, s)
    p = row_softmax(r, scale)
    return s, scale, p


def _loss_from_p(p, kind):
    k = p.shape[0]
    if kind == "cross-entropy":
        return float(-np.mean(np.log(np.diag(p))))
    if kind == "mse":
        return float(np.sum((p - np.eye(k)) ** 2) / (k * k))
    raise ValueError(f"unknown loss {kind!r}; choose from {LOSSES}")


def loss_identity(adj, logits, noise, tau: float, kind: str = "cross-entropy", scale=None) -> float:
    """Distance between ``row_softmax(S.T A S / scale)`` and the identity.

    ``scale`` defaults to the edge mass ``2m`` (the sum of ``A``).
    ``kind="cross-entropy"`` gives ``-mean(log diag(P))``; ``kind="mse"``
    gives the mean squared entrywise difference ``|P - I|^2 / k^2``.
    """
    _, _, p = _forward(adj, logits, noise, tau, scale)
    return _loss_from_p(p, kind)


def loss_and_gradient(adj, logits, noise, tau: float, kind: str = "cross-entropy", scale=None):
    """Return ``(loss, dloss/dlogits, S)`` by reverse accumulation."""
    adj = np.asarray(adj, dtype=float)
    s, scale, p = _forward(adj, logits, noise, tau, scale)
    k = p.shape[0]
    eye = np.eye(k)
    loss = _loss_from_p(p, kind)

    if kind == "cross-entropy":
        # d(-mean log P_ii)/dX for X = R/scale under row softmax
        g_x = (p - eye) / k
    else:
        g_p = 2.0 * (p - eye) / (k * k)
        g_x = p * (g_p - np.sum(g_p * p, axis=1, keepdims=True))
    g_r = g_x / scale
    # R = S^T A S with symmetric A
    g_s = adj @ s @ (g_r + g_r.T)
    g_z = s * (g_s - np.sum(g_s * s, axis=1, keepdims=True))
    return loss, g_z / tau, s


def loss_gradient(adj, logits, noise, tau: float, kind: str = "cross-entropy", scale=None) -> np.ndarray:
    """Exact gradient of :func:`loss_identity` with respect to the logits."""
    return loss_and_gradient(adj, logits, noise, tau, kind, scale)[1]


def hard_assignment(s) -> Partition:
    """Cluster of each node is the index of its row maximum (first on ties)."""
    s = np.asarray(s, dtype=float)
    return Partition(labels=np.argmax(s, axis=1), k=s.shape[1])
