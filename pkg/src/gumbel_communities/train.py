"""Annealed multi-restart training of Gumbel-softmax cluster logits."""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field, fields

import numpy as np

from .graph import Graph, GraphError, Partition
from .gumbel import LOSSES, hard_assignment, loss_and_gradient, row_softmax, sample_gumbel
from .metrics import modularity

logger = logging.getLogger(__name__)

OPTIMIZERS = ("adam", "sgd")
NORMALIZATIONS = ("mean-entry", "edge-mass")
INIT_STD = 0.1
ROW_SUM_TOL = 1e-9


@dataclass(frozen=True)
class TrainConfig:
    k: int = 2
    epochs: int = 500
    learning_rate: float = 0.02
    restarts: int = 20
    tau_start: float = 1.0
    tau_end: float = 0.5
    seed: int = 0
    optimizer: str = "adam"
    beta1: float = 0.9
    beta2: float = 0.999
    eps: float = 1e-8
    loss: str = "cross-entropy"
    normalization: str = "mean-entry"
    check_rows: bool = False

    def __post_init__(self):
        if self.k < 1:
            raise ValueError(f"k must be at least 1, got {self.k}")
        for name in ("epochs", "restarts"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")
        for name in ("learning_rate", "tau_start", "tau_end", "eps"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")
        if self.tau_end > self.tau_start:
            raise ValueError("tau_end must not exceed tau_start")
        if self.optimizer not in OPTIMIZERS:
            raise ValueError(f"optimizer must be one of {OPTIMIZERS}")
        if self.loss not in LOSSES:
            raise ValueError(f"loss must be one of {LOSSES}")
        if self.normalization not in NORMALIZATIONS:
            raise ValueError(f"normalization must be one of {NORMALIZATIONS}")

    def strength_scale(self, m: int) -> float:
        """Divisor applied to ``S.T A S`` before the row softmax.

        ``edge-mass`` divides by ``2m``; ``mean-entry`` divides by ``2m / k**2``,
        the mean entry of the cluster-strength matrix, so its entries stay of
        order one whatever ``k``.
        """
        two_m = 2.0 * m
        if self.normalization == "edge-mass":
            return two_m
        return two_m / self.k**2

    def temperature(self, epoch: int) -> float:
        """Geometric schedule from ``tau_start`` (first epoch) to ``tau_end`` (last)."""
        if self.epochs == 1:
            return self.tau_end
        frac = epoch / (self.epochs - 1)
        return float(self.tau_start * (self.tau_end / self.tau_start) ** frac)

    def dumps(self) -> str:
        """Serialize as flat ``key = value`` lines."""
        lines = []
        for key, value in asdict(self).items():
            if isinstance(value, str):
                value = f'"{value}"'
            elif isinstance(value, bool):
                value = str(value).lower()
            else:
                value = repr(value)
            lines.append(f"{key} = {value}")
        return "\n".join(lines) + "\n"

    @classmethod
    def loads(cls, text: str) -> "TrainConfig":
        types = {f.name: f.type for f in fields(cls)}
        kwargs = {}
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"line {lineno}: expected 'key = value'")
            key, value = (part.strip() for part in line.split("=", 1))
            if key not in types:
                raise ValueError(f"line {lineno}: unknown key {key!r}")
            kind = types[key]
            if kind == "str":
                kwargs[key] = value.strip('"\'')
            elif kind == "bool":
                kwargs[key] = value.lower() in ("true", "1", "yes")
            elif kind == "int":
                kwargs[key] = int(value)
            else:
                kwargs[key] = float(value)
        return cls(**kwargs)


@dataclass
class RestartResult:
    logits: np.ndarray
    partition: Partition
    modularity: float
    losses: np.ndarray
    taus: np.ndarray


@dataclass
class TrainResult:
    best_partition: Partition
    best_logits: np.ndarray
    best_modularity: float
    loss_trace: np.ndarray
    tau_trace: np.ndarray
    restart_modularities: np.ndarray
    best_restart: int = 0
    config: TrainConfig = field(default_factory=TrainConfig)

    def loss_csv(self) -> str:
        rows = ["epoch,loss,tau"]
        for e, (loss, tau) in enumerate(zip(self.loss_trace, self.tau_trace)):
            rows.append(f"{e},{loss!r},{tau!r}")
        return "\n".join(rows) + "\n"


class Adam:
    def __init__(self, shape, lr, beta1=0.9, beta2=0.999, eps=1e-8):
        self.lr, self.beta1, self.beta2, self.eps = lr, beta1, beta2, eps
        self.m = np.zeros(shape)
        self.v = np.zeros(shape)
        self.t = 0

    def step(self, params, grad):
        self.t += 1
        self.m = self.beta1 * self.m + (1 - self.beta1) * grad
        self.v = self.beta2 * self.v + (1 - self.beta2) * grad * grad
        m_hat = self.m / (1 - self.beta1 ** self.t)
        v_hat = self.v / (1 - self.beta2 ** self.t)
        return params - self.lr * m_hat / (np.sqrt(v_hat) + self.eps)


class SGD:
    def __init__(self, shape, lr, **_):
        self.lr = lr

    def step(self, params, grad):
        return params - self.lr * grad


def _make_optimizer(cfg: TrainConfig, shape):
    if cfg.optimizer == "adam":
        return Adam(shape, cfg.learning_rate, cfg.beta1, cfg.beta2, cfg.eps)
    return SGD(shape, cfg.learning_rate)


def run_restart(g: Graph, cfg: TrainConfig, restart: int) -> RestartResult:
    """One independent optimization run seeded with ``cfg.seed + restart``."""
    rng = np.random.default_rng(cfg.seed + restart)
    adj = g.adjacency
    scale = cfg.strength_scale(g.m)
    logits = rng.normal(0.0, INIT_STD, size=(g.n, cfg.k))
    opt = _make_optimizer(cfg, logits.shape)
    losses = np.empty(cfg.epochs)
    taus = np.empty(cfg.epochs)
    for epoch in range(cfg.epochs):
        tau = cfg.temperature(epoch)
        noise = sample_gumbel(g.n, cfg.k, rng)
        loss, grad, s = loss_and_gradient(adj, logits, noise, tau, cfg.loss, scale)
        if cfg.check_rows:
            assert np.all(np.abs(s.sum(axis=1) - 1.0) <= ROW_SUM_TOL), "assignment rows drifted"
        logits = opt.step(logits, grad)
        losses[epoch] = loss
        taus[epoch] = tau
    part = hard_assignment(row_softmax(logits, cfg.tau_end))
    return RestartResult(logits, part, modularity(g, part), losses, taus)


def train(g: Graph, cfg: TrainConfig, workers: int = 1) -> TrainResult:
    """Run ``cfg.restarts`` independent restarts and keep the best by modularity.

    Restarts share no state, so ``workers > 1`` runs them on a thread pool
    and yields the same result as a serial run. Ties in modularity go to the
    lowest restart index.
    """
    if cfg.k > g.n:
        raise GraphError(f"k={cfg.k} exceeds node count {g.n}")
    if g.m < 1:
        raise GraphError("training needs at least one edge")

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            runs = list(pool.map(lambda r: run_restart(g, cfg, r), range(cfg.restarts)))
    else:
        runs = [run_restart(g, cfg, r) for r in range(cfg.restarts)]

    mods = np.array([r.modularity for r in runs])
    best = int(np.argmax(mods))
    logger.info("restart modularities %s; best restart %d (Q=%.4f)", np.round(mods, 4), best, mods[best])
    run = runs[best]
    return TrainResult(
        best_partition=run.partition,
        best_logits=run.logits,
        best_modularity=float(mods[best]),
        loss_trace=run.losses,
        tau_trace=run.taus,
        restart_modularities=mods,
        best_restart=best,
        config=cfg,
    )
