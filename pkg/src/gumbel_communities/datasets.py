"""Benchmark networks: the embedded karate club and checked-in KONECT files."""

from __future__ import annotations

import os
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Optional

from .graph import Graph, Partition
from .io import ParsedGraph, read_graph

DATA_ENV = "GUMBEL_COMMUNITIES_DATA"

# Zachary (1977), 0-indexed; identical to KONECT ucidata-zachary.
KARATE_EDGES = (
    (0, 1), (0, 2), (0, 3), (0, 4), (0, 5), (0, 6), (0, 7), (0, 8), (0, 10),
    (0, 11), (0, 12), (0, 13), (0, 17), (0, 19), (0, 21), (0, 31), (1, 2),
    (1, 3), (1, 7), (1, 13), (1, 17), (1, 19), (1, 21), (1, 30), (2, 3),
    (2, 7), (2, 8), (2, 9), (2, 13), (2, 27), (2, 28), (2, 32), (3, 7),
    (3, 12), (3, 13), (4, 6), (4, 10), (5, 6), (5, 10), (5, 16), (6, 16),
    (8, 30), (8, 32), (8, 33), (9, 33), (13, 33), (14, 32), (14, 33),
    (15, 32), (15, 33), (18, 32), (18, 33), (19, 33), (20, 32), (20, 33),
    (22, 32), (22, 33), (23, 25), (23, 27), (23, 29), (23, 32), (23, 33),
    (24, 25), (24, 27), (24, 31), (25, 31), (26, 29), (26, 33), (27, 33),
    (28, 31), (28, 33), (29, 32), (29, 33), (30, 32), (30, 33), (31, 32),
    (31, 33), (32, 33),
)

# Two-faction split: 0 = instructor's side, 1 = administrator's side.
# Member 9 (index 8) sits with the administrator's faction here.
KARATE_FACTIONS = (
    0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 0, 0, 0, 0, 1, 1, 0,
    0, 1, 0, 1, 0, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1,
)


def builtin_karate() -> tuple[Graph, Partition]:
    """Zachary's karate club graph and its two-faction ground truth."""
    g = Graph(n=34, edges=KARATE_EDGES)
    return g, Partition(labels=KARATE_FACTIONS, k=2)


@dataclass(frozen=True)
class DatasetInfo:
    name: str
    filename: str
    title: str
    k: int
    konect: str


# k per network follows the cluster counts shown in the published figures.
DATASETS = {
    d.name: d
    for d in (
        DatasetInfo("karate", "karate.tsv", "Zachary karate club", 4, "ucidata-zachary"),
        DatasetInfo("dolphins", "dolphins.tsv", "Dolphins", 4, "dolphins"),
        DatasetInfo("lesmis", "lesmis.tsv", "Les Miserables", 7, "moreno_lesmis"),
        DatasetInfo("train_bombing", "train_bombing.tsv", "Train bombing", 4, "moreno_train"),
        DatasetInfo("highland_tribes", "highland_tribes.tsv", "Highland tribes", 3, "ucidata-gama"),
        DatasetInfo("american_revolution", "american_revolution.tsv", "American Revolution", 5, "brunson_revolution"),
        DatasetInfo("zebra", "zebra.tsv", "Zebra", 3, "moreno_zebra"),
        DatasetInfo("windsurfers", "windsurfers.tsv", "Windsurfers", 3, "moreno_beach"),
        DatasetInfo("polbooks", "polbooks.tsv", "Political books", 4, "dimacs10-polbooks"),
    )
}


def packaged_data_dir() -> Path:
    return Path(str(resources.files("gumbel_communities") / "data"))


def data_dir() -> Path:
    """Dataset directory; ``$GUMBEL_COMMUNITIES_DATA`` overrides the packaged one."""
    override = os.environ.get(DATA_ENV)
    return Path(override) if override else packaged_data_dir()


def dataset_path(name: str, directory: Optional[Path] = None) -> Path:
    if name not in DATASETS:
        raise KeyError(f"unknown dataset {name!r}; known: {', '.join(DATASETS)}")
    return Path(directory or data_dir()) / DATASETS[name].filename


def load_dataset(name: str, directory: Optional[Path] = None) -> ParsedGraph:
    return read_graph(dataset_path(name, directory))
