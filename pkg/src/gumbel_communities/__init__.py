"""Community detection by Gumbel-softmax relaxation of cluster assignments."""

from .baselines import BaselineConfig, greedy_modularity, label_propagation, louvain
from .datasets import builtin_karate, load_dataset
from .dot import export_dot
from .graph import Graph, GraphError, Partition, adjacency_matrix
from .gumbel import (
    cluster_strength,
    gumbel_softmax_rows,
    hard_assignment,
    loss_gradient,
    loss_identity,
    row_softmax,
    sample_gumbel,
)
from .io import parse_edge_list, parse_konect
from .metrics import MetricReport, ari, contingency, evaluate, homogeneity_completeness_vmeasure, modularity, nmi
from .train import TrainConfig, TrainResult, train

__version__ = "0.1.0"
