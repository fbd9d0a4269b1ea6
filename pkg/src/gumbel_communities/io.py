"""Reading and writing graphs and partitions.

KONECT ``out.*`` files are whitespace-separated ``u v [weight [timestamp]]``
lines with 1-indexed node ids and ``%`` comment lines. Plain edge lists are
``u v`` lines with either indexing. Both parsers binarize the graph, drop
self-loops and repeated edges, and compact node ids to ``0..n-1`` in order
of first appearance.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .graph import Graph, Partition


class ParseError(ValueError):
    def __init__(self, message, lineno=None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


class EmptyInputError(ParseError):
    pass


@dataclass
class ParseStats:
    duplicates: int = 0
    self_loops: int = 0


@dataclass
class ParsedGraph:
    graph: Graph
    stats: ParseStats
    original_ids: list[int]


def _parse_pairs(text: str, offset: int, comment_chars: str):
    pairs = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line[0] in comment_chars:
            continue
        fields = line.split()
        if len(fields) < 2:
            raise ParseError(f"expected at least two node ids, got {raw!r}", lineno)
        try:
            u, v = int(fields[0]) - offset, int(fields[1]) - offset
        except ValueError:
            raise ParseError(f"node ids must be integers, got {raw!r}", lineno) from None
        if u < 0 or v < 0:
            raise ParseError(f"negative node id after index shift in {raw!r}", lineno)
        pairs.append((u, v))
    if not pairs:
        raise EmptyInputError("no data lines found")
    return pairs


def _build(pairs) -> ParsedGraph:
    index: dict[int, int] = {}
    stats = ParseStats()
    edges = set()
    for u, v in pairs:
        a = index.setdefault(u, len(index))
        b = index.setdefault(v, len(index))
        if a == b:
            stats.self_loops += 1
            continue
        key = (min(a, b), max(a, b))
        if key in edges:
            stats.duplicates += 1
            continue
        edges.add(key)
    graph = Graph(n=len(index), edges=tuple(sorted(edges)))
    return ParsedGraph(graph, stats, list(index))


def parse_konect_full(text: str) -> ParsedGraph:
    return _build(_parse_pairs(text, 1, "%"))


def parse_konect(text: str) -> Graph:
    """Parse KONECT TSV text into a binarized undirected graph."""
    return parse_konect_full(text).graph


def parse_edge_list_full(text: str, one_indexed: bool = False) -> ParsedGraph:
    return _build(_parse_pairs(text, 1 if one_indexed else 0, "#%"))


def parse_edge_list(text: str, one_indexed: bool = False) -> Graph:
    return parse_edge_list_full(text, one_indexed).graph


def format_edge_list(g: Graph, one_indexed: bool = False) -> str:
    shift = 1 if one_indexed else 0
    return "".join(f"{u + shift} {v + shift}\n" for u, v in g.edges)


def read_graph(path) -> ParsedGraph:
    """Load a KONECT file (``out.*``, ``.tsv``) or a zero-indexed ``.edges`` list."""
    path = Path(path)
    text = path.read_text()
    if path.suffix in (".edges", ".edgelist"):
        return parse_edge_list_full(text, one_indexed=False)
    return parse_konect_full(text)


def write_partition_csv(p: Partition) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["node_id", "label"])
    for i, lab in enumerate(p.labels):
        writer.writerow([i, int(lab)])
    return buf.getvalue()


def read_partition_csv(text: str) -> Partition:
    reader = csv.reader(io.StringIO(text))
    header = next(reader, None)
    if header is None or [h.strip() for h in header] != ["node_id", "label"]:
        raise ParseError("partition CSV must start with header 'node_id,label'", 1)
    rows = {}
    for lineno, row in enumerate(reader, 2):
        if not row:
            continue
        try:
            node, lab = int(row[0]), int(row[1])
        except (ValueError, IndexError):
            raise ParseError(f"bad partition row {row!r}", lineno) from None
        if node in rows:
            raise ParseError(f"node {node} listed twice", lineno)
        rows[node] = lab
    if sorted(rows) != list(range(len(rows))):
        raise ParseError("node ids must cover 0..n-1")
    labels = np.array([rows[i] for i in range(len(rows))], dtype=int)
    if labels.size and labels.min() < 0:
        raise ParseError("labels must be non-negative")
    return Partition.from_labels(labels)
