"""Graphviz DOT output for clustered graphs. Layout is left to Graphviz."""

from __future__ import annotations

from .graph import Graph, Partition, check_partition

PALETTE = (
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
)


def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_dot(g: Graph, p: Partition, name: str = "G") -> str:
    """Undirected DOT text with one fill colour per cluster label.

    Nodes are written in ascending order and edges lexicographically, so the
    output is byte-for-byte reproducible. Colours cycle when there are more
    labels than palette entries.
    """
    check_partition(g, p)
    lines = [f"graph {_quote(name)} {{", "  node [style=filled];"]
    for i, lab in enumerate(p.labels):
        color = PALETTE[int(lab) % len(PALETTE)]
        attrs = f"fillcolor={_quote(color)}"
        if g.names is not None:
            attrs = f"label={_quote(g.names[i])}, " + attrs
        lines.append(f"  {i} [{attrs}];")
    for u, v in g.edges:
        lines.append(f"  {u} -- {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"
