"""Render circuits as nested ascii expressions or Graphviz DOT networks.

Ascii follows the composition notation: ``(x * y)`` for series, ``(x + y)``
for parallel. Two-state pswitches print as their closed-state probability,
larger ones as the full tuple. DOT output draws the two-terminal network:
series chains junction nodes, parallel branches between shared junctions.
"""

from __future__ import annotations

from .circuits import (
    Circuit, Det, Graph, Leaf, Node, Parallel, Pswitch, Series,
    ValidationError,
)
from .rational import format_rational


def element_label(el) -> str:
    if isinstance(el, Pswitch):
        if el.dist.states == 2:
            return format_rational(el.dist[1])
        return "(%s)" % ",".join(format_rational(p) for p in el.dist)
    if isinstance(el, Det):
        return f"det({el.state})"
    return ("~" if el.complemented else "") + el.name


def ascii_render(circuit: Circuit) -> str:
    return _ascii_node(circuit.root)


def _ascii_node(node: Node) -> str:
    if isinstance(node, Leaf):
        return element_label(node.element)
    if isinstance(node, Series):
        return "(%s)" % " * ".join(_ascii_node(c) for c in node.children)
    if isinstance(node, Parallel):
        return "(%s)" % " + ".join(_ascii_node(c) for c in node.children)
    if isinstance(node, Graph):
        edges = ", ".join(f"{e.u}-{e.v}: {_ascii_node(e.label)}" for e in node.edges)
        return f"graph[{node.s}->{node.t}]{{{edges}}}"
    raise ValidationError(f"unknown node {node!r}")


def dot_render(circuit: Circuit) -> str:
    """Undirected DOT graph of the two-terminal network."""
    counter = [0]

    def fresh() -> str:
        counter[0] += 1
        return f"n{counter[0]}"

    lines: list[str] = []

    def emit(node: Node, a: str, b: str) -> None:
        if isinstance(node, Leaf):
            label = element_label(node.element).replace('"', "'")
            lines.append(f'  "{a}" -- "{b}" [label="{label}"];')
            return
        if isinstance(node, Series):
            points = [a] + [fresh() for _ in node.children[:-1]] + [b]
            for child, (u, v) in zip(node.children, zip(points, points[1:])):
                emit(child, u, v)
            return
        if isinstance(node, Parallel):
            for child in node.children:
                emit(child, a, b)
            return
        if isinstance(node, Graph):
            mapping = {node.s: a, node.t: b}
            for vertex in node.vertices():
                mapping.setdefault(vertex, fresh())
            for e in node.edges:
                emit(e.label, mapping[e.u], mapping[e.v])
            return
        raise ValidationError(f"unknown node {node!r}")

    emit(circuit.root, "s", "t")
    header = [
        "graph circuit {",
        "  rankdir=LR;",
        '  "s" [shape=point, width=0.15];',
        '  "t" [shape=point, width=0.15];',
        "  node [shape=point, width=0.08];",
    ]
    return "\n".join(header + lines + ["}"]) + "\n"
