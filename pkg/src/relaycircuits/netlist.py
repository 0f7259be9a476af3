"""Netlist serialization: circuits as JSON documents.

Top level is ``{"states": N, "circuit": node}``. A node is one of::

    {"op": "pswitch", "dist": ["1/2", "0", "1/2"], "id": "p1"}
    {"op": "det", "state": 1}
    {"op": "input", "name": "r0", "complemented": false}
    {"op": "series", "children": [...]}
    {"op": "parallel", "children": [...]}
    {"op": "graph", "terminals": ["s", "t"],
     "edges": [{"from": "s", "to": "a", "element": node}, ...]}

Rationals serialize as lowest-term ``"a/b"`` strings, integers as ``"a"``.
Serialization is canonical: parse -> serialize -> parse is the identity and
identical circuits produce byte-identical documents.
"""

from __future__ import annotations

import json
from typing import Union

from .circuits import (
    Circuit, Det, Distribution, Edge, Graph, Input, Leaf, Node, Parallel,
    Pswitch, Series, ValidationError,
)
from .rational import format_rational, parse_rational


def distribution_to_json(dist: Distribution) -> list[str]:
    return [format_rational(p) for p in dist]


def distribution_from_json(data: list) -> Distribution:
    return Distribution(parse_rational(str(p)) for p in data)


def node_to_json(node: Node) -> dict:
    if isinstance(node, Leaf):
        el = node.element
        if isinstance(el, Pswitch):
            return {"op": "pswitch", "dist": distribution_to_json(el.dist), "id": el.id}
        if isinstance(el, Det):
            return {"op": "det", "state": el.state}
        return {"op": "input", "name": el.name, "complemented": el.complemented}
    if isinstance(node, Series):
        return {"op": "series", "children": [node_to_json(c) for c in node.children]}
    if isinstance(node, Parallel):
        return {"op": "parallel", "children": [node_to_json(c) for c in node.children]}
    if isinstance(node, Graph):
        return {
            "op": "graph",
            "terminals": [node.s, node.t],
            "edges": [{"from": e.u, "to": e.v, "element": node_to_json(e.label)}
                      for e in node.edges],
        }
    raise ValidationError(f"unknown node {node!r}")


def node_from_json(data: dict) -> Node:
    if not isinstance(data, dict) or "op" not in data:
        raise ValidationError(f"malformed netlist node: {data!r}")
    op = data["op"]
    try:
        if op == "pswitch":
            return Leaf(Pswitch(distribution_from_json(data["dist"]), str(data["id"])))
        if op == "det":
            return Leaf(Det(int(data["state"])))
        if op == "input":
            return Leaf(Input(str(data["name"]), bool(data.get("complemented", False))))
        if op == "series":
            return Series(tuple(node_from_json(c) for c in data["children"]))
        if op == "parallel":
            return Parallel(tuple(node_from_json(c) for c in data["children"]))
        if op == "graph":
            s, t = data["terminals"]
            edges = tuple(Edge(str(e["from"]), str(e["to"]), node_from_json(e["element"]))
                          for e in data["edges"])
            return Graph(str(s), str(t), edges)
    except KeyError as exc:
        raise ValidationError(f"netlist node missing field {exc} in {data!r}") from exc
    raise ValidationError(f"unknown netlist op {op!r}")


def circuit_to_json(circuit: Circuit) -> dict:
    return {"states": circuit.states, "circuit": node_to_json(circuit.root)}


def circuit_from_json(data: dict) -> Circuit:
    if not isinstance(data, dict) or "states" not in data or "circuit" not in data:
        raise ValidationError("netlist must be {\"states\": N, \"circuit\": node}")
    return Circuit(int(data["states"]), node_from_json(data["circuit"]))


def dumps(circuit: Circuit) -> str:
    return json.dumps(circuit_to_json(circuit), indent=2)


def loads(text: Union[str, bytes]) -> Circuit:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"invalid JSON: {exc}") from exc
    return circuit_from_json(data)


def save(circuit: Circuit, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(circuit))
        fh.write("\n")


def load(path) -> Circuit:
    with open(path, "r", encoding="utf-8") as fh:
        return loads(fh.read())
