"""Multivalued stochastic relay circuits with exact evaluation.

A switch has N states ``0 < 1 < ... < N-1``. Series composition of two
switches yields ``min`` of their states, parallel composition yields
``max``; for two states these are the boolean `and`/`or`. A pswitch is a
switch whose state is random with a fixed distribution; deterministic
switches and named input switches complete the element set.

Circuits are immutable trees of series/parallel compositions over switch
elements, plus general two-terminal graphs whose semantics are
max-over-st-paths of min-along-path. Everything here is exact: the output
of evaluation is a vector of ``Fraction`` probabilities, and distribution
equality is componentwise rational equality.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Optional, Union

ZERO = Fraction(0)
ONE = Fraction(1)

DEFAULT_GRAPH_CAP = 20
DEFAULT_ORACLE_CAP = 1 << 20


class RelayError(Exception):
    """Base class for all errors raised by this library."""


class ValidationError(RelayError):
    """Invalid value or malformed circuit."""


class DimensionError(ValidationError):
    """Distributions of mismatched lengths were combined."""


class MissingAssignmentError(ValidationError):
    """An input switch was evaluated without a bound value."""


class UnsupportedStructureError(ValidationError):
    """Operation is undefined for this circuit structure (e.g. graph duality)."""


class InvalidMappingError(ValidationError):
    """State remapping was not strictly increasing."""


class InvalidRangeError(ValidationError):
    """Clamp range had i > j."""


class CapacityError(RelayError):
    """An enumeration cap was exceeded."""


class Distribution:
    """An exact probability distribution over states ``0..N-1``.

    Invariants: length >= 2, every entry in [0, 1], entries sum to exactly 1.
    Immutable and hashable; equality is exact componentwise equality.
    """

    __slots__ = ("probs",)

    def __init__(self, probs: Iterable[Union[Fraction, int, str]]):
        ps = tuple(Fraction(p) for p in probs)
        if len(ps) < 2:
            raise DimensionError(f"need at least 2 states, got {len(ps)}")
        if any(p < 0 or p > 1 for p in ps):
            raise ValidationError(f"probabilities outside [0, 1]: {ps}")
        if sum(ps) != 1:
            raise ValidationError(f"probabilities sum to {sum(ps)}, not 1: {ps}")
        object.__setattr__(self, "probs", ps)

    def __setattr__(self, name, value):
        raise AttributeError("Distribution is immutable")

    @classmethod
    def point(cls, state: int, states: int) -> "Distribution":
        """Point mass: the deterministic distribution of ``Det(state)``."""
        if not 0 <= state < states:
            raise ValidationError(f"state {state} out of range for N={states}")
        return cls(ONE if i == state else ZERO for i in range(states))

    @classmethod
    def shorthand(cls, p: Union[Fraction, int, str], states: int) -> "Distribution":
        """The usual shorthand: a bare ``p`` means ``(1-p, 0, ..., 0, p)``."""
        p = Fraction(p)
        probs = [ZERO] * states
        probs[0] = 1 - p
        probs[-1] += p
        return cls(probs)

    @property
    def states(self) -> int:
        return len(self.probs)

    def support(self) -> tuple[int, ...]:
        """Indices of the active (nonzero-probability) states."""
        return tuple(i for i, p in enumerate(self.probs) if p > 0)

    def reversed(self) -> "Distribution":
        """The dual distribution: state i swapped with N-1-i."""
        return Distribution(self.probs[::-1])

    def __len__(self) -> int:
        return len(self.probs)

    def __getitem__(self, i):
        return self.probs[i]

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.probs)

    def __eq__(self, other) -> bool:
        if isinstance(other, Distribution):
            return self.probs == other.probs
        if isinstance(other, tuple):
            return self.probs == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.probs)

    def __repr__(self) -> str:
        return "Distribution(%s)" % ", ".join(str(p) for p in self.probs)


# --------------------------------------------------------------------------
# Switch elements and circuit nodes
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class Pswitch:
    """A stochastic switch. Each id denotes one physical switch, sampled once."""
    dist: Distribution
    id: str


@dataclass(frozen=True)
class Det:
    """A deterministic switch fixed in one state."""
    state: int


@dataclass(frozen=True)
class Input:
    """A named deterministic switch whose state comes from an assignment.

    With ``complemented=True`` the switch takes state ``N-1-s`` when the
    assignment binds ``s``.
    """
    name: str
    complemented: bool = False


Element = Union[Pswitch, Det, Input]


@dataclass(frozen=True)
class Leaf:
    element: Element


@dataclass(frozen=True)
class Series:
    """Series composition: circuit state is the min of the children."""
    children: tuple

    def __post_init__(self):
        if len(self.children) < 2:
            raise ValidationError("series composition needs >= 2 children")


@dataclass(frozen=True)
class Parallel:
    """Parallel composition: circuit state is the max of the children."""
    children: tuple

    def __post_init__(self):
        if len(self.children) < 2:
            raise ValidationError("parallel composition needs >= 2 children")


@dataclass(frozen=True)
class Edge:
    """An undirected graph edge carrying a label, itself any circuit node."""
    u: str
    v: str
    label: "Node"


@dataclass(frozen=True)
class Graph:
    """A two-terminal network evaluated by max-over-paths of min-along-path."""
    s: str
    t: str
    edges: tuple

    def __post_init__(self):
        if self.s == self.t:
            raise ValidationError("graph terminals must differ")

    def vertices(self) -> tuple[str, ...]:
        seen: dict[str, None] = {self.s: None, self.t: None}
        for e in self.edges:
            seen.setdefault(e.u, None)
            seen.setdefault(e.v, None)
        return tuple(seen)


Node = Union[Leaf, Series, Parallel, Graph]


@dataclass(frozen=True)
class Circuit:
    """A circuit over a fixed state count N, rooted at ``root``."""
    states: int
    root: Node

    def __post_init__(self):
        if self.states < 2:
            raise ValidationError("need at least 2 states")
        validate_node(self.root, self.states)

    def pswitches(self) -> list[Pswitch]:
        return collect_pswitches(self.root)

    def input_names(self) -> set[str]:
        names: set[str] = set()
        for el in iter_elements(self.root):
            if isinstance(el, Input):
                names.add(el.name)
        return names


# Convenience constructors ---------------------------------------------------

def pswitch(dist: Union[Distribution, Iterable], pid: str) -> Leaf:
    dist = dist if isinstance(dist, Distribution) else Distribution(dist)
    return Leaf(Pswitch(dist, pid))


def det(state: int) -> Leaf:
    return Leaf(Det(state))


def inp(name: str, complemented: bool = False) -> Leaf:
    return Leaf(Input(name, complemented))


def series(*children: Node) -> Node:
    if len(children) == 1:
        return children[0]
    return Series(tuple(children))


def parallel(*children: Node) -> Node:
    if len(children) == 1:
        return children[0]
    return Parallel(tuple(children))


def opt_series(states: int, *children: Node) -> Node:
    """Series constructor that drops ``Det(N-1)`` factors (min identity)."""
    kept = [c for c in children if not (isinstance(c, Leaf) and c.element == Det(states - 1))]
    if not kept:
        return det(states - 1)
    return series(*kept)


def opt_parallel(states: int, *children: Node) -> Node:
    """Parallel constructor that drops ``Det(0)`` branches (max identity)."""
    kept = [c for c in children if not (isinstance(c, Leaf) and c.element == Det(0))]
    if not kept:
        return det(0)
    return parallel(*kept)


class IdGen:
    """Sequential pswitch id factory; keeps builds deterministic."""

    def __init__(self, prefix: str = "p"):
        self.prefix = prefix
        self.count = 0

    def __call__(self) -> str:
        pid = f"{self.prefix}{self.count}"
        self.count += 1
        return pid


# Structure walks ------------------------------------------------------------

def iter_nodes(node: Node) -> Iterator[Node]:
    yield node
    if isinstance(node, (Series, Parallel)):
        for c in node.children:
            yield from iter_nodes(c)
    elif isinstance(node, Graph):
        for e in node.edges:
            yield from iter_nodes(e.label)


def iter_elements(node: Node) -> Iterator[Element]:
    for n in iter_nodes(node):
        if isinstance(n, Leaf):
            yield n.element


def collect_pswitches(node: Node) -> list[Pswitch]:
    return [el for el in iter_elements(node) if isinstance(el, Pswitch)]


def validate_node(node: Node, states: int) -> None:
    """Check leaf/edge consistency with the state count and id uniqueness."""
    ids: set[str] = set()
    for n in iter_nodes(node):
        if isinstance(n, Leaf):
            el = n.element
            if isinstance(el, Pswitch):
                if el.dist.states != states:
                    raise DimensionError(
                        f"pswitch {el.id!r} has {el.dist.states} states, circuit has {states}")
                if el.id in ids:
                    raise ValidationError(f"duplicate pswitch id {el.id!r}")
                ids.add(el.id)
            elif isinstance(el, Det):
                if not 0 <= el.state < states:
                    raise ValidationError(f"det state {el.state} out of range for N={states}")
        elif isinstance(n, Graph):
            _check_graph_connected(n)


def _check_graph_connected(graph: Graph) -> None:
    adj: dict[str, set[str]] = {}
    for e in graph.edges:
        adj.setdefault(e.u, set()).add(e.v)
        adj.setdefault(e.v, set()).add(e.u)
    seen = {graph.s}
    frontier = [graph.s]
    while frontier:
        u = frontier.pop()
        for v in adj.get(u, ()):
            if v not in seen:
                seen.add(v)
                frontier.append(v)
    if graph.t not in seen:
        raise ValidationError("graph terminals are not connected")


def count_switches(circuit: Circuit) -> tuple[int, int, int]:
    """Leaf counts ``(pswitches, deterministic, inputs)``.

    Input switches are deterministic relays, so the middle count covers both
    ``Det`` constants and ``Input`` occurrences; the third isolates inputs.
    """
    psw = dets = inputs = 0
    for el in iter_elements(circuit.root):
        if isinstance(el, Pswitch):
            psw += 1
        elif isinstance(el, Det):
            dets += 1
        else:
            inputs += 1
    return psw, dets + inputs, inputs


# --------------------------------------------------------------------------
# Composition rules
# --------------------------------------------------------------------------

def compose_series(p: Distribution, q: Distribution) -> Distribution:
    """Distribution of ``min(X, Y)`` for independent X~p, Y~q.

    Uses the cumulative identity P(min >= k) = P(X >= k) * P(Y >= k), which
    is algebraically equal to the direct convolution over min(i, j) = k.
    """
    if len(p) != len(q):
        raise DimensionError(f"state counts differ: {len(p)} vs {len(q)}")
    n = len(p)
    # sp[k] = P(X >= k); sp[n] = 0
    sp = _suffix_sums(p)
    sq = _suffix_sums(q)
    return Distribution(sp[k] * sq[k] - sp[k + 1] * sq[k + 1] for k in range(n))


def compose_parallel(p: Distribution, q: Distribution) -> Distribution:
    """Distribution of ``max(X, Y)``: P(max <= k) = P(X <= k) * P(Y <= k)."""
    if len(p) != len(q):
        raise DimensionError(f"state counts differ: {len(p)} vs {len(q)}")
    n = len(p)
    cp = _prefix_sums(p)
    cq = _prefix_sums(q)
    out = [cp[0] * cq[0]]
    out.extend(cp[k] * cq[k] - cp[k - 1] * cq[k - 1] for k in range(1, n))
    return Distribution(out)


def _suffix_sums(p: Distribution) -> list[Fraction]:
    out = [ZERO] * (len(p) + 1)
    for k in range(len(p) - 1, -1, -1):
        out[k] = out[k + 1] + p[k]
    return out


def _prefix_sums(p: Distribution) -> list[Fraction]:
    out = []
    acc = ZERO
    for x in p:
        acc += x
        out.append(acc)
    return out


# --------------------------------------------------------------------------
# Evaluation
# --------------------------------------------------------------------------

Assignment = Mapping[str, int]


def evaluate(circuit: Circuit, assignment: Optional[Assignment] = None,
             graph_cap: int = DEFAULT_GRAPH_CAP) -> Distribution:
    """Exact output distribution of a circuit.

    Series/parallel trees are evaluated by recursive composition. Graph
    nodes are evaluated by enumerating the joint outcome of every pswitch
    they contain and taking max-over-paths of min-along-path per outcome;
    a graph with more than ``graph_cap`` pswitches raises ``CapacityError``.
    """
    assignment = assignment or {}
    return _eval_node(circuit.root, circuit.states, assignment, graph_cap)


def evaluate_oracle(circuit: Circuit, assignment: Optional[Assignment] = None,
                    max_outcomes: int = DEFAULT_ORACLE_CAP) -> Distribution:
    """Brute-force evaluator: full joint-outcome enumeration, even for trees.

    Same contract as :func:`evaluate`; kept separate so the two can check
    each other. Raises ``CapacityError`` when the product of pswitch support
    sizes exceeds ``max_outcomes``.
    """
    assignment = assignment or {}
    states = circuit.states
    switches = collect_pswitches(circuit.root)
    total = 1
    for sw in switches:
        total *= len(sw.dist.support())
        if total > max_outcomes:
            raise CapacityError(f"outcome product exceeds cap {max_outcomes}")
    probs = [ZERO] * states
    for outcome, weight in _joint_outcomes(switches):
        value = resolve(circuit.root, states, assignment, outcome)
        probs[value] += weight
    return Distribution(probs)


def _eval_node(node: Node, states: int, assignment: Assignment, cap: int) -> Distribution:
    if isinstance(node, Leaf):
        return _leaf_dist(node.element, states, assignment)
    if isinstance(node, Series):
        dists = [_eval_node(c, states, assignment, cap) for c in node.children]
        out = dists[0]
        for d in dists[1:]:
            out = compose_series(out, d)
        return out
    if isinstance(node, Parallel):
        dists = [_eval_node(c, states, assignment, cap) for c in node.children]
        out = dists[0]
        for d in dists[1:]:
            out = compose_parallel(out, d)
        return out
    if isinstance(node, Graph):
        return _eval_graph(node, states, assignment, cap)
    raise ValidationError(f"unknown node {node!r}")


def _leaf_dist(el: Element, states: int, assignment: Assignment) -> Distribution:
    if isinstance(el, Pswitch):
        return el.dist
    if isinstance(el, Det):
        return Distribution.point(el.state, states)
    return Distribution.point(_input_value(el, states, assignment), states)


def _input_value(el: Input, states: int, assignment: Assignment) -> int:
    if el.name not in assignment:
        raise MissingAssignmentError(f"input {el.name!r} is unbound")
    s = assignment[el.name]
    if not 0 <= s < states:
        raise ValidationError(f"assignment {el.name}={s} out of range for N={states}")
    return states - 1 - s if el.complemented else s


def _eval_graph(node: Graph, states: int, assignment: Assignment, cap: int) -> Distribution:
    switches = collect_pswitches(node)
    if len(switches) > cap:
        raise CapacityError(
            f"graph has {len(switches)} pswitches, enumeration cap is {cap}")
    probs = [ZERO] * states
    for outcome, weight in _joint_outcomes(switches):
        probs[_resolve_graph(node, states, assignment, outcome)] += weight
    return Distribution(probs)


def _joint_outcomes(switches: list[Pswitch]):
    """Yield (outcome map, probability) over the joint support of switches."""
    supports = [[(s, sw.dist[s]) for s in sw.dist.support()] for sw in switches]
    ids = [sw.id for sw in switches]
    for combo in itertools.product(*supports):
        weight = ONE
        outcome = {}
        for pid, (state, prob) in zip(ids, combo):
            outcome[pid] = state
            weight *= prob
        yield outcome, weight


def resolve(node: Node, states: int, assignment: Assignment,
            outcome: Mapping[str, int]) -> int:
    """Deterministic circuit state once every pswitch outcome is fixed."""
    if isinstance(node, Leaf):
        el = node.element
        if isinstance(el, Pswitch):
            return outcome[el.id]
        if isinstance(el, Det):
            return el.state
        return _input_value(el, states, assignment)
    if isinstance(node, Series):
        return min(resolve(c, states, assignment, outcome) for c in node.children)
    if isinstance(node, Parallel):
        return max(resolve(c, states, assignment, outcome) for c in node.children)
    if isinstance(node, Graph):
        return _resolve_graph(node, states, assignment, outcome)
    raise ValidationError(f"unknown node {node!r}")


def _resolve_graph(node: Graph, states: int, assignment: Assignment,
                   outcome: Mapping[str, int]) -> int:
    # max over s-t paths of min edge value == largest k with s,t connected
    # in the subgraph of edges whose value is >= k.
    values = [(e.u, e.v, resolve(e.label, states, assignment, outcome))
              for e in node.edges]
    for k in range(states - 1, 0, -1):
        adj: dict[str, list[str]] = {}
        for u, v, val in values:
            if val >= k:
                adj.setdefault(u, []).append(v)
                adj.setdefault(v, []).append(u)
        seen = {node.s}
        frontier = [node.s]
        while frontier:
            u = frontier.pop()
            for v in adj.get(u, ()):
                if v not in seen:
                    seen.add(v)
                    frontier.append(v)
        if node.t in seen:
            return k
    return 0


# --------------------------------------------------------------------------
# Circuit transforms
# --------------------------------------------------------------------------

def dual(circuit: Circuit) -> Circuit:
    """The dual circuit: series and parallel swapped, every leaf dualized.

    Leaf distributions reverse, deterministic states map to ``N-1-s`` and
    input complement flags toggle, so ``evaluate(dual(c))`` is the index
    reversal of ``evaluate(c)``. Only series-parallel trees are supported.
    """
    return Circuit(circuit.states, _dual_node(circuit.root, circuit.states))


def _dual_node(node: Node, states: int) -> Node:
    if isinstance(node, Leaf):
        el = node.element
        if isinstance(el, Pswitch):
            return Leaf(Pswitch(el.dist.reversed(), el.id))
        if isinstance(el, Det):
            return Leaf(Det(states - 1 - el.state))
        return Leaf(Input(el.name, not el.complemented))
    if isinstance(node, Series):
        return Parallel(tuple(_dual_node(c, states) for c in node.children))
    if isinstance(node, Parallel):
        return Series(tuple(_dual_node(c, states) for c in node.children))
    raise UnsupportedStructureError("duality is defined only for sp circuits")


def remap_states(dist: Distribution, mapping: Iterable[int], states: int) -> Distribution:
    """Move probabilities to mapped indices; order-preserving injections only."""
    mapping = list(mapping)
    if len(mapping) != len(dist):
        raise InvalidMappingError(
            f"mapping length {len(mapping)} != distribution length {len(dist)}")
    if any(b <= a for a, b in zip(mapping, mapping[1:])):
        raise InvalidMappingError(f"mapping not strictly increasing: {mapping}")
    if mapping and (mapping[0] < 0 or mapping[-1] >= states):
        raise InvalidMappingError(f"mapping escapes 0..{states - 1}: {mapping}")
    probs = [ZERO] * states
    for src, dst in enumerate(mapping):
        probs[dst] = dist[src]
    return Distribution(probs)


def clamp(circuit: Circuit, i: int, j: int) -> Circuit:
    """Restrict the output to ``[i, j]``: value becomes min(max(X, i), j)."""
    if i > j:
        raise InvalidRangeError(f"clamp range has i={i} > j={j}")
    if i < 0 or j >= circuit.states:
        raise ValidationError(f"clamp range [{i}, {j}] outside 0..{circuit.states - 1}")
    node = clamp_node(circuit.root, i, j, circuit.states)
    return Circuit(circuit.states, node)


def clamp_node(node: Node, i: int, j: int, states: int) -> Node:
    """Node-level clamp; identity bounds (i=0, j=N-1) add no switches."""
    if i > 0:
        node = Parallel((det(i), node))
    if j < states - 1:
        node = Series((node, det(j)))
    return node
