"""Error propagation through circuits built from noisy base switches.

A base pswitch with two active states may come out biased: the low active
state gains some signed error and the high active state loses it, so
``(1/2, 0, ..., 0, 1/2)`` becomes ``(1/2 + e, 0, ..., 0, 1/2 - e)`` with
``|e| <= epsilon``. Deterministic switches carry no error.

Because every pswitch instance appears once, each output probability is
multilinear in the per-switch errors, so the worst deviation over the error
box is attained at a sign corner; ``worst_case_error`` searches corners
exactly. ``check_bounds`` compares the observed per-state deviations to the
linear bounds: boundary states within 2*eps and interior within 3*eps for
the dyadic construction, q*eps and (q+1)*eps for base-q circuits.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

from .circuits import (
    CapacityError, Circuit, Distribution, Graph, Leaf, Node, Parallel,
    Pswitch, RelayError, Series, ValidationError, ZERO, evaluate,
)
from .rational import format_rational

DEFAULT_CORNER_CAP = 16


class InvalidPerturbationError(RelayError):
    """A perturbation pushed some probability outside [0, 1]."""


@dataclass(frozen=True)
class PerturbationModel:
    """Signed per-switch errors, each bounded by epsilon in magnitude."""
    epsilon: Fraction
    assignments: dict[str, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        if self.epsilon < 0:
            raise InvalidPerturbationError(f"epsilon must be >= 0, got {self.epsilon}")
        for pid, e in self.assignments.items():
            if abs(e) > self.epsilon:
                raise InvalidPerturbationError(
                    f"|error| for {pid!r} is {abs(e)} > epsilon {self.epsilon}")


@dataclass
class ErrorReport:
    """Per-state worst deviations from the nominal output distribution."""
    epsilon: Fraction
    nominal: Distribution
    per_state_max_error: tuple[Fraction, ...]
    worst_assignment: PerturbationModel
    exhaustive: bool
    bound_boundary: Optional[Fraction] = None
    bound_interior: Optional[Fraction] = None

    def max_error(self) -> Fraction:
        return max(self.per_state_max_error)

    def to_json(self) -> dict:
        out = {
            "epsilon": format_rational(self.epsilon),
            "nominal": [format_rational(p) for p in self.nominal],
            "per_state_max_error": [format_rational(e) for e in self.per_state_max_error],
            "worst_assignment": {pid: format_rational(e)
                                 for pid, e in sorted(self.worst_assignment.assignments.items())},
            "exhaustive": self.exhaustive,
        }
        if self.bound_boundary is not None:
            out["bound_boundary"] = format_rational(self.bound_boundary)
            out["bound_interior"] = format_rational(self.bound_interior)
        return out


@dataclass
class BoundVerdict:
    family: str
    base: int
    bound_boundary: Fraction
    bound_interior: Fraction
    passed: bool
    failing_states: tuple[int, ...]

    def to_json(self) -> dict:
        return {
            "family": self.family if self.family == "binary" else f"denom:{self.base}",
            "bound_boundary": format_rational(self.bound_boundary),
            "bound_interior": format_rational(self.bound_interior),
            "bounds_hold": self.passed,
            "failing_states": list(self.failing_states),
        }


def perturb(circuit: Circuit, model: PerturbationModel) -> Circuit:
    """Apply the model's error to each referenced pswitch leaf.

    Every perturbed switch must have exactly two active states; the low one
    gains the signed error and the high one loses it.
    """
    known = {sw.id for sw in circuit.pswitches()}
    missing = set(model.assignments) - known
    if missing:
        raise ValidationError(f"model names unknown pswitch ids: {sorted(missing)}")
    return Circuit(circuit.states, _perturb_node(circuit.root, model.assignments))


def perturb_dist(dist: Distribution, error: Fraction) -> Distribution:
    support = dist.support()
    if len(support) != 2:
        raise InvalidPerturbationError(
            f"perturbation needs exactly 2 active states, got {dist!r}")
    low, high = support
    probs = list(dist)
    probs[low] += error
    probs[high] -= error
    if probs[low] < 0 or probs[low] > 1 or probs[high] < 0 or probs[high] > 1:
        raise InvalidPerturbationError(
            f"error {error} drives {dist!r} outside [0, 1]")
    return Distribution(probs)


def _perturb_node(node: Node, errors: dict[str, Fraction]) -> Node:
    if isinstance(node, Leaf):
        el = node.element
        if isinstance(el, Pswitch) and el.id in errors and errors[el.id] != 0:
            return Leaf(Pswitch(perturb_dist(el.dist, errors[el.id]), el.id))
        return node
    if isinstance(node, Series):
        return Series(tuple(_perturb_node(c, errors) for c in node.children))
    if isinstance(node, Parallel):
        return Parallel(tuple(_perturb_node(c, errors) for c in node.children))
    if isinstance(node, Graph):
        return Graph(node.s, node.t,
                     tuple(e.__class__(e.u, e.v, _perturb_node(e.label, errors))
                           for e in node.edges))
    raise ValidationError(f"unknown node {node!r}")


def worst_case_error(circuit: Circuit, epsilon: Union[Fraction, str, int],
                     mode: str = "corners", trials: int = 200,
                     corner_cap: int = DEFAULT_CORNER_CAP,
                     seed: int = 0) -> ErrorReport:
    """Largest per-state deviation over the error box, exactly or sampled.

    ``corners`` mode evaluates all sign patterns in {-eps, +eps}^m, which is
    exact by multilinearity but capped at ``corner_cap`` switches.
    ``sampled`` mode draws ``trials`` assignments from a rational grid plus
    random corners; its report is flagged non-exhaustive.
    """
    epsilon = Fraction(epsilon)
    if epsilon < 0:
        raise InvalidPerturbationError(f"epsilon must be >= 0, got {epsilon}")
    ids = [sw.id for sw in circuit.pswitches()]
    nominal = evaluate(circuit)
    if mode == "corners":
        if len(ids) > corner_cap:
            raise CapacityError(
                f"{len(ids)} pswitches exceed corner cap {corner_cap}; use sampled mode")
        candidates = _corner_assignments(ids, epsilon)
        exhaustive = True
    elif mode == "sampled":
        candidates = _sampled_assignments(ids, epsilon, trials, seed)
        exhaustive = False
    else:
        raise ValidationError(f"unknown mode {mode!r}")

    best = [ZERO] * circuit.states
    worst: dict[str, Fraction] = {pid: ZERO for pid in ids}
    worst_mag = Fraction(-1)
    for assignment in candidates:
        model = PerturbationModel(epsilon, assignment)
        out = evaluate(perturb(circuit, model))
        mag = ZERO
        for i in range(circuit.states):
            err = abs(out[i] - nominal[i])
            if err > best[i]:
                best[i] = err
            if err > mag:
                mag = err
        if mag > worst_mag:
            worst_mag = mag
            worst = assignment
    return ErrorReport(epsilon, nominal, tuple(best),
                       PerturbationModel(epsilon, worst), exhaustive)


def _corner_assignments(ids: list[str], epsilon: Fraction):
    for signs in itertools.product((-1, 1), repeat=len(ids)):
        yield {pid: s * epsilon for pid, s in zip(ids, signs)}


def _sampled_assignments(ids: list[str], epsilon: Fraction, trials: int, seed: int):
    rng = random.Random(seed)
    grid = 8
    if ids:
        yield {pid: -epsilon for pid in ids}
        yield {pid: epsilon for pid in ids}
    else:
        yield {}
    for _ in range(trials):
        if rng.random() < Fraction(1, 2):
            yield {pid: rng.choice((-1, 1)) * epsilon for pid in ids}
        else:
            yield {pid: Fraction(rng.randint(-grid, grid), grid) * epsilon for pid in ids}


def check_bounds(report: ErrorReport, family: str, q: int = 2) -> BoundVerdict:
    """Verdict on the linear error bounds for the given circuit family.

    ``binary``: boundary states within 2*eps, interior within 3*eps.
    ``denom``: boundary within q*eps, interior within (q+1)*eps.
    """
    if family == "binary":
        q = 2
        boundary, interior = 2 * report.epsilon, 3 * report.epsilon
    elif family == "denom":
        if q < 2:
            raise ValidationError(f"denominator family needs q >= 2, got {q}")
        boundary, interior = q * report.epsilon, (q + 1) * report.epsilon
    else:
        raise ValidationError(f"unknown family {family!r}")
    n = len(report.per_state_max_error)
    failing = tuple(
        i for i, err in enumerate(report.per_state_max_error)
        if err > (boundary if i in (0, n - 1) else interior))
    report.bound_boundary = boundary
    report.bound_interior = interior
    return BoundVerdict(family, q, boundary, interior, not failing, failing)
