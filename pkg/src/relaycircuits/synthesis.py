"""Synthesis of circuits realizing target rational distributions.

All constructions are instances of one idea: view the target as blocks
tiling [0, 1], cut the interval with a ``(q, 0, ..., 0, 1-q)`` pswitch, and
recurse on the two conditional sub-distributions. The dyadic algorithm
always cuts at 1/2; state reduction cuts at 1/2 until every piece has at
most two active states; denominator reduction cuts each round at
``(q-1)/q, (q-2)/(q-1), ..., 1/2`` of the remainder, producing q equal
intervals and dividing the denominator by q.

Every synthesizer returns a :class:`SynthesisReport` whose circuit
evaluates *exactly* to the target, with the pswitch count and the
applicable worst-case bound.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Optional, Sequence, Union

from .bounds import ceil_log2, complexity_bound, rational_bound
from .circuits import (
    Circuit, Distribution, IdGen, Leaf, Node, ONE, RelayError, ZERO,
    collect_pswitches, det, opt_parallel, opt_series, pswitch,
)
from .netlist import circuit_to_json, distribution_to_json
from .rational import format_rational

HALF = Fraction(1, 2)


class InvalidCutError(RelayError):
    """Cut point outside (0, 1)."""


class InvalidTargetError(RelayError):
    """Target distribution does not fit the algorithm's denominator form."""


class InsufficientSwitchSetError(RelayError):
    """The allowed switch set lacks a required 1/k pswitch."""


@dataclass(frozen=True)
class SwitchSet:
    """The stochastic base switches synthesis may use.

    Members are the top-state probabilities p; each stands for the N-state
    pswitch ``(1-p, 0, ..., 0, p)``, and clamping with deterministic
    switches (free unless ``allow_deterministic`` is off) moves its two
    active states anywhere.
    """
    probabilities: tuple
    allow_deterministic: bool = True

    def __post_init__(self):
        for p in self.probabilities:
            if not ZERO < p < ONE:
                raise InvalidTargetError(f"switch probability {p} outside (0, 1)")

    @classmethod
    def binary(cls) -> "SwitchSet":
        return cls((HALF,))

    @classmethod
    def reciprocals(cls, q: int) -> "SwitchSet":
        """{1/2, 1/3, ..., 1/q}, the denominator-reduction switch set."""
        if q < 2:
            raise InvalidTargetError(f"need q >= 2, got {q}")
        return cls(tuple(Fraction(1, k) for k in range(2, q + 1)))

    def covers(self, q: int) -> bool:
        return all(Fraction(1, k) in self.probabilities for k in range(2, q + 1))

    def realize(self, dist: Distribution, ids: IdGen) -> Optional[Node]:
        """A Det switch or clamped member realizing ``dist``, if any matches."""
        support = dist.support()
        if len(support) == 1:
            return det(support[0]) if self.allow_deterministic else None
        if len(support) != 2:
            return None
        low, high = support
        if dist[high] in self.probabilities:
            return _clamped_base(low, high, dist[high], len(dist), ids)
        return None


@dataclass(frozen=True)
class TargetSpec:
    """A target distribution together with its denominator form q^n."""
    dist: Distribution
    base: int
    exponent: int

    def __post_init__(self):
        scale = self.base ** self.exponent
        for p in self.dist:
            if (p * scale).denominator != 1:
                raise InvalidTargetError(
                    f"{p} does not have denominator form x/{self.base}^{self.exponent}")

    @classmethod
    def from_dist(cls, dist: Distribution, base: Optional[int] = None) -> "TargetSpec":
        """Build a spec, inferring (base, exponent) from the lcm denominator.

        Without an explicit base the smallest base whose perfect power equals
        the denominator is used, maximizing the exponent.
        """
        denom = _common_denominator(dist)
        if base is None:
            base, exponent = _power_form(denom)
        else:
            if base < 2:
                raise InvalidTargetError(f"base must be >= 2, got {base}")
            exponent = 0
            power = 1
            while power % denom != 0:
                power *= base
                exponent += 1
                if exponent > 64:
                    raise InvalidTargetError(
                        f"denominator {denom} is not a divisor of any {base}^n")
        return cls(dist, base, exponent)


def _common_denominator(dist: Distribution) -> int:
    denom = 1
    for p in dist:
        denom = denom * p.denominator // gcd(denom, p.denominator)
    return denom


def _power_form(denom: int) -> tuple[int, int]:
    """Smallest q with q^n == denom for integral n; (2, 0) for denom == 1."""
    if denom == 1:
        return 2, 0
    for n in range(denom.bit_length(), 0, -1):
        q = round(denom ** (1.0 / n))
        for cand in (q - 1, q, q + 1):
            if cand >= 2 and cand ** n == denom:
                return cand, n
    raise InvalidTargetError(f"cannot express {denom} as q^n")  # pragma: no cover


@dataclass(frozen=True)
class CutRecord:
    """One block-interval cut: the cut point, its index, and both pieces."""
    cut: Fraction
    index: int
    left: Distribution
    right: Distribution

    def to_json(self) -> dict:
        return {
            "cut": format_rational(self.cut),
            "index": self.index,
            "left": distribution_to_json(self.left),
            "right": distribution_to_json(self.right),
        }


@dataclass
class SynthesisReport:
    """Output of a synthesizer: the circuit plus counts, bound, and trace."""
    target: Distribution
    circuit: Circuit
    pswitch_count: int
    bound: int
    trace: list[CutRecord]
    method: str
    base: int = 2
    exponent: int = 0
    half_pswitches: int = 0       # state reduction: count of (1/2, 1/2) switches
    leaf_pswitches: int = 0       # state reduction: two-active-state leaf switches
    rounds: int = 0               # state reduction: depth of halving rounds used

    def to_json(self) -> dict:
        out = {
            "target": distribution_to_json(self.target),
            "method": self.method,
            "base": self.base,
            "exponent": self.exponent,
            "pswitch_count": self.pswitch_count,
            "bound": self.bound,
            "trace": [r.to_json() for r in self.trace],
            "netlist": circuit_to_json(self.circuit),
        }
        if self.method == "state":
            out["half_pswitches"] = self.half_pswitches
            out["leaf_pswitches"] = self.leaf_pswitches
        return out


# --------------------------------------------------------------------------
# Block-interval cutting
# --------------------------------------------------------------------------

def block_interval_cut(p: Distribution, q: Fraction) -> tuple[Distribution, Distribution, int]:
    """Cut the block tiling of ``p`` at point ``q``.

    Returns ``(left, right, k)`` where k is the smallest index whose block
    straddles or touches the cut. The pieces satisfy the reassembly identity
    ``p = left || ((q, 0, ..., 1-q) series right)`` under evaluation.
    """
    q = Fraction(q)
    if not ZERO < q < ONE:
        raise InvalidCutError(f"cut must lie strictly inside (0, 1), got {q}")
    return _cut_pieces(p, q, _cut_index(p, q, strict=False))


def _cut_index(p: Distribution, q: Fraction, strict: bool) -> int:
    """Smallest k with prefix(k) >= q (standalone cuts) or > q (synthesis)."""
    acc = ZERO
    for k, x in enumerate(p):
        acc += x
        if acc > q or (not strict and acc == q):
            return k
    return len(p) - 1


def _cut_pieces(p: Distribution, q: Fraction,
                k: int) -> tuple[Distribution, Distribution, int]:
    n = len(p)
    before = sum(p[i] for i in range(k))
    left = [ZERO] * n
    for i in range(k):
        left[i] = p[i] / q
    left[k] = (q - before) / q
    right = [ZERO] * n
    right[k] = (before + p[k] - q) / (ONE - q)
    for i in range(k + 1, n):
        right[i] = p[i] / (ONE - q)
    return Distribution(left), Distribution(right), k


def cut_switch(q: Fraction, states: int, pid: str) -> Leaf:
    """The cut pswitch ``(q, 0, ..., 0, 1-q)``."""
    return pswitch(Distribution.shorthand(ONE - q, states), pid)


def reassemble_cut(p: Distribution, q: Fraction) -> Circuit:
    """Circuit form of the cut identity, for checking it under evaluation."""
    left, right, _ = block_interval_cut(p, q)
    ids = IdGen()
    states = len(p)
    node = opt_parallel(
        states,
        _literal_leaf(left, ids),
        opt_series(states, cut_switch(q, states, ids()), _literal_leaf(right, ids)),
    )
    return Circuit(states, node)


def _literal_leaf(dist: Distribution, ids: IdGen) -> Node:
    support = dist.support()
    if len(support) == 1:
        return det(support[0])
    return pswitch(dist, ids())


# --------------------------------------------------------------------------
# Shared building blocks
# --------------------------------------------------------------------------

def _clamped_base(low: int, high: int, inner: Fraction, states: int, ids: IdGen) -> Node:
    """One switch-set pswitch moved onto states (low, high) with Det clamps.

    ``inner`` is the probability of the upper active state; the base switch
    is ``(1-inner, 0, ..., 0, inner)`` and the clamps cost no pswitches.
    """
    node: Node = pswitch(Distribution.shorthand(inner, states), ids())
    if low > 0:
        node = opt_parallel(states, det(low), node)
    if high < states - 1:
        node = opt_series(states, node, det(high))
    return node


# --------------------------------------------------------------------------
# Binary (dyadic) N-state synthesis
# --------------------------------------------------------------------------

def synth_binary_nstate(target: Union[Distribution, TargetSpec]) -> SynthesisReport:
    """Realize a dyadic target with (1/2, 0, ..., 0, 1/2) pswitches and Dets.

    Repeatedly cuts at 1/2, choosing the smallest index whose prefix sum
    strictly exceeds 1/2. The pswitch count never exceeds the closed-form
    bound f(n, N); for three states that equals 2n - 1.
    """
    spec = target if isinstance(target, TargetSpec) else TargetSpec.from_dist(target)
    if spec.base != 2:
        raise InvalidTargetError(
            f"binary synthesis needs dyadic targets, denominator is {spec.base}^{spec.exponent}")
    dist = spec.dist
    ids = IdGen()
    trace: list[CutRecord] = []
    node, count = _realize_binary(dist, len(dist), ids, trace)
    bound = complexity_bound(spec.exponent, len(dist))
    report = SynthesisReport(dist, Circuit(len(dist), node), count, bound, trace,
                             method="binary", base=2, exponent=spec.exponent)
    assert count <= bound
    return report


def _realize_binary(p: Distribution, states: int, ids: IdGen,
                    trace: list[CutRecord]) -> tuple[Node, int]:
    node = SwitchSet.binary().realize(p, ids)
    if node is not None:
        return node, len(collect_pswitches(node))
    k = _cut_index(p, HALF, strict=True)
    left, right, _ = _cut_pieces(p, HALF, k)
    trace.append(CutRecord(HALF, k, left, right))
    sw = cut_switch(HALF, states, ids())
    lnode, lcount = _realize_binary(left, states, ids, trace)
    rnode, rcount = _realize_binary(right, states, ids, trace)
    node = opt_parallel(states, lnode, opt_series(states, sw, rnode))
    return node, 1 + lcount + rcount


# --------------------------------------------------------------------------
# State reduction: x_i / q targets into two-state leaf switches
# --------------------------------------------------------------------------

def state_reduction(target: Union[Distribution, TargetSpec]) -> SynthesisReport:
    """Cut at 1/2 until every stochastic piece has at most two active states.

    The output circuit mixes (1/2, 0, ..., 0, 1/2) pswitches (at most
    f(ceil(log2 q), N) of them) with at most N - 1 leaf pswitches that each
    carry exactly two active states of the original denominator q. Those
    leaves are left unexpanded; realizing them is the 2-state problem.
    """
    if isinstance(target, TargetSpec):
        dist, q = target.dist, target.base ** target.exponent
    else:
        dist, q = target, _common_denominator(target)
    states = len(dist)
    ids = IdGen()
    trace: list[CutRecord] = []
    node, halves, leaves, rounds = _realize_state_red(dist, states, ids, trace)
    if q < 2:
        q = 2
    half_bound = complexity_bound(ceil_log2(q), states)
    report = SynthesisReport(
        dist, Circuit(states, node), halves + leaves,
        bound=half_bound + (states - 1), trace=trace, method="state",
        base=q, exponent=1, half_pswitches=halves, leaf_pswitches=leaves,
        rounds=rounds)
    assert halves <= half_bound and leaves <= states - 1
    return report


def _realize_state_red(p: Distribution, states: int, ids: IdGen,
                       trace: list[CutRecord]) -> tuple[Node, int, int, int]:
    node = SwitchSet.binary().realize(p, ids)
    if node is not None:
        return node, len(collect_pswitches(node)), 0, 0
    if len(p.support()) == 2:
        return pswitch(p, ids()), 0, 1, 0
    k = _cut_index(p, HALF, strict=True)
    left, right, _ = _cut_pieces(p, HALF, k)
    trace.append(CutRecord(HALF, k, left, right))
    sw = cut_switch(HALF, states, ids())
    lnode, lh, ll, ld = _realize_state_red(left, states, ids, trace)
    rnode, rh, rl, rd = _realize_state_red(right, states, ids, trace)
    node = opt_parallel(states, lnode, opt_series(states, sw, rnode))
    return node, 1 + lh + rh, ll + rl, 1 + max(ld, rd)


# --------------------------------------------------------------------------
# Denominator reduction and composite denominators
# --------------------------------------------------------------------------

def denominator_reduction(target: Union[Distribution, TargetSpec],
                          base: Optional[int] = None,
                          switch_set: Optional[SwitchSet] = None) -> SynthesisReport:
    """Realize x_i / q^n targets with the switch set {1/2, 1/3, ..., 1/q}.

    Each round runs q - 1 block-interval cuts on the remainder, at
    (q-1)/q, then (q-2)/(q-1), ..., then 1/2, yielding q intervals of width
    1/q whose sub-targets have denominator q^(n-1).
    """
    if isinstance(target, TargetSpec):
        spec = target if base is None else TargetSpec.from_dist(target.dist, base)
    else:
        spec = TargetSpec.from_dist(target, base)
    q, n = spec.base, spec.exponent
    if n == 0:
        # denominator 1: point mass
        q = max(q, 2)
    if switch_set is None:
        switch_set = SwitchSet.reciprocals(q)
    elif not switch_set.covers(q):
        raise InsufficientSwitchSetError(
            f"denominator reduction at base {q} needs every 1/k, k <= {q}")
    schedule = (q,) * n
    ids = IdGen()
    trace: list[CutRecord] = []
    node, count = _realize_denom(spec.dist, len(spec.dist), schedule,
                                 switch_set, ids, trace)
    bound = rational_bound(q, n, len(spec.dist))
    report = SynthesisReport(spec.dist, Circuit(len(spec.dist), node), count, bound,
                             trace, method="denom", base=q, exponent=n)
    assert count <= bound
    return report


def composite_synthesis(target: Union[Distribution, TargetSpec],
                        base: Optional[int] = None,
                        switch_set: Optional[SwitchSet] = None) -> SynthesisReport:
    """Chain denominator reduction over the prime-power factors of q.

    For q = p1^k1 * ... * pm^km the rounds use base pm first (largest
    prime), then onward down to p1, so the switch set is
    {1/2, ..., 1/p_max}. The reported bound is the plain denominator
    reduction bound for the literal q, which the chained construction
    always satisfies.
    """
    if isinstance(target, TargetSpec):
        spec = target if base is None else TargetSpec.from_dist(target.dist, base)
    else:
        spec = TargetSpec.from_dist(target, base)
    q, n = spec.base, spec.exponent
    factors = _factorize(q) if n > 0 else {2: 1}
    schedule: list[int] = []
    for prime in sorted(factors, reverse=True):
        schedule.extend([prime] * (factors[prime] * n))
    max_base = max(factors) if n > 0 else 2
    if switch_set is None:
        switch_set = SwitchSet.reciprocals(max_base)
    elif not switch_set.covers(max_base):
        raise InsufficientSwitchSetError(
            f"factor {max_base} of {q} needs every 1/k pswitch, k <= {max_base}")
    ids = IdGen()
    trace: list[CutRecord] = []
    node, count = _realize_denom(spec.dist, len(spec.dist), tuple(schedule),
                                 switch_set, ids, trace)
    bound = rational_bound(max(q, 2), n, len(spec.dist))
    report = SynthesisReport(spec.dist, Circuit(len(spec.dist), node), count, bound,
                             trace, method="composite", base=q, exponent=n)
    assert count <= bound
    return report


def _factorize(q: int) -> dict[int, int]:
    """Prime factorization by trial division; denominators are desk-scale."""
    if q < 2:
        raise InvalidTargetError(f"base must be >= 2, got {q}")
    if q > 10 ** 6:
        raise InsufficientSwitchSetError(f"base {q} too large to factor (max 10^6)")
    factors: dict[int, int] = {}
    rest = q
    p = 2
    while p * p <= rest:
        while rest % p == 0:
            factors[p] = factors.get(p, 0) + 1
            rest //= p
        p += 1
    if rest > 1:
        factors[rest] = factors.get(rest, 0) + 1
    return factors


def _realize_denom(p: Distribution, states: int, schedule: Sequence[int],
                   switch_set: SwitchSet, ids: IdGen,
                   trace: list[CutRecord]) -> tuple[Node, int]:
    node = switch_set.realize(p, ids)
    if node is not None:
        return node, len(collect_pswitches(node))
    if not schedule:
        raise InvalidTargetError(
            f"target {p!r} not deterministic after all reduction rounds")
    b = schedule[0]
    rest = tuple(schedule[1:])
    # One round: peel intervals off the top at (j-1)/j for j = b, b-1, ..., 2.
    branches: list[tuple[Optional[Fraction], Node, int]] = []
    remainder: Optional[Distribution] = p
    for j in range(b, 1, -1):
        direct = switch_set.realize(remainder, ids)
        if direct is not None:
            branches.append((None, direct, len(collect_pswitches(direct))))
            remainder = None
            break
        cut = Fraction(j - 1, j)
        k = _cut_index(remainder, cut, strict=True)
        left, right, _ = _cut_pieces(remainder, cut, k)
        trace.append(CutRecord(cut, k, left, right))
        rnode, rcount = _realize_denom(right, states, rest, switch_set, ids, trace)
        branches.append((Fraction(1, j), rnode, rcount))
        remainder = left
    if remainder is not None:
        lnode, lcount = _realize_denom(remainder, states, rest, switch_set, ids, trace)
        branches.append((None, lnode, lcount))
    # Assemble leftmost interval first; interval j rides behind its 1/j switch.
    parts: list[Node] = []
    total = 0
    for frac, child, ccount in reversed(branches):
        total += ccount
        if frac is None:
            parts.append(child)
        else:
            total += 1
            parts.append(opt_series(states, cut_switch(ONE - frac, states, ids()), child))
    node = opt_parallel(states, *parts)
    return node, total
