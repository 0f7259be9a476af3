"""Switching over partially ordered states: join/meet composition and search.

On a total order, series and parallel compositions are min and max. On a
finite lattice they generalize to meet and join, and the composition rule
for distributions becomes ``result(e) = sum over x op y = e of p(x)q(y)``.

``search_expressible`` enumerates every distribution realizable by
series-parallel combination of a finite switch set up to a size budget,
deduplicating by evaluated distribution. A NOT_REALIZABLE answer is
evidence bounded by that explored space, never a proof for unbounded
circuits.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

from .circuits import CapacityError, ONE, RelayError, ZERO
from .rational import format_rational


class LatticeError(RelayError):
    """Malformed lattice: order axioms or unique bounds fail."""


class LatticeMismatchError(RelayError):
    """Distributions over different lattices were combined."""


class Lattice:
    """A finite lattice given by elements and a partial order.

    The order is supplied as covering or full pairs; the constructor takes
    the reflexive-transitive closure, checks antisymmetry, and derives the
    join and meet tables, requiring unique bounds for every pair.
    """

    def __init__(self, elements: Sequence[str], leq_pairs: Iterable[tuple]):
        self.elements = tuple(str(e) for e in elements)
        if len(set(self.elements)) != len(self.elements):
            raise LatticeError(f"duplicate elements: {self.elements}")
        index = {e: i for i, e in enumerate(self.elements)}
        n = len(self.elements)
        leq = [[False] * n for _ in range(n)]
        for i in range(n):
            leq[i][i] = True
        for a, b in leq_pairs:
            a, b = str(a), str(b)
            if a not in index or b not in index:
                raise LatticeError(f"leq pair ({a}, {b}) names unknown element")
            leq[index[a]][index[b]] = True
        # Warshall closure, then antisymmetry
        for k in range(n):
            for i in range(n):
                if leq[i][k]:
                    row_k = leq[k]
                    row_i = leq[i]
                    for j in range(n):
                        if row_k[j]:
                            row_i[j] = True
        for i in range(n):
            for j in range(i + 1, n):
                if leq[i][j] and leq[j][i]:
                    raise LatticeError(
                        f"not antisymmetric: {self.elements[i]} and {self.elements[j]}")
        self._index = index
        self._leq = leq
        self._join = self._derive(upper=True)
        self._meet = self._derive(upper=False)

    def _derive(self, upper: bool) -> list:
        n = len(self.elements)
        table = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                if upper:
                    bounds = [k for k in range(n) if self._leq[i][k] and self._leq[j][k]]
                    best = [k for k in bounds
                            if all(self._leq[k][m] for m in bounds)]
                else:
                    bounds = [k for k in range(n) if self._leq[k][i] and self._leq[k][j]]
                    best = [k for k in bounds
                            if all(self._leq[m][k] for m in bounds)]
                if len(best) != 1:
                    kind = "least upper" if upper else "greatest lower"
                    raise LatticeError(
                        f"no unique {kind} bound for "
                        f"({self.elements[i]}, {self.elements[j]})")
                table[i][j] = best[0]
        return table

    def leq(self, a: str, b: str) -> bool:
        return self._leq[self._index[a]][self._index[b]]

    def join(self, a: str, b: str) -> str:
        return self.elements[self._join[self._index[a]][self._index[b]]]

    def meet(self, a: str, b: str) -> str:
        return self.elements[self._meet[self._index[a]][self._index[b]]]

    def bottom(self) -> str:
        for e in self.elements:
            if all(self.leq(e, other) for other in self.elements):
                return e
        raise LatticeError("no bottom element")  # pragma: no cover

    def top(self) -> str:
        for e in self.elements:
            if all(self.leq(other, e) for other in self.elements):
                return e
        raise LatticeError("no top element")  # pragma: no cover

    def __eq__(self, other):
        if not isinstance(other, Lattice):
            return NotImplemented
        return self.elements == other.elements and self._leq == other._leq

    def __repr__(self):
        return f"Lattice({list(self.elements)})"

    @classmethod
    def chain(cls, states: int) -> "Lattice":
        """The total order 0 < 1 < ... < states-1."""
        elements = [str(i) for i in range(states)]
        return cls(elements, [(elements[i], elements[i + 1]) for i in range(states - 1)])

    @classmethod
    def diamond(cls) -> "Lattice":
        """Bottom 00, incomparable middles 01 and 10, top 11."""
        return cls(["00", "01", "10", "11"],
                   [("00", "01"), ("00", "10"), ("01", "11"), ("10", "11")])


class LatticeDistribution:
    """Exact distribution over lattice elements."""

    __slots__ = ("lattice", "probs")

    def __init__(self, lattice: Lattice, probs: Union[dict, Sequence]):
        if not isinstance(probs, dict):
            if len(probs) != len(lattice.elements):
                raise LatticeError(
                    f"need {len(lattice.elements)} probabilities, got {len(probs)}")
            probs = dict(zip(lattice.elements, probs))
        clean = {e: Fraction(probs.get(e, 0)) for e in lattice.elements}
        if any(p < 0 or p > 1 for p in clean.values()):
            raise LatticeError(f"probabilities outside [0, 1]: {clean}")
        if sum(clean.values()) != 1:
            raise LatticeError(f"probabilities sum to {sum(clean.values())}, not 1")
        object.__setattr__(self, "lattice", lattice)
        object.__setattr__(self, "probs", clean)

    def __setattr__(self, name, value):
        raise AttributeError("LatticeDistribution is immutable")

    @classmethod
    def point(cls, lattice: Lattice, element: str) -> "LatticeDistribution":
        return cls(lattice, {element: ONE})

    def key(self) -> tuple:
        return tuple(self.probs[e] for e in self.lattice.elements)

    def __getitem__(self, element: str) -> Fraction:
        return self.probs[element]

    def __eq__(self, other):
        if not isinstance(other, LatticeDistribution):
            return NotImplemented
        return self.lattice == other.lattice and self.probs == other.probs

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        inner = ", ".join(f"{e}: {p}" for e, p in self.probs.items())
        return f"LatticeDistribution({inner})"


def compose_lattice(p: LatticeDistribution, q: LatticeDistribution,
                    op: str) -> LatticeDistribution:
    """Distribution of ``X op Y`` for independent X~p, Y~q; op is join or meet."""
    if p.lattice != q.lattice:
        raise LatticeMismatchError("distributions live on different lattices")
    lattice = p.lattice
    if op == "join":
        combine = lattice.join
    elif op == "meet":
        combine = lattice.meet
    else:
        raise LatticeError(f"op must be 'join' or 'meet', got {op!r}")
    out = {e: ZERO for e in lattice.elements}
    for x, px in p.probs.items():
        if px == 0:
            continue
        for y, qy in q.probs.items():
            if qy == 0:
                continue
            out[combine(x, y)] += px * qy
    return LatticeDistribution(lattice, out)


# --------------------------------------------------------------------------
# Expressibility search
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class SearchSpec:
    lattice: Lattice
    switch_set: tuple
    target: LatticeDistribution
    max_switches: int = 4
    include_deterministic: bool = True
    max_explored: int = 200_000

    def __post_init__(self):
        if self.max_switches < 1:
            raise LatticeError(f"max_switches must be >= 1, got {self.max_switches}")


@dataclass
class SearchResult:
    realizable: bool
    expression: Optional[str]
    switches_used: Optional[int]
    explored_distributions: int
    max_switches: int

    def to_json(self) -> dict:
        out = {
            "realizable": self.realizable,
            "explored_distributions": self.explored_distributions,
            "max_switches": self.max_switches,
        }
        if self.realizable:
            out["expression"] = self.expression
            out["switches_used"] = self.switches_used
        else:
            out["note"] = "not realizable within explored space"
        return out


def search_expressible(spec: SearchSpec) -> SearchResult:
    """Exhaust sp combinations of the switch set up to ``max_switches`` leaves.

    Distributions are deduplicated by value: only distribution identity
    matters for further composition, so the memo set keeps the enumeration
    finite without losing realizability. The explored count (distinct
    distributions reached within the budget) makes verdicts reproducible.
    """
    lattice = spec.lattice
    base: list[tuple[LatticeDistribution, str]] = []
    for i, dist in enumerate(spec.switch_set):
        if dist.lattice != lattice:
            raise LatticeMismatchError("switch set member on a different lattice")
        base.append((dist, f"s{i}"))
    if spec.include_deterministic:
        for e in lattice.elements:
            base.append((LatticeDistribution.point(lattice, e), f"det({e})"))

    # by_size[k] = distributions first reached with exactly k leaves
    seen: dict[tuple, tuple[int, str]] = {}
    by_size: dict[int, list[LatticeDistribution]] = {k: [] for k in range(1, spec.max_switches + 1)}
    for dist, name in base:
        if dist.key() not in seen:
            seen[dist.key()] = (1, name)
            by_size[1].append(dist)

    def record(dist: LatticeDistribution, size: int, expr: str) -> None:
        if dist.key() not in seen:
            if len(seen) >= spec.max_explored:
                raise CapacityError(
                    f"search explored more than {spec.max_explored} distributions")
            seen[dist.key()] = (size, expr)
            by_size[size].append(dist)

    for size in range(2, spec.max_switches + 1):
        for lsize in range(1, size):
            rsize = size - lsize
            for p in by_size[lsize]:
                pexpr = seen[p.key()][1]
                for q in by_size[rsize]:
                    qexpr = seen[q.key()][1]
                    record(compose_lattice(p, q, "meet"), size, f"({pexpr} * {qexpr})")
                    record(compose_lattice(p, q, "join"), size, f"({pexpr} + {qexpr})")

    hit = seen.get(spec.target.key())
    if hit is None:
        return SearchResult(False, None, None, len(seen), spec.max_switches)
    return SearchResult(True, hit[1], hit[0], len(seen), spec.max_switches)


def lattice_to_json(lattice: Lattice) -> dict:
    pairs = []
    for a in lattice.elements:
        for b in lattice.elements:
            if a != b and lattice.leq(a, b):
                pairs.append([a, b])
    return {"elements": list(lattice.elements), "leq": pairs}


def lattice_from_json(data: dict) -> Lattice:
    if not isinstance(data, dict) or "elements" not in data or "leq" not in data:
        raise LatticeError("lattice file must be {\"elements\": [...], \"leq\": [[a, b], ...]}")
    return Lattice(data["elements"], [tuple(pair) for pair in data["leq"]])


def lattice_distribution_to_json(dist: LatticeDistribution) -> list[str]:
    return [format_rational(dist[e]) for e in dist.lattice.elements]
