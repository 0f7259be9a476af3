"""Composition over a partial order, and what it cannot express.

On the diamond lattice (bottom 00, incomparable 01 and 10, top 11), series
and parallel become meet and join. Distributions concentrated on the two
incomparable middle elements are not realizable by any sp circuit unless
such a distribution is already a switch: the search below exhausts every
sp combination of the uniform switch up to four leaves and never reaches
one, while the same machinery on a chain lattice happily builds 3/4.
"""

from fractions import Fraction as F

from relaycircuits import (
    Lattice, LatticeDistribution, SearchSpec, compose_lattice,
    search_expressible,
)

diamond = Lattice.diamond()
uniform = LatticeDistribution(diamond, [F(1, 4)] * 4)

print("diamond join/meet sanity: 01 v 10 =", diamond.join("01", "10"),
      ", 01 ^ 10 =", diamond.meet("01", "10"))
meet = compose_lattice(uniform, uniform, "meet")
print("uniform ^ uniform puts", meet["00"], "on the bottom element")

print()
print("searching for antichain targets (0, 1-p, p, 0), up to 4 switches:")
for p in (F(1, 4), F(1, 2), F(3, 4)):
    target = LatticeDistribution(diamond, {"01": 1 - p, "10": p})
    result = search_expressible(
        SearchSpec(diamond, (uniform,), target, max_switches=4))
    status = "REALIZABLE" if result.realizable else "not realizable within explored space"
    print(f"  p = {p}: {status} "
          f"({result.explored_distributions} distinct distributions explored)")

print()
print("control on the two-element chain (ordinary relay algebra):")
chain = Lattice.chain(2)
half = LatticeDistribution(chain, [F(1, 2), F(1, 2)])
target = LatticeDistribution(chain, [F(1, 4), F(3, 4)])
result = search_expressible(SearchSpec(chain, (half,), target, max_switches=2))
print(f"  3/4 from {{1/2}}: found {result.expression} "
      f"with {result.switches_used} switches")
