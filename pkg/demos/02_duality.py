"""Duality: swap series with parallel, reverse every leaf distribution.

The dual circuit realizes the index-reversed distribution, so building one
circuit gives you its mirror for free.
"""

import random
from fractions import Fraction as F

from relaycircuits import (
    Circuit, Distribution, ascii_render, det, dual, evaluate, parallel,
    pswitch, series,
)

half3 = Distribution([F(1, 2), 0, F(1, 2)])
circuit = Circuit(3, series(parallel(pswitch(half3, "a"), det(1)), pswitch(half3, "b")))

print("circuit:", ascii_render(circuit))
print("   eval:", evaluate(circuit))
mirror = dual(circuit)
print("   dual:", ascii_render(mirror))
print("   eval:", evaluate(mirror))
assert evaluate(mirror) == evaluate(circuit).reversed()
assert dual(mirror) == circuit
print("dual(dual(c)) == c, and eval(dual(c)) is eval(c) reversed")

print()
print("spot-checking the reversal on random circuits:")
rng = random.Random(7)

from relaycircuits import IdGen  # noqa: E402


def random_circuit(rng, states, leaves):
    ids = IdGen()

    def build(k):
        if k == 1:
            denom = rng.randint(1, 6)
            cuts = sorted(rng.randint(0, denom) for _ in range(states - 1))
            parts = [b - a for a, b in zip([0] + cuts, cuts + [denom])]
            return pswitch(Distribution(F(x, denom) for x in parts), ids())
        split = rng.randint(1, k - 1)
        a, b = build(split), build(k - split)
        return series(a, b) if rng.random() < 0.5 else parallel(a, b)

    return Circuit(states, build(leaves))


for trial in range(5):
    c = random_circuit(rng, rng.randint(2, 4), rng.randint(2, 6))
    forward = evaluate(c)
    backward = evaluate(dual(c))
    assert backward == forward.reversed()
    print(f"  {forward}  <->  {backward}")
