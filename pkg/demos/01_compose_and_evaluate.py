"""Build small relay circuits and evaluate them exactly.

Series composition takes the min of switch states, parallel the max. For
two states these are boolean and/or; a 1/2-pswitch in parallel with
another realizes 3/4, and chaining compositions walks through 3/8 and
11/16. Everything is exact rational arithmetic.
"""

from fractions import Fraction as F

from relaycircuits import (
    Circuit, Distribution, Edge, Graph, IdGen, ascii_render, det, evaluate,
    evaluate_oracle, parallel, pswitch, series,
)

half = Distribution([F(1, 2), F(1, 2)])
ids = IdGen()

print("== two-state chain ==")
stage = pswitch(half, ids())
print(f"{ascii_render(Circuit(2, stage)):40s} -> {evaluate(Circuit(2, stage))}")
stage = parallel(stage, pswitch(half, ids()))
print(f"{ascii_render(Circuit(2, stage)):40s} -> {evaluate(Circuit(2, stage))}")
stage = series(stage, pswitch(half, ids()))
print(f"{ascii_render(Circuit(2, stage)):40s} -> {evaluate(Circuit(2, stage))}")
stage = parallel(stage, pswitch(half, ids()))
chain = Circuit(2, stage)
print(f"{ascii_render(chain):40s} -> {evaluate(chain)}")

print()
print("== three states ==")
half3 = Distribution([F(1, 2), 0, F(1, 2)])
top = Circuit(3, parallel(pswitch(half3, "a"), det(1)))
print(f"{ascii_render(top):40s} -> {evaluate(top)}")
bottom = Circuit(3, series(parallel(pswitch(half3, "b"), det(1)), pswitch(half3, "c")))
print(f"{ascii_render(bottom):40s} -> {evaluate(bottom)}")

print()
print("== a non-sp bridge, evaluated by path enumeration ==")
ids = IdGen()
edges = tuple(Edge(u, v, pswitch(half, ids()))
              for u, v in [("s", "a"), ("s", "b"), ("a", "b"), ("a", "t"), ("b", "t")])
bridge = Circuit(2, Graph("s", "t", edges))
print("wheatstone bridge of five 1/2 switches ->", evaluate(bridge))

print()
print("== the brute-force oracle agrees everywhere ==")
for name, circuit in [("chain", chain), ("bottom", bottom), ("bridge", bridge)]:
    assert evaluate_oracle(circuit) == evaluate(circuit)
    print(f"oracle({name}) == evaluate({name})")
