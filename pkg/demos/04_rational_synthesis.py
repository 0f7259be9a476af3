"""Rational targets: state reduction and denominator reduction.

State reduction keeps cutting at 1/2 until every stochastic piece touches
at most two states, leaving 2-state leaf pswitches plus 1/2-pswitches.
Denominator reduction instead cuts each round at (q-1)/q, (q-2)/(q-1), ...
with pswitches from {1/2, ..., 1/q}, dividing the denominator by q per
round; composite denominators chain rounds over their prime factors.
"""

from fractions import Fraction as F

from relaycircuits import (
    Distribution, ascii_render, composite_synthesis, denominator_reduction,
    evaluate, evaluate_oracle, format_rational, state_reduction,
)

def fmt(dist):
    return "(" + ", ".join(format_rational(p) for p in dist) + ")"


thirds = Distribution([F(1, 3), F(1, 3), F(1, 3)])

print("== state reduction of (1/3, 1/3, 1/3) ==")
report = state_reduction(thirds)
print("circuit:", ascii_render(report.circuit))
print(f"1/2-pswitches: {report.half_pswitches}, "
      f"two-state leaves: {report.leaf_pswitches}, rounds: {report.rounds}")
assert evaluate(report.circuit) == thirds

print()
print("== denominator reduction with the {1/2, 1/3} switch set ==")
report = denominator_reduction(thirds)
print("circuit:", ascii_render(report.circuit))
print(f"pswitches: {report.pswitch_count} (bound {report.bound})")
assert evaluate(report.circuit) == thirds

print()
print("== base 9 = 3^2 ==")
target = Distribution([F(2, 9), F(4, 9), F(3, 9)])
report = denominator_reduction(target, base=3)
print(f"target {fmt(target)}: {report.pswitch_count} pswitches "
      f"(bound {report.bound})")
assert evaluate(report.circuit) == target

print()
print("== composite denominator 6 = 2 * 3 ==")
target = Distribution([F(1, 6), F(1, 2), F(1, 3)])
report = composite_synthesis(target)
print("circuit:", ascii_render(report.circuit))
print(f"pswitches: {report.pswitch_count} (bound {report.bound})")
assert evaluate(report.circuit) == target
assert evaluate_oracle(report.circuit) == target
print("oracle agrees")
