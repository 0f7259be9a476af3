"""Synthesize circuits for dyadic targets with 1/2-pswitches only.

The algorithm views the target as blocks tiling [0, 1] and repeatedly cuts
at 1/2: one pswitch per cut, at most 2n-1 of them for three states and
f(n, N) in general. The trace below shows each cut's pieces.
"""

import itertools
from fractions import Fraction as F

from relaycircuits import (
    Distribution, ascii_render, complexity_bound, evaluate, format_rational,
    synth_binary_nstate,
)

def fmt(dist):
    return "(" + ", ".join(format_rational(p) for p in dist) + ")"


target = Distribution([F(5, 8), F(1, 4), F(1, 8)])
report = synth_binary_nstate(target)
print(f"target {fmt(target)}")
print(f"pswitches used: {report.pswitch_count}  (bound {report.bound})")
for record in report.trace:
    print(f"  cut at {record.cut} index {record.index}: "
          f"left={fmt(record.left)} right={fmt(record.right)}")
print("circuit:", ascii_render(report.circuit))
print("evaluates to:", evaluate(report.circuit))
assert evaluate(report.circuit) == target

print()
target4 = Distribution([F(1, 4), F(3, 8), F(1, 4), F(1, 8)])
report4 = synth_binary_nstate(target4)
print(f"four-state {fmt(target4)}: {report4.pswitch_count} pswitches "
      f"(bound f(3,4) = {complexity_bound(3, 4)})")
assert evaluate(report4.circuit) == target4

print()
print("exhausting all three-state targets with denominator 8:")
worst = 0
for cuts in itertools.combinations_with_replacement(range(9), 2):
    xs = (cuts[0], cuts[1] - cuts[0], 8 - cuts[1])
    t = Distribution(F(x, 8) for x in xs)
    r = synth_binary_nstate(t)
    assert evaluate(r.circuit) == t
    worst = max(worst, r.pswitch_count)
print(f"  45 targets, all exact, worst pswitch count {worst} (2n-1 = 5)")
