"""Universal probability generators: deterministic bits in, distribution out.

Feed the binary encodings of the prefix sums on the input relays and the
circuit realizes exactly that dyadic distribution. The naive construction
doubles per bit; the reduced forms spend 2n pswitches (series-parallel) or
n pswitches (bridge graph) for two states.
"""

from fractions import Fraction as F

from relaycircuits import (
    Distribution, UpgInput, UpgSpec, build_upg, count_switches, encode_input,
    evaluate, format_rational, upg_truth_table,
)

def fmt(dist):
    return "(" + ", ".join(format_rational(p) for p in dist) + ")"


print("== 2-state UPG, n = 3 ==")
circuit = build_upg(UpgSpec(2, 3, "reduced_sp"))
psw, dets, _ = count_switches(circuit)
print(f"reduced sp form: {psw} pswitches, {dets} deterministic switches")
for text in ("0001", "0101", "0111", "1000"):
    row = UpgInput.from_strings(2, 3, {"r": text})
    print(f"  r = {text}  ->  {evaluate(circuit, row.assignment())}")

print()
print("construction sizes at n = 3:")
for construction in ("exponential", "reduced_sp", "bit_removed_nonsp"):
    psw, dets, _ = count_switches(build_upg(UpgSpec(2, 3, construction)))
    print(f"  {construction:18s} {psw:3d} pswitches  {dets:3d} deterministic")

print()
print("== 3-state UPG, n = 2: the full truth table ==")
spec = UpgSpec(3, 2, "reduced_sp")
for row, out in upg_truth_table(spec):
    shown = row.display()
    assert out == row.decode_target()
    print(f"  r = {shown['r']}  s = {shown['s']}  ->  {fmt(out)}")

print()
print("encode_input builds the input row for any dyadic target:")
target = Distribution([F(1, 2), F(1, 4), F(1, 4)])
row = encode_input(target, 2)
print(f"  {fmt(target)}  ->  {row.display()}")
out = evaluate(build_upg(UpgSpec(3, 2, "bit_removed_nonsp")), row.assignment())
assert out == target
print("  bridge-graph construction realizes it exactly")
