"""The penalty-scheduled potential and greedy pinning statistics.

phi is built so that on each product shift Z_gamma it takes exactly the
slope value s(gamma), while off the family it is dragged down by the
penalty delta_j of the largest admissible centered window:

    delta_j = (c + 2L + 14 + 9 log j) / (j min{alpha, 1}).

This script evaluates phi on generated Z_gamma windows (it pins to
s(gamma)) and on corrupted words (it collapses), then runs the greedy
pinning scan on random words and prints the exact return-time statistics
the entropy bookkeeping rests on.
"""

import random
from fractions import Fraction

from pressure_forge import beta_shift as bs
from pressure_forge import pinning as pin
from pressure_forge import product_shift as ps
from pressure_forge import sturmian as st
from pressure_forge import targets as tg
from pressure_forge.potential import PotentialSpec, phi_at

Q = Fraction

spec = PotentialSpec.one_parameter(tg.demo_target())
sched = spec.schedule
print("delta schedule:", [round(sched.delta(j), 3) for j in range(0, 7)], "... -> 0")

gamma = Q(1, 4)
gi = spec.gamma_values().index(gamma)
xw = bs.expansion_digits("exp:1/4", Q(7, 13), 129)
yw = st.generate_word(gamma, Q(1, 3), 0, 129)
window = ps.SymbolWord(list(zip(xw, yw)))
val = phi_at(spec, window, 64, "optimistic")
print(f"\nphi at the center of a Z_(1/4) window: {val:.9f} vs s(1/4) = {spec.s_value(gi)}")

corrupt = [list(sym) for sym in window.symbols]
corrupt[64] = [0, 1]
corrupt[63] = [0, 1]  # adjacent 1s in the Sturmian track kill every slope
val_bad = phi_at(spec, ps.SymbolWord(map(tuple, corrupt)), 64, "optimistic")
print(f"phi after corrupting the center: {val_bad:.3f} (penalty delta_1 = {sched.delta(1)})")

print("\ngreedy pinning of 200 random words of length 256:")
family = spec.zfamily()
rng = random.Random(0)
letters = [(x, y) for x in (0, 1) for y in (0, 1)]
records = [
    pin.greedy_pins(ps.SymbolWord([rng.choice(letters) for _ in range(256)]), family)
    for _ in range(200)
]
stats = pin.partition_stats(records)
print("  pins:", stats.pin_count, " mean return time:", float(stats.mean_return))
print("  q_hat (exact fractions):")
for j in sorted(stats.q_hat)[:6]:
    print(f"    j={j}: {stats.q_hat[j]}")
print("  identities: sum q =", sum(stats.q_hat.values()),
      "; Kac lhs =", sum(j * q for j, q in stats.q_hat.items()),
      "= total/pins =", stats.mean_return)

rec = records[0]
rng2 = random.Random(1)
word0 = ps.SymbolWord([rng2.choice(letters) for _ in range(256)])
rec0 = pin.greedy_pins(word0, family)
seg = max(rec0.segments, key=lambda s: s.length)
seg_word = ps.SymbolWord(word0.symbols[seg.start : seg.start + seg.length])
cells = pin.gamma_locate(seg_word, family)
print(f"\nlongest segment of one word: length {seg.length}, weights {seg.weights}")
print(f"  localization cell for gamma: ({cells[0][0]}, {cells[0][1]})")
