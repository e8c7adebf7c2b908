"""Beta-shift languages: maximal words, counting, nesting.

The entropy sources of the construction are beta-shifts: X_beta has
topological entropy log beta, so the family {X_{e^gamma}} realizes every
entropy in [b, c].  This script shows

* maximal words (including the quasi-greedy correction at the golden mean
  and the raw convention at integer beta),
* exhaustive word counts against the two-sided entropy bounds
  beta^n <= N_n <= beta/(beta-1) beta^n,
* the closed-form count oracles (Fibonacci; 2^{n+1} - 1),
* language nesting as beta grows.
"""

import math

from pressure_forge import beta_shift as bs

for beta in (1.5, "golden", 2):
    lang = bs.BetaLanguage(beta)
    print(f"beta = {beta}: maximal word {lang.maximal_word(8)}"
          f"{'  (quasi-greedy)' if lang.quasi_greedy_flag else ''}")

print("\ncounts vs the entropy bounds:")
for beta in (1.5, "golden", 2, "e"):
    lang = bs.BetaLanguage(beta)
    bf = lang.beta_float
    row = []
    for n in (4, 8, 12):
        cnt = lang.count_words(n)
        ok = bf**n <= cnt <= bf / (bf - 1) * bf**n
        row.append(f"N_{n}={cnt}{'' if ok else ' !!'}")
    print(f"  beta={beta}: " + ", ".join(row))

print("\nclosed forms: golden counts are Fibonacci, beta=2 counts 2^(n+1)-1")
golden = bs.BetaLanguage("golden")
two = bs.BetaLanguage(2)
print("  golden:", [golden.count_words(n) for n in range(1, 9)])
print("  beta=2:", [two.count_words(n) for n in range(1, 9)])

print("\nentropy estimate (1/n) log N_n -> log beta:")
for beta in (1.5, 2.5):
    lang = bs.BetaLanguage(beta)
    est = math.log(lang.count_words(14)) / 14
    print(f"  beta={beta}: {est:.6f} vs log beta = {math.log(beta):.6f}")

print("\nnesting: L_6(X_1.5) inside L_6(X_2)?", bs.nesting_check(1.5, 2, 6))
delta = bs.stabilization_delta(1.5, 6)
print(f"L_6 is constant on [1.5, 1.5 + {delta}) (right-continuity probe)")
