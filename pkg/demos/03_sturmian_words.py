"""Sturmian words: cutting sequences, membership witnesses, weight counts.

The zero-entropy separator of the construction is the Sturmian family: the
slope-gamma coding y_i = floor((i+1)gamma + a) - floor(i gamma + a).  Key
facts exercised below:

* any length-n word has weight floor(n gamma) or ceil(n gamma), which is
  what separates Z_gamma from Z_gamma' in the potential's window test;
* membership reduces to a half-open interval of admissible intercepts;
* over ALL slopes there are at most j(j+1) words of length j and weight n
  (the lattice two-contact parameterization).
"""

from fractions import Fraction

from pressure_forge import sturmian as st

Q = Fraction

print("cutting sequence of slope 1.58 (the two-letter alphabet {1, 2}):")
print(" ", st.generate_word(1.58, 0, 0, 12))

print("\ncutting sequence of slope 5/17, intercept 3/11:")
word = st.generate_word(Q(5, 17), Q(3, 11), 0, 17)
print(" ", word, "weight", sum(word), "(17 * 5/17 = 5)")

print("\nmembership witnesses for slope 1/2:")
for w in [(0, 1), (1, 1), (0, 1, 0, 1)]:
    verdict = st.is_sturmian_word(w, Q(1, 2))
    print(f"  {w}: {'yes' if verdict else 'no '}"
          + (f", intercepts [{verdict.a_lo}, {verdict.a_hi})" if verdict else ""))

print("\nall Sturmian words of length 4 by weight (any slope):")
for n in range(0, 5):
    words = sorted(st.enumerate_by_weight(4, n))
    print(f"  weight {n}: {len(words)} words <= {4 * 5} cap: {words}")

print("\nfactor complexity of an irrational slope is n + 1:")
for n in (3, 6, 10):
    print(f"  slope sqrt(1/2): {len(st.factor_set('sqrt:1/2', n))} factors of length {n}")
