"""Sturmian word generation, membership, and enumeration by weight.

A word y_0...y_{n-1} is Sturmian for slope gamma iff some intercept a gives
y_i = floor((i+1)gamma + a) - floor(i gamma + a).  Writing W_i for the
partial weights (W_0 = 0), that system has a solution iff the values
W_i - i*gamma, i = 0..n, all fit inside a half-open unit interval:

    max_i (W_i - i*gamma) - min_i (W_i - i*gamma) < 1.

The span test is what every membership path here uses; it is exact integer
arithmetic whenever gamma is rational (floats are exact binary rationals) and
guarded extended-precision otherwise.

Enumeration of all Sturmian words of a given length and weight over *all*
slopes walks candidate lines through pairs of lattice contacts inside the
weight parallelogram; each candidate line is read off with its slope
perturbed by -epsilon about the pivot, which fixes the half-open tie-breaks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Set, Tuple

import gmpy2

from .errors import PrecisionExhausted
from .numbers import GUARD_BITS, parse_scalar

Word = Tuple[int, ...]

_IRRATIONAL_PRECISION = 192


@dataclass(frozen=True)
class SturmianWitness:
    """Membership verdict plus the admissible-intercept interval [a_lo, a_hi).

    The interval is the full solution set within [0, 1); empty iff the word
    is not Sturmian for the slope.  Endpoints are Fractions on the exact
    path, floats otherwise.
    """

    ok: bool
    a_lo: object
    a_hi: object

    def __bool__(self) -> bool:
        return self.ok


def _floor_exact(x: Fraction) -> int:
    return x.numerator // x.denominator


def _floor_mpfr(x, guard) -> int:
    f = gmpy2.floor(x)
    if x - f < guard or (f + 1) - x < guard:
        raise PrecisionExhausted(
            "floor argument within the guard band of an integer"
        )
    return int(f)


def generate_word(gamma, a, i_start: int, n: int) -> Word:
    """y_i = floor((i+1)gamma + a) - floor(i gamma + a), i = i_start..i_start+n-1."""
    g = parse_scalar(gamma)
    if isinstance(g, Fraction):
        av = Fraction(a) if not isinstance(a, Fraction) else a
        if not 0 <= av < 1:
            raise ValueError("intercept a must lie in [0,1)")
        vals = [
            _floor_exact(Fraction(i) * g + av)
            for i in range(i_start, i_start + n + 1)
        ]
        return tuple(vals[i + 1] - vals[i] for i in range(n))
    with gmpy2.context(precision=_IRRATIONAL_PRECISION):
        gv = g.to_mpfr(_IRRATIONAL_PRECISION)
        av = gmpy2.mpfr(Fraction(a).numerator) / Fraction(a).denominator
        guard = gmpy2.exp2(-GUARD_BITS)
        vals = [
            _floor_mpfr(i * gv + av, guard)
            for i in range(i_start, i_start + n + 1)
        ]
        return tuple(vals[i + 1] - vals[i] for i in range(n))


def point_window(gamma, a, form: str, i_range: Tuple[int, int]) -> Word:
    """Finite window of a point of Y_gamma in floor or ceiling form.

    floor form needs a in [0,1); ceiling form needs a in (0,1].  i_range is
    half-open [lo, hi).
    """
    if form not in ("floor", "ceiling"):
        raise ValueError("form must be 'floor' or 'ceiling'")
    lo, hi = i_range
    g = parse_scalar(gamma)
    af = Fraction(a) if not isinstance(a, Fraction) else a
    if form == "floor" and not 0 <= af < 1:
        raise ValueError("floor form needs a in [0,1)")
    if form == "ceiling" and not 0 < af <= 1:
        raise ValueError("ceiling form needs a in (0,1]")
    if isinstance(g, Fraction):
        if form == "floor":
            vals = [_floor_exact(Fraction(i) * g + af) for i in range(lo, hi + 1)]
        else:
            vals = [-_floor_exact(-(Fraction(i) * g + af)) for i in range(lo, hi + 1)]
        return tuple(vals[i + 1] - vals[i] for i in range(hi - lo))
    with gmpy2.context(precision=_IRRATIONAL_PRECISION):
        gv = g.to_mpfr(_IRRATIONAL_PRECISION)
        av = gmpy2.mpfr(af.numerator) / af.denominator
        guard = gmpy2.exp2(-GUARD_BITS)
        if form == "floor":
            vals = [_floor_mpfr(i * gv + av, guard) for i in range(lo, hi + 1)]
        else:
            vals = [-_floor_mpfr(-(i * gv + av), guard) for i in range(lo, hi + 1)]
        return tuple(vals[i + 1] - vals[i] for i in range(hi - lo))


def is_sturmian_word(word: Sequence[int], gamma) -> SturmianWitness:
    """Membership of word in L(Y_gamma) with the witness intercept interval."""
    g = parse_scalar(gamma)
    n = len(word)
    if n == 0:
        return SturmianWitness(True, Fraction(0), Fraction(1))
    lo_letter = math.floor(float(g)) if not isinstance(g, Fraction) else _floor_exact(g)
    alphabet = {lo_letter, lo_letter + (0 if _is_integer(g) else 1)}
    if any(y not in alphabet for y in word):
        return SturmianWitness(False, Fraction(0), Fraction(0))
    weights = [0]
    for y in word:
        weights.append(weights[-1] + y)
    if isinstance(g, Fraction):
        vals = [Fraction(weights[i]) - i * g for i in range(n + 1)]
        lo = max(vals)          # a >= W_i - i*gamma for all i
        hi = min(vals) + 1      # a < W_i - i*gamma + 1
        ok = lo < hi
        return SturmianWitness(ok, lo if ok else Fraction(0), hi if ok else Fraction(0))
    with gmpy2.context(precision=_IRRATIONAL_PRECISION):
        gv = g.to_mpfr(_IRRATIONAL_PRECISION)
        guard = gmpy2.exp2(-GUARD_BITS)
        vals = [weights[i] - i * gv for i in range(n + 1)]
        lo = max(vals)
        hi = min(vals) + 1
        if abs(hi - lo) < guard:
            raise PrecisionExhausted(
                "membership interval degenerate within the guard band"
            )
        ok = lo < hi
        return SturmianWitness(ok, float(lo), float(hi))


def _is_integer(g) -> bool:
    if isinstance(g, Fraction):
        return g.denominator == 1
    return False


def factor_set(gamma, n: int) -> Set[Word]:
    """All length-n words of L(Y_gamma), by sweeping intercept cells.

    The word as a function of a changes only when some i*gamma + a crosses an
    integer, so one representative per cell of [0,1) suffices.  Exact for
    rational gamma; cells for irrational gamma are separated by ~1/n^2 and
    handled at extended precision.
    """
    g = parse_scalar(gamma)
    if isinstance(g, Fraction):
        crit = sorted({(Fraction(-i) * g) % 1 for i in range(n + 1)})
        # the word is constant on each cell [c, next) (floors are
        # right-continuous in a), so the left endpoints enumerate everything
        return {generate_word(g, c, 0, n) for c in crit}
    with gmpy2.context(precision=_IRRATIONAL_PRECISION):
        gv = g.to_mpfr(_IRRATIONAL_PRECISION)
        crit = sorted(set(float(gmpy2.mpfr(-i) * gv % 1) for i in range(n + 1)))
        out = set()
        for idx, c in enumerate(crit):
            nxt = crit[idx + 1] if idx + 1 < len(crit) else 1.0
            # interior points dodge the exact lattice contacts the guard
            # band would reject
            mid = Fraction((c + nxt) / 2)
            out.add(generate_word(g, mid, 0, n))
        return out


def enumerate_by_weight(j: int, n: int) -> Set[Word]:
    """All Sturmian words of length j and weight n, over all slopes.

    Candidate pivots are lattice points in the closed parallelogram
    y - (n/j)x in [0,1], x in 0..j; for each ordered (pivot, second column)
    pair the connecting line is read with slope perturbed by -epsilon about
    the pivot.  Deduplicated; the two-contact argument caps the result at j(j+1).
    """
    if j < 1:
        raise ValueError("j must be >= 1")
    out: Set[Word] = set()

    def lattice_choices(col: int) -> Tuple[int, ...]:
        num = n * col
        if num % j == 0:
            base = num // j
            return (base, base + 1)
        return (-((-num) // j),)  # ceil(n*col/j)

    for i in range(j + 1):
        for k in lattice_choices(i):
            for i2 in range(j + 1):
                if i2 == i:
                    continue
                for k2 in lattice_choices(i2):
                    word = _read_line_word(j, i, k, i2, k2)
                    if sum(word) == n:
                        out.add(word)
    return out


def _read_line_word(j: int, i: int, k: int, i2: int, k2: int) -> Word:
    """Word of the line through (i,k),(i2,k2) with slope nudged by -epsilon
    about the pivot (i,k); floors evaluated in exact integer arithmetic with
    the epsilon carried symbolically."""
    di = i2 - i
    dk = k2 - k
    # line value at integer x: k + dk*(x-i)/di, epsilon coefficient -(x-i)
    den = di
    vals = []
    for x in range(j + 1):
        num = k * den + dk * (x - i)
        if den < 0:
            num, d = -num, -den
        else:
            d = den
        c = x - i           # value = num/d - eps*c
        if c > 0:
            if num % d == 0:
                f = num // d - 1
            else:
                f = num // d
        else:
            f = num // d
        vals.append(f)
    word = tuple(vals[x + 1] - vals[x] for x in range(j))
    return word


def weight_bound(j: int) -> int:
    """Crude combinatorial cap on words of fixed length and weight."""
    return j * (j + 1)
