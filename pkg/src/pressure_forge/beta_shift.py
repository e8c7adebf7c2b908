"""Beta-shift language machinery.

The beta-shift X_beta is the coding space of greedy base-beta expansions.  Its
language is controlled by a single *maximal word* w: a finite word u is
admissible iff every suffix of u is lexicographically <= the same-length
prefix of w.  Three conventions are bundled into ``BetaLanguage``:

* non-terminating expansion of 1: w is the raw digit orbit
  w_n = floor(beta * T^{n-1}(1));
* terminating expansion, beta not an integer: w is the quasi-greedy periodic
  word (raw digits with the final nonzero digit decremented), which is what
  forbids "11" in the golden-mean shift;
* integer beta: w is the raw word (beta, 0, 0, ...), keeping the point
  beta000... in X_beta.

Both corrections make L(X_beta) right-continuous in beta, which the nesting
check relies on.

Admissibility is decided by the longest-border automaton: the state after
reading a word is the length of its longest suffix that is a prefix of w.
Because w dominates all of its own shifts, that single state carries every
binding constraint, so the automaton is exact (see tests for the
digit-scan cross-check).
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from .errors import BudgetExceeded, PrecisionExhausted
from .numbers import GUARD_BITS, parse_scalar

import gmpy2

Word = Tuple[int, ...]

_DEFAULT_PRECISION = 192
_MAX_PRECISION = 1 << 14
#: snap-to-integer margin: values this many bits above working precision noise
#: are treated as exact hits rather than guard-band ambiguities
_SNAP_SLACK_BITS = 48

#: default enumeration budget (visited prefix-tree nodes)
DEFAULT_NODE_CAP = 80_000_000


class BetaLanguage:
    """Lazily extendable language oracle for one beta-shift.

    The maximal word is cached and extended on demand; extension re-runs the
    orbit from scratch whenever the required mpfr precision grows (error in
    T_beta iterates grows like beta^n).  Instances are safe for read-only
    sharing once pre-extended; extension itself is not thread-safe.
    """

    def __init__(
        self,
        beta,
        precision_bits: Optional[int] = None,
        raw_convention: bool = False,
    ):
        """``raw_convention`` keeps the undecremented digit word when the
        expansion of 1 terminates.  That language is the right-limit
        lim_{beta' -> beta+} L(X_beta') (strictly larger than the classical
        language at terminating beta) and is what the stabilization probe
        compares against."""
        self.raw_convention = raw_convention
        self._spec = parse_scalar(beta)
        if isinstance(self._spec, Fraction):
            # beta = 1 is allowed as the degenerate integer case (X_1 holds
            # the all-zero point plus the orbit of 1000...)
            if self._spec < 1:
                raise ValueError(f"beta must be >= 1, got {self._spec}")
            self.beta_float = float(self._spec)
        else:
            self.beta_float = float(self._spec)
            if self.beta_float <= 1.0:
                raise ValueError(f"beta must exceed 1, got {self.beta_float}")
        self.precision_bits = precision_bits or _DEFAULT_PRECISION
        self.floor_beta = self._floor_beta()
        #: True once the expansion of 1 terminated and the decremented
        #: periodic word is in use
        self.quasi_greedy_flag = False
        self._word: List[int] = []          # cached effective maximal word
        self._period: Optional[int] = None  # quasi-greedy period, if any
        self._raw_iter_state = None

    # -- construction helpers -------------------------------------------

    def _floor_beta(self) -> int:
        if isinstance(self._spec, Fraction):
            return int(self._spec)
        # mpfr at generous precision; beta is not within 2^-60 of an integer
        # for any of the symbolic forms we accept
        v = self._spec.to_mpfr(128)
        f = int(gmpy2.floor(v))
        if abs(v - gmpy2.mpz(f)) < gmpy2.exp2(-60) or abs(
            v - gmpy2.mpz(f + 1)
        ) < gmpy2.exp2(-60):
            raise PrecisionExhausted(
                f"beta {self._spec!r} too close to an integer to classify"
            )
        return f

    @property
    def is_integer_beta(self) -> bool:
        return isinstance(self._spec, Fraction) and self._spec.denominator == 1

    # -- maximal word ----------------------------------------------------

    def maximal_word(self, n: int) -> Word:
        """First n digits of the effective maximal word."""
        self._ensure_word(n)
        if self._period is not None:
            p = self._period
            base = self._word[:p]
            return tuple(base[i % p] for i in range(n))
        return tuple(self._word[:n])

    def word_digit(self, i: int) -> int:
        """Digit w_{i+1} (0-indexed) of the effective maximal word."""
        if self._period is not None:
            return self._word[i % self._period]
        self._ensure_word(i + 1)
        if self._period is not None:
            return self._word[i % self._period]
        return self._word[i]

    def _ensure_word(self, n: int) -> None:
        if self._period is not None or len(self._word) >= n:
            return
        if self.is_integer_beta:
            # raw word beta 0 0 0 ...; convention keeps beta000... in X_beta
            if not self._word:
                self._word = [int(self._spec)]
            self._word.extend([0] * (n - len(self._word)))
            return
        if getattr(self, "_raw_tail", False):
            self._word.extend([0] * (n - len(self._word)))
            return
        if isinstance(self._spec, Fraction):
            self._extend_rational(n)
        else:
            # amortize: mpfr extension re-runs the orbit from scratch
            self._extend_mpfr(max(n, 2 * len(self._word), 16))
        if getattr(self, "_raw_tail", False) and len(self._word) < n:
            self._word.extend([0] * (n - len(self._word)))

    def _extend_rational(self, n: int) -> None:
        """Exact Fraction orbit; termination detection is exact."""
        beta = self._spec
        x = getattr(self, "_rat_state", None)
        if x is None:
            x = Fraction(1)
            self._word = []
        digits = self._word
        while len(digits) < n:
            y = beta * x
            d = int(y)  # floor for positive y
            digits.append(d)
            x = y - d
            if x == 0:
                self._finish_terminating(digits)
                return
        self._rat_state = x

    def _extend_mpfr(self, n: int) -> None:
        prec = max(
            self.precision_bits,
            int(n * max(1.0, math.log2(self.beta_float))) + 128,
        )
        while True:
            try:
                self._run_mpfr_orbit(n, prec)
                return
            except PrecisionExhausted:
                if prec >= _MAX_PRECISION:
                    raise
                prec *= 2

    def _run_mpfr_orbit(self, n: int, prec: int) -> None:
        with gmpy2.context(precision=prec):
            beta = self._spec.to_mpfr(prec)
            guard = gmpy2.exp2(-GUARD_BITS)
            snap = gmpy2.exp2(-(prec - _SNAP_SLACK_BITS))
            digits: List[int] = []
            x = gmpy2.mpfr(1)
            for k in range(n):
                y = beta * x
                r = int(gmpy2.floor(y + gmpy2.mpfr("0.5")))
                dist = abs(y - r)
                if dist < snap:
                    # exact hit at working precision: digit r, orbit dies
                    digits.append(r)
                    self._finish_terminating(digits)
                    return
                if dist < guard:
                    raise PrecisionExhausted(
                        f"iterate {k} of T_beta within 2^-{GUARD_BITS} of an "
                        f"integer at precision {prec}"
                    )
                d = int(gmpy2.floor(y))
                digits.append(d)
                x = y - d
            self._word = digits

    def _finish_terminating(self, raw_digits: List[int]) -> None:
        """Expansion of 1 terminated: install the quasi-greedy periodic word
        (or the zero-padded raw word under the raw convention)."""
        m = len(raw_digits)
        if m == 1:
            # only integer beta terminates at step 1, handled elsewhere
            raise AssertionError("non-integer beta cannot terminate at step 1")
        if self.raw_convention:
            self._word = list(raw_digits)
            self._raw_tail = True
            return
        word = list(raw_digits)
        word[m - 1] -= 1
        self._word = word
        self._period = m
        self.quasi_greedy_flag = True

    # -- admissibility ---------------------------------------------------

    def is_admissible(self, word: Sequence[int]) -> bool:
        """Digit-scan check: every suffix <= same-length prefix of w."""
        n = len(word)
        if n == 0:
            return True
        if any(d < 0 or d > self.floor_beta for d in word):
            return False
        self._ensure_word(n)
        for start in range(n):
            for j in range(n - start):
                w = self.word_digit(j)
                d = word[start + j]
                if d < w:
                    break
                if d > w:
                    return False
        return True

    # -- longest-border automaton ----------------------------------------

    def transitions(self, n: int) -> List[List[int]]:
        """Transition table T[state][digit] for words of length <= n.

        States 0..n-1 (state = longest suffix matching a prefix of w);
        -1 marks rejection.  From state k: digit == w_{k+1} advances,
        digit < w_{k+1} resets to 0, digit > w_{k+1} rejects.
        """
        self._ensure_word(n)
        nd = self.floor_beta + 1
        table = []
        for k in range(n):
            wk = self.word_digit(k)
            row = [-1] * nd
            for d in range(nd):
                if d == wk:
                    row[d] = k + 1
                elif d < wk:
                    row[d] = 0
            table.append(row)
        return table

    def scan(self, word: Sequence[int], state: int = 0) -> int:
        """Run the automaton; returns final state or -1 on rejection."""
        fb = self.floor_beta
        for d in word:
            if d < 0 or d > fb:
                return -1
            wk = self.word_digit(state)
            if d == wk:
                state += 1
            elif d < wk:
                state = 0
            else:
                return -1
        return state

    # -- enumeration -----------------------------------------------------

    def count_words(self, n: int, node_cap: int = DEFAULT_NODE_CAP) -> int:
        """|L_n(X_beta)| by exhaustive frontier walk of the prefix tree.

        Every admissible word is visited (one frontier slot per word); the
        automaton state is the only per-word payload, so the frontier is a
        numpy uint32 array per depth.
        """
        if n < 1:
            raise ValueError("n must be >= 1")
        table = np.array(self.transitions(n), dtype=np.int16)
        frontier = np.zeros(1, dtype=np.int16)
        visited = 0
        for _ in range(n):
            succ = table[frontier]            # (F, nd) next states
            frontier = succ[succ >= 0]
            visited += frontier.size
            if visited > node_cap:
                raise BudgetExceeded(
                    f"enumeration visited more than {node_cap} nodes"
                )
        return int(frontier.size)

    def words(self, n: int, node_cap: int = DEFAULT_NODE_CAP) -> List[Word]:
        """Materialized L_n(X_beta), lexicographically sorted."""
        if n < 1:
            raise ValueError("n must be >= 1")
        self._ensure_word(n)
        out: List[Word] = []
        nd = self.floor_beta + 1
        visited = 0
        stack: List[Tuple[List[int], int]] = [([], 0)]
        while stack:
            prefix, state = stack.pop()
            if len(prefix) == n:
                out.append(tuple(prefix))
                continue
            wk = self.word_digit(state)
            # push in reverse digit order so pops are lexicographic
            for d in range(min(wk, nd - 1), -1, -1):
                visited += 1
                if visited > node_cap:
                    raise BudgetExceeded(
                        f"enumeration visited more than {node_cap} nodes"
                    )
                nxt = state + 1 if d == wk else 0
                stack.append((prefix + [d], nxt))
        out.sort()
        return out


# -- module-level operations (spec surface) -------------------------------


def maximal_word(beta, n: int, precision_bits: Optional[int] = None) -> Word:
    """First n digits of the (quasi-greedy when terminating) maximal word."""
    return BetaLanguage(beta, precision_bits).maximal_word(n)


def is_admissible(word: Sequence[int], lang: Union[BetaLanguage, object]) -> bool:
    """True iff every suffix of word is lexicographically <= the same-length
    prefix of the maximal word of lang."""
    if not isinstance(lang, BetaLanguage):
        lang = BetaLanguage(lang)
    return lang.is_admissible(word)


def count_words(
    lang: Union[BetaLanguage, object],
    n: int,
    enumerate_words: bool = False,
    node_cap: int = DEFAULT_NODE_CAP,
):
    """Exact |L_n| (and optionally the word list) by exhaustive enumeration."""
    if not isinstance(lang, BetaLanguage):
        lang = BetaLanguage(lang)
    if enumerate_words:
        ws = lang.words(n, node_cap=node_cap)
        return len(ws), ws
    return lang.count_words(n, node_cap=node_cap)


def count_oracle(lang: Union[BetaLanguage, object], n: int) -> int:
    """Independent count via the sub-prefix recurrence
    N_n = 1 + sum_j w_j N_{n-j} (N_0 = 1).  Test oracle; not the primary path.
    """
    if not isinstance(lang, BetaLanguage):
        lang = BetaLanguage(lang)
    w = lang.maximal_word(n)
    counts = [1]
    for k in range(1, n + 1):
        counts.append(1 + sum(w[j - 1] * counts[k - j] for j in range(1, k + 1)))
    return counts[n]


def nesting_check(beta, beta_prime, n: int, node_cap: int = DEFAULT_NODE_CAP) -> bool:
    """True iff L_n(X_beta) is contained in L_n(X_beta')."""
    small = BetaLanguage(beta)
    large = BetaLanguage(beta_prime)
    if float(small.beta_float) > float(large.beta_float):
        raise ValueError("nesting_check expects beta <= beta_prime")
    for word in small.words(n, node_cap=node_cap):
        if large.scan(word) < 0:
            return False
    return True


def language_equal(beta, beta_prime, n: int) -> bool:
    """Set equality of the length-n languages."""
    a = BetaLanguage(beta).words(n)
    b = BetaLanguage(beta_prime).words(n)
    return a == b


def stabilization_delta(beta, n: int, max_halvings: int = 40) -> float:
    """A delta > 0 with L_n(X_{beta'}) constant for beta' in (beta, beta+delta],
    equal to the right-limit language of beta, found by halving.

    The right-limit language is the raw-convention language of beta: at
    non-terminating beta it coincides with L_n(X_beta); at terminating beta
    (golden mean) the classical quasi-greedy language is a proper subset
    ("11" belongs to every X_beta' with beta' above the golden mean), so
    equality is asserted against the raw convention.
    """
    base = BetaLanguage(beta, raw_convention=True)
    base_words = base.words(n)
    delta = 1.0
    for _ in range(max_halvings):
        cand = BetaLanguage(Fraction(base.beta_float) + Fraction(delta))
        if cand.words(n) == base_words:
            return delta
        delta /= 2
    raise PrecisionExhausted(
        f"no stabilization interval found above beta={beta!r} within "
        f"{max_halvings} halvings"
    )


def expansion_digits(beta, seed: Fraction, n: int, precision_bits: int = 256) -> Word:
    """Digits of the beta-expansion of seed in [0,1): r_k = floor(beta T^{k-1} r).

    Used as a generator of admissible words (the expansion-generated oracle).
    """
    spec = parse_scalar(beta)
    if isinstance(spec, Fraction):
        x = Fraction(seed)
        digits = []
        for _ in range(n):
            y = spec * x
            d = int(y)
            digits.append(d)
            x = y - d
        return tuple(digits)
    prec = max(precision_bits, int(n * max(1.0, math.log2(float(spec)))) + 128)
    with gmpy2.context(precision=prec):
        b = spec.to_mpfr(prec)
        guard = gmpy2.exp2(-GUARD_BITS)
        x = gmpy2.mpfr(Fraction(seed).numerator) / Fraction(seed).denominator
        digits = []
        for k in range(n):
            y = b * x
            r = int(gmpy2.floor(y + gmpy2.mpfr("0.5")))
            if abs(y - r) < guard:
                raise PrecisionExhausted(
                    f"expansion digit {k} within guard band at precision {prec}"
                )
            d = int(gmpy2.floor(y))
            digits.append(d)
            x = y - d
        return tuple(digits)
