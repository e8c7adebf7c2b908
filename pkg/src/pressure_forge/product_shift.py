"""The product alphabet, the Z_gamma family, and centered admissibility windows.

Z_gamma is the product of a beta-shift with one Sturmian factor per gamma
component:

    one-parameter form   Z_gamma = X_{e^gamma}  x  Y_gamma
    full form            Z_gamma = X_{e^gamma0} x Y_gamma0 x ... x Y_gammam

A word over the product alphabet is Z_gamma-admissible iff its x projection
is beta-admissible for beta = e^{gamma0} and every Sturmian projection
passes the slope's membership test.  The centered window statistic

    j_gamma(word, i) = max{ l : word[i-(l-1) .. i+(l-1)] admissible }

drives the potential's penalty schedule; windows are grown incrementally
(the beta factor with a two-ended suffix-match scan, the Sturmian factors
with a running span of W_i - i*gamma) so a full j scan is linear in the
window, not quadratic.

Sturmian components are exact whenever the slope is rational, which covers
every grid the pipeline builds.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from . import sturmian
from .beta_shift import BetaLanguage
from .numbers import exp_of, parse_scalar

Symbol = Tuple[int, ...]
Letters = Tuple[Symbol, ...]


@dataclass(frozen=True)
class ProductAlphabet:
    """Component ranges of the product alphabet.

    ``m`` counts the extra Sturmian components beyond the slope factor:
    the one-parameter form has components (x, y0) and m = 0.
    """

    m: int
    x_max: int
    y0_range: Tuple[int, int]
    yk_range: Optional[Tuple[int, int]] = None

    @classmethod
    def one_parameter(cls, b: float, c: float) -> "ProductAlphabet":
        return cls(
            m=0,
            x_max=math.floor(math.exp(c)),
            y0_range=(math.floor(b), math.ceil(c)),
        )

    @classmethod
    def full_form(cls, m: int, b: float, c: float, L: float) -> "ProductAlphabet":
        return cls(
            m=m,
            x_max=math.floor(math.exp(c)),
            y0_range=(math.floor(b), math.ceil(c)),
            yk_range=(math.floor(-L), math.ceil(L)),
        )

    @property
    def components(self) -> int:
        return 2 + self.m

    def ranges(self) -> List[Tuple[int, int]]:
        out = [(0, self.x_max), self.y0_range]
        out.extend([self.yk_range] * self.m)
        return out

    def size(self) -> int:
        n = 1
        for lo, hi in self.ranges():
            n *= hi - lo + 1
        return n

    def symbols(self) -> Iterator[Symbol]:
        axes = [range(lo, hi + 1) for lo, hi in self.ranges()]
        return (tuple(s) for s in itertools.product(*axes))

    def is_valid_symbol(self, sym: Sequence[int]) -> bool:
        if len(sym) != self.components:
            return False
        return all(lo <= v <= hi for v, (lo, hi) in zip(sym, self.ranges()))


@dataclass(frozen=True)
class GammaVector:
    """Parameters of one Z_gamma: the intercept gamma0 plus the slope
    components gamma_1..gamma_m (empty in the one-parameter form)."""

    gamma0: Fraction
    rest: Tuple[Fraction, ...] = ()

    @classmethod
    def of(cls, gamma0, rest=()) -> "GammaVector":
        g0 = parse_scalar(gamma0)
        if not isinstance(g0, Fraction):
            raise TypeError("GammaVector components must be rational")
        rr = []
        for g in rest:
            gg = parse_scalar(g)
            if not isinstance(gg, Fraction):
                raise TypeError("GammaVector components must be rational")
            rr.append(gg)
        return cls(g0, tuple(rr))

    @property
    def m(self) -> int:
        return len(self.rest)

    def component(self, k: int) -> Fraction:
        """Sturmian slope of component k (k = 0 is the gamma0 factor)."""
        return self.gamma0 if k == 0 else self.rest[k - 1]

    def as_floats(self) -> Tuple[float, ...]:
        return (float(self.gamma0),) + tuple(float(g) for g in self.rest)


class SymbolWord:
    """A finite word of product symbols with component projections."""

    __slots__ = ("symbols",)

    def __init__(self, symbols: Iterable[Sequence[int]]):
        self.symbols = tuple(tuple(s) for s in symbols)

    def __len__(self) -> int:
        return len(self.symbols)

    def __getitem__(self, i):
        return self.symbols[i]

    def __iter__(self):
        return iter(self.symbols)

    def __eq__(self, other) -> bool:
        return isinstance(other, SymbolWord) and self.symbols == other.symbols

    def __hash__(self) -> int:
        return hash(self.symbols)

    def __repr__(self) -> str:
        return "SymbolWord(%s)" % ",".join(
            "(" + " ".join(map(str, s)) + ")" for s in self.symbols
        )

    def pi_x(self) -> Tuple[int, ...]:
        return tuple(s[0] for s in self.symbols)

    def pi(self, k: int) -> Tuple[int, ...]:
        """Sturmian projection k = 0..m."""
        return tuple(s[k + 1] for s in self.symbols)

    def window(self, center: int, half_length: int) -> "SymbolWord":
        lo = center - (half_length - 1)
        hi = center + (half_length - 1)
        return SymbolWord(self.symbols[lo : hi + 1])


def _coerce_word(word) -> SymbolWord:
    return word if isinstance(word, SymbolWord) else SymbolWord(word)


def _coerce_gamma(gamma) -> GammaVector:
    if isinstance(gamma, GammaVector):
        return gamma
    if isinstance(gamma, (tuple, list)):
        return GammaVector.of(gamma[0], gamma[1:])
    return GammaVector.of(gamma)


class ZGamma:
    """Membership and counting oracle for a single Z_gamma."""

    def __init__(self, gamma, precision_bits: Optional[int] = None):
        self.gamma = _coerce_gamma(gamma)
        g0 = self.gamma.gamma0
        if g0 < 0:
            raise ValueError("gamma0 must be >= 0 (it is an entropy)")
        self.beta_lang = BetaLanguage(
            Fraction(1) if g0 == 0 else exp_of(g0), precision_bits
        )
        self.slopes = (g0,) + self.gamma.rest

    # -- membership -------------------------------------------------------

    def word_in(self, word) -> bool:
        w = _coerce_word(word)
        if len(w) == 0:
            return True
        if self.beta_lang.scan(w.pi_x()) < 0:
            return False
        for k, slope in enumerate(self.slopes):
            if not sturmian.is_sturmian_word(w.pi(k), slope):
                return False
        return True

    # -- counting (component product) --------------------------------------

    def count_words(self, n: int) -> int:
        total = self.beta_lang.count_words(n)
        for slope in self.slopes:
            total *= len(sturmian.factor_set(slope, n))
        return total

    def words(self, n: int) -> List[SymbolWord]:
        xs = self.beta_lang.words(n)
        per_component = [sorted(sturmian.factor_set(s, n)) for s in self.slopes]
        out = []
        for combo in itertools.product(xs, *per_component):
            syms = tuple(zip(*combo))
            out.append(SymbolWord(syms))
        return out


def z_membership(word, gamma, precision_bits: Optional[int] = None) -> bool:
    """True iff the x projection is beta-admissible for beta = e^{gamma0}
    and every Sturmian projection is admissible for its slope."""
    return ZGamma(gamma, precision_bits).word_in(word)


class _CenteredScan:
    """Incremental centered-window admissibility for one Z_gamma.

    Feeds window half-lengths l = 1, 2, ... and reports the first failure.
    The beta factor keeps the set of suffix positions still matching a
    prefix of the maximal word (two-ended extension); each Sturmian factor
    keeps the running span of q*W_i - i*p over the window.
    """

    def __init__(self, zg: ZGamma, word: SymbolWord, center: int):
        self.zg = zg
        self.word = word
        self.center = center
        self.dead = False
        n = len(word)
        # global prefix weights per Sturmian component
        self._weights = []
        for k in range(len(zg.slopes)):
            ys = word.pi(k)
            acc = [0]
            for y in ys:
                acc.append(acc[-1] + y)
            self._weights.append(acc)
        self._span_lo: List[int] = []
        self._span_hi: List[int] = []
        self._pq: List[Tuple[int, int]] = [
            (s.numerator, s.denominator) for s in zg.slopes
        ]
        self._actives: List[int] = []   # suffix start positions matching w*
        self._left = center
        self._right = center - 1        # window empty before first step

    def _sturm_value(self, k: int, i: int) -> int:
        p, q = self._pq[k]
        return q * self._weights[k][i] - i * p

    def _add_sturm_index(self, k: int, i: int) -> None:
        v = self._sturm_value(k, i)
        if v < self._span_lo[k]:
            self._span_lo[k] = v
        if v > self._span_hi[k]:
            self._span_hi[k] = v

    def _sturm_ok(self, k: int) -> bool:
        return self._span_hi[k] - self._span_lo[k] < self._pq[k][1]

    def _beta_extend_right(self, pos: int) -> bool:
        """Append word.x[pos]; False on admissibility failure."""
        digit = self.word[pos][0]
        wd = self.zg.beta_lang.word_digit
        keep = []
        for start in self._actives:
            expect = wd(pos - start)
            if digit > expect:
                return False
            if digit == expect:
                keep.append(start)
        if digit > wd(0):
            return False
        if digit == wd(0):
            keep.append(pos)
        self._actives = keep
        return True

    def _beta_extend_left(self, pos: int) -> bool:
        """Prepend word.x[pos]; the new suffix is the whole window."""
        wd = self.zg.beta_lang.word_digit
        digit = self.word[pos][0]
        first = wd(0)
        if digit > first:
            return False
        if digit < first:
            return True
        # equal so far: scan until mismatch
        j = 1
        for q in range(pos + 1, self._right + 1):
            d = self.word[q][0]
            w = wd(j)
            if d < w:
                return True
            if d > w:
                return False
            j += 1
        self._actives.append(pos)
        return True

    def grow(self) -> bool:
        """Extend to the next half-length; True iff the window stays
        admissible and fits inside the word."""
        if self.dead:
            return False
        if self._right < self.center:
            # l = 1: single letter
            i = self.center
            if not 0 <= i < len(self.word):
                raise IndexError("center outside the word")
            self._left = self._right = i
            for k in range(len(self.zg.slopes)):
                self._span_lo.append(min(self._sturm_value(k, i), self._sturm_value(k, i + 1)))
                self._span_hi.append(max(self._sturm_value(k, i), self._sturm_value(k, i + 1)))
            ok = self._beta_extend_right(i)
            ok = ok and all(self._sturm_ok(k) for k in range(len(self.zg.slopes)))
            self.dead = not ok
            return ok
        new_left = self._left - 1
        new_right = self._right + 1
        if new_left < 0 or new_right >= len(self.word):
            return False  # capped by the word edge; caller distinguishes
        ok = self._beta_extend_right(new_right)
        if ok:
            self._right = new_right
            ok = self._beta_extend_left(new_left)
            self._left = new_left
        else:
            self._right = new_right
            self._left = new_left
        if ok:
            for k in range(len(self.zg.slopes)):
                self._add_sturm_index(k, new_right + 1)
                self._add_sturm_index(k, new_left)
                if not self._sturm_ok(k):
                    ok = False
        self.dead = not ok
        return ok


def j_window(word, center: int, gamma, zg: Optional[ZGamma] = None) -> Tuple[int, bool]:
    """Largest half-length l whose centered window fits the word and is
    Z_gamma-admissible, plus whether the limit was the word edge.

    j = 0 with capped=False when even the center letter is inadmissible.
    """
    w = _coerce_word(word)
    n = len(w)
    if not 0 <= center < n:
        raise IndexError(f"center {center} outside word of length {n}")
    if zg is None:
        zg = ZGamma(gamma)
    cap = min(center, n - 1 - center) + 1
    scan = _CenteredScan(zg, w, center)
    j = 0
    for l in range(1, cap + 1):
        if not scan.grow():
            return j, False
        j = l
    return j, True


class DecoratedZ:
    """Z_gamma x D_gamma with D_gamma = k fixed points.

    The decoration letter must be constant across an admissible word, so
    word counts multiply by exactly k and no entropy is added.
    """

    def __init__(self, zg: ZGamma, k: int):
        if k < 1:
            raise ValueError("need at least one fixed point")
        self.zg = zg
        self.k = k

    def word_in(self, word, decoration: Sequence[int]) -> bool:
        deco = tuple(decoration)
        if len(deco) != len(_coerce_word(word)):
            raise ValueError("decoration length mismatch")
        if any(not 0 <= d < self.k for d in deco):
            return False
        if len(set(deco)) > 1:
            return False
        return self.zg.word_in(word)

    def count_words(self, n: int) -> int:
        return self.k * self.zg.count_words(n)


def decorate(gamma, k_fixed_points: int) -> DecoratedZ:
    """Decorated language oracle for Z_gamma x {k fixed points}."""
    return DecoratedZ(ZGamma(gamma), k_fixed_points)


# -- grid family (one-parameter pipeline) -----------------------------------


class ZFamily:
    """The union family {Z_gamma : gamma in grid} for a one-parameter grid.

    Grid slopes must share a common denominator for the exact integer span
    test; 1/64 grids do.  Provides the per-window queries the pressure
    engine needs (minimal admissible beta index, Sturmian grid interval)
    and the left-to-right union scanner used by pinning.
    """

    def __init__(self, gammas: Sequence[Fraction], precision_bits: Optional[int] = None):
        gs = [Fraction(g) for g in gammas]
        if sorted(gs) != gs or len(set(gs)) != len(gs):
            raise ValueError("grid must be strictly increasing")
        if any(g < 0 for g in gs):
            raise ValueError("grid slopes must be >= 0")
        self.gammas = gs
        self.size = len(gs)
        self.zgammas = [ZGamma(GammaVector(g), precision_bits) for g in gs]
        self._den = math.lcm(*[g.denominator for g in gs]) if gs else 1
        self._nums = [int(g * self._den) for g in gs]
        self._x_cache: Dict[Tuple[int, ...], int] = {}
        self._y_cache: Dict[Tuple[int, ...], Tuple[int, int]] = {}

    # -- per-window queries ------------------------------------------------

    def x_min_index(self, xwin: Tuple[int, ...]) -> int:
        """Smallest grid index admitting the x window (self.size if none).

        Admissibility is monotone in beta (nesting), so binary search.
        """
        cached = self._x_cache.get(xwin)
        if cached is not None:
            return cached
        lo, hi = 0, self.size
        while lo < hi:
            mid = (lo + hi) // 2
            if self.zgammas[mid].beta_lang.scan(xwin) >= 0:
                hi = mid
            else:
                lo = mid + 1
        self._x_cache[xwin] = lo
        return lo

    def y_interval(self, ywin: Tuple[int, ...]) -> Tuple[int, int]:
        """Contiguous grid index range [lo, hi] admitting the y window
        (lo > hi when empty).  The real admitting-slope set is an interval,
        so contiguity on the grid is structural, not luck."""
        cached = self._y_cache.get(ywin)
        if cached is not None:
            return cached
        den = self._den
        weights = [0]
        for y in ywin:
            weights.append(weights[-1] + y)
        n = len(ywin)
        lo_idx, hi_idx = self.size, -1
        for g in range(self.size):
            p = self._nums[g]
            vmin = 0
            vmax = 0
            for i in range(1, n + 1):
                v = den * weights[i] - i * p
                if v < vmin:
                    vmin = v
                elif v > vmax:
                    vmax = v
            if vmax - vmin < den:
                if g < lo_idx:
                    lo_idx = g
                hi_idx = g
            elif hi_idx >= 0:
                break  # interval ended
        result = (lo_idx, hi_idx)
        self._y_cache[ywin] = result
        return result

    def word_in_union(self, word) -> bool:
        """Membership of a product word in L(Z) = union of the family."""
        w = _coerce_word(word)
        if len(w) == 0:
            return True
        ylo, yhi = self.y_interval(w.pi(0))
        if ylo > yhi:
            return False
        xmin = self.x_min_index(w.pi_x())
        return xmin <= yhi

    def indices_admitting(self, word) -> range:
        w = _coerce_word(word)
        ylo, yhi = self.y_interval(w.pi(0))
        xmin = self.x_min_index(w.pi_x())
        return range(max(ylo, xmin), yhi + 1)

    # -- left-to-right union scanner (pinning) -------------------------------

    def open_scanner(self) -> "UnionScanner":
        return UnionScanner(self)


class UnionScanner:
    """Feeds letters left to right; reports when the word so far leaves
    L(Z) = union over the grid.  O(grid) work per letter."""

    def __init__(self, family: ZFamily):
        self.family = family
        den = family._den
        self._den = den
        self._nums = family._nums
        self._states = [0] * family.size        # beta automaton states
        self._x_alive = [True] * family.size
        self._vmin = [0] * family.size
        self._vmax = [0] * family.size
        self._len = 0
        self._weight = 0
        self.alive = family.size > 0

    def feed(self, sym: Sequence[int]) -> bool:
        """Extend by one product letter; returns whether still in L(Z)."""
        x = sym[0]
        y = sym[1]
        self._len += 1
        self._weight += y
        i = self._len
        den = self._den
        alive_any = False
        for g in range(self.family.size):
            if self._x_alive[g]:
                lang = self.family.zgammas[g].beta_lang
                st = self._states[g]
                wk = lang.word_digit(st)
                if x == wk:
                    self._states[g] = st + 1
                elif x < wk:
                    self._states[g] = 0
                else:
                    self._x_alive[g] = False
            v = den * self._weight - i * self._nums[g]
            if v < self._vmin[g]:
                self._vmin[g] = v
            elif v > self._vmax[g]:
                self._vmax[g] = v
            if (
                self._x_alive[g]
                and self._vmax[g] - self._vmin[g] < den
            ):
                alive_any = True
        self.alive = alive_any
        return alive_any
