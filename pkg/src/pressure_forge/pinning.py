"""Greedy pinning sequences and empirical return-time statistics.

A pinning sequence marks a greedy split of a word into maximal factors
lying in L(Z) = union of the Z_gamma over the grid: scanning left to right
from a pin at p, the next pin is the smallest q > p with word[p..q] not in
L(Z).  The record keeps, per segment, its length and the weight vector of
its Sturmian components; the trailing (unterminated) segment is included,
which is exactly what makes Kac's identity an exact counting fact on
finite words.

Empirical q_j / r_{j,n} frequencies are kept as Fractions so the three
identities (total mass 1, refinement consistency, Kac) hold exactly, not
within float noise.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

from .errors import EmptyInput, NotInZ
from .product_shift import SymbolWord, ZFamily, _coerce_word


@dataclass(frozen=True)
class Segment:
    start: int
    length: int
    weights: Tuple[int, ...]  # per Sturmian component, y^0 first


@dataclass
class PinRecord:
    """Pins plus per-segment stats for one scanned word."""

    pins: List[int]
    segments: List[Segment]
    word_length: int

    @property
    def return_times(self) -> List[int]:
        return [s.length for s in self.segments]


def _segment_weights(word: SymbolWord, start: int, end: int) -> Tuple[int, ...]:
    comps = len(word[0]) - 1
    out = []
    for k in range(comps):
        out.append(sum(word[i][k + 1] for i in range(start, end)))
    return tuple(out)


def greedy_pins(word, z_oracle: Union[ZFamily, Callable]) -> PinRecord:
    """Left-to-right greedy pinning of a finite word.

    ``z_oracle`` is a ZFamily (fast incremental path) or any callable
    mapping a symbol tuple to membership in L(Z).
    """
    w = _coerce_word(word)
    n = len(w)
    if n == 0:
        raise EmptyInput("cannot pin an empty word")
    pins = [0]
    if isinstance(z_oracle, ZFamily):
        scanner = z_oracle.open_scanner()
        start = 0
        i = 0
        while i < n:
            if scanner.feed(w[i]):
                i += 1
                continue
            if i == start:
                raise NotInZ(
                    f"single letter {w[i]} outside L(Z); the grid does not "
                    "cover the alphabet"
                )
            pins.append(i)
            start = i
            scanner = z_oracle.open_scanner()
        segments = _close_segments(w, pins, n)
        return PinRecord(pins, segments, n)
    # generic oracle: quadratic rescan
    start = 0
    i = 1
    while i <= n:
        if not z_oracle(w.symbols[start:i]):
            step = i - 1
            if step == start:
                raise NotInZ(f"single letter {w[step]} outside L(Z)")
            pins.append(step)
            start = step
            continue
        i += 1
    segments = _close_segments(w, pins, n)
    return PinRecord(pins, segments, n)


def _close_segments(w: SymbolWord, pins: List[int], n: int) -> List[Segment]:
    segments = []
    for idx, p in enumerate(pins):
        end = pins[idx + 1] if idx + 1 < len(pins) else n
        segments.append(Segment(p, end - p, _segment_weights(w, p, end)))
    return segments


@dataclass
class PartitionStats:
    """Empirical return-time and weight-refined frequencies (exact)."""

    q_hat: Dict[int, Fraction]
    r_hat: Dict[Tuple[int, Tuple[int, ...]], Fraction]
    pin_count: int
    total_length: int

    @property
    def mean_return(self) -> Fraction:
        return Fraction(self.total_length, self.pin_count)


def partition_stats(records: Sequence[PinRecord]) -> PartitionStats:
    """Normalized q_hat/r_hat over all segments of all records.

    Identities (held exactly): sum_j q_j = 1; sum_n r_{j,n} = q_j;
    sum_j j q_j = total length / pin count (Kac).
    """
    records = list(records)
    if not records:
        raise EmptyInput("no pin records")
    q_counts: Dict[int, int] = {}
    r_counts: Dict[Tuple[int, Tuple[int, ...]], int] = {}
    pins = 0
    total = 0
    for rec in records:
        pins += len(rec.pins)
        total += rec.word_length
        for seg in rec.segments:
            q_counts[seg.length] = q_counts.get(seg.length, 0) + 1
            key = (seg.length, seg.weights)
            r_counts[key] = r_counts.get(key, 0) + 1
    q_hat = {j: Fraction(cnt, pins) for j, cnt in q_counts.items()}
    r_hat = {key: Fraction(cnt, pins) for key, cnt in r_counts.items()}
    return PartitionStats(q_hat, r_hat, pins, total)


def gamma_locate(
    segment_word,
    family: Optional[ZFamily] = None,
) -> List[Tuple[Fraction, Fraction]]:
    """Per-component localization cells ((n_k - 1)/j, (n_k + 1)/j).

    Any Z_gamma admitting the segment must have each slope inside its cell;
    with a family at hand, that inclusion is asserted for the slope factor
    and NotInZ is raised when no grid gamma admits the segment at all.
    """
    w = _coerce_word(segment_word)
    j = len(w)
    if j == 0:
        raise EmptyInput("empty segment")
    comps = len(w[0]) - 1
    cells = []
    for k in range(comps):
        nk = sum(sym[k + 1] for sym in w)
        cells.append((Fraction(nk - 1, j), Fraction(nk + 1, j)))
    if family is not None:
        admitting = family.indices_admitting(w)
        if len(admitting) == 0:
            raise NotInZ("segment admitted by no grid gamma")
        lo, hi = cells[0]
        assert any(
            lo < family.gammas[g] < hi for g in admitting
        ), "no admitting grid gamma inside the localization cell"
    return cells


def replay_omega_conditions(
    word,
    record: PinRecord,
    family: ZFamily,
    nonadjacent_samples: Sequence[Tuple[int, int]] = (),
) -> bool:
    """Verbatim re-check of the pinning-space conditions on one record.

    (1) every inter-pin factor (including the trailing one) is in L(Z);
    (2) factors spanning consecutive pins are not; extra (i, j) pin-index
    pairs can be supplied to spot-check the non-adjacent spans that
    factor-closure already implies.
    """
    w = _coerce_word(word)
    pins = record.pins
    n = record.word_length
    for idx, p in enumerate(pins):
        end = pins[idx + 1] if idx + 1 < len(pins) else n
        if not family.word_in_union(w.symbols[p:end]):
            return False
        if idx + 1 < len(pins) and family.word_in_union(w.symbols[p : end + 1]):
            return False
    for a, b in nonadjacent_samples:
        if a >= b or b >= len(pins):
            continue
        if family.word_in_union(w.symbols[pins[a] : pins[b] + 1]):
            return False
    return True
