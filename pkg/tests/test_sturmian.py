"""Sturmian generation, membership, weight enumeration."""

import itertools
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as hst

from pressure_forge import sturmian as st


def test_generate_examples():
    assert st.generate_word(Fraction(1, 2), 0, 0, 4) == (0, 1, 0, 1)
    assert st.generate_word(0, 0, 0, 5) == (0,) * 5
    # figure reading at slope 1.58: first three letters 1 2 1
    assert st.generate_word(1.58, 0, 0, 3) == (1, 2, 1)


def test_membership_examples():
    assert st.is_sturmian_word([0, 1], Fraction(1, 2)).ok
    assert not st.is_sturmian_word([1, 1], Fraction(1, 2)).ok
    assert not st.is_sturmian_word([0, 0], Fraction(1, 2)).ok
    for g in (Fraction(1, 3), Fraction(2, 5), 0.777):
        lo = math.floor(float(g))
        assert st.is_sturmian_word([lo], g).ok


def test_membership_witness_interval():
    w = st.is_sturmian_word([0, 1], Fraction(1, 2))
    # a must satisfy floor(1/2 + a) = 0 and floor(1 + a) = 1: a in [0, 1/2)
    assert (w.a_lo, w.a_hi) == (Fraction(0), Fraction(1, 2))
    for a in (w.a_lo, (w.a_lo + w.a_hi) / 2):
        assert st.generate_word(Fraction(1, 2), a, 0, 2) == (0, 1)


def test_point_window_examples():
    assert st.point_window(Fraction(1, 2), 0, "floor", (-2, 2)) == (0, 1, 0, 1)
    assert st.point_window(Fraction(1, 3), 1, "ceiling", (0, 3)) == (1, 0, 0)
    # floor and ceiling forms agree when a + i*gamma never hits an integer
    g = "sqrt:1/2"
    fl = st.point_window(g, Fraction(1, 7), "floor", (-4, 4))
    ce = st.point_window(g, Fraction(1, 7), "ceiling", (-4, 4))
    assert fl == ce


def test_enumerate_examples():
    assert st.enumerate_by_weight(2, 1) == {(0, 1), (1, 0)}
    for k in (0, 1, 5, -2):
        assert st.enumerate_by_weight(1, k) == {(k,)}
    assert st.enumerate_by_weight(3, 1) == {(0, 0, 1), (0, 1, 0), (1, 0, 0)}


def _sturmian_brute(j: int, n: int):
    """Independent oracle: all weight-n words over {k, k+1} alphabets that
    pass the exact membership test at some candidate slope.

    Candidate slopes: Farey fractions of denominator <= j (cell endpoints)
    plus midpoints of consecutive ones -- the admitting-slope set of any
    word is an interval whose endpoints have denominator <= j, so this
    covers every cell.
    """
    ks = {n // j, -((-n) // j) - 1, -((-n) // j)}
    fracs = sorted(
        {
            Fraction(p, q)
            for q in range(1, j + 1)
            for p in range(
                (min(ks)) * q - q, (max(ks) + 2) * q + 1
            )
        }
    )
    slopes = set(fracs)
    for a, b in zip(fracs, fracs[1:]):
        slopes.add((a + b) / 2)
    out = set()
    for k in ks:
        r = n - j * k
        if not 0 <= r <= j:
            continue
        for ones in itertools.combinations(range(j), r):
            word = tuple(k + (1 if i in ones else 0) for i in range(j))
            if any(st.is_sturmian_word(word, g).ok for g in slopes):
                out.add(word)
    return out


@pytest.mark.parametrize("j,n", [(2, 1), (3, 1), (3, 2), (4, 2), (5, 2), (5, 3), (6, 3), (4, -1)])
def test_enumerate_matches_bruteforce(j, n):
    assert st.enumerate_by_weight(j, n) == _sturmian_brute(j, n)


def test_enumerate_count_bound():
    for j in (2, 5, 9, 13):
        for n in range(-2, 2 * j + 3):
            assert len(st.enumerate_by_weight(j, n)) <= j * (j + 1)


def test_enumerate_translation_invariance():
    # adding an integer d to the slope shifts every letter by d
    base = st.enumerate_by_weight(4, 2)
    shifted = st.enumerate_by_weight(4, 2 + 4 * 3)
    assert shifted == {tuple(y + 3 for y in w) for w in base}


@settings(max_examples=150, deadline=None)
@given(
    num=hst.integers(min_value=0, max_value=400),
    den=hst.integers(min_value=1, max_value=400),
    a_num=hst.integers(min_value=0, max_value=399),
    n=hst.integers(min_value=1, max_value=40),
)
def test_weight_rule_property(num, den, a_num, n):
    g = Fraction(num, den)
    a = Fraction(a_num, 400)
    word = st.generate_word(g, a, 0, n)
    weight = sum(word)
    floor_ng = (n * g.numerator) // g.denominator
    assert weight in {floor_ng, -((-n * g.numerator) // g.denominator)}
    assert st.is_sturmian_word(word, g).ok


def test_factor_set_complexity():
    # irrational slope in (0,1): exactly n+1 factors of length n
    for slope in ("sqrt:1/2", "sqrt:2/5", "pi/6"):
        for n in (1, 5, 17):
            fs = st.factor_set(slope, n)
            assert len(fs) == n + 1
            for w in fs:
                assert st.is_sturmian_word(w, slope).ok


def test_factor_set_rational():
    # slope p/q periodic: q factors once n >= q
    fs = st.factor_set(Fraction(2, 5), 7)
    assert len(fs) == 5
    assert all(st.is_sturmian_word(w, Fraction(2, 5)).ok for w in fs)


def test_generate_window_shift_consistency():
    g = Fraction(5, 17)
    a = Fraction(3, 11)
    full = st.generate_word(g, a, -6, 12)
    again = st.generate_word(g, a, 0, 6)
    assert full[6:] == again
