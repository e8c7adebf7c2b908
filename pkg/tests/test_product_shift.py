"""Product alphabet, Z_gamma membership, centered windows, decorations."""

import itertools
from fractions import Fraction

import pytest

from pressure_forge import product_shift as ps
from pressure_forge import sturmian as st
from pressure_forge import beta_shift as bs


Q = Fraction


def _zword(gamma: Fraction, n: int, seed=Q(7, 13), a=Q(1, 3)):
    """A word drawn from Z_gamma generators."""
    if gamma == 0:
        xw = (1,) + (0,) * (n - 1)
    else:
        xw = bs.expansion_digits(f"exp:{gamma}", seed, n)
    yw = st.generate_word(gamma, a, 0, n)
    return ps.SymbolWord(list(zip(xw, yw)))


def test_alphabet_one_parameter():
    alpha = ps.ProductAlphabet.one_parameter(0.0, 0.5)
    assert alpha.m == 0
    assert alpha.x_max == 1
    assert alpha.y0_range == (0, 1)
    assert alpha.size() == 4
    assert set(alpha.symbols()) == {(0, 0), (0, 1), (1, 0), (1, 1)}
    assert alpha.is_valid_symbol((1, 1))
    assert not alpha.is_valid_symbol((2, 0))


def test_alphabet_full_form():
    alpha = ps.ProductAlphabet.full_form(1, 0.0, 0.5, 1.0)
    assert alpha.components == 3
    assert alpha.yk_range == (-1, 1)
    assert alpha.size() == 2 * 2 * 3


def test_membership_examples():
    g = ps.GammaVector.of(Q(1, 4))
    # x containing "11" dies: maximal word of e^{1/4} starts 1 0 ...
    w = ps.SymbolWord([(1, 0), (1, 0)])
    assert not ps.z_membership(w, g)
    w2 = ps.SymbolWord([(0, 0), (0, 0)])
    assert ps.z_membership(w2, g)  # weight-0 2-word exists at slope 1/4
    assert ps.z_membership(ps.SymbolWord([]), g)


def test_membership_generated_words():
    for gamma in (Q(0), Q(1, 4), Q(1, 2), Q(5, 64)):
        w = _zword(gamma, 24)
        assert ps.z_membership(w, gamma)


def test_j_window_examples():
    # fully admissible 9-word (gamma = 0), middle center: j = 5, capped
    w = ps.SymbolWord([(0, 0)] * 9)
    assert ps.j_window(w, 4, Q(0)) == (5, True)
    # invalid x digit at the center: j = 0
    bad = ps.SymbolWord([(0, 0), (2, 0), (0, 0)])
    assert ps.j_window(bad, 1, Q(1, 4)) == (0, False)
    # x component 0 1 1 0 with a golden-type gamma: the 3-window has "11"
    g = ps.GammaVector.of(Q(31, 64))  # maximal word of e^{31/64} starts 1 1 0
    lang = ps.ZGamma(g).beta_lang
    assert lang.maximal_word(3) == (1, 1, 0)
    word = ps.SymbolWord([(1, 0), (1, 1), (1, 0), (0, 1)])
    j, capped = ps.j_window(word, 1, g)
    assert (j, capped) == (1, False)


def test_j_window_monotone_under_extension():
    gamma = Q(1, 4)
    w = _zword(gamma, 33)
    for n_sub in (9, 17, 25, 33):
        lo = (33 - n_sub) // 2
        sub = ps.SymbolWord(w.symbols[lo : lo + n_sub])
        j_small = ps.j_window(sub, n_sub // 2, gamma)[0]
        j_big = ps.j_window(w, 16, gamma)[0]
        assert j_big >= j_small


def test_j_window_interior_capped_for_generated_words():
    for gamma in (Q(0), Q(1, 4), Q(1, 2)):
        w = _zword(gamma, 21)
        j, capped = ps.j_window(w, 10, gamma)
        assert capped and j == 11


def test_count_factorization():
    gammas = [Q(1, 4), Q(1, 2), Q(3, 64)]
    letters = [(x, y) for x in (0, 1) for y in (0, 1)]
    for gamma in gammas:
        zg = ps.ZGamma(ps.GammaVector.of(gamma))
        for n in range(1, 6):
            brute = sum(
                1
                for combo in itertools.product(letters, repeat=n)
                if zg.word_in(ps.SymbolWord(combo))
            )
            assert zg.count_words(n) == brute
            x_count = zg.beta_lang.count_words(n)
            y_count = len(st.factor_set(gamma, n))
            assert zg.count_words(n) == x_count * y_count


def test_decorate_examples():
    gamma = Q(1, 4)
    base = ps.ZGamma(ps.GammaVector.of(gamma))
    assert ps.decorate(gamma, 1).count_words(4) == base.count_words(4)
    assert ps.decorate(gamma, 3).count_words(4) == 3 * base.count_words(4)
    dz = ps.decorate(gamma, 2)
    w = _zword(gamma, 4)
    assert dz.word_in(w, [1, 1, 1, 1])
    assert not dz.word_in(w, [0, 1, 1, 1])
    assert not dz.word_in(w, [2, 2, 2, 2])  # letter outside 0..k-1


def test_symbolword_projections():
    w = ps.SymbolWord([(1, 0, -1), (0, 1, 1)])
    assert w.pi_x() == (1, 0)
    assert w.pi(0) == (0, 1)
    assert w.pi(1) == (-1, 1)
    assert len(w) == 2


def test_multi_component_membership():
    # full-form Z with one extra Sturmian factor at a negative slope
    g = ps.GammaVector.of(Q(1, 4), [Q(-1, 3)])
    x = bs.expansion_digits("exp:1/4", Q(3, 7), 6)
    y0 = st.generate_word(Q(1, 4), Q(1, 5), 0, 6)
    y1 = st.generate_word(Q(-1, 3), Q(2, 5), 0, 6)
    w = ps.SymbolWord(list(zip(x, y0, y1)))
    assert ps.z_membership(w, g)
    # corrupting the extra factor breaks membership
    bad = [list(s) for s in w.symbols]
    bad[2][2] += 1
    assert not ps.z_membership(ps.SymbolWord(tuple(map(tuple, bad))), g)


def test_zfamily_queries():
    fam = ps.ZFamily([Q(k, 64) for k in range(33)])
    # x window "11" needs beta >= the first grid point whose maximal word
    # starts 1 1; y window "11" needs slope > 1/2: impossible on this grid
    idx = fam.x_min_index((1, 1))
    assert 0 < idx < 33
    assert fam.zgammas[idx].beta_lang.scan((1, 1)) >= 0
    assert fam.zgammas[idx - 1].beta_lang.scan((1, 1)) < 0
    lo, hi = fam.y_interval((1, 1))
    assert lo > hi  # empty
    lo, hi = fam.y_interval((0, 1))
    assert lo <= hi
    assert fam.word_in_union(ps.SymbolWord([(0, 0), (0, 1)]))
    assert not fam.word_in_union(ps.SymbolWord([(0, 1), (0, 1)]))  # y "11"


def test_zfamily_scanner_matches_membership():
    import random

    rng = random.Random(5)
    fam = ps.ZFamily([Q(k, 64) for k in range(33)])
    letters = [(x, y) for x in (0, 1) for y in (0, 1)]
    for _ in range(40):
        word = [rng.choice(letters) for _ in range(12)]
        scanner = fam.open_scanner()
        alive_trace = [scanner.feed(s) for s in word]
        for i, alive in enumerate(alive_trace):
            assert alive == fam.word_in_union(ps.SymbolWord(word[: i + 1]))
        if not alive_trace[-1]:
            break


def test_count_factorization_deep():
    # product counts match brute enumeration up to n = 8 for one slope
    zg = ps.ZGamma(ps.GammaVector.of(Q(1, 4)))
    letters = [(x, y) for x in (0, 1) for y in (0, 1)]
    for n in (6, 7, 8):
        brute = sum(
            1
            for combo in itertools.product(letters, repeat=n)
            if zg.word_in(ps.SymbolWord(combo))
        )
        assert zg.count_words(n) == brute


def test_count_factorization_multi_component():
    g = ps.GammaVector.of(Q(1, 4), [Q(-1, 3)])
    zg = ps.ZGamma(g)
    letters = [
        (x, y0, y1) for x in (0, 1) for y0 in (0, 1) for y1 in (-1, 0, 1)
    ]
    for n in (2, 3):
        brute = sum(
            1
            for combo in itertools.product(letters, repeat=n)
            if zg.word_in(ps.SymbolWord(combo))
        )
        assert zg.count_words(n) == brute


def test_j_window_matches_naive_scan():
    # dual route: the incremental centered scan vs direct membership of
    # every centered window
    import random

    rng = random.Random(77)
    letters = [(x, y) for x in (0, 1) for y in (0, 1)]
    gammas = [ps.GammaVector.of(Q(k, 64)) for k in (0, 7, 16, 29, 32)]
    oracles = [ps.ZGamma(g) for g in gammas]
    for _ in range(30):
        n = rng.randrange(1, 14)
        word = ps.SymbolWord([rng.choice(letters) for _ in range(n)])
        for g, zg in zip(gammas, oracles):
            for center in range(n):
                got = ps.j_window(word, center, g, zg)
                cap = min(center, n - 1 - center) + 1
                j = 0
                for l in range(1, cap + 1):
                    if zg.word_in(word.window(center, l)):
                        j = l
                    else:
                        break
                expected = (j, j == cap)
                assert got == expected, (word, center, g, got, expected)
