"""Acceptance suite: every primary criterion at its stated tolerance.

Run with ``pytest tests/test_acceptance.py -v``; a one-line PASS/FAIL per
criterion is printed in the terminal summary (see conftest).  The full
sweep takes a few minutes on one core.
"""

import math
import random
from fractions import Fraction

import gmpy2
import numpy as np
import pytest

from conftest import record_criterion
from pressure_forge import beta_shift as bs
from pressure_forge import convex_model as cm
from pressure_forge import pinning as pin
from pressure_forge import pressure as pr
from pressure_forge import product_shift as ps
from pressure_forge import sturmian as st
from pressure_forge import targets as tg
from pressure_forge.potential import DeltaSchedule, PotentialSpec, phi_at

Q = Fraction

pytestmark = pytest.mark.acceptance

# frozen at eta = 1/16 (15% headroom covers the worst scallop drifting
# toward the probe edge as eta shrinks; see test_reconstruction comments)
RECON_C_DEMO = 0.0332
RECON_C_SADDLE = 0.0248


@pytest.fixture(scope="module")
def demo_spec():
    return PotentialSpec.one_parameter(tg.demo_target())


@pytest.fixture(scope="module")
def family(demo_spec):
    return demo_spec.zfamily()


def _zword(gamma: Fraction, n: int, seed, a):
    if gamma == 0:
        xw = (1,) + (0,) * (n - 1)
    else:
        xw = bs.expansion_digits(f"exp:{gamma}", seed, n)
    yw = st.generate_word(gamma, a, 0, n)
    return ps.SymbolWord(list(zip(xw, yw)))


# -- criterion 1 --------------------------------------------------------------


def test_criterion_1_beta_count_bounds():
    betas = [1.3, 1.5, "golden", 2, 2.5, "e"]
    fib = [0, 1, 1]  # fib[k] = Fib(k), Fib(1) = Fib(2) = 1
    while len(fib) < 20:
        fib.append(fib[-1] + fib[-2])
    ok = True
    detail = []
    for beta in betas:
        lang = bs.BetaLanguage(beta)
        bf = lang.beta_float
        for n in range(1, 17):
            count = lang.count_words(n)
            if not (bf**n <= count <= bf / (bf - 1) * bf**n * (1 + 1e-12)):
                ok = False
                detail.append(f"bounds fail at beta={beta} n={n}")
            if beta == "golden" and count != fib[n + 2]:
                ok = False
                detail.append(f"golden count {count} != Fib({n + 2})")
            if beta == 2 and count != 2 ** (n + 1) - 1:
                ok = False
                detail.append(f"beta=2 count {count} != 2^{n + 1}-1")
    record_criterion(
        1,
        "beta-shift count bounds, golden/2 closed forms, n <= 16",
        ok,
        "; ".join(detail) or "6 betas x 16 lengths",
    )
    assert ok, detail


# -- criterion 2 --------------------------------------------------------------


def _irrational_slopes(count: int):
    """High-precision rational surrogates of irrational slopes in (0, 1).

    At 200 bits the surrogate's floor pattern agrees with the true slope
    for every index used here, and the exact integer fast path applies.
    """
    with gmpy2.context(precision=220):
        vals = [
            (gmpy2.sqrt(gmpy2.mpfr(5)) - 1) / 2,
            gmpy2.sqrt(gmpy2.mpfr(2)) / 2,
            gmpy2.sqrt(gmpy2.mpfr(3)) - 1,
            gmpy2.exp(gmpy2.mpfr(1)) - 2,
            gmpy2.const_pi() - 3,
            gmpy2.log(gmpy2.mpfr(2)),
        ]
        k = 2
        while len(vals) < count:
            r = gmpy2.sqrt(gmpy2.mpfr(k)) % 1
            if float(r) > 0.01:
                vals.append(r)
            k += 1
        out = []
        for v in vals[:count]:
            num, exp = v.as_mantissa_exp()
            out.append(Q(int(num), 1) * Q(2) ** int(exp))
        return out


def test_criterion_2_sturmian_properties():
    rng = random.Random(2024)
    ok = True
    detail = []
    # weight rule on 1e5 generated words
    for _ in range(100_000):
        g = Q(rng.randrange(0, 400), rng.randrange(1, 400))
        a = Q(rng.randrange(0, 1024), 1024)
        n = rng.randrange(1, 33)
        w = st.generate_word(g, a, 0, n)
        weight = sum(w)
        lo = (n * g.numerator) // g.denominator
        hi = -((-n * g.numerator) // g.denominator)
        if weight not in (lo, hi):
            ok = False
            detail.append(f"weight rule fails g={g} a={a} n={n}")
            break
    # enumeration bound for all j <= 40; weights reduced mod the letter
    # shift bijection (slope + d shifts every letter by d)
    for j in range(1, 41):
        for n in range(0, j + 1):
            cnt = len(st.enumerate_by_weight(j, n))
            if cnt > j * (j + 1):
                ok = False
                detail.append(f"count bound fails j={j} n={n}: {cnt}")
    shifted = st.enumerate_by_weight(6, 4 + 6 * 2)
    base = st.enumerate_by_weight(6, 4)
    if shifted != {tuple(y + 2 for y in w) for w in base}:
        ok = False
        detail.append("letter-shift bijection fails")
    # factor complexity oracle: 20 irrational slopes, n <= 50
    for slope in _irrational_slopes(20):
        for n in range(1, 51):
            fs = st.factor_set(slope, n)
            if len(fs) != n + 1:
                ok = False
                detail.append(f"complexity {len(fs)} != {n + 1} at slope~{float(slope):.6f}")
                break
            if n in (1, 13, 50) and not all(
                st.is_sturmian_word(w, slope).ok for w in fs
            ):
                ok = False
                detail.append(f"membership mismatch at slope~{float(slope):.6f}")
        else:
            continue
        break
    record_criterion(
        2,
        "Sturmian weight rule, j(j+1) enumeration bound, n+1 complexity",
        ok,
        "; ".join(detail) or "1e5 words; j <= 40; 20 slopes x n <= 50",
    )
    assert ok, detail


# -- criterion 3 --------------------------------------------------------------


def test_criterion_3_potential_pins_to_slope(demo_spec):
    spec = demo_spec
    rng = random.Random(33)
    eta = spec.grid_spacing
    tol = eta / spec.alpha
    length = 257  # >= 33; half-length 129 > 2/eta separates the grid
    worst = 0.0
    count = 0
    ok = True
    for trial in range(1000):
        gi = trial % len(spec.gammas)
        g = spec.gammas[gi].gamma0
        seed = Q(rng.randrange(1, 1 << 30), 1 << 30)
        a = Q(rng.randrange(0, 1 << 30), 1 << 30)
        w = _zword(g, length, seed, a)
        val = phi_at(spec, w, length // 2, "optimistic")
        diff = abs(val - spec.s_value(gi))
        worst = max(worst, diff)
        count += 1
        if diff > tol:
            ok = False
            break
    record_criterion(
        3,
        "optimistic phi pins to s(gamma) within eta/alpha on Z_gamma windows",
        ok,
        f"{count} windows of length {length}, worst |phi - s| = {worst:.2e} <= {tol:.6f}",
    )
    assert ok


# -- criterion 4 --------------------------------------------------------------


def test_criterion_4_delta_schedule():
    sched = DeltaSchedule(alpha=1.0, b=0.0, c=0.5, L=1.0)
    js = np.arange(1, 1_000_001, dtype=np.float64)
    vals = (0.5 + 2.0 + 14.0 + 9.0 * np.log(js)) / js
    decreasing = bool(np.all(np.diff(vals) < 0)) and sched.delta(0) > sched.delta(1)
    d0_ok = sched.delta(0) == pytest.approx(sched.delta(1) + 2.0, abs=1e-12)
    js4 = js[:10_000]
    margin = (0.5 + 2.0 + 14.0 + 9.0 * np.log(js4)) > (
        0.5 + 2.0 + 9.0 + 9.0 * np.log(js4)
    ) + 4.0
    bracket_ok = bool(np.all(margin))
    ok = decreasing and d0_ok and bracket_ok
    record_criterion(
        4,
        "delta schedule: strictly decreasing, delta_0 = delta_1 + 2L, bracket margin",
        ok,
        "j <= 1e6 monotone; j <= 1e4 margin",
    )
    assert ok


# -- criterion 5 --------------------------------------------------------------


def test_criterion_5_pressure_sandwich(demo_spec):
    spec = demo_spec
    eta = spec.grid_spacing
    t_list = [1.5, 2.0, 3.0]
    n_list = [4, 6, 8, 10, 12]
    rows = pr.sandwich(spec, t_list, n_list)
    ok = True
    detail = []
    from pressure_forge.convex_model import eval_target

    # (a) lower within eta(1 + t/alpha) of the target
    for t in t_list:
        lo = pr.lower_pressure(spec, t)
        f = eval_target(spec.target, t)
        if not (f - eta * (1 + t / spec.alpha) <= lo <= f + 1e-9):
            ok = False
            detail.append(f"(a) tolerance fails at t={t}")
    # exact hits when the optimizing gamma is on-grid: 1/4 for t=2 is on the
    # default grid; 1/3 for t=1.5 via an augmented grid
    if abs(pr.lower_pressure(spec, 2.0) - 2.125) > 1e-9:
        ok = False
        detail.append("(a) exact hit 2.125 at t=2 missed")
    spec13 = PotentialSpec.one_parameter(tg.demo_target(), extra_gammas=[Q(1, 3)])
    if abs(pr.lower_pressure(spec13, 1.5) - 5 / 3) > 1e-9:
        ok = False
        detail.append("(a) exact hit 5/3 at t=1.5 missed")
    # (b) lower <= P_n+ and (c) strictly decreasing gap
    for t in t_list:
        sub = [r for r in rows if r.t == t]
        assert [r.n for r in sub] == n_list
        for r in sub:
            if r.budget_exceeded or not (r.lower <= r.upper):
                ok = False
                detail.append(f"(b) fails at t={t} n={r.n}")
        gaps = [r.gap for r in sub]
        if not all(a > b for a, b in zip(gaps, gaps[1:])):
            ok = False
            detail.append(f"(c) gap not strictly decreasing at t={t}: {gaps}")
    gaps12 = {r.t: round(r.gap, 4) for r in rows if r.n == 12}
    record_criterion(
        5,
        "pressure sandwich: lower hits target on-grid, lower <= P_n+, gap decreasing",
        ok,
        "; ".join(detail) or f"gaps at n=12: {gaps12}",
    )
    assert ok, detail


# -- criterion 6 --------------------------------------------------------------


def test_criterion_6_reconstruction():
    demo = tg.demo_target()
    probe = [1.25 + 0.001 * k for k in range(2501)]
    ok = True
    detail = []
    for eta in (1 / 16, 1 / 32, 1 / 64):
        grid = [1.0 + eta * k for k in range(1, int(3.2 / eta) + 1)]
        pts = cm.sample_support_set(demo, grid)
        err = max(
            cm.eval_target(demo, t) - cm.reconstruct_from_support(pts, t)
            for t in probe
        )
        if err > RECON_C_DEMO * eta**2:
            ok = False
            detail.append(f"demo err {err:.2e} > C eta^2 at eta={eta}")
        if any(
            cm.reconstruct_from_support(pts, t) > cm.eval_target(demo, t) + 1e-9
            for t in probe
        ):
            ok = False
            detail.append(f"dominance fails at eta={eta}")
    saddle = tg.saddle_2d_target()
    probe2 = [(1.21 + 0.17 * i, 1.19 + 0.41 * j) for i in range(9) for j in range(5)]
    for eta in (1 / 16, 1 / 32):
        grid2 = [
            (1.0 + eta * i, 1.0 + eta * j)
            for i in range(int(2.8 / eta))
            for j in range(int(2.8 / eta))
        ]
        pts2 = cm.sample_support_set(saddle, grid2)
        if any(abs(p.intercept) > 1e-9 for p in pts2):
            ok = False
            detail.append(f"saddle intercept exceeds 1e-9 at eta={eta}")
        err2 = max(
            cm.eval_target(saddle, t) - cm.reconstruct_from_support(pts2, t)
            for t in probe2
        )
        if err2 > RECON_C_SADDLE * eta**2:
            ok = False
            detail.append(f"saddle err {err2:.2e} > C eta^2 at eta={eta}")
    record_criterion(
        6,
        "support reconstruction within frozen C * eta^2; saddle intercepts ~ 0",
        ok,
        "; ".join(detail) or f"C_demo={RECON_C_DEMO}, C_saddle={RECON_C_SADDLE}",
    )
    assert ok, detail


# -- criterion 7 --------------------------------------------------------------


def test_criterion_7_phase_transition_targets():
    ok = True
    detail = []
    for points in [(2.0,), (2.0, 3.0), (2.0, 3.0, 4.0)]:
        spec = tg.PhaseTransitionSpec(1.0, points)
        target = tg.as_convex_target(spec)
        kinks = cm.kink_scan(target, 1.0401, max(points) + 1.1, 0.2345)
        if len(kinks) != len(points):
            ok = False
            detail.append(f"{points}: found {len(kinks)} kinks")
            continue
        for (loc, jump), (z, j_idx) in zip(
            kinks, [(z, i + 1) for i, z in enumerate(points)]
        ):
            if abs(loc - z) > 1e-6 or abs(jump - tg.jump_size(spec, j_idx)) > 1e-6:
                ok = False
                detail.append(f"{points}: kink ({loc:.8f}, {jump:.8f}) off")
        for k in range(1, 401):
            t = 1.0 + k * (9.0 / 400)
            if tg.f_of(spec, t) - t * tg.g_of(spec, t) < 1.0 - 1e-12:
                ok = False
                detail.append(f"{points}: intercept bound fails at t={t}")
                break
    record_criterion(
        7,
        "phase-transition targets: kink locations/jumps within 1e-6, intercepts >= 1",
        ok,
        "; ".join(detail) or "points (2), (2,3), (2,3,4); t in (1, 10]",
    )
    assert ok, detail


# -- criterion 8 --------------------------------------------------------------


def test_criterion_8_pinning_invariants(family):
    rng = random.Random(512)
    letters = [(x, y) for x in (0, 1) for y in (0, 1)]
    ok = True
    detail = []
    records = []
    words = []
    for _ in range(1000):
        w = ps.SymbolWord([rng.choice(letters) for _ in range(512)])
        rec = pin.greedy_pins(w, family)
        words.append(w)
        records.append(rec)
    for w, rec in zip(words, records):
        pairs = [
            (i, i + 1 + rng.randrange(1, 4))
            for i in rng.sample(range(max(1, len(rec.pins) - 5)), k=min(4, len(rec.pins) - 1))
        ]
        if not pin.replay_omega_conditions(w, rec, family, pairs):
            ok = False
            detail.append("omega replay failed")
            break
    stats = pin.partition_stats(records)
    if sum(stats.q_hat.values()) != 1:
        ok = False
        detail.append("sum q != 1")
    for j, q in stats.q_hat.items():
        if sum(r for (jj, _), r in stats.r_hat.items() if jj == j) != q:
            ok = False
            detail.append(f"sum_n r != q at j={j}")
    if sum(j * q for j, q in stats.q_hat.items()) != Fraction(
        stats.total_length, stats.pin_count
    ):
        ok = False
        detail.append("Kac identity fails")
    # gamma_locate: located cell contains an admitting grid gamma for every
    # segment (the assertion lives inside gamma_locate)
    checked = 0
    try:
        for w, rec in zip(words[:200], records[:200]):
            for seg in rec.segments:
                seg_word = ps.SymbolWord(
                    w.symbols[seg.start : seg.start + seg.length]
                )
                pin.gamma_locate(seg_word, family)
                checked += 1
    except AssertionError:
        ok = False
        detail.append("gamma_locate cell misses all admitting gammas")
    record_criterion(
        8,
        "pinning: omega conditions replay, exact counting identities, gamma cells",
        ok,
        "; ".join(detail)
        or f"1000 words x 512; {stats.pin_count} pins; {checked} segments located",
    )
    assert ok, detail


# -- criterion 9 --------------------------------------------------------------


def test_criterion_9_decoration_neutrality():
    target = tg.demo_target()
    base = PotentialSpec.one_parameter(target)
    t = 1.5
    lo_base = pr.lower_pressure(base, t)
    up_base = {n: pr.upper_pressure(base, t, n).value for n in (4, 6)}
    ok = True
    detail = []
    for k in (1, 2, 3):
        deco = PotentialSpec.one_parameter(target, decoration_k=k)
        if pr.lower_pressure(deco, t) != lo_base:
            ok = False
            detail.append(f"lower changed at k={k}")
        for n in (4, 6):
            shift = pr.upper_pressure(deco, t, n).value - up_base[n]
            if not (-1e-12 <= shift <= math.log(k) / n + 1e-9):
                ok = False
                detail.append(f"shift {shift:.3e} escapes [0, ln{k}/{n}]")
    record_criterion(
        9,
        "decorations: lower bound unchanged, P_n+ shift <= ln(k)/n",
        ok,
        "; ".join(detail) or "k in {1,2,3}, n in {4,6}",
    )
    assert ok, detail
