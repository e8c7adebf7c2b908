"""Convex targets: evaluation, subgradients, support, reconstruction, s(gamma)."""

import math

import pytest

from pressure_forge import convex_model as cm
from pressure_forge import targets as tg
from pressure_forge.errors import DomainError, EmptySample, NotASubgradient

TOL = 1e-9


@pytest.fixture(scope="module")
def demo():
    return tg.demo_target()


@pytest.fixture(scope="module")
def saddle():
    return tg.saddle_2d_target()


def test_eval_examples(demo, saddle):
    assert cm.eval_target(demo, 2) == pytest.approx(2.125, abs=TOL)
    assert cm.eval_target(saddle, (2, 1)) == pytest.approx(1.0, abs=TOL)
    lin = tg.linear_target(0.3, 0.5)
    assert cm.eval_target(lin, 2) == pytest.approx(1.3, abs=TOL)


def test_eval_domain_errors(demo, saddle):
    with pytest.raises(DomainError):
        cm.eval_target(demo, 1.0)
    with pytest.raises(DomainError):
        cm.eval_target(demo, 0.5)
    with pytest.raises(DomainError):
        cm.eval_target(saddle, (2, 0))
    with pytest.raises(DomainError):
        cm.eval_target(saddle, 2)  # arity mismatch


def test_subdifferential_examples(demo):
    sub = cm.subdifferential_1d(demo, 2)
    assert sub.lo == pytest.approx(0.9375, abs=1e-6)
    assert sub.hi == pytest.approx(0.9375, abs=1e-6)
    assert not sub.is_kink
    kinked = tg.max_affine_target([(0.0, 1.0), (-1.0, 2.0)], alpha=0.5)
    sub = cm.subdifferential_1d(kinked, 1.0)
    assert sub.lo == pytest.approx(1.0, abs=1e-6)
    assert sub.hi == pytest.approx(2.0, abs=1e-6)
    assert sub.is_kink
    # phase-transition target: jump 1/(2^1 * 2^2) = 0.125 at z_1 = 2
    t6 = tg.as_convex_target(tg.PhaseTransitionSpec(1.0, (2.0,)))
    sub = cm.subdifferential_1d(t6, 2.0)
    assert sub.width == pytest.approx(0.125, abs=1e-6)


def test_support_point_examples(demo, saddle):
    sp = cm.support_point(demo, 2, 0.9375)
    assert sp.intercept == pytest.approx(0.25, abs=1e-6)
    sp2 = cm.support_point(saddle, (2, 1), (1, -1))
    assert sp2.intercept == pytest.approx(0.0, abs=TOL)
    lin = tg.linear_target(0.3, 0.5)
    for t in (1.5, 2.0, 7.0):
        assert cm.support_point(lin, t, 0.5).intercept == pytest.approx(0.3, abs=TOL)


def test_support_point_rejects_bad_slope(demo):
    with pytest.raises(NotASubgradient):
        cm.support_point(demo, 2, 1.5)
    with pytest.raises(NotASubgradient):
        cm.support_point(demo, 2, 0.5)


def test_sample_support_set_examples(demo):
    pts = cm.sample_support_set(demo, [1.5, 2, 3])
    # tangent-line elimination: h = 1/(2t), v = 1 - 1/(4 t^2)
    by_h = sorted(p.intercept for p in pts)
    assert by_h == pytest.approx([1 / 6, 1 / 4, 1 / 3], abs=1e-6)
    by_v = sorted(p.slope[0] for p in pts)
    assert by_v == pytest.approx([1 - 1 / 9, 1 - 1 / 16, 1 - 1 / 36], abs=1e-6)

    lin = tg.linear_target(0.3, 0.5)
    pts = cm.sample_support_set(lin, [1.5, 2, 3, 5])
    uniq = {(round(p.intercept, 9), round(p.slope[0], 9)) for p in pts}
    assert uniq == {(0.3, 0.5)}

    # kink node contributes both one-sided slopes
    t6 = tg.as_convex_target(tg.PhaseTransitionSpec(1.0, (2.0,)))
    pts = cm.sample_support_set(t6, [2.0])
    assert len(pts) == 2
    slopes = sorted(p.slope[0] for p in pts)
    assert slopes == pytest.approx([0.0, 0.125], abs=1e-6)


def test_reconstruction_examples(demo, saddle):
    pts = [cm.SupportPoint(g, (1 - g * g,)) for g in (0.2, 0.25, 0.3)]
    assert cm.reconstruct_from_support(pts, 2) == pytest.approx(2.125, abs=TOL)
    single = [cm.SupportPoint(0.3, (0.5,))]
    assert cm.reconstruct_from_support(single, 4.0) == pytest.approx(2.3, abs=TOL)
    plane = [cm.SupportPoint(0.0, (1.0, -1.0))]
    assert cm.reconstruct_from_support(plane, (2, 1)) == pytest.approx(1.0, abs=TOL)
    with pytest.raises(EmptySample):
        cm.reconstruct_from_support([], 2)


def test_reconstruction_dominance(demo):
    pts = cm.sample_support_set(demo, [1.0 + k / 8 for k in range(1, 40)])
    for t in [1.01, 1.3, 2.2, 4.7, 9.0]:
        recon = cm.reconstruct_from_support(pts, t)
        assert recon <= cm.eval_target(demo, t) + TOL


def test_reconstruction_tightness_quadratic(demo):
    # error of the tangent envelope scales like eta^2
    errs = {}
    for eta in (1 / 8, 1 / 16, 1 / 32):
        grid = [1.0 + eta * k for k in range(1, int(4 / eta))]
        pts = cm.sample_support_set(demo, grid)
        probe = [1.2 + 0.013 * k for k in range(150)]
        errs[eta] = max(
            cm.eval_target(demo, t) - cm.reconstruct_from_support(pts, t)
            for t in probe
        )
    c8 = errs[1 / 8] / (1 / 8) ** 2
    c32 = errs[1 / 32] / (1 / 32) ** 2
    assert c32 <= c8 * 1.5 + 1e-9


def test_slope_function_examples(demo):
    assert cm.slope_function(demo, 0.25) == pytest.approx(0.9375, abs=1e-9)
    assert cm.slope_function(demo, 0.5) == pytest.approx(0.75, abs=1e-9)
    lin = tg.linear_target(0.3, 0.5)
    for g in (0.0, 0.1, 0.3):
        assert cm.slope_function(lin, g) == pytest.approx(0.5, abs=1e-9)
    with pytest.raises(DomainError):
        cm.slope_function(demo, 0.7)


def test_slope_function_monotone_lipschitz(demo):
    gammas = [k / 64 for k in range(33)]
    vals = [cm.slope_function(demo, g) for g in gammas]
    for a, b in zip(vals, vals[1:]):
        assert b <= a + 1e-12
    for (g1, v1), (g2, v2) in zip(zip(gammas, vals), zip(gammas[1:], vals[1:])):
        assert abs(v2 - v1) <= abs(g2 - g1) / demo.alpha + 1e-6


def test_envelope_identity(demo):
    # f(t) = max over gamma grid of gamma + t s(gamma), within grid tolerance
    gammas = [k / 64 for k in range(33)]
    vals = [cm.slope_function(demo, g) for g in gammas]
    for t in (1.2, 1.5, 2.0, 3.0, 7.0):
        envelope = max(g + t * v for g, v in zip(gammas, vals))
        err = cm.eval_target(demo, t) - envelope
        assert 0 <= err + 1e-9
        assert err <= (1 / 64) * (1 + t / demo.alpha)


def test_lipschitz_bounds_examples(demo):
    ub, lb = cm.lipschitz_bounds(demo, 2.0)
    assert ub == pytest.approx(1.0625, abs=TOL)
    assert lb == pytest.approx(0.8125, abs=TOL)
    assert lb <= cm.subdifferential_1d(demo, 2.0).lo <= ub
    lin = tg.linear_target(0.3, 0.5)
    ub, _ = cm.lipschitz_bounds(lin, 2.0)
    assert ub >= 0.5
    lin0 = tg.linear_target(0.0, 0.5)
    ub0, _ = cm.lipschitz_bounds(lin0, 2.0)
    assert ub0 == pytest.approx(0.5, abs=TOL)


def test_saddle_intercepts_and_gradient_blowup(saddle):
    # all support planes have intercept 0; gradient norm diverges as t2 -> 0+
    for t in [(2, 1), (1, 1), (3, 0.5), (2, 0.05)]:
        v = cm.gradient(saddle, t)
        h = cm.eval_target(saddle, t) - sum(a * b for a, b in zip(v, t))
        assert abs(h) < 1e-7
    norms = [
        math.hypot(*cm.gradient(saddle, (1.0, t2))) for t2 in (0.1, 0.01, 0.001)
    ]
    assert norms[0] < norms[1] < norms[2]
    assert norms[2] > 1e5


def test_sample_support_set_validates(demo):
    with pytest.raises(EmptySample):
        cm.sample_support_set(demo, [])
    with pytest.raises(DomainError):
        cm.sample_support_set(demo, [0.5])


def test_target_json_roundtrip(demo):
    from pressure_forge.targets import target_from_json

    data = demo.to_json()
    back = target_from_json(data)
    for t in (1.5, 2.0, 3.3):
        assert cm.eval_target(back, t) == cm.eval_target(demo, t)
    assert (back.alpha, back.b, back.c, back.lipschitz_L) == (
        demo.alpha,
        demo.b,
        demo.c,
        demo.lipschitz_L,
    )


def test_verify_hypotheses(demo):
    cm.verify_hypotheses(demo)
    cm.verify_hypotheses(tg.linear_target(0.3, 0.5))
    cm.verify_hypotheses(tg.as_convex_target(tg.PhaseTransitionSpec(1.0, (2.0, 3.0))))
    # a target lying about its constants is caught
    liar = cm.ConvexTarget(
        1, 1.0, (0.0, 0.1), 1.0, body=lambda pt: pt[0] + 1.0 / (4 * pt[0])
    )
    with pytest.raises(ValueError):
        cm.verify_hypotheses(liar)
